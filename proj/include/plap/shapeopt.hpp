#pragma once

#include <string>
#include <vector>

#include "plap/functional.hpp"
#include "plap/geometry.hpp"

namespace plap {

enum class OptimizeDirection { Minimize, Maximize };

struct OptimizeConfig {
  Exponent p = Exponent::finite(2.0);
  Exponent q = Exponent::one();
  int n_vertices = 8;  // vertex budget in [3, 64]; a maximum, hull projection
                       // can only shrink it
  OptimizeDirection direction = OptimizeDirection::Minimize;
  long budget = 300;  // candidate proposals, shared across restarts
  unsigned long long seed = 1;
  // maximization drifts toward slabs (the supremum is not attained), so the
  // run stops once diameter/width passes this; minimization just rejects
  // such candidates
  double aspect_cap = 64.0;
  double initial_step = 0.1;  // Gaussian kick scale, times the diameter
  int random_restarts = 1;    // random-hull starts besides square and n-gon
  SolverConfig screen;   // candidate screening, 2 levels
  SolverConfig confirm;  // acceptance confirmation, 3 levels
  OptimizeConfig();
};

struct HistoryEntry {
  long iteration = 0;     // global proposal index at acceptance
  double value = 0.0;     // confirmed ratio
  double diameter = 0.0;  // of the accepted iterate
  int restart = 0;
};

struct ShapeState {
  ConvexPolygon polygon = rectangle_polygon(1.0, 1.0);  // area 1
  RatioResult value;        // confirmed evaluation of polygon
  double step_scale = 0.0;  // final step of the winning restart
  // accepted iterates of every restart, in acceptance order; each restart
  // opens with its (confirmed) start
  std::vector<HistoryEntry> history;
  bool exploratory = false;    // maximization, or outside q <= 2 <= p
  bool aspect_capped = false;  // stopped on the aspect cap
  long evaluations = 0;        // backend ratio evaluations
};

// Stochastic local search over convex polygons of unit area: kick one
// vertex, project back to a convex hull, renormalize the area, accept on
// confirmed improvement, halve the step after 20 straight rejections.
// Restarts from the square, the regular n-gon, and random hulls; returns
// the best confirmed state.  Backend failures abort with the offending
// polygon printed in the message.
ShapeState optimize_shape(const OptimizeConfig& cfg);

enum class DiameterTrend { InsufficientData, Bounded, Escaping };

struct EscapeReport {
  DiameterTrend trend = DiameterTrend::InsufficientData;
  double early_median = 0.0;  // median diameter, first quarter of history
  double late_median = 0.0;   // median diameter, last quarter
  std::string summary;
};

// Did the accepted iterates' diameters trend upward (slab escape) or stay
// bounded (interior optimum)?  Purely descriptive of the recorded history.
EscapeReport diameter_escape_monitor(const ShapeState& state);

struct LocalMinProbe {
  long trials = 0;
  long screen_improvements = 0;     // beat the start at screening accuracy
  long confirmed_improvements = 0;  // survived confirmation beyond margin
  double start_value = 0.0;
  double best_value = 0.0;  // best confirmed candidate (start if none)
  double margin = 0.0;      // error indicator of the start evaluation
  bool local_min = false;   // no confirmed improvement in any trial
};

// Tests whether `poly` is a local minimum of the ratio under the
// optimizer's proposal scheme: `trials` independent one-vertex kicks, an
// improvement counting only when the confirmed value clears the combined
// error indicators.
LocalMinProbe local_min_probe(const ConvexPolygon& poly, const Exponent& p,
                              const Exponent& q, long trials,
                              unsigned long long seed,
                              const SolverConfig& screen,
                              const SolverConfig& confirm);

}  // namespace plap
