#include "plap/shapeopt.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include "plap/errors.hpp"

namespace plap {

namespace {

double aspect(const ConvexPolygon& poly) {
  return diameter(poly) / width(poly);
}

std::string describe(const ConvexPolygon& poly) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < poly.size(); ++i)
    os << (i ? "; " : "") << poly[i].x() << " " << poly[i].y();
  return os.str();
}

// One-vertex Gaussian kick, projected back to a convex polygon of unit
// area.  nullopt when the kick degenerates the hull.
std::optional<ConvexPolygon> propose(const ConvexPolygon& cur,
                                     std::mt19937_64& rng, double step) {
  std::normal_distribution<double> gauss(0.0, step * diameter(cur));
  std::uniform_int_distribution<int> pick(0, cur.size() - 1);
  std::vector<Vec2> pts = cur.vertices();
  pts[static_cast<std::size_t>(pick(rng))] += Vec2(gauss(rng), gauss(rng));
  std::vector<Vec2> hull = convex_hull(std::move(pts));
  if (hull.size() < 3) return std::nullopt;
  try {
    return normalized_to_unit_area(ConvexPolygon(std::move(hull)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Evaluator {
  const Exponent& p;
  const Exponent& q;
  long count = 0;

  RatioResult operator()(const ConvexPolygon& poly, const SolverConfig& cfg) {
    ++count;
    try {
      return ratio(Domain(PolygonDomain{poly}), p, q, cfg);
    } catch (const solver_error& e) {
      throw solver_error(std::string(e.what()) +
                             " [polygon: " + describe(poly) + "]",
                         e.best_value);
    }
  }
};

double median_of(std::vector<double> vals) {
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + static_cast<long>(mid),
                   vals.end());
  double m = vals[mid];
  if (vals.size() % 2 == 0) {
    std::nth_element(vals.begin(), vals.begin() + static_cast<long>(mid) - 1,
                     vals.end());
    m = 0.5 * (m + vals[mid - 1]);
  }
  return m;
}

}  // namespace

OptimizeConfig::OptimizeConfig() {
  screen.levels = 2;
  screen.resolution = 12;
  confirm.levels = 3;
  confirm.resolution = 16;
}

ShapeState optimize_shape(const OptimizeConfig& cfg) {
  if (cfg.n_vertices < 3 || cfg.n_vertices > 64)
    throw config_error("optimize_shape: vertex budget must lie in [3, 64]");
  if (!(cfg.q < cfg.p))
    throw config_error("optimize_shape: requires q < p, got q = " +
                       cfg.q.str() + ", p = " + cfg.p.str());
  if (cfg.budget < 1)
    throw config_error("optimize_shape: budget must be positive");
  if (!(cfg.aspect_cap > 1.0) || !(cfg.initial_step > 0.0))
    throw config_error("optimize_shape: aspect cap and step must be positive");

  const bool minimize = cfg.direction == OptimizeDirection::Minimize;
  // improvement in the signed sense; maximization flips the comparison
  const double sgn = minimize ? 1.0 : -1.0;
  auto improves = [sgn](double cand, double incumbent) {
    return sgn * (cand - incumbent) < 0.0;
  };

  std::mt19937_64 rng(cfg.seed);
  Evaluator eval{cfg.p, cfg.q};

  std::vector<ConvexPolygon> starts;
  if (cfg.n_vertices >= 4)
    starts.push_back(rectangle_polygon(1.0, 1.0));
  starts.push_back(
      normalized_to_unit_area(regular_polygon(cfg.n_vertices, 1.0)));
  for (int r = 0; r < std::max(0, cfg.random_restarts); ++r)
    starts.push_back(
        normalized_to_unit_area(random_convex_polygon(rng, cfg.n_vertices)));

  ShapeState best;
  best.exploratory = !minimize || !(cfg.q <= Exponent::finite(2.0) &&
                                    Exponent::finite(2.0) <= cfg.p);

  const long n_starts = static_cast<long>(starts.size());
  long iteration = 0;
  bool have_best = false;

  for (long s = 0; s < n_starts; ++s) {
    ConvexPolygon cur = starts[static_cast<std::size_t>(s)];
    RatioResult cur_val = eval(cur, cfg.confirm);
    double step = cfg.initial_step;
    int rejects = 0;
    bool capped = false;

    best.history.push_back(
        {iteration, cur_val.ratio, diameter(cur), static_cast<int>(s)});

    // even split of the proposal budget, remainder to the last restart
    long quota = cfg.budget / n_starts;
    if (s == n_starts - 1) quota += cfg.budget % n_starts;

    for (long k = 0; k < quota && !capped; ++k) {
      ++iteration;
      bool accepted = false;
      if (auto cand = propose(cur, rng, step)) {
        const bool over_cap = aspect(*cand) > cfg.aspect_cap;
        if (!(minimize && over_cap)) {
          const RatioResult scr = eval(*cand, cfg.screen);
          if (improves(scr.ratio, cur_val.ratio)) {
            const RatioResult conf = eval(*cand, cfg.confirm);
            if (improves(conf.ratio, cur_val.ratio)) {
              cur = *cand;
              cur_val = conf;
              accepted = true;
              best.history.push_back({iteration, conf.ratio, diameter(cur),
                                      static_cast<int>(s)});
              if (over_cap) capped = true;
            }
          }
        }
      }
      if (accepted) {
        rejects = 0;
      } else if (++rejects >= 20) {
        step *= 0.5;
        rejects = 0;
      }
    }

    if (!have_best || improves(cur_val.ratio, best.value.ratio)) {
      best.polygon = cur;
      best.value = cur_val;
      best.step_scale = step;
      have_best = true;
    }
    best.aspect_capped = best.aspect_capped || capped;
  }

  best.evaluations = eval.count;
  return best;
}

EscapeReport diameter_escape_monitor(const ShapeState& state) {
  EscapeReport rep;
  const auto& h = state.history;
  if (h.size() < 8) {
    rep.summary = "insufficient data: fewer than 8 accepted iterates";
    return rep;
  }
  const std::size_t quarter = h.size() / 4;
  std::vector<double> early, late;
  for (std::size_t i = 0; i < quarter; ++i) early.push_back(h[i].diameter);
  for (std::size_t i = h.size() - quarter; i < h.size(); ++i)
    late.push_back(h[i].diameter);
  rep.early_median = median_of(std::move(early));
  rep.late_median = median_of(std::move(late));
  const bool escaping = rep.late_median > 1.5 * rep.early_median;
  rep.trend = escaping ? DiameterTrend::Escaping : DiameterTrend::Bounded;
  std::ostringstream os;
  os.precision(6);
  os << "accepted diameters " << (escaping ? "trend upward" : "stay bounded")
     << ": median " << rep.early_median << " over the first quarter, "
     << rep.late_median << " over the last";
  rep.summary = os.str();
  return rep;
}

LocalMinProbe local_min_probe(const ConvexPolygon& poly, const Exponent& p,
                              const Exponent& q, long trials,
                              unsigned long long seed,
                              const SolverConfig& screen,
                              const SolverConfig& confirm) {
  if (trials < 1) throw config_error("local_min_probe: trials must be positive");

  std::mt19937_64 rng(seed);
  Evaluator eval{p, q};
  const ConvexPolygon start = normalized_to_unit_area(poly);
  const RatioResult start_val = eval(start, confirm);
  const double step = OptimizeConfig().initial_step;

  LocalMinProbe probe;
  probe.trials = trials;
  probe.start_value = start_val.ratio;
  probe.best_value = start_val.ratio;
  probe.margin = start_val.error_indicator;

  for (long t = 0; t < trials; ++t) {
    auto cand = propose(start, rng, step);
    if (!cand) continue;
    const RatioResult scr = eval(*cand, screen);
    if (scr.ratio >= start_val.ratio) continue;
    ++probe.screen_improvements;
    const RatioResult conf = eval(*cand, confirm);
    probe.best_value = std::min(probe.best_value, conf.ratio);
    if (conf.ratio <
        start_val.ratio - (conf.error_indicator + start_val.error_indicator))
      ++probe.confirmed_improvements;
  }
  probe.local_min = probe.confirmed_improvements == 0;
  return probe;
}

}  // namespace plap
