#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plap/cheeger.hpp"
#include "plap/exact.hpp"
#include "plap/experiments.hpp"
#include "plap/functional.hpp"
#include "plap/geometry.hpp"
#include "plap/mesh.hpp"
#include "plap/shapeopt.hpp"
#include "plap/solver.hpp"

namespace plap {

// Polygon text format: one "x y" vertex per line, counter-clockwise, with
// '#' starting a comment.  Parse failures carry "<source>:<line>: ...".
ConvexPolygon parse_polygon_text(const std::string& text,
                                 const std::string& source = "<string>");
ConvexPolygon read_polygon_file(const std::string& path);
std::string polygon_text(const ConvexPolygon& poly);
void write_polygon_file(const std::string& path, const ConvexPolygon& poly);

// 12 significant digits, the precision used by every emitter here; enough
// to compare runs without spurious last-bit noise
std::string format_number(double v);

// JSON conversions.  Estimates drop the nodal data; everything else round
// trips.  config_from_json accepts partial objects and keeps defaults for
// missing fields.
nlohmann::json config_json(const SolverConfig& cfg);
SolverConfig config_from_json(const nlohmann::json& j);
nlohmann::json estimate_json(const EigenEstimate& est);
nlohmann::json cheeger_json(const CheegerResult& r);
nlohmann::json report_json(const BoundReport& r);
nlohmann::json scale_json(const ScaleResult& r);
nlohmann::json ratio_json(const RatioResult& r);
nlohmann::json record_json(const SweepRecord& r);
nlohmann::json polygon_json(const ConvexPolygon& poly);

// CSV emitters.  Columns are fixed per payload type (sweeps: per experiment
// id, see sweep_columns); cells hold format_number output, NaN prints empty.
void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& rs);
void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& rs);
void write_history_csv(std::ostream& os, const std::vector<HistoryEntry>& hs);
void write_mesh_vertices_csv(std::ostream& os, const Mesh& m);
void write_mesh_triangles_csv(std::ostream& os, const Mesh& m);

// documented column contract for the sweep CSVs
std::vector<std::string> sweep_columns(const std::string& experiment);

// Self-contained SVG line plot.  An axis switches to log scale when its
// positive data spans more than two decades.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
std::string svg_plot(const std::vector<PlotSeries>& series,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::string& title);
std::string svg_polygon_figure(const ConvexPolygon& poly,
                               const std::string& title);

// Validator for the schema subset used by schemas/result.schema.json:
// type, properties, required, additionalProperties, items, enum, minimum,
// maximum.  Returns one "<path>: <problem>" entry per violation.
std::vector<std::string> validate_against_schema(const nlohmann::json& value,
                                                 const nlohmann::json& schema);

}  // namespace plap
