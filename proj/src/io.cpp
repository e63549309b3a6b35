#include "plap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "plap/errors.hpp"

namespace plap {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// round through the 12-digit representation so JSON payloads print exactly
// what the CSV prints
double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt("%.12g", v).c_str(), nullptr);
}

std::string csv_cell(double v) {
  if (std::isnan(v)) return "";
  return format_number(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double v) { return fmt("%.12g", v); }

ConvexPolygon parse_polygon_text(const std::string& text,
                                 const std::string& source) {
  std::vector<Vec2> vertices;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double x, y;
    std::string trailing;
    if (!(ls >> x >> y) || (ls >> trailing)) {
      std::ostringstream msg;
      msg << source << ":" << lineno << ": expected a vertex as 'x y', got '"
          << line << "'";
      throw config_error(msg.str());
    }
    vertices.emplace_back(x, y);
  }
  try {
    return ConvexPolygon(std::move(vertices));
  } catch (const config_error& ex) {
    throw config_error(source + ": " + ex.what());
  }
}

ConvexPolygon read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open polygon file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polygon_text(buf.str(), path);
}

std::string polygon_text(const ConvexPolygon& poly) {
  std::ostringstream out;
  out << "# " << poly.size() << " vertices, counter-clockwise\n";
  for (const Vec2& v : poly.vertices())
    out << format_number(v.x()) << " " << format_number(v.y()) << "\n";
  return out.str();
}

void write_polygon_file(const std::string& path, const ConvexPolygon& poly) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write polygon file '" + path + "'");
  out << polygon_text(poly);
}

nlohmann::json config_json(const SolverConfig& cfg) {
  return {{"levels", cfg.levels},     {"max_iter", cfg.max_iter},
          {"tol", cfg.tol},           {"p_schedule", cfg.p_schedule},
          {"resolution", cfg.resolution}, {"radial_n", cfg.radial_n}};
}

SolverConfig config_from_json(const nlohmann::json& j) {
  SolverConfig cfg;
  try {
    cfg.levels = j.value("levels", cfg.levels);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.p_schedule = j.value("p_schedule", cfg.p_schedule);
    cfg.resolution = j.value("resolution", cfg.resolution);
    cfg.radial_n = j.value("radial_n", cfg.radial_n);
  } catch (const nlohmann::json::exception& ex) {
    throw config_error(std::string("solver config: ") + ex.what());
  }
  return cfg;
}

nlohmann::json estimate_json(const EigenEstimate& est) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [h, lam] : est.level_values)
    levels.push_back({round12(h), round12(lam)});
  return {{"p", round12(est.p)},
          {"levels", std::move(levels)},
          {"extrapolated", round12(est.extrapolated)},
          {"error_indicator", round12(est.error_indicator)},
          {"iterations", est.iterations},
          {"converged", est.converged},
          {"message", est.message}};
}

nlohmann::json cheeger_json(const CheegerResult& r) {
  nlohmann::json j = {{"h", round12(r.h)},
                      {"cheeger_radius", round12(r.cheeger_radius)},
                      {"lower", nullptr},
                      {"upper", nullptr}};
  if (std::holds_alternative<ConvexBisection>(r.method)) {
    j["method"] = "convex-bisection";
  } else if (std::holds_alternative<BallFormula>(r.method)) {
    j["method"] = "ball-formula";
  } else {
    const auto& b = std::get<BoundsOnly>(r.method);
    j["method"] = "bounds-only";
    j["lower"] = round12(b.lower);
    j["upper"] = round12(b.upper);
  }
  return j;
}

nlohmann::json report_json(const BoundReport& r) {
  return {{"name", r.name},
          {"value", round12(r.value)},
          {"lower", round12(r.lower)},
          {"upper", round12(r.upper)},
          {"strict_lower", r.strict_lower},
          {"strict_upper", r.strict_upper},
          {"margin", round12(r.margin)},
          {"status", to_string(r.status)},
          {"satisfied", r.satisfied},
          {"note", r.note}};
}

nlohmann::json scale_json(const ScaleResult& r) {
  return {{"p", r.p.str()},
          {"value", round12(r.value)},
          {"error", round12(r.error)},
          {"method", r.method}};
}

nlohmann::json ratio_json(const RatioResult& r) {
  return {{"p", r.p.str()},
          {"q", r.q.str()},
          {"lambda_p_scale", round12(r.lambda_p_scale)},
          {"lambda_q_scale", round12(r.lambda_q_scale)},
          {"ratio", round12(r.ratio)},
          {"error_indicator", round12(r.error_indicator)},
          {"provenance", r.provenance}};
}

nlohmann::json record_json(const SweepRecord& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = round12(v);
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, v] : r.values) values[k] = round12(v);
  return {{"experiment", r.experiment},
          {"params", std::move(params)},
          {"values", std::move(values)},
          {"status", to_string(r.status)},
          {"note", r.note}};
}

nlohmann::json polygon_json(const ConvexPolygon& poly) {
  nlohmann::json vs = nlohmann::json::array();
  for (const Vec2& v : poly.vertices()) vs.push_back({round12(v.x()), round12(v.y())});
  return {{"vertices", std::move(vs)}};
}

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& rs) {
  os << "name,value,lower,upper,strict_lower,strict_upper,margin,status,"
        "satisfied,note\n";
  for (const BoundReport& r : rs) {
    os << csv_escape(r.name) << ',' << csv_cell(r.value) << ','
       << csv_cell(r.lower) << ',' << csv_cell(r.upper) << ','
       << int(r.strict_lower) << ',' << int(r.strict_upper) << ','
       << csv_cell(r.margin) << ',' << to_string(r.status) << ','
       << int(r.satisfied) << ',' << csv_escape(r.note) << '\n';
  }
}

std::vector<std::string> sweep_columns(const std::string& experiment) {
  if (experiment == "ball_dimension")
    return {"d", "p", "q", "n", "levels", "lambda_p", "lambda_p_err",
            "lambda_p_scale", "lambda_p_scale_err", "lambda_q_scale",
            "lambda_q_scale_err", "ratio", "ratio_err", "ratio_lower",
            "p_ratio", "upper_bound_lambda", "upper_bound_scale"};
  if (experiment == "perforation")
    return {"p", "d", "eps", "r", "a_eps", "n_holes", "mu", "mu_err",
            "mu_bound", "capacity_total", "fem", "lambda_perforated",
            "lambda_perforated_err", "lambda_square", "lambda_square_err"};
  if (experiment == "cylinder")
    return {"p", "L", "lambda", "lambda_err", "lower", "upper",
            "lambda_scale", "interval_scale"};
  return {};
}

void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& rs) {
  if (rs.empty()) return;
  std::vector<std::string> cols = sweep_columns(rs.front().experiment);
  if (cols.empty()) {
    // unknown experiment: params then values, both already key-sorted
    for (const auto& [k, v] : rs.front().params) cols.push_back(k);
    for (const auto& [k, v] : rs.front().values) cols.push_back(k);
  }
  os << "experiment";
  for (const auto& c : cols) os << ',' << c;
  os << ",status,note\n";
  for (const SweepRecord& r : rs) {
    os << r.experiment;
    for (const auto& c : cols) {
      os << ',';
      if (auto it = r.params.find(c); it != r.params.end())
        os << csv_cell(it->second);
      else if (auto jt = r.values.find(c); jt != r.values.end())
        os << csv_cell(jt->second);
    }
    os << ',' << to_string(r.status) << ',' << csv_escape(r.note) << '\n';
  }
}

void write_history_csv(std::ostream& os, const std::vector<HistoryEntry>& hs) {
  os << "iteration,value,diameter,restart\n";
  for (const HistoryEntry& h : hs)
    os << h.iteration << ',' << csv_cell(h.value) << ','
       << csv_cell(h.diameter) << ',' << h.restart << '\n';
}

void write_mesh_vertices_csv(std::ostream& os, const Mesh& m) {
  os << "x,y,boundary\n";
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    os << format_number(m.vertices[i].x()) << ','
       << format_number(m.vertices[i].y()) << ',' << int(m.on_boundary[i])
       << '\n';
}

void write_mesh_triangles_csv(std::ostream& os, const Mesh& m) {
  os << "a,b,c\n";
  for (const auto& t : m.triangles)
    os << t[0] << ',' << t[1] << ',' << t[2] << '\n';
}

// ---- SVG plotting -----------------------------------------------------------

namespace {

constexpr double kW = 640, kH = 440;
constexpr double kL = 72, kR = 24, kT = 36, kB = 54;

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double map(double v, double a, double b) const {  // data -> pixel
    const double t = log ? (std::log10(v) - std::log10(lo)) /
                               (std::log10(hi) - std::log10(lo))
                         : (v - lo) / (hi - lo);
    return a + t * (b - a);
  }
};

Axis fit_axis(std::vector<double> vals) {
  Axis ax;
  std::erase_if(vals, [](double v) { return !std::isfinite(v); });
  if (vals.empty()) return ax;
  const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
  ax.lo = *mn;
  ax.hi = *mx;
  // a positive range spanning over two decades reads better on a log axis
  if (ax.lo > 0.0 && ax.hi / ax.lo > 100.0) {
    ax.log = true;
    ax.lo = std::pow(10.0, std::floor(std::log10(ax.lo)));
    ax.hi = std::pow(10.0, std::ceil(std::log10(ax.hi)));
    return ax;
  }
  if (ax.hi == ax.lo) {
    ax.lo -= 0.5;
    ax.hi += 0.5;
  } else {
    const double pad = 0.05 * (ax.hi - ax.lo);
    ax.lo -= pad;
    ax.hi += pad;
  }
  return ax;
}

std::vector<double> axis_ticks(const Axis& ax) {
  std::vector<double> t;
  if (ax.log) {
    for (double e = std::log10(ax.lo); e <= std::log10(ax.hi) + 0.5; e += 1.0)
      t.push_back(std::pow(10.0, std::round(e)));
    return t;
  }
  const double raw = (ax.hi - ax.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double step = (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
  for (double v = std::ceil(ax.lo / step) * step; v <= ax.hi + 0.5 * step;
       v += step)
    t.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

std::string px(double v) { return fmt("%.2f", v); }

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

}  // namespace

std::string svg_plot(const std::vector<PlotSeries>& series,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::string& title) {
  std::vector<double> xs, ys;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xs.push_back(x);
      ys.push_back(y);
    }
  const Axis X = fit_axis(xs), Y = fit_axis(ys);

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
    << "\">\n";
  o << "<rect width=\"" << kW << "\" height=\"" << kH
    << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"15\">"
    << title << "</text>\n";

  // frame
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
    << "\" height=\"" << kH - kT - kB
    << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (double t : axis_ticks(X)) {
    if (t < X.lo || t > X.hi) continue;
    const double x = X.map(t, kL, kW - kR);
    o << "<line x1=\"" << px(x) << "\" y1=\"" << kH - kB << "\" x2=\"" << px(x)
      << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"#444\"/>\n";
    o << "<text x=\"" << px(x) << "\" y=\"" << kH - kB + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << fmt("%.6g", t) << "</text>\n";
  }
  for (double t : axis_ticks(Y)) {
    if (t < Y.lo || t > Y.hi) continue;
    const double y = Y.map(t, kH - kB, kT);
    o << "<line x1=\"" << kL - 5 << "\" y1=\"" << px(y) << "\" x2=\"" << kL
      << "\" y2=\"" << px(y) << "\" stroke=\"#444\"/>\n";
    o << "<text x=\"" << kL - 8 << "\" y=\"" << px(y + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt("%.6g", t) << "</text>\n";
  }
  o << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 16
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
    << xlabel << (X.log ? " (log)" : "") << "</text>\n";
  o << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       "transform=\"rotate(-90 18 "
    << (kT + kH - kB) / 2 << ")\">" << ylabel << (Y.log ? " (log)" : "")
    << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::ostringstream pts;
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      pts << px(X.map(x, kL, kW - kR)) << ',' << px(Y.map(y, kH - kB, kT))
          << ' ';
    }
    o << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
      << color << "\" stroke-width=\"1.5\"/>\n";
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      o << "<circle cx=\"" << px(X.map(x, kL, kW - kR)) << "\" cy=\""
        << px(Y.map(y, kH - kB, kT)) << "\" r=\"2.5\" fill=\"" << color
        << "\"/>\n";
    }
    if (series.size() > 1)
      o << "<text x=\"" << kW - kR - 8 << "\" y=\"" << kT + 16 + 16 * s
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\""
        << color << "\">" << series[s].label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_polygon_figure(const ConvexPolygon& poly,
                               const std::string& title) {
  double xlo = poly[0].x(), xhi = xlo, ylo = poly[0].y(), yhi = ylo;
  for (const Vec2& v : poly.vertices()) {
    xlo = std::min(xlo, v.x());
    xhi = std::max(xhi, v.x());
    ylo = std::min(ylo, v.y());
    yhi = std::max(yhi, v.y());
  }
  const double side = 400.0, margin = 30.0;
  const double scale = (side - 2 * margin) / std::max(xhi - xlo, yhi - ylo);
  const auto X = [&](double x) { return margin + (x - xlo) * scale; };
  // svg y grows downward
  const auto Y = [&](double y) { return side - margin - (y - ylo) * scale; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side
    << "\" height=\"" << side + 30 << "\">\n";
  o << "<rect width=\"" << side << "\" height=\"" << side + 30
    << "\" fill=\"white\"/>\n";
  o << "<text x=\"" << side / 2 << "\" y=\"20\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"14\">"
    << title << "</text>\n";
  o << "<polygon points=\"";
  for (const Vec2& v : poly.vertices()) o << px(X(v.x())) << ',' << px(Y(v.y()) + 30) << ' ';
  o << "\" fill=\"#cfe2f3\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  for (const Vec2& v : poly.vertices())
    o << "<circle cx=\"" << px(X(v.x())) << "\" cy=\"" << px(Y(v.y()) + 30)
      << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  o << "</svg>\n";
  return o.str();
}

// ---- schema subset ----------------------------------------------------------

namespace {

bool type_matches(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

void check_schema(const nlohmann::json& v, const nlohmann::json& s,
                  const std::string& path, std::vector<std::string>& out) {
  if (s.contains("type")) {
    const auto& t = s["type"];
    bool ok = false;
    if (t.is_string()) ok = type_matches(v, t.get<std::string>());
    else
      for (const auto& alt : t) ok = ok || type_matches(v, alt.get<std::string>());
    if (!ok) {
      out.push_back(path + ": expected type " + t.dump() + ", got " +
                    v.type_name());
      return;  // further keyword checks would only cascade
    }
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& alt : s["enum"]) ok = ok || (alt == v);
    if (!ok) out.push_back(path + ": value " + v.dump() + " not in enum");
  }
  if (s.contains("minimum") && v.is_number() &&
      v.get<double>() < s["minimum"].get<double>())
    out.push_back(path + ": " + v.dump() + " below minimum " +
                  s["minimum"].dump());
  if (s.contains("maximum") && v.is_number() &&
      v.get<double>() > s["maximum"].get<double>())
    out.push_back(path + ": " + v.dump() + " above maximum " +
                  s["maximum"].dump());
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& req : s["required"])
        if (!v.contains(req.get<std::string>()))
          out.push_back(path + ": missing required property '" +
                        req.get<std::string>() + "'");
    const auto props = s.contains("properties") ? s["properties"]
                                                : nlohmann::json::object();
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props.contains(it.key())) {
        check_schema(it.value(), props[it.key()], path + "." + it.key(), out);
      } else if (s.contains("additionalProperties")) {
        const auto& ap = s["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>())
          out.push_back(path + ": unexpected property '" + it.key() + "'");
        else if (ap.is_object())
          check_schema(it.value(), ap, path + "." + it.key(), out);
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i)
      check_schema(v[i], s["items"], path + "[" + std::to_string(i) + "]",
                   out);
  }
}

}  // namespace

std::vector<std::string> validate_against_schema(const nlohmann::json& value,
                                                 const nlohmann::json& schema) {
  std::vector<std::string> out;
  check_schema(value, schema, "$", out);
  return out;
}

}  // namespace plap
