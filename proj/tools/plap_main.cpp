#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plap/cheeger.hpp"
#include "plap/errors.hpp"
#include "plap/experiments.hpp"
#include "plap/functional.hpp"
#include "plap/io.hpp"
#include "plap/shapeopt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plap;

namespace {

// ---- option plumbing --------------------------------------------------------

struct CommonOpts {
  std::string solver_config_path;
  int levels = 0;      // 0 = keep
  int resolution = 0;  // 0 = keep
  int radial_n = 0;    // 0 = keep
  std::string out_dir;
  bool json_out = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--solver-config", o.solver_config_path,
                  "JSON file with solver settings (levels, max_iter, tol, "
                  "p_schedule, resolution, radial_n)");
  cmd->add_option("--levels", o.levels, "override mesh ladder depth");
  cmd->add_option("--resolution", o.resolution,
                  "override coarse planar resolution");
  cmd->add_option("--radial-n", o.radial_n, "override finest radial cells");
  cmd->add_option("--out", o.out_dir,
                  "output directory (result.json, config.json, CSV/SVG)");
  cmd->add_flag("--json", o.json_out, "print the result JSON to stdout");
  cmd->add_option("--threads", o.threads, "worker cap for sweep rows")
      ->check(CLI::PositiveNumber);
}

SolverConfig effective_config(const CommonOpts& o) {
  SolverConfig cfg;
  if (!o.solver_config_path.empty()) {
    std::ifstream in(o.solver_config_path);
    if (!in)
      throw config_error("cannot open solver config '" + o.solver_config_path +
                         "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& ex) {
      throw config_error("solver config '" + o.solver_config_path +
                         "': " + ex.what());
    }
    cfg = config_from_json(j);
  }
  if (o.levels > 0) cfg.levels = o.levels;
  if (o.resolution > 0) cfg.resolution = o.resolution;
  if (o.radial_n > 0) cfg.radial_n = o.radial_n;
  return cfg;
}

// ---- domain specs -----------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw config_error(context + ": expected a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& context) {
  const double v = parse_num(s, context);
  if (v != std::floor(v))
    throw config_error(context + ": expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

// square | rect:WxH | disc[:N] | ball:D:R | annulus:D:r:R |
// perforated:SIDE:EPS:R | path to a .poly file
Domain parse_domain_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& head = parts[0];
  const auto want = [&](std::size_t n) {
    if (parts.size() != n)
      throw config_error("domain '" + spec + "': expected " +
                         std::to_string(n - 1) + " parameter(s) after '" +
                         head + "'");
  };
  if (head == "square") {
    want(1);
    return RectangleDomain{1.0, 1.0};
  }
  if (head == "rect") {
    want(2);
    const auto wh = split(parts[1], 'x');
    if (wh.size() != 2)
      throw config_error("domain '" + spec + "': rect wants WxH");
    return make_rectangle(parse_num(wh[0], spec), parse_num(wh[1], spec));
  }
  if (head == "disc") {
    int n = 256;
    if (parts.size() == 2) n = parse_int(parts[1], spec);
    else want(1);
    return PolygonDomain{regular_polygon(n)};
  }
  if (head == "ball") {
    want(3);
    return make_ball(parse_int(parts[1], spec), parse_num(parts[2], spec));
  }
  if (head == "annulus") {
    want(4);
    return make_annulus(parse_int(parts[1], spec), parse_num(parts[2], spec),
                        parse_num(parts[3], spec));
  }
  if (head == "perforated") {
    want(4);
    return make_perforated_square(parse_num(parts[1], spec),
                                  parse_num(parts[2], spec),
                                  parse_num(parts[3], spec));
  }
  return PolygonDomain{read_polygon_file(spec)};
}

// ---- output plumbing --------------------------------------------------------

struct OutputFile {
  std::string name;
  std::string content;
};

void emit(const CommonOpts& o, const std::string& command,
          const std::string& domain, const json& extra_config,
          const json& result, const std::vector<OutputFile>& files) {
  json config = {{"solver", config_json(effective_config(o))},
                 {"threads", o.threads}};
  for (auto it = extra_config.begin(); it != extra_config.end(); ++it)
    config[it.key()] = it.value();
  json envelope = {{"command", command}, {"config", config}, {"result", result}};
  if (!domain.empty()) envelope["domain"] = domain;

  if (o.json_out) std::cout << envelope.dump(2) << "\n";

  if (o.out_dir.empty()) return;
  fs::create_directories(o.out_dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(o.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw config_error("cannot write '" + path.string() + "'");
    out << text;
  };
  write("result.json", envelope.dump(2) + "\n");
  write("config.json", config.dump(2) + "\n");
  for (const auto& f : files) write(f.name, f.content);
}

std::string status_mark(BoundStatus s) {
  switch (s) {
    case BoundStatus::Satisfied: return "[ok]  ";
    case BoundStatus::Failed: return "[FAIL]";
    case BoundStatus::Inconclusive: return "[~]   ";
    case BoundStatus::Skipped: return "[skip]";
  }
  return "[?]   ";
}

void print_record_line(const SweepRecord& r) {
  std::cout << status_mark(r.status) << " ";
  for (const auto& [k, v] : r.params)
    std::cout << k << "=" << format_number(v) << " ";
  std::cout << "| ";
  for (const char* key : {"lambda", "lambda_p", "mu", "ratio", "p_ratio",
                          "lambda_perforated", "lower", "upper", "mu_bound"}) {
    if (auto it = r.values.find(key);
        it != r.values.end() && !std::isnan(it->second))
      std::cout << key << "=" << format_number(it->second) << " ";
  }
  if (!r.note.empty()) std::cout << "(" << r.note << ")";
  std::cout << "\n";
}

int emit_records(const CommonOpts& o, const std::string& command,
                 const std::string& domain, const json& extra_config,
                 const std::vector<SweepRecord>& records,
                 const std::string& xkey, const std::string& ykey,
                 const std::string& title) {
  for (const auto& r : records) print_record_line(r);

  json arr = json::array();
  for (const auto& r : records) arr.push_back(record_json(r));

  std::vector<OutputFile> files;
  if (!o.out_dir.empty()) {
    std::ostringstream csv;
    write_records_csv(csv, records);
    files.push_back({"records.csv", csv.str()});

    PlotSeries series{ykey, {}};
    for (const auto& r : records) {
      const double x = r.params.count(xkey) ? r.params.at(xkey) : 0.0;
      if (auto it = r.values.find(ykey); it != r.values.end())
        series.points.emplace_back(x, it->second);
    }
    files.push_back(
        {"plot.svg", svg_plot({series}, xkey, ykey, title)});
  }
  emit(o, command, domain, extra_config, {{"records", arr}}, files);
  return 0;
}

std::string direction_name(OptimizeDirection d) {
  return d == OptimizeDirection::Minimize ? "min" : "max";
}

std::string trend_name(DiameterTrend t) {
  switch (t) {
    case DiameterTrend::Bounded: return "bounded";
    case DiameterTrend::Escaping: return "escaping";
    default: return "insufficient-data";
  }
}

// ---- subcommand bodies ------------------------------------------------------

int run_eigen(const CommonOpts& o, const std::string& domain_spec,
              const std::string& p_str, bool dump_mesh) {
  const Exponent p = Exponent::parse(p_str);
  if (!p.is_finite())
    throw config_error(
        "eigen solves finite exponents only; the endpoints are covered by "
        "'cheeger' (p = 1) and the inradius leg of 'ratio' (p = inf)");
  const Domain dom = parse_domain_spec(domain_spec);
  const SolverConfig cfg = effective_config(o);

  EigenEstimate est;
  if (const auto* ball = std::get_if<BallDomain>(&dom))
    est = eigen_radial(*ball, p.value(), cfg);
  else if (const auto* ann = std::get_if<AnnulusDomain>(&dom))
    est = eigen_radial(*ann, p.value(), cfg);
  else
    est = eigen_2d(dom, p.value(), cfg);

  std::cout << "lambda_" << p.str() << "(" << domain_spec
            << ") = " << format_number(est.extrapolated) << "  (indicator "
            << format_number(est.error_indicator) << ", "
            << est.level_values.size() << " levels, " << est.iterations
            << " iterations, "
            << (est.converged ? "converged" : "NOT converged") << ")\n";
  if (!est.converged && !est.message.empty())
    std::cout << "  " << est.message << "\n";

  std::vector<OutputFile> files;
  if (dump_mesh) {
    if (!est.mesh)
      throw config_error("--dump-mesh applies to planar domains only");
    if (o.out_dir.empty())
      throw config_error("--dump-mesh needs --out");
    std::ostringstream vs, ts;
    write_mesh_vertices_csv(vs, *est.mesh);
    write_mesh_triangles_csv(ts, *est.mesh);
    files.push_back({"mesh_vertices.csv", vs.str()});
    files.push_back({"mesh_triangles.csv", ts.str()});
  }
  emit(o, "eigen", domain_spec, {{"p", p.str()}},
       {{"estimate", estimate_json(est)}}, files);
  return est.converged ? 0 : 1;
}

int run_cheeger(const CommonOpts& o, const std::string& domain_spec,
                double tol) {
  const Domain dom = parse_domain_spec(domain_spec);
  const CheegerResult res = cheeger_extended(dom, tol, effective_config(o));
  const json j = cheeger_json(res);
  std::cout << "h(" << domain_spec << ") = " << format_number(res.h) << "  ("
            << j["method"].get<std::string>();
  if (const auto* b = std::get_if<BoundsOnly>(&res.method))
    std::cout << ", bracket [" << format_number(b->lower) << ", "
              << format_number(b->upper) << "]";
  std::cout << ")\n";
  emit(o, "cheeger", domain_spec, {{"tol", tol}}, {{"cheeger", j}}, {});
  return 0;
}

int run_ratio(const CommonOpts& o, const std::string& domain_spec,
              const std::string& p_str, const std::string& q_str) {
  const Exponent p = Exponent::parse(p_str);
  const Exponent q = Exponent::parse(q_str);
  const Domain dom = parse_domain_spec(domain_spec);
  const RatioResult res = ratio(dom, p, q, effective_config(o));
  std::cout << "F_{" << p.str() << "," << q.str() << "}(" << domain_spec
            << ") = " << format_number(res.ratio) << "  (indicator "
            << format_number(res.error_indicator) << ", " << res.provenance
            << ")\n";
  emit(o, "ratio", domain_spec, {{"p", p.str()}, {"q", q.str()}},
       {{"ratio", ratio_json(res)}}, {});
  return 0;
}

std::vector<std::pair<Exponent, Exponent>> parse_pairs(const std::string& s) {
  std::vector<std::pair<Exponent, Exponent>> out;
  for (const auto& item : split(s, ',')) {
    const auto pq = split(item, ':');
    if (pq.size() != 2)
      throw config_error("--pairs: expected 'p:q', got '" + item + "'");
    Exponent p = Exponent::parse(pq[0]);
    Exponent q = Exponent::parse(pq[1]);
    if (!(q < p))
      throw config_error("--pairs: need q < p, got '" + item + "'");
    out.emplace_back(p, q);
  }
  if (out.empty()) throw config_error("--pairs: empty list");
  return out;
}

int run_check(const CommonOpts& o, const std::string& domain_spec,
              const std::string& pairs_str) {
  const auto pairs = parse_pairs(pairs_str);
  const Domain dom = parse_domain_spec(domain_spec);

  std::set<Exponent> exps;
  std::set<std::string> pair_tags;
  std::set<std::string> single_tags;
  for (const auto& [p, q] : pairs) {
    exps.insert(p);
    exps.insert(q);
    pair_tags.insert("(p=" + p.str() + ",q=" + q.str() + ")");
    single_tags.insert("(p=" + p.str() + ")");
    single_tags.insert("(p=" + q.str() + ")");
  }

  auto reports = inequality_suite(dom, {exps.begin(), exps.end()},
                                  effective_config(o));
  // the suite covers every pair of the exponent set; keep the requested
  // pairs plus the single-exponent facts they touch
  std::erase_if(reports, [&](const BoundReport& r) {
    if (r.name.find(",q=") != std::string::npos) {
      for (const auto& tag : pair_tags)
        if (r.name.find(tag) != std::string::npos) return false;
      return true;
    }
    if (r.name.find("(p=") != std::string::npos) {
      for (const auto& tag : single_tags)
        if (r.name.find(tag) != std::string::npos) return false;
      return true;
    }
    return false;
  });

  int failed = 0, inconclusive = 0, skipped = 0, satisfied = 0;
  for (const auto& r : reports) {
    std::cout << status_mark(r.status) << " " << r.name;
    if (!std::isnan(r.value)) {
      std::cout << " = " << format_number(r.value) << " in ";
      std::cout << (r.strict_lower ? "(" : "[") << format_number(r.lower)
                << ", " << format_number(r.upper)
                << (r.strict_upper ? ")" : "]");
      std::cout << " margin " << format_number(r.margin);
    }
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    switch (r.status) {
      case BoundStatus::Failed: ++failed; break;
      case BoundStatus::Inconclusive: ++inconclusive; break;
      case BoundStatus::Skipped: ++skipped; break;
      case BoundStatus::Satisfied: ++satisfied; break;
    }
  }
  std::cout << "check: " << satisfied << " satisfied, " << inconclusive
            << " inconclusive, " << skipped << " skipped, " << failed
            << " failed\n";

  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  std::vector<OutputFile> files;
  if (!o.out_dir.empty()) {
    std::ostringstream csv;
    write_reports_csv(csv, reports);
    files.push_back({"reports.csv", csv.str()});
  }
  emit(o, "check", domain_spec, {{"pairs", pairs_str}},
       {{"reports", arr}}, files);
  return failed > 0 ? 1 : 0;
}

int run_optimize(const CommonOpts& o, const std::string& p_str,
                 const std::string& q_str, const std::string& direction,
                 int n_vertices, long budget, unsigned long long seed,
                 double aspect_cap, int restarts, double step) {
  OptimizeConfig cfg;
  cfg.p = Exponent::parse(p_str);
  cfg.q = Exponent::parse(q_str);
  cfg.direction = direction == "max" ? OptimizeDirection::Maximize
                                     : OptimizeDirection::Minimize;
  cfg.n_vertices = n_vertices;
  cfg.budget = budget;
  cfg.seed = seed;
  cfg.aspect_cap = aspect_cap;
  cfg.random_restarts = restarts;
  cfg.initial_step = step;
  // --levels / --resolution tune the confirmation solves; screening keeps
  // its cheap defaults
  if (o.levels > 0) cfg.confirm.levels = o.levels;
  if (o.resolution > 0) cfg.confirm.resolution = o.resolution;

  const ShapeState state = optimize_shape(cfg);
  const EscapeReport monitor = diameter_escape_monitor(state);

  std::cout << direction << " F_{" << cfg.p.str() << "," << cfg.q.str()
            << "}: best = " << format_number(state.value.ratio)
            << "  (indicator " << format_number(state.value.error_indicator)
            << ", " << state.evaluations << " evaluations, "
            << state.history.size() << " accepted)\n";
  if (state.aspect_capped) std::cout << "stopped on the aspect cap\n";
  std::cout << monitor.summary << "\n";

  const json run_cfg = {{"p", cfg.p.str()},
                        {"q", cfg.q.str()},
                        {"direction", direction_name(cfg.direction)},
                        {"n_vertices", cfg.n_vertices},
                        {"budget", cfg.budget},
                        {"seed", cfg.seed},
                        {"aspect_cap", cfg.aspect_cap},
                        {"restarts", cfg.random_restarts},
                        {"initial_step", cfg.initial_step}};
  const json result = {
      {"best",
       {{"value", state.value.ratio},
        {"error_indicator", state.value.error_indicator},
        {"polygon", polygon_json(state.polygon)},
        {"evaluations", state.evaluations},
        {"exploratory", state.exploratory},
        {"aspect_capped", state.aspect_capped}}},
      {"monitor",
       {{"trend", trend_name(monitor.trend)}, {"summary", monitor.summary}}}};

  std::vector<OutputFile> files;
  if (!o.out_dir.empty()) {
    std::ostringstream csv;
    write_history_csv(csv, state.history);
    files.push_back({"history.csv", csv.str()});
    files.push_back({"best.poly", polygon_text(state.polygon)});
    files.push_back(
        {"best.svg",
         svg_polygon_figure(state.polygon,
                            "F = " + format_number(state.value.ratio))});
  }
  emit(o, "optimize", "", run_cfg, result, files);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-invariant eigenvalue ratios on convex and perforated "
               "domains"};
  app.require_subcommand(1);

  // eigen
  CommonOpts eigen_opts;
  std::string eigen_domain, eigen_p;
  bool eigen_dump_mesh = false;
  auto* eigen_cmd =
      app.add_subcommand("eigen", "principal Dirichlet eigenvalue");
  eigen_cmd->add_option("--domain", eigen_domain, "domain spec or .poly file")
      ->required();
  eigen_cmd->add_option("--p", eigen_p, "exponent (finite)")->required();
  eigen_cmd->add_flag("--dump-mesh", eigen_dump_mesh,
                      "write the finest mesh as CSV (planar, needs --out)");
  add_common(eigen_cmd, eigen_opts);

  // cheeger
  CommonOpts ch_opts;
  std::string ch_domain;
  double ch_tol = 1e-10;
  auto* ch_cmd = app.add_subcommand("cheeger", "Cheeger constant");
  ch_cmd->add_option("--domain", ch_domain, "domain spec or .poly file")
      ->required();
  ch_cmd->add_option("--tol", ch_tol, "bisection tolerance on the radius");
  add_common(ch_cmd, ch_opts);

  // ratio
  CommonOpts ratio_opts;
  std::string ratio_domain, ratio_p, ratio_q;
  auto* ratio_cmd =
      app.add_subcommand("ratio", "scale ratio F_{p,q} = Lambda_p / Lambda_q");
  ratio_cmd->add_option("--domain", ratio_domain, "domain spec or .poly file")
      ->required();
  ratio_cmd->add_option("--p", ratio_p, "upper exponent (1, inf, or decimal)")
      ->required();
  ratio_cmd->add_option("--q", ratio_q, "lower exponent, q < p")->required();
  add_common(ratio_cmd, ratio_opts);

  // check
  CommonOpts check_opts;
  std::string check_domain, check_pairs;
  auto* check_cmd =
      app.add_subcommand("check", "evaluate the inequality suite");
  check_cmd->add_option("--domain", check_domain, "domain spec or .poly file")
      ->required();
  check_cmd
      ->add_option("--pairs", check_pairs,
                   "comma list of p:q pairs, e.g. 2:1,3:1.5,inf:2")
      ->required();
  add_common(check_cmd, check_opts);

  // optimize
  CommonOpts opt_opts;
  std::string opt_p = "2", opt_q = "1", opt_direction = "min";
  int opt_n = 8, opt_restarts = 1;
  long opt_budget = 300;
  unsigned long long opt_seed = 1;
  double opt_cap = 64.0, opt_step = 0.1;
  auto* opt_cmd = app.add_subcommand(
      "optimize", "stochastic shape search over unit-area convex polygons");
  opt_cmd->add_option("--p", opt_p, "upper exponent");
  opt_cmd->add_option("--q", opt_q, "lower exponent, q < p");
  opt_cmd->add_option("--direction", opt_direction, "min or max")
      ->check(CLI::IsMember({"min", "max"}));
  opt_cmd->add_option("--n-vertices", opt_n, "vertex budget, 3..64");
  opt_cmd->add_option("--budget", opt_budget, "proposal budget");
  opt_cmd->add_option("--seed", opt_seed, "RNG seed");
  opt_cmd->add_option("--aspect-cap", opt_cap, "diameter/width stop");
  opt_cmd->add_option("--restarts", opt_restarts, "random-hull restarts");
  opt_cmd->add_option("--step", opt_step, "initial kick scale");
  add_common(opt_cmd, opt_opts);

  // sweeps
  CommonOpts sb_opts;
  std::string sb_p = "3", sb_q = "1", sb_dims = "2,8,32,128";
  auto* sb_cmd =
      app.add_subcommand("sweep-balls", "unit-ball scale across dimensions");
  sb_cmd->add_option("--p", sb_p, "upper exponent (finite, > 1)");
  sb_cmd->add_option("--q", sb_q, "lower exponent (>= 1, < p)");
  sb_cmd->add_option("--dims", sb_dims, "comma list of dimensions");
  add_common(sb_cmd, sb_opts);

  CommonOpts sp_opts;
  std::string sp_p = "1.5", sp_scalings = "0.2:0.008,0.1:0.001";
  auto* sp_cmd = app.add_subcommand("sweep-perforation",
                                    "perforated-square homogenization regimes");
  sp_cmd->add_option("--p", sp_p, "exponent in (1, 2]");
  sp_cmd->add_option("--scalings", sp_scalings,
                     "comma list of eps:r hole scalings");
  add_common(sp_cmd, sp_opts);

  CommonOpts sc_opts;
  std::string sc_p = "2", sc_lengths = "1,2,4,8";
  auto* sc_cmd = app.add_subcommand(
      "sweep-cylinder", "rectangles (0,1)x(0,L) against the product estimate");
  sc_cmd->add_option("--p", sc_p, "exponent in [1.1, 16]");
  sc_cmd->add_option("--lengths", sc_lengths, "comma list of lengths L");
  add_common(sc_cmd, sc_opts);

  try {
    app.parse(argc, argv);

    if (eigen_cmd->parsed())
      return run_eigen(eigen_opts, eigen_domain, eigen_p, eigen_dump_mesh);
    if (ch_cmd->parsed()) return run_cheeger(ch_opts, ch_domain, ch_tol);
    if (ratio_cmd->parsed())
      return run_ratio(ratio_opts, ratio_domain, ratio_p, ratio_q);
    if (check_cmd->parsed())
      return run_check(check_opts, check_domain, check_pairs);
    if (opt_cmd->parsed())
      return run_optimize(opt_opts, opt_p, opt_q, opt_direction, opt_n,
                          opt_budget, opt_seed, opt_cap, opt_restarts,
                          opt_step);

    if (sb_cmd->parsed()) {
      const double p = parse_num(sb_p, "--p");
      const double q = parse_num(sb_q, "--q");
      std::vector<int> dims;
      for (const auto& tok : split(sb_dims, ','))
        dims.push_back(parse_int(tok, "--dims"));
      const auto recs = ball_dimension_sweep(p, q, dims, effective_config(sb_opts),
                                             sb_opts.threads);
      return emit_records(sb_opts, "sweep-balls", "",
                          {{"p", p}, {"q", q}, {"dims", sb_dims}}, recs, "d",
                          "ratio", "unit-ball scale ratio vs dimension");
    }
    if (sp_cmd->parsed()) {
      const double p = parse_num(sp_p, "--p");
      std::vector<std::pair<double, double>> scalings;
      for (const auto& tok : split(sp_scalings, ',')) {
        const auto er = split(tok, ':');
        if (er.size() != 2)
          throw config_error("--scalings: expected 'eps:r', got '" + tok + "'");
        scalings.emplace_back(parse_num(er[0], "--scalings"),
                              parse_num(er[1], "--scalings"));
      }
      const auto recs = perforation_sweep(p, scalings, effective_config(sp_opts),
                                          sp_opts.threads);
      return emit_records(sp_opts, "sweep-perforation", "",
                          {{"p", p}, {"scalings", sp_scalings}}, recs, "eps",
                          "mu", "mixed cell value vs hole spacing");
    }
    if (sc_cmd->parsed()) {
      const double p = parse_num(sc_p, "--p");
      std::vector<double> lengths;
      for (const auto& tok : split(sc_lengths, ','))
        lengths.push_back(parse_num(tok, "--lengths"));
      const auto recs = cylinder_sweep(p, lengths, effective_config(sc_opts),
                                       sc_opts.threads);
      return emit_records(sc_opts, "sweep-cylinder", "",
                          {{"p", p}, {"lengths", sc_lengths}}, recs, "L",
                          "lambda", "cylinder eigenvalue vs length");
    }
    return 2;  // unreachable: require_subcommand(1)
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const solver_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
