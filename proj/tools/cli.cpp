#include "cli.hpp"

#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsaxi/error.hpp"
#include "nsaxi/fields.hpp"
#include "nsaxi/format.hpp"
#include "nsaxi/solver.hpp"
#include "nsaxi/verify.hpp"

namespace nsaxi::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::optional<double>;  // empty prints as null

constexpr int kSchemaVersion = 1;

struct RunConfig {
  double rtol = 1e-12;
  double atol = 1e-14;
  double match_abs = 1e-6;
  double membership_rel = 1e-12;
  double gamma_rel = 1e-9;
  int grid = 101;
  int check_grid = 1000;
  std::string format = "csv";
  std::string out;
  int jobs = 1;
  std::vector<std::string> suites;
  bool strict = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.rtol = rtol;
    o.atol = atol;
    o.match_abs = match_abs;
    o.tol.membership_rel = membership_rel;
    o.tol.gamma_rel = gamma_rel;
    return o;
  }
};

struct Inputs {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::vector<std::string> ranges;
};

struct Range {
  double a = 0.0, b = 0.0;
  int n = 1;
  std::vector<double> values() const {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return v;
  }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto number = [&](const std::string& p, auto& v) {
    const auto res = std::from_chars(p.data(), p.data() + p.size(), v);
    if (res.ec != std::errc() || res.ptr != p.data() + p.size()) throw UsageError("bad range '" + text + "'");
  };
  if (parts.size() != 3) throw UsageError("range must look like a:b:n, got '" + text + "'");
  Range r;
  number(parts[0], r.a);
  number(parts[1], r.b);
  number(parts[2], r.n);
  if (r.n < 1) throw UsageError("range count must be at least 1");
  return r;
}

// ---------------------------------------------------------------------------------------------
// tables

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(std::vector<Json> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
  }

  Json records() const {
    Json arr = Json::array();
    for (const auto& row : rows_) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    return arr;
  }

 private:
  static std::string csv_cell(const Json& v) {
    if (v.is_null()) return "null";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Json>> rows_;
};

Json cell(Cell v) { return v && std::isfinite(*v) ? Json(*v) : Json(nullptr); }
Json cell(double v) { return cell(Cell(v)); }

template <class F>
Cell attempt(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------------------------

struct Context {
  RunConfig cfg;
  Inputs in;
  std::string command;
  std::ostream& out;
  std::ostream& err;

  Params params() const { return {in.c1, in.c2, in.c3}; }

  Json config_json() const {
    Json j;
    j["command"] = command;
    j["rtol"] = cfg.rtol;
    j["atol"] = cfg.atol;
    j["match_abs"] = cfg.match_abs;
    j["membership_rel"] = cfg.membership_rel;
    j["gamma_rel"] = cfg.gamma_rel;
    j["grid"] = cfg.grid;
    j["check_grid"] = cfg.check_grid;
    j["jobs"] = cfg.jobs;
    j["strict"] = cfg.strict;
    j["c1"] = in.c1;
    j["c2"] = in.c2;
    j["c3"] = in.c3;
    j["gamma"] = in.gamma ? Json(*in.gamma) : Json(nullptr);
    j["lambda"] = in.lambda ? Json(*in.lambda) : Json(nullptr);
    j["ranges"] = in.ranges;
    if (command == "verify") j["suites"] = cfg.suites.empty() ? default_suites() : cfg.suites;
    return j;
  }

  Json document(Json records) const {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config_json();
    doc["records"] = std::move(records);
    return doc;
  }

  void emit(const Table& t) const {
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + cfg.out);
      os = &file;
    }
    if (cfg.format == "json")
      *os << document(t.records()).dump(2) << '\n';
    else
      t.write_csv(*os);
  }
};

/// (c, gamma) for solve-like commands: --lambda selects the Landau solution with c = 0.
double resolve_gamma(Context& ctx) {
  if (ctx.in.lambda) {
    if (ctx.in.gamma) throw UsageError("--gamma and --lambda are exclusive");
    if (ctx.in.c1 != 0.0 || ctx.in.c2 != 0.0 || ctx.in.c3 != 0.0)
      throw UsageError("--lambda describes the Landau family, which has c = 0");
    landau(*ctx.in.lambda, 0.0);  // domain check
    return 2.0 / *ctx.in.lambda;
  }
  if (!ctx.in.gamma) throw UsageError(ctx.command + " needs --gamma or --lambda");
  return *ctx.in.gamma;
}

int cmd_gamma(Context& ctx) {
  const Solver solver(ctx.cfg.solver());
  const Params p = admit(ctx.params()).params;
  if (!in_j(p, ctx.cfg.solver().tol)) {
    ctx.err << "c3 = " << format_double(p.c3) << " is below c3_bar = " << format_double(c3_bar(p.c1, p.c2))
            << "; no solution exists\n";
    return kOutside;
  }
  const bool boundary = on_boundary(p, ctx.cfg.solver().tol);
  const int k = (p.c1 == -1.0 ? 1 : 0) + (p.c2 == -1.0 ? 2 : 0) + 1;
  Table t({"c1", "c2", "c3", "c3_bar", "gamma_plus", "gamma_minus", "boundary", "k"});
  t.add({cell(p.c1), cell(p.c2), cell(p.c3), cell(c3_bar(p.c1, p.c2)), cell(solver.gamma_plus(p)),
         cell(solver.gamma_minus(p)), Json(boundary), Json(boundary ? 0 : k)});
  ctx.emit(t);
  return kOk;
}

SolutionCurve solve_curve(Context& ctx, const Solver& solver) {
  const double gamma = resolve_gamma(ctx);
  const SolutionIndex idx = solver.classify(ctx.params(), gamma);
  if (!idx.stratum.inside())
    throw Error(ErrorKind::Domain, "(c, gamma) lies outside I; see the classify command");
  return solver.solve_ivp(ctx.params(), gamma);
}

int cmd_solve(Context& ctx) {
  const Solver solver(ctx.cfg.solver());
  const SolutionCurve curve = solve_curve(ctx, solver);
  Table t({"x", "U", "dU", "u_r", "u_theta", "p"});
  for (double x : solve_grid(ctx.cfg.grid)) {
    const Cell u = attempt([&] { return curve.eval(x); });
    const Cell du = attempt([&] { return curve.deriv(x, 1); });
    std::optional<FieldSample> f;
    try {
      f = reconstruct(curve, 1.0, x);
    } catch (const Error&) {
    }
    t.add({cell(x), cell(u), cell(du), cell(f ? Cell(f->u_r) : Cell()), cell(f ? Cell(f->u_theta) : Cell()),
           cell(f ? Cell(f->p) : Cell())});
  }
  ctx.emit(t);
  return kOk;
}

int cmd_field(Context& ctx) {
  const Solver solver(ctx.cfg.solver());
  const SolutionCurve curve = solve_curve(ctx, solver);
  if (ctx.in.ranges.size() > 1) throw UsageError("field takes one --range, for the radius");
  std::vector<double> radii{1.0};
  if (!ctx.in.ranges.empty()) radii = parse_range(ctx.in.ranges[0]).values();
  Table t({"r", "x", "u_r", "u_theta", "u_phi", "p"});
  for (const GridSample& g : sample_grid(curve, radii, solve_grid(ctx.cfg.grid))) {
    if (g.sample)
      t.add({cell(g.r), cell(g.x), cell(g.sample->u_r), cell(g.sample->u_theta), cell(g.sample->u_phi),
             cell(g.sample->p)});
    else
      t.add({cell(g.r), cell(g.x), nullptr, nullptr, nullptr, nullptr});
  }
  ctx.emit(t);
  return kOk;
}

int cmd_surface(Context& ctx) {
  const Solver solver(ctx.cfg.solver());
  if (ctx.in.ranges.size() > 3) throw UsageError("surface takes at most three --range (c1, c2, c3)");
  std::vector<std::vector<double>> axes{{ctx.in.c1}, {ctx.in.c2}, {ctx.in.c3}};
  for (std::size_t i = 0; i < ctx.in.ranges.size(); ++i) axes[i] = parse_range(ctx.in.ranges[i]).values();

  std::vector<Params> points;
  for (double a : axes[0])
    for (double b : axes[1])
      for (double c : axes[2]) points.push_back({a, b, c});

  struct Record {
    Cell bar, gp, gm;
    bool failed = false;
  };
  std::vector<Record> recs(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const Params& c = points[i];
      Record& r = recs[i];
      if (c.c1 < -1.0 || c.c2 < -1.0) continue;
      const Params p = admit(c).params;
      r.bar = c3_bar(p.c1, p.c2);
      if (!in_j(p, solver.options().tol)) continue;
      try {
        r.gp = solver.gamma_plus(p);
        r.gm = solver.gamma_minus(p);
      } catch (const Error&) {
        r.gp.reset();
        r.gm.reset();
        r.failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::min<int>(ctx.cfg.jobs, static_cast<int>(points.size())); ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Table t({"c1", "c2", "c3", "c3_bar", "gamma_plus", "gamma_minus"});
  bool any_failed = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    t.add({cell(points[i].c1), cell(points[i].c2), cell(points[i].c3), cell(recs[i].bar), cell(recs[i].gp),
           cell(recs[i].gm)});
    any_failed = any_failed || recs[i].failed;
  }
  ctx.emit(t);
  if (any_failed) ctx.err << "some points failed to integrate and are marked null\n";
  return any_failed && ctx.cfg.strict ? kNumerical : kOk;
}

int cmd_classify(Context& ctx) {
  const Solver solver(ctx.cfg.solver());
  if (!ctx.in.gamma) throw UsageError("classify needs --gamma");
  const SolutionIndex idx = solver.classify(ctx.params(), *ctx.in.gamma);
  const Params& p = idx.params;
  const bool pole_ok = p.c1 >= -1.0 && p.c2 >= -1.0;
  const bool in_set = pole_ok && in_j(p, solver.options().tol);
  Table t({"c1", "c2", "c3", "gamma", "stratum", "c3_bar", "gamma_plus", "gamma_minus"});
  t.add({cell(p.c1), cell(p.c2), cell(p.c3), cell(*ctx.in.gamma), Json(idx.stratum.name()),
         cell(pole_ok ? Cell(c3_bar(p.c1, p.c2)) : Cell()),
         cell(in_set ? attempt([&] { return solver.gamma_plus(p); }) : Cell()),
         cell(in_set ? attempt([&] { return solver.gamma_minus(p); }) : Cell())});
  ctx.emit(t);
  return idx.stratum.inside() ? kOk : kOutside;
}

int cmd_verify(Context& ctx) {
  VerifyOptions vo;
  vo.solver = ctx.cfg.solver();
  vo.grid_points = ctx.cfg.check_grid;
  const std::vector<std::string> suites = ctx.cfg.suites.empty() ? default_suites() : ctx.cfg.suites;
  const std::vector<CheckResult> results = run_suites(suites, vo, ctx.cfg.jobs);

  Json records = Json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    Json w = Json::array();
    for (const Witness& x : r.witnesses) w.push_back({{"input", x.input}, {"value", cell(x.value)}});
    records.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"measured", cell(r.measured)},
                       {"bound", cell(r.bound)},
                       {"note", r.note},
                       {"witnesses", w}});
    all = all && r.passed;
  }
  const std::string report = ctx.document(records).dump(2) + "\n";
  if (!ctx.cfg.out.empty()) {
    std::ofstream file(ctx.cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot write " + ctx.cfg.out);
    file << report;
  }
  if (ctx.cfg.format == "json" && ctx.cfg.out.empty()) {
    ctx.out << report;
  } else {
    for (const CheckResult& r : results)
      ctx.out << (r.passed ? "PASS " : "FAIL ") << r.name << " measured=" << format_double(r.measured)
              << " bound=" << format_double(r.bound) << '\n';
  }
  return all ? kOk : kNumerical;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return kOutside;
    case ErrorKind::Config: return kUsage;
    default: return kNumerical;
  }
}

// NSAXI_<KEY> sits between the config file and the command line. CLI11 ranks the file above the
// environment, so configurable options are overwritten here unless a flag set them.
void apply_env(CLI::App& app, const std::vector<std::string>& args) {
  for (CLI::Option* opt : app.get_options()) {
    if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
    std::string key = opt->get_lnames().back();
    std::string env = "NSAXI_";
    for (char ch : key) env += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    const char* value = std::getenv(env.c_str());
    if (!value) continue;
    bool on_command_line = false;
    for (const std::string& a : args)
      for (const std::string& name : opt->get_lnames())
        on_command_line = on_command_line || a == "--" + name || a.rfind("--" + name + "=", 0) == 0;
    if (on_command_line) continue;
    opt->clear();
    opt->add_result(std::string(value));
    opt->run_callback();
  }
}

}  // namespace

std::vector<double> solve_grid(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = std::sin(std::numbers::pi * (2 * i + 1 - n) / (2.0 * n));
  return xs;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Inputs in;
  CLI::App app{"Axisymmetric no-swirl Navier-Stokes solutions on the sphere: U(x) profiles, extremal surfaces, "
               "fields and numerical checks."};
  app.name("nsaxi");
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key = value file; flags override it, NSAXI_* variables override it too");
  app.allow_config_extras(CLI::config_extras_mode::error);

  auto positive = CLI::PositiveNumber;
  app.add_option("--rtol", cfg.rtol, "integrator relative tolerance")->check(positive);
  app.add_option("--atol", cfg.atol, "integrator absolute tolerance")->check(positive);
  app.add_option("--match-abs,--match_abs", cfg.match_abs, "endpoint matching floor")
      ->check(positive);
  app.add_option("--membership-rel,--membership_rel", cfg.membership_rel, "relative tolerance for c3 = c3_bar")
      ->check(positive);
  app.add_option("--gamma-rel,--gamma_rel", cfg.gamma_rel, "relative tolerance for gamma = gamma_pm")
      ->check(positive);
  app.add_option("--grid", cfg.grid, "points in the x-grid")->check(CLI::Range(2, 10'000'000));
  app.add_option("--check-grid,--check_grid", cfg.check_grid, "grid points used by verify checks")
      ->check(CLI::Range(2, 10'000'000));
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output path (stdout when empty)");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--suite", cfg.suites, "verify suite, repeatable");
  app.add_flag("--strict", cfg.strict, "surface: exit 3 if any point fails");

  app.add_option("--c1", in.c1)->configurable(false);
  app.add_option("--c2", in.c2)->configurable(false);
  app.add_option("--c3", in.c3)->configurable(false);
  app.add_option("--gamma", in.gamma, "U(0)")->configurable(false);
  app.add_option("--lambda", in.lambda, "Landau parameter, |lambda| > 1 (c = 0, gamma = 2/lambda)")
      ->configurable(false);
  app.add_option("--range", in.ranges, "a:b:n; surface: c1, c2, c3 axes in order; field: radius")
      ->configurable(false);

  std::string command;
  for (auto [name, help] : {std::pair{"gamma", "extremal values gamma_plus, gamma_minus and c3_bar"},
                            {"solve", "tabulate U and the fields on a pole-clustered grid"},
                            {"surface", "sweep gamma_plus, gamma_minus over a parameter grid"},
                            {"field", "velocity and pressure on an (r, x) grid"},
                            {"verify", "run the numerical property checks"},
                            {"classify", "stratum of (c, gamma)"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&command, sub] { command = sub->get_name(); });
  }

  std::vector<std::string> argv_store{"nsaxi"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    apply_env(app, args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{cfg, in, command, out, err};
  try {
    if (command == "gamma") return cmd_gamma(ctx);
    if (command == "solve") return cmd_solve(ctx);
    if (command == "surface") return cmd_surface(ctx);
    if (command == "field") return cmd_field(ctx);
    if (command == "verify") return cmd_verify(ctx);
    if (command == "classify") return cmd_classify(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace nsaxi::cli
