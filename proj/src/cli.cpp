#include "galcurve/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "galcurve/checks.hpp"
#include "galcurve/curve.hpp"
#include "galcurve/format.hpp"
#include "galcurve/involute.hpp"
#include "galcurve/report_io.hpp"

namespace galcurve::cli {

namespace {

using nlohmann::json;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    raise(ErrorKind::Usage, "cannot read " + what + " from '" + std::string(text) + "'");
  }
  return v;
}

Range parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    raise(ErrorKind::Usage, "range must be lo:hi:n, got '" + text + "'");
  }
  Range r;
  r.lo = parse_number(std::string_view(text).substr(0, a), "range lower bound");
  r.hi = parse_number(std::string_view(text).substr(a + 1, b - a - 1), "range upper bound");
  const std::string count = text.substr(b + 1);
  auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), r.n);
  if (ec != std::errc{} || ptr != count.data() + count.size()) {
    raise(ErrorKind::Usage, "range sample count must be an integer, got '" + count + "'");
  }
  if (r.n < 2) raise(ErrorKind::Usage, "range needs n >= 2, got " + std::to_string(r.n));
  if (!(r.lo < r.hi)) raise(ErrorKind::Usage, "range needs lo < hi");
  return r;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      raise(ErrorKind::Usage, "parameter must be name=value, got '" + item + "'");
    }
    const std::string name = item.substr(0, eq);
    if (is_reserved_identifier(name)) {
      raise(ErrorKind::Usage, "'" + name + "' is reserved and cannot be a parameter");
    }
    params[name] = parse_number(std::string_view(item).substr(eq + 1), "parameter " + name);
  }
  return params;
}

/// Expressions "y;z" of a planar curve in the plane x = c, over its own
/// parameter (unbounded domain).
PlanarCurve parse_planar(const std::string& text, double plane_x, const ParamMap& params) {
  const auto cut = text.find(';');
  if (cut == std::string::npos || text.find(';', cut + 1) != std::string::npos) {
    raise(ErrorKind::Usage, "target must be two ';'-separated expressions, got '" + text + "'");
  }
  Expr y = Expr::parse(std::string_view(text).substr(0, cut));
  Expr z = Expr::parse(std::string_view(text).substr(cut + 1));
  for (const Expr* e : {&y, &z}) {
    for (const std::string& p : e->free_params()) {
      if (!params.contains(p)) raise(ErrorKind::UnboundParameter, "parameter '" + p + "' is not bound");
    }
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  return PlanarCurve(
      plane_x,
      [y, z, params](const Jet3& u) { return CoordJets{eval_jet(y, u, params), eval_jet(z, u, params)}; },
      Interval{-inf, inf});
}

std::optional<double> opt(double v) { return v; }

void append(std::vector<std::optional<double>>& row, const GVec3& v) {
  row.emplace_back(v.x);
  row.emplace_back(v.y);
  row.emplace_back(v.z);
}

std::vector<std::string> vec_columns(const std::string& name) {
  return {name + "_x", name + "_y", name + "_z"};
}

json params_json(const ParamMap& params) {
  json obj = json::object();
  for (const auto& [k, v] : params) obj[k] = v;
  return obj;
}

json range_json(const Range& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"n", r.n}}; }

struct Options {
  std::string curve;
  std::vector<std::string> params;
  std::string range;
  std::string format = "csv";
  std::string report_format = "json";
  std::string output;
  bool admissible = false;
  double c = 0.0;
  std::string target;
  double plane_x = 0.0;
  std::string u = "s";
  double y0 = 0.0;
  double z0 = 0.0;
  std::optional<double> y0b;
  std::optional<double> z0b;
  double step = 1e-3;
  std::string theorem;
  std::optional<double> tol;
  std::optional<int> n;
  int count = 100;
  std::uint64_t seed = 20240601;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& err) : o_(o), err_(err) {}

  int frenet_cmd(std::ostream& out) {
    const Range r = parse_range(o_.range);
    const AdmissibleCurve curve = build_curve(r);
    Table t;
    t.columns = {"s"};
    for (const char* v : {"T", "N", "B"}) {
      for (auto& col : vec_columns(v)) t.columns.push_back(col);
    }
    t.columns.push_back("kappa");
    t.columns.push_back("tau");
    for (double s : linspace(curve.domain(), r.n)) {
      std::vector<std::optional<double>> row{s};
      try {
        const FrenetFrame f = frenet(curve, s);
        append(row, f.T);
        append(row, f.N);
        append(row, f.B);
        row.push_back(opt(f.kappa));
        row.push_back(opt(f.tau));
      } catch (const FrameUndefined& e) {
        err_ << "warning: " << e.what() << "\n";
        append(row, e.tangent());
        row.resize(row.size() + 6);
        row.push_back(opt(e.kappa()));
        row.emplace_back(std::nullopt);
      }
      t.rows.push_back(std::move(row));
    }
    emit(out, "frenet", meta(r), t);
    return kExitOk;
  }

  int involute_cmd(std::ostream& out) {
    const Range r = parse_range(o_.range);
    const InvolutePair pair = make_involute(build_curve(r), o_.c);
    Table t;
    t.columns = {"s"};
    for (auto& col : vec_columns("base")) t.columns.push_back(col);
    for (auto& col : vec_columns("involute")) t.columns.push_back(col);
    for (const char* col : {"distance", "kappa_star", "dsstar_ds"}) t.columns.push_back(col);
    for (double s : linspace(pair.check_domain, r.n)) {
      const GVec3 base = pair.base.point(s);
      const GVec3 inv = pair.involute.point(s);
      const InvoluteFrame fr = involute_frame(pair, s);
      std::vector<std::optional<double>> row{s};
      append(row, base);
      append(row, inv);
      row.push_back(opt(g_norm(inv - base)));
      row.push_back(opt(fr.kappa_star));
      row.push_back(opt(fr.dsstar_ds));
      t.rows.push_back(std::move(row));
    }
    json m = meta(r);
    m["c"] = o_.c;
    m["check_domain"] = {pair.check_domain.lo, pair.check_domain.hi};
    emit(out, "involute", m, t);
    return kExitOk;
  }

  int evolute_cmd(std::ostream& out) {
    const Range r = parse_range(o_.range);
    const ParamMap params = parse_params(o_.params);
    EvoluteProblem p{parse_planar(o_.target, o_.plane_x, params),
                     Expr::parse(o_.u),
                     params,
                     o_.y0,
                     o_.z0,
                     r.lo,
                     r.hi,
                     positive(o_.step, "step")};
    const Evolute ev = make_evolute(p);
    Table t;
    t.columns = {"s", "y", "z", "dy", "dz"};
    for (double s : linspace(ev.curve.domain(), r.n)) {
      const CurveSample cs = eval3(ev.curve, s);
      t.rows.push_back({s, cs.position.y, cs.position.z, cs.r1.y, cs.r1.z});
    }
    json m = {{"target", o_.target}, {"plane_x", o_.plane_x}, {"u", p.correspondence.str()},
              {"params", params_json(params)}, {"y0", o_.y0}, {"z0", o_.z0},
              {"range", range_json(r)}, {"step", o_.step}};
    emit(out, "evolute", m, t);
    return kExitOk;
  }

  int verify_cmd(std::ostream& out) {
    const Range r = parse_range(o_.range);
    const int n = o_.n.value_or(r.n);
    const std::string& th = o_.theorem;
    CheckReport report;
    json m = {{"theorem", th}, {"range", range_json(r)}, {"n", n}};
    if (th == "3.4" && !o_.target.empty()) {
      report = thm34_from_target(r, n, m);
    } else {
      m["curve"] = o_.curve;
      m["params"] = params_json(parse_params(o_.params));
      const AdmissibleCurve curve = build_curve(r);
      if (th == "frenet-ode") {
        report = check_frenet_ode(curve, n, tol(kDefaultTolFrenetOde));
      } else if (th == "isometry") {
        m["count"] = o_.count;
        m["seed"] = o_.seed;
        report = check_isometry(curve, n, o_.count, o_.seed, tol(kDefaultTolIsometry));
      } else {
        m["c"] = o_.c;
        const InvolutePair pair = make_involute(curve, o_.c);
        if (th == "3.1") {
          report = check_thm31(pair, n, tol(kDefaultTolThm31));
        } else if (th == "3.2") {
          report = check_thm32(pair, n, tol(kDefaultTolThm32));
        } else if (th == "3.3") {
          report = check_thm33(pair, n, tol(kDefaultTolThm33));
        } else {
          report = thm34_from_pair(pair, n, m);
        }
      }
    }
    if (o_.report_format == "csv") {
      write_to(out, [&](std::ostream& os) { write_csv(os, report_to_table(report)); });
    } else {
      const json doc = {{"meta", m}, {"report", report_to_json(report)}};
      write_to(out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    }
    if (!report.pass) {
      err_ << "verification " << report.theorem_id << " failed: max deviation "
           << format_double(report.max_abs_deviation) << " > tolerance "
           << format_double(report.tolerance) << "\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  }

 private:
  AdmissibleCurve build_curve(const Range& r) const {
    if (o_.curve.empty()) raise(ErrorKind::Usage, "--curve is required");
    const CurveSpec spec =
        CurveSpec::parse(o_.curve, parse_params(o_.params), Interval{r.lo, r.hi},
                         o_.admissible ? std::optional(CurveKind::Admissible) : std::nullopt);
    return to_admissible(spec);
  }

  static double positive(double v, const std::string& what) {
    if (!(v > 0.0)) raise(ErrorKind::Usage, what + " must be positive");
    return v;
  }

  double tol(double fallback) const { return o_.tol ? positive(*o_.tol, "tolerance") : fallback; }

  CheckReport thm34_from_pair(const InvolutePair& pair, int n, json& m) const {
    const double step = positive(o_.step, "step");
    const GVec3 start = pair.base.point(pair.check_domain.lo);
    EvoluteProblem pb{pair.involute, Expr::parse("s"), {}, start.y, start.z,
                      pair.check_domain.lo, pair.check_domain.hi, step};
    EvoluteProblem pg = pb;
    pg.y0 = o_.y0b.value_or(start.y + 1.0);
    pg.z0 = o_.z0b.value_or(start.z);
    m["step"] = step;
    m["beta_initial"] = {pb.y0, pb.z0};
    m["gamma_initial"] = {pg.y0, pg.z0};
    return check_thm34(make_evolute(pb), make_evolute(pg), pair.involute, n, tol(kDefaultTolThm34));
  }

  CheckReport thm34_from_target(const Range& r, int n, json& m) const {
    const ParamMap params = parse_params(o_.params);
    const PlanarCurve target = parse_planar(o_.target, o_.plane_x, params);
    EvoluteProblem pb{target, Expr::parse(o_.u), params, o_.y0, o_.z0,
                      r.lo, r.hi, positive(o_.step, "step")};
    EvoluteProblem pg = pb;
    pg.y0 = o_.y0b.value_or(o_.y0 + 1.0);
    pg.z0 = o_.z0b.value_or(o_.z0);
    m["target"] = o_.target;
    m["plane_x"] = o_.plane_x;
    m["u"] = pb.correspondence.str();
    m["params"] = params_json(params);
    m["step"] = o_.step;
    m["beta_initial"] = {pb.y0, pb.z0};
    m["gamma_initial"] = {pg.y0, pg.z0};
    return check_thm34(make_evolute(pb), make_evolute(pg), target, n, tol(kDefaultTolThm34));
  }

  json meta(const Range& r) const {
    return {{"curve", o_.curve}, {"params", params_json(parse_params(o_.params))},
            {"range", range_json(r)}, {"admissible_flag", o_.admissible}};
  }

  template <typename F>
  void write_to(std::ostream& out, F&& write) const {
    if (o_.output.empty()) {
      write(out);
      return;
    }
    std::ofstream file(o_.output, std::ios::binary);
    if (!file) raise(ErrorKind::Usage, "cannot open output file '" + o_.output + "'");
    write(file);
  }

  void emit(std::ostream& out, const std::string& command, json m, const Table& t) const {
    if (o_.format == "csv") {
      write_to(out, [&](std::ostream& os) { write_csv(os, t); });
      return;
    }
    m["command"] = command;
    const json doc = {{"meta", std::move(m)}, {"rows", table_to_json(t)}};
    write_to(out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  const Options& o_;
  std::ostream& err_;
};

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", o.output, "Write data to this file instead of stdout");
}

void add_curve_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--curve", o.curve, "Curve as \"x;y;z\" in t (raw) or s (admissible)");
  cmd->add_option("--param", o.params, "Constant binding name=value (repeatable)");
  cmd->add_flag("--admissible", o.admissible, "Require x to be the parameter itself");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Frenet apparatus, involutes and evolutes of curves in Galilean space G3", "galcurve"};
  app.require_subcommand(1);

  CLI::App* frenet_cmd = app.add_subcommand("frenet", "Sample T, N, B, kappa and tau along a curve");
  add_curve_options(frenet_cmd, o);
  frenet_cmd->add_option("--range", o.range, "lo:hi:n")->required();
  add_output_options(frenet_cmd, o);

  CLI::App* involute_cmd = app.add_subcommand("involute", "Sample the involute alpha + (c - s) T");
  add_curve_options(involute_cmd, o);
  involute_cmd->add_option("--c", o.c, "Involute constant c")->required();
  involute_cmd->add_option("--range", o.range, "lo:hi:n")->required();
  add_output_options(involute_cmd, o);

  CLI::App* evolute_cmd = app.add_subcommand("evolute", "Integrate an evolute of a planar target");
  evolute_cmd->add_option("--target", o.target, "Target as \"y;z\" in its own parameter")->required();
  evolute_cmd->add_option("--plane-x", o.plane_x, "Plane coordinate c of the target")->required();
  evolute_cmd->add_option("--u", o.u, "Correspondence u(s)");
  evolute_cmd->add_option("--param", o.params, "Constant binding name=value (repeatable)");
  evolute_cmd->add_option("--y0", o.y0, "Initial y")->required();
  evolute_cmd->add_option("--z0", o.z0, "Initial z")->required();
  evolute_cmd->add_option("--range", o.range, "lo:hi:n")->required();
  evolute_cmd->add_option("--step", o.step, "RK4 step");
  add_output_options(evolute_cmd, o);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check an identity over a grid and report JSON");
  verify_cmd->add_option("--theorem", o.theorem, "Identity to check")
      ->required()
      ->check(CLI::IsMember({"3.1", "3.2", "3.3", "3.4", "frenet-ode", "isometry"}));
  add_curve_options(verify_cmd, o);
  verify_cmd->add_option("--c", o.c, "Involute constant c");
  verify_cmd->add_option("--range", o.range, "lo:hi:n")->required();
  verify_cmd->add_option("--tol", o.tol, "Tolerance (defaults per identity)");
  verify_cmd->add_option("--n", o.n, "Sample count (defaults to the range's n)");
  verify_cmd->add_option("--count", o.count, "Number of random isometries");
  verify_cmd->add_option("--seed", o.seed, "Seed for the random isometries");
  verify_cmd->add_option("--target", o.target, "3.4: target \"y;z\" instead of an involute");
  verify_cmd->add_option("--plane-x", o.plane_x, "3.4: plane coordinate of --target");
  verify_cmd->add_option("--u", o.u, "3.4: correspondence u(s)");
  verify_cmd->add_option("--y0", o.y0, "3.4: first evolute initial y");
  verify_cmd->add_option("--z0", o.z0, "3.4: first evolute initial z");
  verify_cmd->add_option("--y0b", o.y0b, "3.4: second evolute initial y");
  verify_cmd->add_option("--z0b", o.z0b, "3.4: second evolute initial z");
  verify_cmd->add_option("--step", o.step, "3.4: RK4 step");
  verify_cmd->add_option("--format", o.report_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  verify_cmd->add_option("--output,-o", o.output, "Write the report to this file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("galcurve");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Runner runner(o, err);
  try {
    if (frenet_cmd->parsed()) return runner.frenet_cmd(out);
    if (involute_cmd->parsed()) return runner.involute_cmd(out);
    if (evolute_cmd->parsed()) return runner.evolute_cmd(out);
    return runner.verify_cmd(out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return e.is_numeric() ? kExitNumeric : kExitUsage;
  }
}

}  // namespace galcurve::cli
