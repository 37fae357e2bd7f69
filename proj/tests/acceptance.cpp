// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is non-zero when any criterion fails.
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "galcurve/checks.hpp"
#include "galcurve/cli.hpp"
#include "galcurve/involute.hpp"
#include "galcurve/numerics.hpp"
#include "oracles.hpp"

using namespace galcurve;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

AdmissibleCurve curve(std::string_view text, Interval domain, ParamMap params = {}) {
  return to_admissible(CurveSpec::parse(text, std::move(params), domain));
}

PlanarCurve circle_target(double plane_x) {
  return PlanarCurve(plane_x, [](const Jet3& u) { return CoordJets{cos(u), sin(u)}; },
                     {-100, 100});
}

std::pair<double, double> mean_stddev(const std::vector<double>& f) {
  const double m = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  double acc = 0.0;
  for (double v : f) acc += (v - m) * (v - m);
  return {m, std::sqrt(acc / static_cast<double>(f.size()))};
}

std::vector<double> field_values(const CheckReport& r, std::string_view name) {
  std::vector<double> out;
  for (const SampleRecord& s : r.samples) {
    for (const auto& [key, value] : s.fields) {
      if (key == name) out.push_back(value);
    }
  }
  return out;
}

Verdict frenet_closed_forms() {
  Verdict v;
  const FrenetFrame f = frenet(curve("s;s^2;s^3", {-1, 1}), 0.0);
  v.require(std::abs(f.kappa - 2.0) <= 1e-12 && std::abs(f.tau - 3.0) <= 1e-12,
            "cubic kappa/tau off");
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double a = u(rng);
    const double w = u(rng);
    const AdmissibleCurve h = curve("s;a*cos(w*s);a*sin(w*s)", {0, 2}, {{"a", a}, {"w", w}});
    for (double s : linspace({0, 2}, 50)) {
      const FrenetFrame fr = frenet(h, s);
      worst = std::max({worst, std::abs(fr.kappa - a * w * w), std::abs(fr.tau - w)});
    }
  }
  v.require(worst <= 1e-9, "helix deviation " + num(worst));
  v.detail += (v.detail.empty() ? "" : "; ") + std::string("helix max dev ") + num(worst);
  return v;
}

Verdict frenet_ode() {
  Verdict v;
  testing::SmoothExprGen gen(555);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    // Random y and z plus a quadratic term so that kappa stays away from zero.
    const Expr y = Expr::from_tree(Node::make_binary(
        NodeKind::Add, Node::make_pow(Node::make_variable("t"), 2), gen.make(3)));
    const Expr z = Expr::from_tree(gen.make(3));
    const AdmissibleCurve c = curve("t;" + y.str() + ";" + z.str(), {0, 1});
    const CheckReport r = check_frenet_ode(c, 40);
    worst = std::max(worst, r.max_abs_deviation);
    v.require(r.pass, "curve " + std::to_string(k) + " residual " + num(r.max_abs_deviation));
  }
  if (v.pass) v.detail = "max residual " + num(worst);
  return v;
}

Verdict thm31() {
  Verdict v;
  const CheckReport h = check_thm31(make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0), 100);
  const CheckReport p = check_thm31(make_involute(curve("s;s^2;s^3", {0, 1}), 2.0), 100);
  v.require(h.pass && h.max_abs_deviation < 1e-9, "helix " + num(h.max_abs_deviation));
  v.require(p.pass && p.max_abs_deviation < 1e-9, "polynomial " + num(p.max_abs_deviation));
  if (v.pass) {
    v.detail = "max dev " + num(std::max(h.max_abs_deviation, p.max_abs_deviation));
  }
  return v;
}

Verdict thm32() {
  Verdict v;
  // Oracle: Euclidean curvature of the involute built from closed-form
  // derivatives, with no use of the library's frames.
  const double c = 2.0;
  const InvolutePair poly = make_involute(curve("s;s^2;s^3", {0, 1}), c);
  double worst_rel = 0.0;
  for (double s : linspace(poly.check_domain, 100)) {
    const double y1 = 2 * c - 2 * s, z1 = 6 * c * s - 6 * s * s;
    const double y2 = -2.0, z2 = 6 * c - 12 * s;
    const double oracle = std::abs(y1 * z2 - z1 * y2) / std::pow(y1 * y1 + z1 * z1, 1.5);
    const double tau = 12.0 / (4.0 + 36.0 * s * s);
    const double kappa = std::sqrt(4.0 + 36.0 * s * s);
    const FrenetFrame f = frenet(poly.base, s);
    const double formula = std::abs(f.tau) / ((c - s) * f.kappa);
    const double closed = tau / ((c - s) * kappa);
    worst_rel = std::max({worst_rel, std::abs(formula - oracle) / oracle,
                          std::abs(formula - closed) / closed});
  }
  v.require(worst_rel <= 1e-6, "polynomial relative dev " + num(worst_rel));
  const CheckReport pr = check_thm32(poly, 100);
  v.require(pr.pass, "check_thm32 polynomial failed");

  const InvolutePair helix = make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0);
  double worst_helix = 0.0;
  for (double s : linspace(helix.check_domain, 100)) {
    worst_helix = std::max({worst_helix,
                            std::abs(involute_frame(helix, s).kappa_star - 1.0 / (2.0 - s)),
                            std::abs(planar_frenet(helix.involute, s).kappa_euclid -
                                     1.0 / (2.0 - s))});
  }
  v.require(worst_helix <= 1e-9, "helix closed form dev " + num(worst_helix));
  if (v.pass) v.detail = "rel dev " + num(worst_rel) + ", helix dev " + num(worst_helix);
  return v;
}

Verdict speed_and_arc_length() {
  Verdict v;
  double worst_speed = 0.0;
  double worst_len = 0.0;
  for (const char* text : {"s;cos(s);sin(s)", "s;s^2;s^3"}) {
    const InvolutePair p = make_involute(curve(text, {0, 1.5}), 2.0);
    for (double s : linspace(p.check_domain, 100)) {
      const FrenetFrame f = frenet(p.base, s);
      worst_speed =
          std::max(worst_speed, std::abs(planar_frenet(p.involute, s).speed - (2.0 - s) * f.kappa));
    }
    const double integrated = involute_arc_length(p, 0.0, 1.5);
    const double chords = testing::polyline_length(
        [&](double s) {
          const GVec3 q = p.involute.point(s);
          return std::array<double, 2>{q.y, q.z};
        },
        0.0, 1.5, 4000);
    worst_len = std::max(worst_len, std::abs(integrated - chords));
  }
  v.require(worst_speed <= 1e-9, "speed dev " + num(worst_speed));
  v.require(worst_len <= 1e-8, "arc length dev " + num(worst_len));
  if (v.pass) v.detail = "speed dev " + num(worst_speed) + ", length dev " + num(worst_len);
  return v;
}

Verdict constancy() {
  Verdict v;
  const auto judge = [&](const std::string& label, const std::vector<double>& f) {
    const auto [m, sd] = mean_stddev(f);
    v.require(sd < 1e-9, label + " stddev " + num(sd));
    v.require(std::abs(std::abs(m) - 1.0) <= 1e-9, label + " |mean| " + num(std::abs(m)));
  };
  for (const char* text : {"s;cos(s);sin(s)", "s;s^2;s^3"}) {
    const CheckReport r = check_thm33(make_involute(curve(text, {0, 1.5}), 2.0), 100);
    v.require(r.pass, std::string("check_thm33 ") + text);
    judge(std::string("3.3 ") + text, field_values(r, "f"));
  }
  const PlanarCurve target = circle_target(2.0);
  const Expr u = Expr::parse("s");
  const Evolute beta = make_evolute({target, u, {}, 0, 0, 0.0, 1.0, 1e-3});
  const Evolute gamma = make_evolute({target, u, {}, 1, 0, 0.0, 1.0, 1e-3});
  const CheckReport r = check_thm34(beta, gamma, target, 100);
  v.require(r.pass, "check_thm34");
  judge("3.4", field_values(r, "f"));
  return v;
}

Verdict evolute_round_trip() {
  Verdict v;
  const PlanarCurve target = circle_target(2.0);
  const Evolute ev = make_evolute({target, Expr::parse("s"), {}, 0.0, 0.0, 0.0, 1.0, 1e-3});
  const InvolutePair back = make_involute(ev.curve, 2.0);
  double worst = 0.0;
  for (double s : linspace({0, 1}, 1001)) {
    const GVec3 d = back.involute.point(s) - target.point(s);
    worst = std::max({worst, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  v.require(worst <= 1e-6, "sup-norm " + num(worst));
  if (v.pass) v.detail = "sup-norm " + num(worst);
  return v;
}

Verdict b6_invariance() {
  Verdict v;
  const CheckReport r = check_isometry(curve("s;s^2;s^3", {0, 1}), 20, 100);
  v.require(r.pass && r.max_abs_deviation <= 1e-9, "max dev " + num(r.max_abs_deviation));
  IsometryParams bad;
  bad.a12 = 2;
  bool rejected = false;
  try {
    (void)transform_curve(curve("s;s^2;s^3", {0, 1}), bad);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::NotAnIsometry;
  }
  v.require(rejected, "non-B6 parameters accepted");
  if (v.pass) v.detail = "max dev " + num(r.max_abs_deviation);
  return v;
}

Verdict parser() {
  Verdict v;
  testing::AnyExprGen gen(9);
  int exact = 0;
  for (int k = 0; k < 500; ++k) {
    const Expr e = Expr::from_tree(gen.make(5));
    if (Expr::parse(e.str()) == e) ++exact;
  }
  v.require(exact == 500, std::to_string(500 - exact) + " round trips differ");

  const Expr a = Expr::parse("a*cos(w*t)");
  const NodePtr want_a = Node::make_binary(
      NodeKind::Mul, Node::make_parameter("a"),
      Node::make_call(Function::Cos, Node::make_binary(NodeKind::Mul, Node::make_parameter("w"),
                                                       Node::make_variable("t"))));
  v.require(same_tree(a.root(), *want_a) &&
                a.free_params() == std::set<std::string, std::less<>>{"a", "w"},
            "a*cos(w*t)");
  const NodePtr want_b = Node::make_binary(
      NodeKind::Add, Node::make_pow(Node::make_variable("t"), 3), Node::make_variable("t"));
  v.require(same_tree(Expr::parse("t^3 + t").root(), *want_b), "t^3 + t");
  bool syntax = false;
  try {
    (void)Expr::parse("sin t");
  } catch (const Error& e) {
    syntax = e.kind() == ErrorKind::SyntaxError;
  }
  v.require(syntax, "sin t accepted");
  return v;
}

Verdict command_line() {
  Verdict v;
  const auto call = [](std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "galcurve");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
  };
  const std::vector<std::string> verify = {"verify", "--theorem", "3.1", "--curve",
                                           "s;cos(s);sin(s)", "--c", "2", "--range", "0:1.5:100"};
  std::string first;
  std::string second;
  v.require(call(verify, &first) == 0, "verify exit code");
  v.require(first.find("\"pass\": true") != std::string::npos, "verify pass flag");
  v.require(call({"frenet", "--curve", "s;s^2;s^3", "--range", "0:0:1"}) == 2, "frenet exit code");
  v.require(call({"involute", "--curve", "s;s;0", "--c", "2", "--range", "0:1:10"}) == 3,
            "involute exit code");
  call(verify, &second);
  v.require(first == second, "verify output differs between runs");
  const std::vector<std::string> frenet = {"frenet", "--curve", "t^3+t;cos(t);t^2", "--range",
                                           "-1:1:25", "--format", "json"};
  call(frenet, &first);
  call(frenet, &second);
  v.require(first == second, "frenet output differs between runs");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"frenet closed forms", frenet_closed_forms},
      {"frenet ODE residuals", frenet_ode},
      {"involute distance", thm31},
      {"involute curvature relation", thm32},
      {"involute speed and arc length", speed_and_arc_length},
      {"helix and evolute angle constancy", constancy},
      {"evolute round trip", evolute_round_trip},
      {"B6 invariance", b6_invariance},
      {"parser", parser},
      {"cli", command_line},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!v.detail.empty()) std::cout << "  (" << v.detail << ")";
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
