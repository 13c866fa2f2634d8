#include "reproduce.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace hmpz::cli {

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw ValidationError("grid needs at least one point");
  if (points == 1) return {lo};
  if (!(hi > lo)) throw ValidationError("grid upper end must exceed the lower end");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

RatePair compute_rates(std::shared_ptr<const ZetaFunction> zeta, double entropy, const std::vector<double>& eta_grid,
                       double n_cap) {
  const auto track = lambda_of_n(std::move(zeta), default_track_grid(n_cap), TrackFailure::truncate);
  RatePair out{rate_function_f(track, entropy, eta_grid), rate_function_g(track, entropy, eta_grid, n_cap), {}};
  if (!track.unreached().empty()) {
    out.warnings.push_back("lambda_track_truncated: root lost outside n in [" + format_number(track.n_min()) + ", " +
                           format_number(track.n_max()) + "]");
  }
  if (track.min_second_difference() < -1e-8)
    out.warnings.push_back("lambda_not_convex: min second difference " + format_number(track.min_second_difference()));
  for (const auto* curve : {&out.f, &out.g}) {
    const char* name = curve == &out.f ? "f" : "g";
    for (const auto& p : curve->points) {
      if (p.flagged) {
        out.warnings.push_back(std::string("maximizer_on_boundary: ") + name + " at eta " + format_number(p.eta) +
                               " (n* = " + format_number(p.n_star) + ")");
      }
    }
  }
  return out;
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> ids{"table2", "table3", "table4", "fig1", "fig2", "fig3", "fig4"};
  return ids;
}

namespace {

struct CheckTable {
  Report report;
  bool all_pass = true;

  CheckTable() { report.table.columns = {"item", "quantity", "computed", "reference", "abs_diff", "tolerance", "pass"}; }

  void add(const std::string& item, const std::string& quantity, double computed, double reference, double tol) {
    const double diff = std::abs(computed - reference);
    const bool pass = diff <= tol;
    all_pass = all_pass && pass;
    report.table.rows.push_back({item, quantity, computed, reference, diff, tol, pass});
  }

  Report finish() {
    report.results["all_pass"] = all_pass;
    return std::move(report);
  }
};

Report table2() {
  struct Row {
    Case1Params p;
    double h, lower, upper;
  };
  const Row rows[] = {{{0.75, 0.10, 0.25, 0.20}, 0.569580, 0.557243, 0.572373},
                      {{0.30, 0.20, 0.55, 0.10}, 0.684796, 0.682486, 0.684843}};
  CheckTable t;
  for (const auto& r : rows) {
    const std::string item = "p1=" + format_number(r.p.p1) + " p2=" + format_number(r.p.p2) +
                             " q1=" + format_number(r.p.q1) + " q2=" + format_number(r.p.q2);
    const auto b = entropy_bounds(build_aggregated_case1(r.p.p1, r.p.p2, r.p.q1, r.p.q2));
    t.add(item, "h_exact", exact_entropy_case1(r.p), r.h, 1e-5);
    t.add(item, "lower", b.lower, r.lower, 1e-5);
    t.add(item, "upper", b.upper, r.upper, 1e-5);
  }
  return t.finish();
}

Report table3() {
  struct Row {
    Case2Params p;
    double h, lower, upper;
  };
  const Row rows[] = {{{0.1, 0.1, 0.2, 0.3}, 0.528531, 0.525571, 0.528534},
                      {{0.2, 0.2, 0.3, 0.4}, 0.659897, 0.656974, 0.659901}};
  CheckTable t;
  for (const auto& r : rows) {
    const std::string item = "p1=" + format_number(r.p.p1) + " p2=" + format_number(r.p.p2) +
                             " q=" + format_number(r.p.q) + " r=" + format_number(r.p.r);
    const auto b = entropy_bounds(build_aggregated_case2(r.p.p1, r.p.p2, r.p.q, r.p.r));
    t.add(item, "h_exact", exact_entropy_case2(r.p), r.h, 1e-5);
    t.add(item, "lower", b.lower, r.lower, 1e-5);
    t.add(item, "upper", b.upper, r.upper, 1e-5);
  }
  return t.finish();
}

Report table4() {
  struct Row {
    double q, eps;
    double h2, h12, h13, lower, upper;
  };
  const Row rows[] = {{0.2, 0.45, 0.687811, 0.693100, 0.693108, 0.691346, 0.693129},
                      {0.25, 0.4, 0.681322, 0.692881, 0.692884, 0.688139, 0.692947}};
  CheckTable t;
  for (const auto& r : rows) {
    const std::string item = "q=" + format_number(r.q) + " eps=" + format_number(r.eps);
    const auto model = build_binary_symmetric(r.q, r.eps);
    const auto weights = orbit_weights(model, enumerate_orbits(2, 13));
    t.add(item, "h_K2", entropy_cycle_expansion(model, weights, 2).entropy, r.h2, 1e-5);
    t.add(item, "h_K12", entropy_cycle_expansion(model, weights, 12).entropy, r.h12, 1e-5);
    t.add(item, "h_K13", entropy_cycle_expansion(model, weights, 13).entropy, r.h13, 1e-5);
    const auto b = entropy_bounds(model);
    t.add(item, "lower", b.lower, r.lower, 1e-5);
    t.add(item, "upper", b.upper, r.upper, 1e-5);
  }
  return t.finish();
}

Report fig1() {
  Report rep;
  rep.inputs = {{"q", 0.1}, {"eps_step", 0.01}, {"order", 13}};
  rep.table.columns = {"eps", "entropy", "lower", "upper", "sandwiched", "order", "warnings"};
  const OrbitSet orbits = enumerate_orbits(2, 13);
  bool all = true;
  for (int i = 0; i <= 50; ++i) {
    const double eps = i / 100.0;
    const auto model = build_binary_symmetric(0.1, eps);
    const auto est = entropy_cycle_expansion(model, orbit_weights(model, orbits), 13);
    const auto b = entropy_bounds(model);
    const double tol = 1e-9;
    const bool ok = b.lower <= est.entropy + tol && est.entropy <= b.upper + tol;
    all = all && ok;
    std::string warn;
    for (const auto& w : est.diagnostics.warnings) warn += (warn.empty() ? "" : ";") + w.kind;
    rep.table.rows.push_back({eps, est.entropy, b.lower, b.upper, ok, 13LL, warn});
  }
  rep.results["sandwiched_everywhere"] = all;
  rep.results["all_pass"] = all;
  return rep;
}

struct FigureModel {
  const char* name;
  Case2Params p;
  double h_reference;
};

constexpr FigureModel fig2_model{"fig2", {0.2, 0.3, 0.05, 0.01}, 0.166671};
constexpr FigureModel fig3_model{"fig3", {0.2, 0.3, 0.1, 0.4}, 0.619519};

RatePair figure_rates(const FigureModel& m, const std::vector<double>& eta) {
  return compute_rates(std::make_shared<ExactCase2Zeta>(m.p), exact_entropy_case2(m.p), eta);
}

nlohmann::json ordering_json(const OrderingReport& r) {
  return {{"relation", r.relation}, {"holds", r.holds}, {"worst_margin", r.worst_margin}, {"worst_eta", r.worst_eta}};
}

Report rate_figure(const FigureModel& self) {
  const auto eta = linear_grid(0.05, 0.5, 46);
  const auto mine = figure_rates(self, eta);
  const auto f3 = &self == &fig2_model ? mine : figure_rates(fig2_model, eta);
  const auto f4 = &self == &fig3_model ? mine : figure_rates(fig3_model, eta);

  Report rep;
  rep.inputs = {{"p1", self.p.p1}, {"p2", self.p.p2}, {"q", self.p.q}, {"r", self.p.r}, {"zeta", "exact_case2"}};
  const double h = exact_entropy_case2(self.p);
  rep.results["entropy"] = h;
  rep.results["entropy_reference"] = self.h_reference;
  rep.results["entropy_pass"] = std::abs(h - self.h_reference) <= 1e-5;
  rep.results["f_min_second_difference"] = mine.f.min_second_difference();
  rep.results["g_min_second_difference"] = mine.g.min_second_difference();
  const OrderingReport orderings[] = {
      compare_rates("f3 < f4", f3.f, f4.f), compare_rates("g3 < g4", f3.g, f4.g),
      compare_rates("f3 < g3", f3.f, f3.g), compare_rates("g4 < f4", f4.g, f4.f)};
  bool all = rep.results["entropy_pass"].get<bool>();
  rep.results["orderings"] = nlohmann::json::array();
  for (const auto& o : orderings) {
    rep.results["orderings"].push_back(ordering_json(o));
    all = all && o.holds;
  }
  rep.results["all_pass"] = all;
  rep.warnings = mine.warnings;

  rep.table.columns = {"eta", "f", "g", "n_star_f", "n_star_g", "flagged_f", "flagged_g"};
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const auto& pf = mine.f.points[i];
    const auto& pg = mine.g.points[i];
    rep.table.rows.push_back({eta[i], pf.rate, pg.rate, pf.n_star, pg.n_star, pf.flagged, pg.flagged});
  }
  return rep;
}

Report fig4() {
  Report rep;
  const double p1s[] = {0.5, 0.75, 0.05, 0.01};
  rep.inputs = {{"p2", 0.0}, {"q1", 0.0}, {"p1", p1s}, {"q2_grid", "0.01..0.99 step 0.01"}};
  rep.table.columns = {"p1", "q2", "entropy", "lower", "upper"};
  double lo = INFINITY, hi = -INFINITY;
  for (double p1 : p1s) {
    for (int i = 1; i <= 99; ++i) {
      const double q2 = i / 100.0;
      const Case1Params p{p1, 0.0, 0.0, q2};
      const double h = exact_entropy_case1(p);
      const auto b = entropy_bounds(build_aggregated_case1(p1, 0.0, 0.0, q2));
      rep.table.rows.push_back({p1, q2, h, b.lower, b.upper});
      if (p1 == 0.01 && q2 >= 0.05 - 1e-12 && q2 <= 0.95 + 1e-12) {
        lo = std::min(lo, h);
        hi = std::max(hi, h);
      }
    }
  }
  rep.results["flat_range"] = {0.05, 0.95};
  rep.results["flat_spread_p1_0.01"] = hi - lo;
  rep.results["all_pass"] = hi - lo < 0.05;
  return rep;
}

}  // namespace

Report reproduce(const std::string& target) {
  if (target == "table2") return table2();
  if (target == "table3") return table3();
  if (target == "table4") return table4();
  if (target == "fig1") return fig1();
  if (target == "fig2") return rate_figure(fig2_model);
  if (target == "fig3") return rate_figure(fig3_model);
  if (target == "fig4") return fig4();
  throw ValidationError("unknown reproduction target \"" + target + "\"");
}

}  // namespace hmpz::cli
