#include "commands.hpp"

#include "model_io.hpp"
#include "output.hpp"
#include "reproduce.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/oracle.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <new>
#include <optional>

namespace hmpz::cli {

namespace {

struct Globals {
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  double warn_threshold = 0.9;
  std::string model_file;
  std::string model_json;
  CLI::Option* format_opt = nullptr;
};

ModelSpec load(const Globals& g) {
  if (!g.model_file.empty() && !g.model_json.empty()) throw ValidationError("give either --model or --model-json");
  if (!g.model_file.empty()) return load_model_file(g.model_file);
  if (!g.model_json.empty()) return load_model_text(g.model_json);
  throw ValidationError("this subcommand needs --model FILE or --model-json TEXT");
}

ConvergenceThresholds thresholds(const Globals& g) {
  if (!(g.warn_threshold > 0.0)) throw ValidationError("--warn-threshold must be positive");
  return {g.warn_threshold, g.warn_threshold};
}

int resolve_order(int requested, const HmpModel& model) {
  const int k = requested > 0 ? requested : default_order(model.symbols());
  if (k < 2) throw ValidationError("truncation order must be at least 2");
  return k;
}

std::string joined_kinds(const std::vector<ConvergenceWarning>& w) {
  std::string s;
  for (const auto& x : w) s += (s.empty() ? "" : ";") + x.kind + "@" + std::to_string(x.symbol);
  return s;
}

void add_warnings(Report& rep, const std::vector<ConvergenceWarning>& w) {
  for (const auto& x : w) rep.warnings.push_back(x.message());
}

void add_chain_warnings(Report& rep, const HmpModel& model) {
  for (const auto& w : model.chain().warnings()) rep.warnings.push_back(w);
}

bool bounds_affordable(const HmpModel& m) { return m.states() * m.symbols() <= 64; }

void emit(const Globals& g, const Report& rep, std::ostream& out, bool json_default = false) {
  Format fmt = g.format == "json" ? Format::json : Format::csv;
  if (json_default && g.format_opt->count() == 0) fmt = Format::json;
  if (g.output.empty()) {
    write_report(out, rep, fmt);
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file " + g.output);
  write_report(file, rep, fmt);
  if (!file) throw ResourceError("failed writing output file " + g.output);
}

Report entropy_command(const Globals& g, int order_arg) {
  const auto spec = load(g);
  const int order = resolve_order(order_arg, spec.model);
  const auto est = entropy_cycle_expansion(spec.model, order, thresholds(g));
  Report rep;
  rep.inputs = {{"model", spec.source}, {"order", order}};
  rep.results = {{"entropy", est.entropy},
                 {"order", order},
                 {"residual", est.diagnostics.residual},
                 {"tail_ratio", est.diagnostics.tail_ratio}};
  rep.table.columns = {"order", "entropy", "lower", "upper", "residual", "tail_ratio", "warnings"};
  std::vector<Cell> row{static_cast<long long>(order), est.entropy};
  if (bounds_affordable(spec.model)) {
    const auto b = entropy_bounds(spec.model);
    rep.results["lower"] = b.lower;
    rep.results["upper"] = b.upper;
    row.insert(row.end(), {b.lower, b.upper});
    if (est.entropy < b.lower - 1e-9 || est.entropy > b.upper + 1e-9)
      rep.warnings.push_back("outside_bounds: truncated entropy leaves the bound bracket");
  } else {
    row.insert(row.end(), {std::string(), std::string()});
  }
  row.insert(row.end(), {est.diagnostics.residual, est.diagnostics.tail_ratio, joined_kinds(est.diagnostics.warnings)});
  rep.table.rows.push_back(std::move(row));
  add_warnings(rep, est.diagnostics.warnings);
  add_chain_warnings(rep, spec.model);
  return rep;
}

Report zeta_command(const Globals& g, int order_arg, double n) {
  const auto spec = load(g);
  const int order = resolve_order(order_arg, spec.model);
  const auto weights = orbit_weights(spec.model, enumerate_orbits(spec.model.symbols(), order));
  const auto poly = zeta_polynomial(weights, n, order);
  const auto warnings = convergence_warnings(spec.model, thresholds(g));
  Report rep;
  rep.inputs = {{"model", spec.source}, {"order", order}, {"n", n}};
  rep.results = {{"order", order}, {"n", n}};
  rep.table.columns = {"k", "coeff", "dcoeff_dn", "n", "order", "warnings"};
  const auto tags = joined_kinds(warnings);
  for (int k = 0; k <= poly.order(); ++k)
    rep.table.rows.push_back({static_cast<long long>(k), poly[k].value, poly[k].deriv, n, static_cast<long long>(order), tags});
  add_warnings(rep, warnings);
  add_chain_warnings(rep, spec.model);
  return rep;
}

Report rates_command(const Globals& g, int order_arg, const std::string& mode, double eta_max, int points, double n_cap) {
  const auto spec = load(g);
  if (!(eta_max > 0.0 && eta_max < 1.0)) throw ValidationError("--eta-max must lie in (0, 1)");
  if (points < 2) throw ValidationError("--points must be at least 2");
  if (!(n_cap > 1.0)) throw ValidationError("--n-cap must exceed 1");
  const bool has_exact = spec.case1.has_value() || spec.case2.has_value();
  if (mode == "exact" && !has_exact) throw ValidationError("--zeta exact needs an aggregated_case1 or aggregated_case2 model");
  const bool exact = mode == "exact" || (mode == "auto" && has_exact);

  std::shared_ptr<const ZetaFunction> zeta;
  double h = 0.0;
  int order = 0;
  std::vector<ConvergenceWarning> conv;
  if (exact && spec.case1) {
    zeta = std::make_shared<ExactCase1Zeta>(*spec.case1);
    h = exact_entropy_case1(*spec.case1);
  } else if (exact) {
    zeta = std::make_shared<ExactCase2Zeta>(*spec.case2);
    h = exact_entropy_case2(*spec.case2);
  } else {
    order = resolve_order(order_arg, spec.model);
    const auto weights = orbit_weights(spec.model, enumerate_orbits(spec.model.symbols(), order));
    const auto est = entropy_cycle_expansion(spec.model, weights, order, thresholds(g));
    h = est.entropy;
    conv = est.diagnostics.warnings;
    zeta = std::make_shared<TruncatedZeta>(weights, order);
  }
  const std::string label = zeta->label();
  const auto eta = linear_grid(0.0, eta_max, points);
  const auto rates = compute_rates(zeta, h, eta, n_cap);

  Report rep;
  rep.inputs = {{"model", spec.source}, {"zeta", label},         {"order", order},
                {"eta_max", eta_max},   {"points", points},      {"n_cap", n_cap}};
  rep.results = {{"entropy", h},
                 {"zeta", label},
                 {"order", order},
                 {"f_min_second_difference", rates.f.min_second_difference()},
                 {"g_min_second_difference", rates.g.min_second_difference()}};
  rep.table.columns = {"eta", "f", "g", "n_star_f", "n_star_g", "flagged_f", "flagged_g", "order", "warnings"};
  const auto tags = joined_kinds(conv);
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const auto& pf = rates.f.points[i];
    const auto& pg = rates.g.points[i];
    rep.table.rows.push_back({eta[i], pf.rate, pg.rate, pf.n_star, pg.n_star, pf.flagged, pg.flagged,
                              static_cast<long long>(order), tags});
  }
  add_warnings(rep, conv);
  rep.warnings.insert(rep.warnings.end(), rates.warnings.begin(), rates.warnings.end());
  add_chain_warnings(rep, spec.model);
  return rep;
}

struct ExactArgs {
  std::string which;
  std::optional<double> p1, p2, q1, q2, q, r, eps;
};

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw ValidationError(std::string("exact: missing --") + name);
  return *v;
}

Report exact_command(const ExactArgs& a) {
  Report rep;
  rep.table.columns = {"quantity", "value"};
  auto put = [&](const char* key, double v) {
    rep.results[key] = v;
    rep.table.rows.push_back({std::string(key), v});
  };
  auto put_bounds = [&](const HmpModel& m) {
    const auto b = entropy_bounds(m);
    put("lower", b.lower);
    put("upper", b.upper);
  };
  if (a.which == "1") {
    const Case1Params p{need(a.p1, "p1"), need(a.p2, "p2"), need(a.q1, "q1"), need(a.q2, "q2")};
    validate(p);
    rep.inputs = {{"case", "1"}, {"p1", p.p1}, {"p2", p.p2}, {"q1", p.q1}, {"q2", p.q2}};
    put("h", exact_entropy_case1(p));
    put_bounds(build_aggregated_case1(p.p1, p.p2, p.q1, p.q2));
  } else if (a.which == "2") {
    const Case2Params p{need(a.p1, "p1"), need(a.p2, "p2"), need(a.q, "q"), need(a.r, "r")};
    validate(p);
    rep.inputs = {{"case", "2"}, {"p1", p.p1}, {"p2", p.p2}, {"q", p.q}, {"r", p.r}};
    put("h", exact_entropy_case2(p));
    put("h_markov", markov_entropy_case2(p));
    put_bounds(build_aggregated_case2(p.p1, p.p2, p.q, p.r));
  } else if (a.which == "bsc-smallnoise") {
    const double q = need(a.q, "q"), eps = need(a.eps, "eps");
    rep.inputs = {{"case", "bsc-smallnoise"}, {"q", q}, {"eps", eps}};
    put("h", small_noise_entropy(q, eps));
    put_bounds(build_binary_symmetric(q, eps));
  } else {
    throw ValidationError("--case must be 1, 2 or bsc-smallnoise");
  }
  rep.rows_in_json = false;
  return rep;
}

Report bounds_command(const Globals& g) {
  const auto spec = load(g);
  const auto b = entropy_bounds(spec.model);
  Report rep;
  rep.inputs = {{"model", spec.source}};
  rep.results = {{"lower", b.lower}, {"upper", b.upper}};
  rep.table.columns = {"lower", "upper"};
  rep.table.rows.push_back({b.lower, b.upper});
  add_chain_warnings(rep, spec.model);
  return rep;
}

int default_nmax(int alphabet) {
  int n = 0;
  std::uint64_t count = 1;
  while (n < 16 && count * static_cast<std::uint64_t>(alphabet) <= block_entropy_cap) {
    count *= static_cast<std::uint64_t>(alphabet);
    ++n;
  }
  return std::max(n, 1);
}

Report oracle_block_command(const Globals& g, int nmax) {
  const auto spec = load(g);
  if (nmax <= 0) nmax = default_nmax(spec.model.symbols());
  const auto table = block_entropies(spec.model, nmax);
  Report rep;
  rep.inputs = {{"model", spec.source}, {"nmax", nmax}};
  rep.table.columns = {"N", "block", "innovation", "per_symbol"};
  for (int n = 1; n <= nmax; ++n)
    rep.table.rows.push_back({static_cast<long long>(n), table.block(n), table.innovation(n), table.per_symbol(n)});
  for (const auto& v : table.check_monotonicity(1e-12))
    rep.warnings.push_back("monotonicity: " + v.relation + " fails at N=" + std::to_string(v.n) + " by " +
                           format_number(-v.margin));
  add_chain_warnings(rep, spec.model);
  return rep;
}

Report oracle_mc_command(const Globals& g, long long length, long long samples, bool lyapunov, int lyap_length) {
  const auto spec = load(g);
  if (length < 1 || samples < 2) throw ValidationError("oracle mc needs --n >= 1 and --samples >= 2");
  const auto est = mc_entropy(spec.model, static_cast<std::size_t>(length), static_cast<std::size_t>(samples), g.seed);
  Report rep;
  rep.inputs = {{"model", spec.source}, {"n", length}, {"samples", samples}, {"seed", g.seed}};
  rep.results = {{"estimate", est.estimate},
                 {"stderr", est.stderr_},
                 {"samples", est.samples},
                 {"zero_probability", est.zero_probability}};
  rep.table.columns = {"estimate", "stderr", "samples", "zero_probability"};
  std::vector<Cell> row{est.estimate, est.stderr_, static_cast<long long>(est.samples),
                        static_cast<long long>(est.zero_probability)};
  if (est.zero_probability > 0)
    rep.warnings.push_back("zero_probability: " + std::to_string(est.zero_probability) + " sampled sequences excluded");
  if (lyapunov) {
    const auto l = mc_lyapunov_vs_spectral(spec.model, lyap_length, static_cast<std::size_t>(samples), g.seed);
    rep.inputs["lyapunov_length"] = lyap_length;
    const std::pair<const char*, double> extra[] = {{"mean_singular_rate", l.mean_singular_rate},
                                                    {"mean_spectral_rate", l.mean_spectral_rate},
                                                    {"mean_probability_rate", l.mean_probability_rate},
                                                    {"gap_singular_spectral", l.gap_singular_spectral},
                                                    {"gap_singular_probability", l.gap_singular_probability},
                                                    {"gap_spectral_probability", l.gap_spectral_probability}};
    for (const auto& [k, v] : extra) {
      rep.results[k] = v;
      rep.table.columns.emplace_back(k);
      row.emplace_back(v);
    }
    const std::pair<const char*, std::size_t> counts[] = {{"weyl_failures", l.weyl_failures},
                                                          {"subadditivity_failures", l.subadditivity_failures},
                                                          {"degenerate_products", l.degenerate_products}};
    for (const auto& [k, v] : counts) {
      rep.results[k] = v;
      rep.table.columns.emplace_back(k);
      row.emplace_back(static_cast<long long>(v));
      if (v > 0) rep.warnings.push_back(std::string(k) + ": " + std::to_string(v));
    }
  }
  rep.table.rows.push_back(std::move(row));
  add_chain_warnings(rep, spec.model);
  return rep;
}

Report necklaces_command(int alphabet, int max_order) {
  if (alphabet < 1 || max_order < 1) throw ValidationError("necklaces needs --alphabet >= 1 and --max >= 1");
  const auto set = enumerate_orbits(alphabet, max_order);
  Report rep;
  rep.inputs = {{"alphabet", alphabet}, {"max", max_order}};
  rep.table.columns = {"length", "word"};
  for (const auto& o : set.all()) rep.table.rows.push_back({static_cast<long long>(o.length()), o.word()});
  rep.results["count"] = set.size();
  return rep;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::resource: return "resource";
  }
  return "numerical";
}

}  // namespace

std::string error_json(const std::exception& e, int& exit_code) {
  std::string kind = "numerical", type = "internal";
  exit_code = 2;
  if (const auto* he = dynamic_cast<const Error*>(&e)) {
    kind = kind_name(he->kind());
    type = he->tag();
    exit_code = static_cast<int>(he->kind());
  } else if (dynamic_cast<const CLI::ParseError*>(&e)) {
    kind = "validation";
    type = "usage";
    exit_code = 1;
  } else if (dynamic_cast<const std::bad_alloc*>(&e)) {
    kind = "resource";
    type = "memory";
    exit_code = 3;
  }
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"type", type}, {"message", e.what()}};
  j["exit_code"] = exit_code;
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy rates and rate functions of hidden Markov processes via cycle expansions", "hmpzeta"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "hmpzeta 1.0");

  Globals g;
  g.format_opt = app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for Monte Carlo subcommands");
  app.add_option("--warn-threshold", g.warn_threshold, "Ratio above which convergence warnings are raised");
  app.add_option("--model", g.model_file, "Model JSON file");
  app.add_option("--model-json", g.model_json, "Model JSON given inline");

  int order = 0;
  double n_value = 1.0;

  auto* entropy = app.add_subcommand("entropy", "Cycle-expansion entropy with bound bracket");
  entropy->add_option("--order", order, "Truncation order (default 13 for two symbols, else 8)");

  auto* zeta = app.add_subcommand("zeta", "Coefficients of the truncated inverse zeta function");
  zeta->add_option("--order", order, "Truncation order");
  zeta->add_option("--n", n_value, "Exponent n")->capture_default_str();

  std::string zeta_mode = "auto";
  double eta_max = 0.5, n_cap = default_g_cap;
  int points = 51;
  auto* rates = app.add_subcommand("rates", "Rate functions f and g");
  rates->add_option("--order", order, "Truncation order for the truncated zeta");
  rates->add_option("--zeta", zeta_mode, "Zeta source")->check(CLI::IsMember({"auto", "exact", "truncated"}))->capture_default_str();
  rates->add_option("--eta-max", eta_max, "Largest eta")->capture_default_str();
  rates->add_option("--points", points, "Number of eta points from 0 to eta-max")->capture_default_str();
  rates->add_option("--n-cap", n_cap, "Upper end of the n search for g")->capture_default_str();

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "Closed-form entropies (JSON by default)");
  exact->add_option("--case", ex.which, "1, 2 or bsc-smallnoise")->required();
  exact->add_option("--p1", ex.p1);
  exact->add_option("--p2", ex.p2);
  exact->add_option("--q1", ex.q1);
  exact->add_option("--q2", ex.q2);
  exact->add_option("--q", ex.q);
  exact->add_option("--r", ex.r);
  exact->add_option("--eps", ex.eps);

  auto* bounds = app.add_subcommand("bounds", "Lower and upper entropy bounds");

  auto* oracle = app.add_subcommand("oracle", "Independent reference computations");
  oracle->require_subcommand(1);
  int nmax = 0;
  auto* block = oracle->add_subcommand("block", "Exact block entropies by enumeration");
  block->add_option("--nmax", nmax, "Largest block length");
  auto* obounds = oracle->add_subcommand("bounds", "Lower and upper entropy bounds");
  long long mc_n = 10000, mc_samples = 200;
  bool lyapunov = false;
  int lyap_length = 50;
  auto* mc = oracle->add_subcommand("mc", "Monte Carlo entropy estimate");
  mc->add_option("--n", mc_n, "Sequence length")->capture_default_str();
  mc->add_option("--samples", mc_samples, "Number of sequences")->capture_default_str();
  mc->add_flag("--lyapunov", lyapunov, "Also compare singular-value, spectral and probability growth rates");
  mc->add_option("--lyapunov-length", lyap_length, "Product length for the Lyapunov comparison")->capture_default_str();
  for (auto* sub : {block, obounds, mc}) sub->fallthrough();

  int alphabet = 2, max_order = 6;
  auto* neck = app.add_subcommand("necklaces", "Aperiodic necklaces as canonical words");
  neck->add_option("--alphabet", alphabet, "Alphabet size")->capture_default_str();
  neck->add_option("--max", max_order, "Largest length")->capture_default_str();

  std::string target;
  auto* repro = app.add_subcommand("reproduce", "Recompute a table or figure with reference values");
  repro->add_option("target", target, "table2, table3, table4, fig1, fig2, fig3 or fig4")->required();

  for (auto* sub : {entropy, zeta, rates, exact, bounds, oracle, neck, repro}) sub->fallthrough();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::CallForVersion&) {
      out << app.version() << '\n';
      return 0;
    }

    if (*entropy) emit(g, entropy_command(g, order), out);
    else if (*zeta) emit(g, zeta_command(g, order, n_value), out);
    else if (*rates) emit(g, rates_command(g, order, zeta_mode, eta_max, points, n_cap), out);
    else if (*exact) emit(g, exact_command(ex), out, true);
    else if (*bounds || *obounds) emit(g, bounds_command(g), out);
    else if (*block) emit(g, oracle_block_command(g, nmax), out);
    else if (*mc) emit(g, oracle_mc_command(g, mc_n, mc_samples, lyapunov, lyap_length), out);
    else if (*neck) emit(g, necklaces_command(alphabet, max_order), out);
    else if (*repro) emit(g, reproduce(target), out);
    return 0;
  } catch (const std::exception& e) {
    int code = 2;
    err << error_json(e, code) << '\n';
    return code;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hmpzeta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hmpz::cli
