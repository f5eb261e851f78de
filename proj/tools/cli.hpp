#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "persuasion/persuasion.hpp"
#include "persuasion/reproduce.hpp"

namespace persuasion::cli {

enum ExitCode : int { ok = 0, failed = 1, invalid = 2, not_persuasive = 3 };

struct ExperimentConfig {
  // scenario; empty means "the mechanism's own scenario"
  std::optional<std::string> knowledge;
  bool disclosure = false;
  std::optional<std::string> sender_utility, receiver_utility;

  std::string mechanism;
  std::optional<std::size_t> s;
  std::optional<std::size_t> target;
  std::string table_file;

  std::string instance = "fig1";
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;

  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> mc;
  std::optional<unsigned> jobs;
  std::string out;
  std::string format = "table";
  bool expect_persuasive = false;

  std::string s_grid, n_grid;
  std::vector<int> criteria;
};

namespace detail {

inline std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

template <class T>
T parse_env_number(const std::string& name, const std::string& text) {
  try {
    std::size_t pos = 0;
    auto v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw InvalidArgument(name + " must be a non-negative integer, got '" + text + "'");
  }
}

// flag > environment > default
inline std::uint64_t resolve_seed(const ExperimentConfig& c) {
  if (c.seed) return *c.seed;
  if (auto e = env("PERSUASION_SEED")) return parse_env_number<std::uint64_t>("PERSUASION_SEED", *e);
  return 42;
}

inline unsigned resolve_jobs(const ExperimentConfig& c) {
  unsigned j = 0;
  if (c.jobs)
    j = *c.jobs;
  else if (auto e = env("PERSUASION_JOBS"))
    j = parse_env_number<unsigned>("PERSUASION_JOBS", *e);
  else
    j = std::max(1u, std::thread::hardware_concurrency());
  if (j == 0) throw InvalidArgument("--jobs must be at least 1");
  return j;
}

inline UtilityMode parse_mode(const std::string& s) {
  if (s == "cardinal") return UtilityMode::Cardinal;
  if (s == "ordinal") return UtilityMode::Ordinal;
  throw InvalidArgument("utility must be 'ordinal' or 'cardinal', got '" + s + "'");
}

inline Knowledge parse_knowledge(const std::string& s) {
  if (s == "basic") return Knowledge::Basic;
  if (s == "secretary") return Knowledge::Secretary;
  throw InvalidArgument("scenario must be 'basic' or 'secretary', got '" + s + "'");
}

inline std::size_t need_n(const ExperimentConfig& c, const std::string& what) {
  if (!c.n) throw InvalidArgument(what + " needs --n");
  return *c.n;
}

inline const std::vector<std::string>& families() {
  static const std::vector<std::string> f{"fig1", "ub", "instance-I", "instance-II", "negcorr", "random-grid", "random-aligned", "random-independent"};
  return f;
}

inline bool is_family(const std::string& s) {
  for (const auto& f : families())
    if (f == s) return true;
  return false;
}

inline Instance family_instance(const std::string& name, std::size_t n, std::uint64_t seed, std::optional<std::size_t> k) {
  if (name == "fig1") return figure1_instance();
  if (name == "ub") return ub_disclosure_instance(n);
  if (name == "instance-I") return instance_I(n);
  if (name == "instance-II") return instance_II(n);
  if (name == "negcorr") return negatively_correlated(n, seed);
  if (name == "random-grid") return random_instance(n, seed, Distribution::uniform_grid(k.value_or(0)));
  if (name == "random-aligned") return random_instance(n, seed, Distribution::aligned(k.value_or(0)));
  if (name == "random-independent") return random_instance(n, seed, Distribution::independent(k.value_or(0)));
  throw InvalidArgument("unknown instance family '" + name + "'");
}

inline Instance load_instance(const ExperimentConfig& c, std::uint64_t seed) {
  if (is_family(c.instance)) {
    if (c.instance == "fig1") {
      if (c.n && *c.n != 8) throw InvalidArgument("fig1 has n = 8");
      return figure1_instance();
    }
    return family_instance(c.instance, need_n(c, "instance family '" + c.instance + "'"), seed, c.k);
  }
  auto inst = load_instance_file(c.instance);
  if (c.n && *c.n != inst.size())
    throw InvalidArgument("--n " + std::to_string(*c.n) + " does not match the " + std::to_string(inst.size()) + " candidates in " + c.instance);
  return inst;
}

struct Built {
  MechanismPolicy mechanism;
  ScenarioSpec scenario;
  std::optional<std::size_t> s;
};

inline BestSoFarTable load_table(const std::string& path, std::size_t n) {
  auto j = json::parse(read_file(path));
  BestSoFarTable t;
  if (j.is_array()) {
    t.sender = rationals_from_json(j);
    t.receiver = t.sender;
  } else {
    t.sender = rationals_from_json(j.at("sender"));
    t.receiver = rationals_from_json(j.at("receiver"));
  }
  if (t.sender.size() != n - 1 || t.receiver.size() != n - 1)
    throw InvalidArgument("best-so-far table needs n-1 = " + std::to_string(n - 1) + " entries per side");
  return t;
}

inline const char* mechanism_names() {
  return "pareto, growing-pareto, shrinking-pareto, nested-lp, elementary, adaptive-elementary, simple-secretary, "
         "first-opt, dynkin, best-so-far, target, trivial";
}

// Each mechanism comes with the scenario it is designed for; flags override single fields.
inline Built build_mechanism(const ExperimentConfig& c, const Instance& inst, bool disclosure_flag) {
  using K = Knowledge;
  const std::size_t n = inst.size();
  const auto C = UtilityMode::Cardinal, O = UtilityMode::Ordinal;
  std::optional<UtilityMode> sender_flag, receiver_flag;
  if (c.sender_utility) sender_flag = parse_mode(*c.sender_utility);
  if (c.receiver_utility) receiver_flag = parse_mode(*c.receiver_utility);
  const std::string& m = c.mechanism;
  if (m.empty()) throw InvalidArgument(std::string("--mechanism is required; one of: ") + mechanism_names());

  ScenarioSpec sc;
  std::optional<std::size_t> s;
  auto mk = [&](K k, bool d, UtilityMode snd, UtilityMode rcv) { sc = {k, d, sender_flag.value_or(snd), receiver_flag.value_or(rcv)}; };
  std::optional<MechanismPolicy> mech;
  if (m == "pareto") {
    mk(K::Basic, false, C, C);
    mech = pareto_mechanism(inst, sc.sender);
  } else if (m == "growing-pareto") {
    mk(K::Secretary, false, C, C);
    s = c.s.value_or(default_growing_sample(n, sc.sender));
    mech = growing_pareto(n, *s, sc.sender);
  } else if (m == "shrinking-pareto") {
    mk(K::Basic, true, C, C);
    mech = shrinking_pareto(inst, sc.sender);
  } else if (m == "nested-lp") {
    mk(K::Basic, true, C, C);
    mech = nested_lp_mechanism(inst, sc.sender);
  } else if (m == "elementary") {
    mk(K::Basic, false, O, O);
    mech = elementary(inst);
  } else if (m == "adaptive-elementary") {
    mk(K::Basic, true, O, O);
    mech = adaptive_elementary(inst);
  } else if (m == "simple-secretary") {
    mk(K::Secretary, false, O, O);
    mech = simple_secretary(n);
  } else if (m == "first-opt") {
    mk(K::Secretary, true, O, O);
    s = c.s.value_or(n / 2);
    mech = first_opt(n, *s);
  } else if (m == "dynkin") {
    mk(K::Secretary, false, O, O);
    s = c.s.value_or(floor_n_over_e(n));
    mech = dynkin(n, *s, Selector::Sender);
  } else if (m == "best-so-far") {
    mk(K::Secretary, true, O, O);
    BestSoFarTable t;
    if (!c.table_file.empty()) {
      t = load_table(c.table_file, n);
    } else {
      auto d = best_so_far_dp(n);
      for (std::size_t r = 0; r + 1 < n; ++r) t.sender.push_back(d.hire[r] ? Rational(1) : Rational(0));
      t.receiver = t.sender;
    }
    mech = best_so_far_mechanism(n, t);
  } else if (m == "target") {
    mk(K::Basic, false, C, C);
    if (!c.target || *c.target < 1 || *c.target > n) throw InvalidArgument("target needs --target between 1 and n");
    mech = target_candidate(inst, *c.target - 1);
  } else if (m == "trivial") {
    mk(K::Secretary, false, C, C);
    mech = trivial(n);
  } else {
    throw InvalidArgument("unknown mechanism '" + m + "'; one of: " + mechanism_names());
  }
  if (c.knowledge) sc.knowledge = parse_knowledge(*c.knowledge);
  if (disclosure_flag) sc.disclosure = true;
  return {std::move(*mech), sc, s};
}

inline void emit(const ExperimentConfig& c, std::ostream& out, const std::string& table, const json& structured) {
  std::string text = c.format == "structured" ? structured.dump(2) + "\n" : table;
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidArgument("cannot write " + c.out);
  f << text;
}

inline std::string scenario_line(const ScenarioSpec& s) {
  return std::string("scenario: ") + to_string(s.knowledge) + (s.disclosure ? " with disclosure" : " without disclosure") +
         ", sender " + to_string(s.sender) + ", receiver " + to_string(s.receiver) + "\n";
}

inline std::vector<double> parse_grid(const std::string& g, const std::string& flag) {
  std::vector<std::string> part;
  std::stringstream ss(g);
  for (std::string p; std::getline(ss, p, ':');) part.push_back(p);
  if (part.size() != 3) throw InvalidArgument(flag + " expects lo:hi:step, got '" + g + "'");
  double lo, hi, step;
  try {
    lo = std::stod(part[0]), hi = std::stod(part[1]), step = std::stod(part[2]);
  } catch (const std::exception&) {
    throw InvalidArgument(flag + " expects numbers, got '" + g + "'");
  }
  if (!(step > 0) || hi < lo) throw InvalidArgument(flag + " needs lo <= hi and step > 0");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    double v = lo + static_cast<double>(i) * step;
    if (v > hi + step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

// ---- subcommands ----

inline int cmd_pareto(const ExperimentConfig& c, std::ostream& out) {
  const auto seed = resolve_seed(c);
  auto inst = load_instance(c, seed);
  auto mode = c.sender_utility ? parse_mode(*c.sender_utility) : UtilityMode::Cardinal;
  auto r = pareto_procedure(inst, mode);
  std::vector<TableRow> rows{exact_row("a", "pareto", inst.size(), std::nullopt, Rational(static_cast<long>(r.a + 1))),
                             exact_row("b", "pareto", inst.size(), std::nullopt, Rational(static_cast<long>(r.b + 1))),
                             exact_row("alpha", "pareto", inst.size(), std::nullopt, r.alpha),
                             exact_row("mu_r", "pareto", inst.size(), std::nullopt, r.mu_r),
                             exact_row("opt", "pareto", inst.size(), std::nullopt, r.opt_value)};
  std::ostringstream t;
  t << "instance: " << inst.name() << " (n = " << inst.size() << ", sender " << to_string(mode) << ")\n"
    << "a=" << r.a + 1 << ", b=" << r.b + 1 << ", alpha=" << to_string(r.alpha) << ", mu_r=" << to_string(r.mu_r)
    << ", OPT=" << to_string(r.opt_value) << "\n\n"
    << render_table(rows);
  json j{{"instance", to_json(inst)}, {"sender_utility", to_string(mode)}, {"result", to_json(r)}};
  emit(c, out, t.str(), j);
  return ok;
}

inline int cmd_eval(const ExperimentConfig& c, std::ostream& out) {
  const auto seed = resolve_seed(c);
  const auto jobs = resolve_jobs(c);
  auto inst = load_instance(c, seed);
  auto b = build_mechanism(c, inst, c.disclosure);
  const std::size_t n = inst.size();
  const std::string name = b.mechanism.name();
  std::vector<TableRow> rows;
  json j{{"instance", to_json(inst)}, {"mechanism", name}, {"scenario", to_json(b.scenario)}};
  if (b.s) j["s"] = *b.s;
  std::optional<Rational> opt;
  try {
    opt = benchmark_opt(inst, b.scenario.sender, b.scenario.receiver);
  } catch (const DegenerateInstance&) {
  }
  if (c.mc) {
    auto r = monte_carlo_evaluate(inst, b.mechanism, b.scenario, *c.mc, seed, jobs);
    rows = {float_row("sender_success", name, n, b.s, r.sender_success.mean), float_row("sender_success_hw", name, n, b.s, r.sender_success.halfwidth),
            float_row("sender_eu", name, n, b.s, r.sender_eu.mean), float_row("sender_eu_hw", name, n, b.s, r.sender_eu.halfwidth),
            float_row("receiver_success", name, n, b.s, r.receiver_success.mean), float_row("receiver_eu", name, n, b.s, r.receiver_eu.mean)};
    double obj = b.scenario.sender == UtilityMode::Ordinal ? r.sender_success.mean : r.sender_eu.mean;
    if (opt && sgn(*opt) != 0) rows.push_back(float_row("ratio", name, n, b.s, obj / opt->get_d()));
    j["report"] = to_json(r);
  } else {
    auto r = exact_evaluate(inst, b.mechanism, b.scenario, jobs);
    rows = {exact_row("sender_success", name, n, b.s, r.sender_success), exact_row("sender_eu", name, n, b.s, r.sender_eu),
            exact_row("receiver_success", name, n, b.s, r.receiver_success), exact_row("receiver_eu", name, n, b.s, r.receiver_eu)};
    if (opt && sgn(*opt) != 0) rows.push_back(exact_row("ratio", name, n, b.s, sender_objective(r, b.scenario.sender) / *opt));
    j["report"] = to_json(r);
  }
  if (opt) {
    rows.push_back(exact_row("benchmark_opt", name, n, b.s, *opt));
    j["benchmark_opt"] = to_json(*opt);
  }
  emit(c, out, "instance: " + inst.name() + "\n" + scenario_line(b.scenario) + "\n" + render_table(rows), j);
  return ok;
}

inline std::string view_string(const ReceiverView& v) {
  std::string s = "round " + std::to_string(v.round) + ", signals " + signals_string(v.signals);
  if (!v.disclosed.empty()) {
    s += ", disclosed";
    for (auto id : v.disclosed) s += " " + std::to_string(id + 1);
  }
  return s;
}

inline int cmd_check(const ExperimentConfig& c, std::ostream& out) {
  const auto seed = resolve_seed(c);
  auto inst = load_instance(c, seed);
  auto b = build_mechanism(c, inst, c.disclosure);
  auto r = check_persuasive(inst, b.mechanism, b.scenario);
  std::ostringstream t;
  t << "instance: " << inst.name() << "\n" << scenario_line(b.scenario) << "mechanism: " << b.mechanism.name() << "\n"
    << (r.persuasive ? "persuasive" : "NOT persuasive") << "\n"
    << "obedient value " << to_string(r.v_obedient) << ", best response " << to_string(r.v_best_response) << "\n"
    << "information sets " << r.information_sets << ", indifferent " << r.indifferent_nodes << ", violations " << r.violations.size() << "\n";
  for (const auto& v : r.violations)
    t << "  " << view_string(v.at) << ": reached with " << to_string(v.probability) << ", obey " << to_string(v.obedient_value)
      << ", deviate " << to_string(v.deviation_value) << "\n";
  json j{{"instance", to_json(inst)}, {"mechanism", b.mechanism.name()}, {"scenario", to_json(b.scenario)}, {"report", to_json(r)}};
  emit(c, out, t.str(), j);
  return c.expect_persuasive && !r.persuasive ? not_persuasive : ok;
}

inline int cmd_optimal_lp(const ExperimentConfig& c, std::ostream& out) {
  const auto seed = resolve_seed(c);
  auto inst = load_instance(c, seed);
  auto mode = c.sender_utility ? parse_mode(*c.sender_utility) : UtilityMode::Cardinal;
  auto p = nested_lp_policy(inst, mode);
  const std::size_t n = inst.size();
  const auto full = p.full_mask();
  std::vector<TableRow> rows{exact_row("u_sender", "nested-lp", n, std::nullopt, p.u_sender[full]),
                             exact_row("u_receiver", "nested-lp", n, std::nullopt, p.u_receiver[full])};
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(exact_row("x_" + std::to_string(i + 1), "nested-lp", n, std::nullopt, p.hire_probability(full, i)));
  bool redundant = check_redundancy(inst, p);
  std::ostringstream t;
  t << "instance: " << inst.name() << " (sender " << to_string(mode) << ")\n"
    << "continuation constraints redundant: " << (redundant ? "yes" : "no") << "\n\n"
    << render_table(rows);
  json j{{"instance", to_json(inst)}, {"sender_utility", to_string(mode)}, {"policy", to_json(p)}, {"redundant", redundant}};
  emit(c, out, t.str(), j);
  return ok;
}

inline int cmd_dp(const ExperimentConfig& c, std::ostream& out) {
  const std::size_t n = need_n(c, "dp");
  auto d = best_so_far_dp(n);
  std::vector<TableRow> rows;
  for (std::size_t t = 1; t <= n; ++t) {
    rows.push_back(exact_row("u_" + std::to_string(t), "best-so-far-dp", n, std::nullopt, d.u[t - 1]));
    rows.push_back(exact_row("v_" + std::to_string(t), "best-so-far-dp", n, std::nullopt, d.v[t - 1]));
  }
  std::ostringstream t;
  t << "sample size (rounds before the first hire) " << d.threshold - 1 << ", first hiring round " << d.threshold
    << ", success " << to_string(d.u[0]) << "\n\n"
    << render_table(rows);
  emit(c, out, t.str(), to_json(d));
  return ok;
}

inline int cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  const auto seed = resolve_seed(c);
  const auto jobs = resolve_jobs(c);
  if (c.mechanism.empty()) throw InvalidArgument(std::string("sweep needs --mechanism; one of: ") + mechanism_names());
  if (!c.s_grid.empty() && !c.n_grid.empty()) throw InvalidArgument("use either --s-grid or --n-grid, not both");
  std::vector<std::pair<std::size_t, std::optional<double>>> points;  // (n, s/n)
  if (!c.n_grid.empty()) {
    for (double v : parse_grid(c.n_grid, "--n-grid")) points.push_back({static_cast<std::size_t>(std::llround(v)), std::nullopt});
  } else {
    const std::size_t n = need_n(c, "sweep");
    if (c.s_grid.empty()) throw InvalidArgument("sweep needs --s-grid lo:hi:step (fractions of n) or --n-grid lo:hi:step");
    for (double f : parse_grid(c.s_grid, "--s-grid")) points.push_back({n, f});
  }
  ExperimentConfig base = c;
  if (base.instance == "fig1") base.instance = "random-grid";
  if (!is_family(base.instance) && !c.n_grid.empty()) throw InvalidArgument("--n-grid needs an instance family, not a file");
  std::vector<TableRow> rows;
  json structured = json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    auto [n, frac] = points[k];
    ExperimentConfig pc = base;
    pc.n = n;
    if (frac) {
      auto s = static_cast<std::size_t>(std::floor(*frac * static_cast<double>(n)));
      pc.s = std::clamp<std::size_t>(s, 1, n > 1 ? n - 1 : 1);
    }
    auto inst = load_instance(pc, seed);
    auto b = build_mechanism(pc, inst, c.disclosure);
    const std::string name = b.mechanism.name();
    Rational opt = benchmark_opt(inst, b.scenario.sender, b.scenario.receiver);
    if (sgn(opt) == 0) throw ZeroBenchmark();
    double ratio;
    std::optional<Rational> exact;
    if (!c.mc && n <= exact_eval_cap) {
      exact = sender_objective(exact_evaluate(inst, b.mechanism, b.scenario, jobs), b.scenario.sender) / opt;
      ratio = exact->get_d();
    } else {
      auto r = monte_carlo_evaluate(inst, b.mechanism, b.scenario, c.mc.value_or(100000), derive_seed(seed, k), jobs);
      ratio = (b.scenario.sender == UtilityMode::Ordinal ? r.sender_success.mean : r.sender_eu.mean) / opt.get_d();
    }
    rows.push_back(exact ? exact_row("ratio", name, n, b.s, *exact) : float_row("ratio", name, n, b.s, ratio));
    json pj{{"n", n}, {"s", b.s ? json(*b.s) : json(nullptr)}, {"ratio", ratio}};
    if (exact) pj["ratio_exact"] = to_json(*exact);
    if (b.s) {
      // Limit objectives of the two growing-sample guarantees, in c = s/n.
      double cf = static_cast<double>(*b.s) / static_cast<double>(n);
      double curve = b.scenario.sender == UtilityMode::Cardinal ? cf - cf * cf * cf : cf - cf * cf;
      rows.push_back(float_row(b.scenario.sender == UtilityMode::Cardinal ? "c-c^3" : "c-c^2", name, n, b.s, curve));
      pj["curve"] = curve;
    }
    structured.push_back(pj);
  }
  emit(c, out, render_table(rows), json{{"mechanism", c.mechanism}, {"seed", seed}, {"points", structured}});
  return ok;
}

inline int cmd_generate(const ExperimentConfig& c, std::ostream& out) {
  if (!is_family(c.instance)) throw InvalidArgument("generate needs --instance <family>; one of fig1, ub, instance-I, instance-II, negcorr, random-grid, random-aligned, random-independent");
  auto inst = load_instance(c, resolve_seed(c));
  std::string text = to_json(inst).dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw InvalidArgument("cannot write " + c.out);
    f << text;
  }
  return ok;
}

inline int cmd_reproduce(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  ReproduceOptions o;
  o.seed = resolve_seed(c);
  o.jobs = resolve_jobs(c);
  o.progress = &err;
  auto ids = c.criteria.empty() ? all_value_criteria() : c.criteria;
  auto results = run_criteria(o, ids);
  bool all = true;
  std::ostringstream t;
  for (const auto& r : results) {
    all = all && r.passed;
    t << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << "\n";
  }
  emit(c, out, t.str(), report_json(o.seed, results));
  // Timing goes to stderr so that the report itself stays deterministic.
  for (const auto& r : results)
    if (r.time_limit)
      err << "time  " << r.id << "  " << format_double(r.seconds) << " s (limit " << format_double(*r.time_limit) << " s)"
          << (r.within_time() ? "" : "  OVER") << "\n";
  return all ? ok : failed;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signaling schemes for secretary-style hiring: evaluate, check and reproduce."};
  app.require_subcommand(1);
  ExperimentConfig c;
  std::vector<std::string> formats{"table", "structured"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "write output to this path instead of stdout");
    sub->add_option("--format", c.format, "table or structured (JSON)")->check(CLI::IsMember(formats));
    sub->add_option("--seed", c.seed, "seed (env PERSUASION_SEED, default 42)");
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", c.instance, "instance file, or a family: fig1, ub, instance-I, instance-II, negcorr, random-grid, random-aligned, random-independent");
    sub->add_option("--n", c.n, "number of candidates");
    sub->add_option("--k", c.k, "grid resolution of random families");
  };
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", c.knowledge, "basic or secretary");
    sub->add_flag("--disclosure", c.disclosure, "disclose rejected candidates to the receiver");
    sub->add_option("--sender-utility", c.sender_utility, "ordinal or cardinal");
    sub->add_option("--receiver-utility", c.receiver_utility, "ordinal or cardinal");
    sub->add_option("--mechanism", c.mechanism, std::string("one of: ") + detail::mechanism_names());
    sub->add_option("--s", c.s, "sample size");
    sub->add_option("--target", c.target, "target candidate (1-based) for --mechanism target");
    sub->add_option("--table", c.table_file, "best-so-far table file (JSON)");
  };
  auto add_jobs = [&](CLI::App* sub) { sub->add_option("--jobs", c.jobs, "worker threads (env PERSUASION_JOBS, default all cores)"); };

  auto* pareto = app.add_subcommand("pareto", "Pareto procedure: optimal pair, mixing weight and OPT");
  add_common(pareto), add_instance(pareto);
  pareto->add_option("--sender-utility", c.sender_utility, "ordinal or cardinal");

  auto* eval = app.add_subcommand("eval", "evaluate a mechanism exactly, or by sampling with --mc");
  add_common(eval), add_instance(eval), add_scenario(eval), add_jobs(eval);
  eval->add_option("--mc", c.mc, "Monte Carlo sample count");

  auto* check = app.add_subcommand("check-persuasive", "decide whether obedience is a best response");
  add_common(check), add_instance(check), add_scenario(check);
  check->add_flag("--expect-persuasive", c.expect_persuasive, "exit with code 3 when a violation is found");

  auto* lp = app.add_subcommand("optimal-lp", "optimal persuasive policy with disclosure via nested LPs");
  add_common(lp), add_instance(lp);
  lp->add_option("--sender-utility", c.sender_utility, "ordinal or cardinal");

  auto* dp = app.add_subcommand("dp", "best-so-far dynamic program");
  add_common(dp);
  dp->add_option("--n", c.n, "number of candidates")->required();

  auto* sweep = app.add_subcommand("sweep", "ratio curves over sample fractions or instance sizes");
  add_common(sweep), add_instance(sweep), add_scenario(sweep), add_jobs(sweep);
  sweep->add_option("--s-grid", c.s_grid, "lo:hi:step as fractions of n");
  sweep->add_option("--n-grid", c.n_grid, "lo:hi:step over n");
  sweep->add_option("--mc", c.mc, "Monte Carlo samples per point (default: exact when n <= 8, else 100000)");

  auto* gen = app.add_subcommand("generate", "write an instance file");
  add_common(gen), add_instance(gen);

  auto* rep = app.add_subcommand("reproduce", "run the acceptance suite");
  add_common(rep), add_jobs(rep);
  rep->add_option("--criteria", c.criteria, "subset of criteria ids (default 1-10)");

  std::vector<std::string> argv{"persuasion"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid;
  }

  try {
    if (*pareto) return detail::cmd_pareto(c, out);
    if (*eval) return detail::cmd_eval(c, out);
    if (*check) return detail::cmd_check(c, out);
    if (*lp) return detail::cmd_optimal_lp(c, out);
    if (*dp) return detail::cmd_dp(c, out);
    if (*sweep) return detail::cmd_sweep(c, out);
    if (*gen) return detail::cmd_generate(c, out);
    if (*rep) return detail::cmd_reproduce(c, out, err);
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return invalid;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return invalid;
  }
  return invalid;
}

}  // namespace persuasion::cli
