#pragma once

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "persuasion/core.hpp"
#include "persuasion/exact.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/monte_carlo.hpp"
#include "persuasion/pareto.hpp"
#include "persuasion/theory.hpp"

namespace persuasion {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  if (j.is_number_float()) {
    // Exact value of the shortest decimal that round-trips the double.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  throw InvalidArgument("expected a number or a rational string, got " + j.dump());
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

// {"name"?: string, "candidates": [{"rho": ..., "xi": ...}, ...]}
inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("candidates") || !j["candidates"].is_array())
    throw InvalidArgument("instance JSON needs a \"candidates\" array");
  std::vector<std::pair<Rational, Rational>> v;
  for (const auto& c : j["candidates"]) {
    if (!c.is_object() || !c.contains("rho") || !c.contains("xi"))
      throw InvalidArgument("each candidate needs \"rho\" and \"xi\"");
    v.emplace_back(rational_from_json(c["rho"]), rational_from_json(c["xi"]));
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return validate_instance(v, name);
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance_file(const std::string& path) { return parse_instance(read_file(path)); }

inline json to_json(const Instance& inst) {
  json j;
  if (!inst.name().empty()) j["name"] = inst.name();
  j["candidates"] = json::array();
  for (const auto& c : inst.candidates()) j["candidates"].push_back({{"rho", to_json(c.rho)}, {"xi", to_json(c.xi)}});
  return j;
}

inline json to_json(const ScenarioSpec& s) {
  return {{"knowledge", to_string(s.knowledge)},
          {"disclosure", s.disclosure},
          {"sender", to_string(s.sender)},
          {"receiver", to_string(s.receiver)}};
}

// Reports render ids 1-based.
inline json to_json(const ParetoResult& r) {
  return {{"a", r.a + 1}, {"b", r.b + 1}, {"alpha", to_json(r.alpha)}, {"opt", to_json(r.opt_value)}, {"mu_r", to_json(r.mu_r)}};
}

inline ParetoResult pareto_result_from_json(const json& j) {
  ParetoResult r;
  r.a = j.at("a").get<std::size_t>() - 1;
  r.b = j.at("b").get<std::size_t>() - 1;
  r.alpha = rational_from_json(j.at("alpha"));
  r.opt_value = rational_from_json(j.at("opt"));
  r.mu_r = rational_from_json(j.at("mu_r"));
  return r;
}

inline json to_json(const ExactEvalReport& r) {
  return {{"mode", "exact"},
          {"sender_success", to_json(r.sender_success)},
          {"sender_eu", to_json(r.sender_eu)},
          {"receiver_success", to_json(r.receiver_success)},
          {"receiver_eu", to_json(r.receiver_eu)},
          {"hire_round_pmf", to_json(r.hire_round_pmf)}};
}

inline ExactEvalReport exact_report_from_json(const json& j) {
  if (j.value("mode", "") != "exact") throw InvalidArgument("not an exact report");
  ExactEvalReport r;
  r.sender_success = rational_from_json(j.at("sender_success"));
  r.sender_eu = rational_from_json(j.at("sender_eu"));
  r.receiver_success = rational_from_json(j.at("receiver_success"));
  r.receiver_eu = rational_from_json(j.at("receiver_eu"));
  r.hire_round_pmf = rationals_from_json(j.at("hire_round_pmf"));
  return r;
}

inline json to_json(const Estimate& e) { return {{"mean", e.mean}, {"halfwidth", e.halfwidth}}; }

inline Estimate estimate_from_json(const json& j) { return {j.at("mean").get<double>(), j.at("halfwidth").get<double>()}; }

inline json to_json(const MonteCarloReport& r) {
  return {{"mode", "monte-carlo"},
          {"samples", r.samples},
          {"seed", r.seed},
          {"sender_success", to_json(r.sender_success)},
          {"sender_eu", to_json(r.sender_eu)},
          {"receiver_success", to_json(r.receiver_success)},
          {"receiver_eu", to_json(r.receiver_eu)},
          {"hire_round_pmf", r.hire_round_pmf}};
}

inline MonteCarloReport monte_carlo_report_from_json(const json& j) {
  if (j.value("mode", "") != "monte-carlo") throw InvalidArgument("not a Monte Carlo report");
  MonteCarloReport r;
  r.samples = j.at("samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.sender_success = estimate_from_json(j.at("sender_success"));
  r.sender_eu = estimate_from_json(j.at("sender_eu"));
  r.receiver_success = estimate_from_json(j.at("receiver_success"));
  r.receiver_eu = estimate_from_json(j.at("receiver_eu"));
  r.hire_round_pmf = j.at("hire_round_pmf").get<std::vector<double>>();
  return r;
}

inline std::string signals_string(const std::vector<Signal>& s) {
  std::string out;
  for (auto x : s) out += x == Signal::Hire ? 'H' : 'N';
  return out;
}

inline std::vector<Signal> signals_from_string(const std::string& s) {
  std::vector<Signal> out;
  for (char c : s) {
    if (c != 'H' && c != 'N') throw InvalidArgument("bad signal string '" + s + "'");
    out.push_back(c == 'H' ? Signal::Hire : Signal::Not);
  }
  return out;
}

inline json to_json(const PersuasivenessReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json disclosed = json::array();
    for (auto id : x.at.disclosed) disclosed.push_back(id + 1);
    v.push_back({{"round", x.at.round},
                 {"signals", signals_string(x.at.signals)},
                 {"disclosed", disclosed},
                 {"probability", to_json(x.probability)},
                 {"obedient_value", to_json(x.obedient_value)},
                 {"deviation_value", to_json(x.deviation_value)}});
  }
  return {{"persuasive", r.persuasive},
          {"v_obedient", to_json(r.v_obedient)},
          {"v_best_response", to_json(r.v_best_response)},
          {"information_sets", r.information_sets},
          {"indifferent_nodes", r.indifferent_nodes},
          {"violations", v}};
}

inline PersuasivenessReport persuasiveness_report_from_json(const json& j) {
  PersuasivenessReport r;
  r.persuasive = j.at("persuasive").get<bool>();
  r.v_obedient = rational_from_json(j.at("v_obedient"));
  r.v_best_response = rational_from_json(j.at("v_best_response"));
  r.information_sets = j.at("information_sets").get<std::size_t>();
  r.indifferent_nodes = j.at("indifferent_nodes").get<std::size_t>();
  for (const auto& x : j.at("violations")) {
    Violation v;
    v.at.round = x.at("round").get<std::size_t>();
    v.at.signals = signals_from_string(x.at("signals").get<std::string>());
    for (const auto& d : x.at("disclosed")) v.at.disclosed.push_back(d.get<std::size_t>() - 1);
    v.probability = rational_from_json(x.at("probability"));
    v.obedient_value = rational_from_json(x.at("obedient_value"));
    v.deviation_value = rational_from_json(x.at("deviation_value"));
    r.violations.push_back(std::move(v));
  }
  return r;
}

inline json to_json(const DPTable& d) {
  json hire = json::array();
  for (bool h : d.hire) hire.push_back(h ? 1 : 0);
  return {{"n", d.n}, {"u", to_json(d.u)}, {"v", to_json(d.v)}, {"hire", hire}, {"threshold", d.threshold},
          {"sample_size", d.threshold - 1}};
}

inline DPTable dp_table_from_json(const json& j) {
  DPTable d;
  d.n = j.at("n").get<std::size_t>();
  d.u = rationals_from_json(j.at("u"));
  d.v = rationals_from_json(j.at("v"));
  for (const auto& h : j.at("hire")) d.hire.push_back(h.get<int>() != 0);
  d.threshold = j.at("threshold").get<std::size_t>();
  return d;
}

inline json to_json(const NestedLPPolicy& p) {
  json x = json::array();
  const auto full = p.full_mask();
  for (const auto& v : p.x[full]) x.push_back(to_json(v));
  return {{"n", p.n}, {"sender", to_string(p.sender)}, {"u_sender", to_json(p.u_sender[full])},
          {"u_receiver", to_json(p.u_receiver[full])}, {"x_full", x}};
}

// Flat table: one row per (metric, mechanism, n, s), exact and floating values side by side.
struct TableRow {
  std::string metric;
  std::string mechanism;
  std::size_t n = 0;
  std::optional<std::size_t> s;
  std::optional<Rational> exact;
  double value = 0;
};

inline TableRow exact_row(std::string metric, std::string mechanism, std::size_t n, std::optional<std::size_t> s,
                          const Rational& v) {
  return {std::move(metric), std::move(mechanism), n, s, v, v.get_d()};
}

inline TableRow float_row(std::string metric, std::string mechanism, std::size_t n, std::optional<std::size_t> s, double v) {
  return {std::move(metric), std::move(mechanism), n, s, std::nullopt, v};
}

inline std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

inline std::string render_table(const std::vector<TableRow>& rows) {
  std::vector<std::array<std::string, 6>> cells{{"metric", "mechanism", "n", "s", "exact", "value"}};
  for (const auto& r : rows)
    cells.push_back({r.metric, r.mechanism, std::to_string(r.n), r.s ? std::to_string(*r.s) : "-",
                     r.exact ? to_string(*r.exact) : "-", format_double(r.value)});
  std::array<std::size_t, 6> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 6; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < 6; ++c) {
      out << row[c];
      if (c + 1 < 6) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

inline json to_json(const std::vector<TableRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    json j{{"metric", r.metric}, {"mechanism", r.mechanism}, {"n", r.n}};
    j["s"] = r.s ? json(*r.s) : json(nullptr);
    j["exact"] = r.exact ? to_json(*r.exact) : json(nullptr);
    j["value"] = r.value;
    a.push_back(std::move(j));
  }
  return a;
}

}  // namespace persuasion
