#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/parallel.hpp"

namespace persuasion {

constexpr std::size_t exact_eval_cap = 8;
constexpr std::size_t persuasive_cap = 7;

struct ExactEvalReport {
  Rational sender_success;
  Rational sender_eu;
  Rational receiver_success;
  Rational receiver_eu;
  std::vector<Rational> hire_round_pmf;  // index t-1
  // Benchmark of the scenario, for ratios.
  friend bool operator==(const ExactEvalReport&, const ExactEvalReport&) = default;
};

namespace detail {

inline Rational factorial(std::size_t n) {
  mpz_class f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return Rational(f);
}

// Calls branch policies on views built from a prefix of the arrival order, memoising on
// (branch, arrived set, current, signal history) when the mechanism allows it.
class PolicyCaller {
 public:
  PolicyCaller(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s)
      : inst_(inst),
        m_(m),
        prior_(s.knowledge == Knowledge::Basic ? &inst : nullptr),
        knowledge_(s.knowledge),
        actions_(inst.size(), Action::Rejected),
        memo_(m.order_free() && inst.size() <= 16) {}

  // `arrived` holds θ_1..θ_t, `mask` their ids, bit k of `hires` is set if σ_{k+1} was HIRE.
  const Rational& call(std::size_t branch, std::span<const Candidate> arrived, std::uint64_t mask,
                       std::uint32_t hires) {
    const std::size_t t = arrived.size();
    if (memo_) {
      std::uint64_t key = (std::uint64_t(branch) << 40) | (mask << 20) | (std::uint64_t(hires) << 4) | arrived.back().id;
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
      return cache_.emplace(key, evaluate(branch, arrived, t, hires)).first->second;
    }
    scratch_ = evaluate(branch, arrived, t, hires);
    return scratch_;
  }

 private:
  Rational evaluate(std::size_t branch, std::span<const Candidate> arrived, std::size_t t, std::uint32_t hires) {
    signals_.assign(t - 1, Signal::Not);
    for (std::size_t k = 0; k + 1 < t; ++k)
      if (hires >> k & 1u) signals_[k] = Signal::Hire;
    SenderView view(knowledge_, t, arrived, signals_, std::span<const Action>(actions_.data(), t - 1), prior_);
    Rational p = m_.branches()[branch].policy(view);
    if (sgn(p) < 0 || p > 1) throw InvalidArgument("policy '" + m_.name() + "' returned a probability outside [0,1]");
    return p;
  }

  const Instance& inst_;
  const MechanismPolicy& m_;
  const Instance* prior_;
  Knowledge knowledge_;
  std::vector<Action> actions_;
  std::vector<Signal> signals_;
  bool memo_;
  std::unordered_map<std::uint64_t, Rational> cache_;
  Rational scratch_;
};

struct ObedientState {
  std::uint32_t branch;
  Rational prob;
};

// Number of ways to complete a prefix of length t, for t = 0..n.
inline std::vector<Rational> completions(std::size_t n) {
  std::vector<Rational> c(n + 1);
  for (std::size_t t = 0; t <= n; ++t) c[t] = factorial(n - t);
  return c;
}

// Walks every arrival order whose first candidate is `first`, following obedient play. `on_hire`
// receives (round, arrived mask, hired id, branch, mass) with mass un-normalised: each full order
// carries weight 1, so a prefix of length t stands for (n - t)! orders.
template <class OnHire>
void walk_obedient(const Instance& inst, const MechanismPolicy& m, PolicyCaller& caller, std::size_t first,
                   OnHire&& on_hire) {
  const std::size_t n = inst.size();
  std::vector<Candidate> arr(inst.candidates().begin(), inst.candidates().end());
  std::swap(arr[0], arr[first]);
  const auto weight = completions(n);
  std::vector<ObedientState> init;
  for (std::size_t b = 0; b < m.branches().size(); ++b) init.push_back({static_cast<std::uint32_t>(b), m.branches()[b].weight});

  auto rec = [&](auto&& self, std::size_t t, std::uint64_t mask, const std::vector<ObedientState>& states) -> void {
    const std::size_t round = t + 1;
    const std::uint64_t here = mask | (1ull << arr[t].id);
    std::span<const Candidate> prefix(arr.data(), round);
    std::vector<ObedientState> next;
    for (const auto& s : states) {
      const Rational& p = caller.call(s.branch, prefix, here, 0);
      if (sgn(p) != 0) on_hire(round, here, arr[t].id, s.branch, Rational(s.prob * p * weight[round]));
      if (p != 1) next.push_back({s.branch, s.prob * (1 - p)});
    }
    if (round == n || next.empty()) return;
    for (std::size_t i = t + 1; i < n; ++i) {
      std::swap(arr[t + 1], arr[i]);
      self(self, t + 1, here, next);
      std::swap(arr[t + 1], arr[i]);
    }
  };
  rec(rec, 0, 0, init);
}

inline void check_exact_inputs(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s, std::size_t cap,
                               const char* what) {
  if (inst.size() > cap) throw TooLarge(inst.size(), cap, what);
  check_instance_size(inst, m);
  check_knowledge(s, m);
}

}  // namespace detail

inline ExactEvalReport exact_evaluate(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s,
                                      unsigned jobs = 1) {
  detail::check_exact_inputs(inst, m, s, exact_eval_cap, "exact evaluation");
  const std::size_t n = inst.size();
  std::vector<std::vector<Rational>> by_id(n, std::vector<Rational>(n, 0)), by_round(n, std::vector<Rational>(n, 0));
  parallel_for(n, jobs, [&](std::size_t first) {
    detail::PolicyCaller caller(inst, m, s);
    detail::walk_obedient(inst, m, caller, first,
                          [&](std::size_t round, std::uint64_t, std::size_t id, std::size_t, const Rational& mass) {
                            by_id[first][id] += mass;
                            by_round[first][round - 1] += mass;
                          });
  });
  Rational norm = detail::factorial(n);
  auto best = best_candidates(inst);
  ExactEvalReport r;
  r.hire_round_pmf.assign(n, 0);
  std::vector<Rational> mass(n, 0);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t i = 0; i < n; ++i) {
      mass[i] += by_id[f][i];
      r.hire_round_pmf[i] += by_round[f][i];
    }
  r.sender_eu = r.receiver_eu = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] /= norm;
    r.hire_round_pmf[i] /= norm;
    r.sender_eu += mass[i] * inst[i].xi;
    r.receiver_eu += mass[i] * inst[i].rho;
  }
  r.sender_success = mass[best.sender];
  r.receiver_success = mass[best.receiver];
  return r;
}

// Pr[σ_t = HIRE | A_t] for every arrived set A_t of size t, under obedient play.
inline std::map<std::uint64_t, Rational> hire_signal_by_arrived_set(const Instance& inst, const MechanismPolicy& m,
                                                                    const ScenarioSpec& s, std::size_t round) {
  detail::check_exact_inputs(inst, m, s, exact_eval_cap, "signal enumeration");
  const std::size_t n = inst.size();
  if (round < 1 || round > n) throw InvalidArgument("round out of range");
  std::map<std::uint64_t, Rational> acc;
  detail::PolicyCaller caller(inst, m, s);
  for (std::size_t first = 0; first < n; ++first)
    detail::walk_obedient(inst, m, caller, first,
                          [&](std::size_t r, std::uint64_t mask, std::size_t, std::size_t, const Rational& mass) {
                            if (r == round) acc[mask] += mass;
                          });
  // Each set of size t is the prefix of t!(n-t)! orders.
  Rational per_set = detail::factorial(round) * detail::factorial(n - round);
  std::map<std::uint64_t, Rational> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == round) out[mask] = acc.count(mask) ? Rational(acc[mask] / per_set) : Rational(0);
  return out;
}

// Restricts a mechanism to one branch, reweighted to 1.
inline MechanismPolicy single_branch(const MechanismPolicy& m, std::size_t k) {
  auto b = m.branches().at(k);
  b.weight = 1;
  return MechanismPolicy(m.name() + "#" + std::to_string(k), m.n(), m.needs_full_knowledge(), {b}, m.order_free());
}

struct Violation {
  ReceiverView at;
  Rational probability;      // probability of reaching this information set
  Rational obedient_value;   // conditional receiver value of following signals from here on
  Rational deviation_value;  // conditional value of the other action, best play afterwards
};

struct PersuasivenessReport {
  bool persuasive = false;
  Rational v_obedient;
  Rational v_best_response;
  std::vector<Violation> violations;
  std::size_t indifferent_nodes = 0;  // on-path sets where the other action ties with obedience
  std::size_t information_sets = 0;
};

namespace detail {

struct InfoNode {
  Rational mass;
  Rational accept;  // Σ mass · payoff of the current candidate
  std::uint32_t parent = 0;
  std::uint32_t round = 0;
  int disclosed_class = -1;  // class of θ_{round-1} when disclosed
  Signal signal = Signal::Not;
  bool on_path = true;  // no refused HIRE before this round
  std::vector<std::pair<std::uint32_t, std::uint32_t>> children;
};

struct PersuasiveState {
  std::uint32_t branch;
  std::uint32_t hires;
  std::uint32_t node;
  Rational prob;
};

}  // namespace detail

inline PersuasivenessReport check_persuasive(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s) {
  detail::check_exact_inputs(inst, m, s, persuasive_cap, "persuasiveness check");
  const std::size_t n = inst.size();
  auto best = best_candidates(inst);
  std::vector<Rational> payoff(n);
  for (std::size_t i = 0; i < n; ++i)
    payoff[i] = s.receiver == UtilityMode::Cardinal ? inst[i].rho : Rational(i == best.receiver ? 1 : 0);

  std::vector<detail::InfoNode> nodes(1);
  auto child_of = [&](std::uint32_t parent, int cls, Signal sig, std::uint32_t round) -> std::uint32_t {
    std::uint32_t label = static_cast<std::uint32_t>(cls + 1) * 2 + (sig == Signal::Hire ? 1 : 0);
    for (auto [l, c] : nodes[parent].children)
      if (l == label) return c;
    detail::InfoNode node;
    node.parent = parent;
    node.round = round;
    node.disclosed_class = cls;
    node.signal = sig;
    node.on_path = parent == 0 || (nodes[parent].on_path && nodes[parent].signal == Signal::Not);
    node.mass = node.accept = 0;
    nodes.push_back(std::move(node));
    auto id = static_cast<std::uint32_t>(nodes.size() - 1);
    nodes[parent].children.emplace_back(label, id);
    return id;
  };

  detail::PolicyCaller caller(inst, m, s);
  const auto weight = detail::completions(n);
  std::vector<Candidate> arr(inst.candidates().begin(), inst.candidates().end());
  auto rec = [&](auto&& self, std::size_t t, std::uint64_t mask, const std::vector<detail::PersuasiveState>& states) -> void {
    const std::size_t round = t + 1;
    const std::uint64_t here = mask | (1ull << arr[t].id);
    std::span<const Candidate> prefix(arr.data(), round);
    int cls = s.disclosure && t > 0 ? static_cast<int>(inst.value_class(arr[t - 1].id)) : -1;
    std::vector<detail::PersuasiveState> next;
    for (const auto& st : states) {
      Rational p = caller.call(st.branch, prefix, here, st.hires);
      for (Signal sig : {Signal::Hire, Signal::Not}) {
        Rational mass = st.prob * (sig == Signal::Hire ? p : Rational(1 - p));
        if (sgn(mass) == 0) continue;
        auto c = child_of(st.node, cls, sig, static_cast<std::uint32_t>(round));
        Rational orders = mass * weight[round];
        nodes[c].mass += orders;
        nodes[c].accept += orders * payoff[arr[t].id];
        if (round < n)
          next.push_back({st.branch, st.hires | (sig == Signal::Hire ? 1u << t : 0u), c, std::move(mass)});
      }
    }
    if (round == n || next.empty()) return;
    for (std::size_t i = t + 1; i < n; ++i) {
      std::swap(arr[t + 1], arr[i]);
      self(self, t + 1, here, next);
      std::swap(arr[t + 1], arr[i]);
    }
  };
  for (std::size_t first = 0; first < n; ++first) {
    std::vector<detail::PersuasiveState> init;
    for (std::size_t b = 0; b < m.branches().size(); ++b)
      init.push_back({static_cast<std::uint32_t>(b), 0, 0, m.branches()[b].weight});
    std::swap(arr[0], arr[first]);
    rec(rec, 0, 0, init);
    std::swap(arr[0], arr[first]);
  }

  // Backward induction. Children were created after their parents.
  const std::size_t count = nodes.size();
  std::vector<Rational> best_v(count, 0), obey_v(count, 0), cont_best(count, 0), cont_obey(count, 0);
  PersuasivenessReport rep;
  rep.information_sets = count - 1;
  std::vector<std::size_t> flagged;
  for (std::size_t k = count; k-- > 1;) {
    const auto& nd = nodes[k];
    best_v[k] = nd.accept > cont_best[k] ? nd.accept : cont_best[k];
    obey_v[k] = nd.signal == Signal::Hire ? nd.accept : cont_obey[k];
    cont_best[nd.parent] += best_v[k];
    cont_obey[nd.parent] += obey_v[k];
    if (!nd.on_path) continue;
    const Rational& other = nd.signal == Signal::Hire ? cont_best[k] : nd.accept;
    const Rational& mine = nd.signal == Signal::Hire ? nd.accept : cont_best[k];
    if (other > mine)
      flagged.push_back(k);
    else if (other == mine)
      ++rep.indifferent_nodes;
  }
  Rational norm = detail::factorial(n);
  rep.v_best_response = cont_best[0] / norm;
  rep.v_obedient = cont_obey[0] / norm;
  rep.persuasive = rep.v_best_response == rep.v_obedient;

  std::vector<std::size_t> representative(inst.class_count(), 0);
  for (std::size_t i = n; i-- > 0;) representative[inst.value_class(i)] = i;
  for (auto it = flagged.rbegin(); it != flagged.rend(); ++it) {
    std::size_t k = *it;
    Violation v;
    v.at.round = nodes[k].round;
    for (std::size_t j = k; j != 0; j = nodes[j].parent) {
      v.at.signals.push_back(nodes[j].signal);
      if (nodes[j].disclosed_class >= 0) v.at.disclosed.push_back(representative[static_cast<std::size_t>(nodes[j].disclosed_class)]);
    }
    std::reverse(v.at.signals.begin(), v.at.signals.end());
    std::reverse(v.at.disclosed.begin(), v.at.disclosed.end());
    v.probability = nodes[k].mass / norm;
    v.obedient_value = obey_v[k] / nodes[k].mass;
    v.deviation_value = (nodes[k].signal == Signal::Hire ? cont_best[k] : nodes[k].accept) / nodes[k].mass;
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

}  // namespace persuasion
