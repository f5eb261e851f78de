#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/errors.hpp"
#include "persuasion/rational.hpp"

namespace persuasion {

enum class Knowledge { Basic, Secretary };
enum class UtilityMode { Ordinal, Cardinal };
enum class Signal { Hire, Not };
enum class Action { Accepted, Rejected };

struct ScenarioSpec {
  Knowledge knowledge = Knowledge::Basic;
  bool disclosure = false;
  UtilityMode sender = UtilityMode::Cardinal;
  UtilityMode receiver = UtilityMode::Cardinal;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

inline const char* to_string(Knowledge k) { return k == Knowledge::Basic ? "basic" : "secretary"; }
inline const char* to_string(UtilityMode m) { return m == UtilityMode::Ordinal ? "ordinal" : "cardinal"; }

inline std::string to_string(const ScenarioSpec& s) {
  return std::string(to_string(s.knowledge)) + (s.disclosure ? "/disclosure" : "/no-disclosure") +
         "/S:" + to_string(s.sender) + "/R:" + to_string(s.receiver);
}

struct Candidate {
  std::size_t id = 0;
  Rational rho;
  Rational xi;
};

class Instance;
Instance validate_instance(const std::vector<std::pair<Rational, Rational>>& values, std::string name = {});

class Instance {
 public:
  Instance() = default;

  std::size_t size() const { return cands_.size(); }
  const Candidate& operator[](std::size_t i) const { return cands_[i]; }
  std::span<const Candidate> candidates() const { return cands_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Candidates with identical value pairs share a class; the receiver cannot tell them apart.
  std::size_t value_class(std::size_t i) const { return class_[i]; }
  std::size_t class_count() const { return class_count_; }
  bool strictly_distinct() const { return distinct_; }

 private:
  friend Instance validate_instance(const std::vector<std::pair<Rational, Rational>>&, std::string);

  std::vector<Candidate> cands_;
  std::vector<std::size_t> class_;
  std::size_t class_count_ = 0;
  std::string name_;
  bool distinct_ = true;
};

inline Instance validate_instance(const std::vector<std::pair<Rational, Rational>>& values, std::string name) {
  if (values.empty()) throw EmptyInstance();
  Instance inst;
  inst.name_ = std::move(name);
  inst.cands_.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (sgn(values[i].first) < 0 || sgn(values[i].second) < 0) throw NegativeValue(i);
    inst.cands_.push_back(Candidate{i, values[i].first, values[i].second});
  }
  std::map<std::pair<Rational, Rational>, std::size_t> classes;
  inst.class_.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto [it, fresh] = classes.emplace(values[i], classes.size());
    inst.class_[i] = it->second;
  }
  inst.class_count_ = classes.size();
  for (std::size_t i = 0; i < values.size() && inst.distinct_; ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i].first == values[j].first || values[i].second == values[j].second) {
        inst.distinct_ = false;
        break;
      }
  return inst;
}

inline Instance make_instance(std::initializer_list<std::pair<long, long>> values, std::string name = {}) {
  std::vector<std::pair<Rational, Rational>> v;
  for (auto [r, x] : values) v.emplace_back(Rational(r), Rational(x));
  return validate_instance(v, std::move(name));
}

struct BestCandidates {
  std::size_t sender = 0;    // argmax xi, smallest id on ties
  std::size_t receiver = 0;  // argmax rho, smallest id on ties
};

inline BestCandidates best_candidates(const Instance& inst) {
  if (inst.size() == 0) throw EmptyInstance();
  BestCandidates b;
  for (std::size_t i = 1; i < inst.size(); ++i) {
    if (inst[i].xi > inst[b.sender].xi) b.sender = i;
    if (inst[i].rho > inst[b.receiver].rho) b.receiver = i;
  }
  return b;
}

inline Rational mu_receiver(const Instance& inst) {
  if (inst.size() == 0) throw EmptyInstance();
  Rational sum = 0;
  for (const auto& c : inst.candidates()) sum += c.rho;
  return sum / Rational(static_cast<long>(inst.size()));
}

// Scales so that max rho = max xi = 1. In ordinal mode every xi except c_S is zeroed first.
inline Instance normalize_for_mode(const Instance& inst, UtilityMode mode) {
  auto best = best_candidates(inst);
  Rational rmax = inst[best.receiver].rho, xmax = inst[best.sender].xi;
  if (sgn(rmax) == 0) throw DegenerateInstance("all receiver values are zero");
  if (sgn(xmax) == 0) throw DegenerateInstance("all sender values are zero");
  std::vector<std::pair<Rational, Rational>> v;
  v.reserve(inst.size());
  for (const auto& c : inst.candidates()) {
    Rational xi = mode == UtilityMode::Ordinal ? Rational(c.id == best.sender ? 1 : 0) : Rational(c.xi / xmax);
    v.emplace_back(c.rho / rmax, xi);
  }
  return validate_instance(v, inst.name());
}

// What the sender sees before signalling in round `round` (1-based). `arrived` lists θ_1..θ_round
// in arrival order. The full instance is only visible in the basic knowledge scenario.
class SenderView {
 public:
  SenderView(Knowledge knowledge, std::size_t round, std::span<const Candidate> arrived,
             std::span<const Signal> past_signals, std::span<const Action> past_actions,
             const Instance* prior)
      : knowledge_(knowledge),
        round_(round),
        arrived_(arrived),
        signals_(past_signals),
        actions_(past_actions),
        prior_(prior) {
    if (knowledge == Knowledge::Secretary && prior != nullptr)
      throw KnowledgeMismatch("secretary view cannot carry the instance");
    if (round == 0 || arrived.size() != round || past_signals.size() + 1 != round ||
        past_actions.size() + 1 != round)
      throw InvalidArgument("inconsistent sender view");
  }

  Knowledge knowledge() const { return knowledge_; }
  std::size_t round() const { return round_; }
  std::span<const Candidate> arrived() const { return arrived_; }
  const Candidate& current() const { return arrived_.back(); }
  std::span<const Signal> past_signals() const { return signals_; }
  std::span<const Action> past_actions() const { return actions_; }
  const Instance* prior_instance() const { return prior_; }

  bool refused_hire() const {
    return std::find(signals_.begin(), signals_.end(), Signal::Hire) != signals_.end();
  }

 private:
  Knowledge knowledge_;
  std::size_t round_;
  std::span<const Candidate> arrived_;
  std::span<const Signal> signals_;
  std::span<const Action> actions_;
  const Instance* prior_;
};

// Returns Pr[HIRE] for the current round.
using BehavioralPolicy = std::function<Rational(const SenderView&)>;

// Floating-point stand-in for a behavioral policy, used by the sampler. One object follows one
// obedient trajectory at a time; step() is called once per round until a hire.
struct FloatCandidate {
  std::size_t id = 0;
  double rho = 0;
  double xi = 0;
};

class TrajectoryStepper {
 public:
  virtual ~TrajectoryStepper() = default;
  virtual void reset() = 0;
  virtual double step(std::size_t round, const FloatCandidate& arrival) = 0;
};

using StepperFactory = std::function<std::unique_ptr<TrajectoryStepper>()>;

struct PolicyBranch {
  Rational weight;
  BehavioralPolicy policy;
  StepperFactory stepper;  // optional
};

class MechanismPolicy {
 public:
  // `order_free`: every branch's output depends only on the set of arrived candidates, the current
  // candidate and the signal history, which lets exact evaluators memoise calls.
  MechanismPolicy(std::string name, std::size_t n, bool needs_full_knowledge, std::vector<PolicyBranch> branches,
                  bool order_free = true)
      : name_(std::move(name)),
        n_(n),
        full_knowledge_(needs_full_knowledge),
        order_free_(order_free),
        branches_(std::move(branches)) {
    if (branches_.empty()) throw InvalidArgument("mechanism without branches");
    Rational total = 0;
    for (const auto& b : branches_) {
      if (sgn(b.weight) <= 0 || b.weight > 1) throw InvalidArgument("branch weight outside (0,1]");
      if (!b.policy) throw InvalidArgument("branch without a policy");
      total += b.weight;
    }
    if (total != 1) throw InvalidArgument("branch weights do not sum to 1");
  }

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  bool needs_full_knowledge() const { return full_knowledge_; }
  bool order_free() const { return order_free_; }
  const std::vector<PolicyBranch>& branches() const { return branches_; }
  bool has_steppers() const {
    return std::all_of(branches_.begin(), branches_.end(), [](const auto& b) { return bool(b.stepper); });
  }

 private:
  std::string name_;
  std::size_t n_;
  bool full_knowledge_;
  bool order_free_;
  std::vector<PolicyBranch> branches_;
};

// Off-path default and round-n totality: NOT forever once a HIRE was refused, HIRE in round n.
inline BehavioralPolicy standard_rounds(std::size_t n, BehavioralPolicy inner) {
  return [n, inner = std::move(inner)](const SenderView& v) -> Rational {
    if (v.refused_hire()) return 0;
    if (v.round() == n) return 1;
    return inner(v);
  };
}

// What the receiver has observed when deciding in round `round`.
struct ReceiverView {
  std::size_t round = 0;
  std::vector<Signal> signals;          // σ_1..σ_round
  std::vector<std::size_t> disclosed;   // ids of θ_1..θ_{round-1}; empty without disclosure
};

inline void check_instance_size(const Instance& inst, const MechanismPolicy& m) {
  if (inst.size() != m.n())
    throw InvalidArgument("mechanism '" + m.name() + "' was built for n = " + std::to_string(m.n()) +
                          " but the instance has " + std::to_string(inst.size()) + " candidates");
}

inline void check_knowledge(const ScenarioSpec& s, const MechanismPolicy& m) {
  if (s.knowledge == Knowledge::Secretary && m.needs_full_knowledge())
    throw KnowledgeMismatch("mechanism '" + m.name() + "' needs the instance and cannot run in the secretary scenario");
}

}  // namespace persuasion
