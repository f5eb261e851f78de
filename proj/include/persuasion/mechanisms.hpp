#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/pareto.hpp"

namespace persuasion {

// 12-decimal rational stand-in for e, used for the Simple Secretary mixing weight.
inline Rational e_approx() { return parse_rational("2.718281828459"); }

inline std::size_t floor_n_over_e(std::size_t n) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) / 2.718281828459045));
}

inline std::size_t floor_n_over_sqrt3(std::size_t n) {
  std::size_t k = static_cast<std::size_t>(static_cast<double>(n) / std::sqrt(3.0));
  while (3 * (k + 1) * (k + 1) <= n * n) ++k;
  while (k > 0 && 3 * k * k > n * n) --k;
  return k;
}

enum class Selector { Sender, Receiver };

namespace detail {

inline bool beats(const Rational& v, std::size_t id, const Rational& w, std::size_t wid) {
  return v > w || (v == w && id < wid);
}

// θ_t is the best arrived candidate so far (ties to the smaller id).
inline bool best_so_far(const SenderView& v, Selector sel) {
  const auto& cur = v.current();
  const Rational& cv = sel == Selector::Sender ? cur.xi : cur.rho;
  auto arrived = v.arrived();
  for (std::size_t j = 0; j + 1 < arrived.size(); ++j) {
    const Rational& w = sel == Selector::Sender ? arrived[j].xi : arrived[j].rho;
    if (!beats(cv, cur.id, w, arrived[j].id)) return false;
  }
  return true;
}

inline bool fbeats(double v, std::size_t id, double w, std::size_t wid) { return v > w || (v == w && id < wid); }

struct BestTracker {
  bool any = false;
  double value = 0;
  std::size_t id = 0;
  // Returns true if `x` becomes the new best.
  bool offer(double x, std::size_t xid) {
    if (!any || fbeats(x, xid, value, id)) {
      any = true;
      value = x;
      id = xid;
      return true;
    }
    return false;
  }
};

template <class F>
StepperFactory make_stepper_factory(F make) {
  return [make]() -> std::unique_ptr<TrajectoryStepper> { return make(); };
}

class TargetStepper final : public TrajectoryStepper {
 public:
  TargetStepper(std::size_t n, std::size_t target) : n_(n), target_(target) {}
  void reset() override {}
  double step(std::size_t round, const FloatCandidate& c) override {
    return round == n_ || c.id == target_ ? 1.0 : 0.0;
  }

 private:
  std::size_t n_, target_;
};

class RoundStepper final : public TrajectoryStepper {
 public:
  explicit RoundStepper(std::size_t k) : k_(k) {}
  void reset() override {}
  double step(std::size_t round, const FloatCandidate&) override { return round == k_ ? 1.0 : 0.0; }

 private:
  std::size_t k_;
};

class DynkinStepper final : public TrajectoryStepper {
 public:
  DynkinStepper(std::size_t n, std::size_t s, Selector sel) : n_(n), s_(s), sel_(sel) {}
  void reset() override { best_ = {}; }
  double step(std::size_t round, const FloatCandidate& c) override {
    bool top = best_.offer(sel_ == Selector::Sender ? c.xi : c.rho, c.id);
    if (round == n_) return 1.0;
    return round > s_ && top ? 1.0 : 0.0;
  }

 private:
  std::size_t n_, s_;
  Selector sel_;
  BestTracker best_;
};

class BestSoFarStepper final : public TrajectoryStepper {
 public:
  BestSoFarStepper(std::size_t n, std::vector<double> ps, std::vector<double> pr)
      : n_(n), ps_(std::move(ps)), pr_(std::move(pr)) {}
  void reset() override { bs_ = br_ = {}; }
  double step(std::size_t round, const FloatCandidate& c) override {
    bool s = bs_.offer(c.xi, c.id);
    bool r = br_.offer(c.rho, c.id);
    if (round == n_) return 1.0;
    double p = 0;
    if (s) p = ps_[round - 1];
    if (r) p = std::max(p, pr_[round - 1]);
    return p;
  }

 private:
  std::size_t n_;
  std::vector<double> ps_, pr_;
  BestTracker bs_, br_;
};

class AdaptiveElementaryStepper final : public TrajectoryStepper {
 public:
  AdaptiveElementaryStepper(std::size_t n, std::size_t cs, std::size_t cr) : n_(n), cs_(cs), cr_(cr) {}
  void reset() override {}
  double step(std::size_t round, const FloatCandidate& c) override {
    if (round == n_ || c.id == cs_) return 1.0;
    if (c.id == cr_) return round + 1 >= n_ ? 1.0 : 1.0 / static_cast<double>(n_ - round);
    return 0.0;
  }

 private:
  std::size_t n_, cs_, cr_;
};

// Incrementally maintained non-dominated upper hull in doubles.
class FloatFrontier {
 public:
  struct P {
    double rho, xi;
    std::size_t id;
  };

  void clear() { v_.clear(); }
  const std::vector<P>& vertices() const { return v_; }

  // Returns false when `p` lies on or below the frontier (and so is not a vertex).
  bool insert(const P& p) {
    auto it = std::lower_bound(v_.begin(), v_.end(), p.rho, [](const P& q, double r) { return q.rho < r; });
    auto k = static_cast<std::size_t>(it - v_.begin());
    if (k < v_.size() && v_[k].rho == p.rho) {
      if (v_[k].xi > p.xi || (v_[k].xi == p.xi && v_[k].id <= p.id)) return false;
      v_.erase(v_.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (k < v_.size()) {
      if (k == 0) {
        if (p.xi <= v_[0].xi) return false;
      } else if (cross(v_[k - 1], v_[k], p) <= 0) {
        return false;
      }
    }
    v_.insert(v_.begin() + static_cast<std::ptrdiff_t>(k), p);
    while (k >= 1 && (v_[k - 1].xi <= p.xi || (k >= 2 && cross(v_[k - 2], v_[k - 1], p) >= 0))) {
      v_.erase(v_.begin() + static_cast<std::ptrdiff_t>(k - 1));
      --k;
    }
    while (k + 2 < v_.size() && cross(p, v_[k + 1], v_[k + 2]) >= 0)
      v_.erase(v_.begin() + static_cast<std::ptrdiff_t>(k + 1));
    return true;
  }

 private:
  static double cross(const P& a, const P& b, const P& c) {
    return (b.rho - a.rho) * (c.xi - a.xi) - (b.xi - a.xi) * (c.rho - a.rho);
  }
  std::vector<P> v_;
};

// Hire probability of `id` under the lottery on the current frontier with receiver mean `mu`.
inline double float_lottery_weight(const std::vector<FloatFrontier::P>& f, double mu, std::size_t id) {
  if (f[0].rho >= mu) return f[0].id == id ? 1.0 : 0.0;
  std::size_t k = 0;
  while (k + 1 < f.size() && f[k + 1].rho < mu) ++k;
  if (k + 1 == f.size()) return f[k].id == id ? 1.0 : 0.0;  // rounding at the right end
  if (f[k + 1].rho == mu) return f[k + 1].id == id ? 1.0 : 0.0;
  double alpha = (mu - f[k + 1].rho) / (f[k].rho - f[k + 1].rho);
  if (f[k].id == id) return alpha;
  if (f[k + 1].id == id) return 1.0 - alpha;
  return 0.0;
}

class GrowingParetoCardinalStepper final : public TrajectoryStepper {
 public:
  GrowingParetoCardinalStepper(std::size_t n, std::size_t s) : n_(n), s_(s) {}
  void reset() override {
    front_.clear();
    sum_ = 0;
  }
  double step(std::size_t round, const FloatCandidate& c) override {
    bool vertex = front_.insert({c.rho, c.xi, c.id});
    sum_ += c.rho;
    if (round == n_) return 1.0;
    if (round <= s_ || !vertex) return 0.0;
    return float_lottery_weight(front_.vertices(), sum_ / static_cast<double>(round), c.id);
  }

 private:
  std::size_t n_, s_;
  FloatFrontier front_;
  double sum_ = 0;
};

class GrowingParetoOrdinalStepper final : public TrajectoryStepper {
 public:
  GrowingParetoOrdinalStepper(std::size_t n, std::size_t s) : n_(n), s_(s) {}
  void reset() override {
    bs_ = {};
    br_ = {};
    sum_ = 0;
  }
  double step(std::size_t round, const FloatCandidate& c) override {
    bs_.offer(c.xi, c.id);
    if (br_.offer(c.rho, c.id)) br_xi_ = c.id;
    if (bs_.id == c.id) cs_rho_ = c.rho;
    sum_ += c.rho;
    if (round == n_) return 1.0;
    if (round <= s_) return 0.0;
    double mu = sum_ / static_cast<double>(round);
    if (cs_rho_ >= mu) return bs_.id == c.id ? 1.0 : 0.0;
    if (br_.value == mu) return br_.id == c.id ? 1.0 : 0.0;
    double alpha = (mu - br_.value) / (cs_rho_ - br_.value);
    if (bs_.id == c.id) return alpha;
    if (br_.id == c.id) return 1.0 - alpha;
    return 0.0;
  }

 private:
  std::size_t n_, s_;
  BestTracker bs_, br_;
  std::size_t br_xi_ = 0;
  double cs_rho_ = 0;
  double sum_ = 0;
};

class MaskStepper final : public TrajectoryStepper {
 public:
  explicit MaskStepper(std::shared_ptr<const NestedLPPolicy> p) : p_(std::move(p)) {}
  void reset() override { arrived_ = 0; }
  double step(std::size_t, const FloatCandidate& c) override {
    std::uint64_t remaining = p_->full_mask() & ~arrived_;
    arrived_ |= 1ull << c.id;
    return p_->hire_probability(remaining, c.id).get_d();
  }

 private:
  std::shared_ptr<const NestedLPPolicy> p_;
  std::uint64_t arrived_ = 0;
};

inline PolicyBranch target_branch(std::size_t n, std::size_t id, Rational weight) {
  return PolicyBranch{
      std::move(weight),
      standard_rounds(n, [id](const SenderView& v) -> Rational { return v.current().id == id ? 1 : 0; }),
      make_stepper_factory([n, id] { return std::make_unique<TargetStepper>(n, id); })};
}

inline void check_sample(std::size_t n, std::size_t s, std::size_t lo, const char* who) {
  if (n < 1) throw TooSmall(std::string(who) + ": n must be positive");
  if (s < lo || (n > 1 && s > n - 1) || (n == 1 && s > 0))
    throw InvalidArgument(std::string(who) + ": sample size " + std::to_string(s) + " out of range for n = " +
                          std::to_string(n));
}

}  // namespace detail

// Always signals HIRE for one fixed candidate. Not persuasive in general; used as a counterexample.
inline MechanismPolicy target_candidate(const Instance& inst, std::size_t id) {
  if (id >= inst.size()) throw InvalidArgument("target id out of range");
  return MechanismPolicy("target", inst.size(), true, {detail::target_branch(inst.size(), id, 1)});
}

inline MechanismPolicy pareto_mechanism(const Instance& inst, UtilityMode sender) {
  auto r = pareto_procedure(inst, sender);
  std::vector<PolicyBranch> br;
  const std::size_t n = inst.size();
  if (r.a == r.b || r.alpha == 1) {
    br.push_back(detail::target_branch(n, r.a, 1));
  } else if (sgn(r.alpha) == 0) {
    br.push_back(detail::target_branch(n, r.b, 1));
  } else {
    br.push_back(detail::target_branch(n, r.a, r.alpha));
    br.push_back(detail::target_branch(n, r.b, 1 - r.alpha));
  }
  return MechanismPolicy("pareto", n, true, std::move(br));
}

// Secretary knowledge: in round s < t < n signals HIRE with the lottery weight of θ_t in the
// Pareto lottery of the arrived set.
inline MechanismPolicy growing_pareto(std::size_t n, std::size_t s, UtilityMode sender) {
  if (n < 2) throw TooSmall("growing pareto needs n >= 2");
  detail::check_sample(n, s, 1, "growing pareto");
  auto policy = standard_rounds(n, [s, sender](const SenderView& v) -> Rational {
    if (v.round() <= s) return 0;
    std::vector<const Candidate*> set;
    for (const auto& c : v.arrived()) set.push_back(&c);
    return detail::lottery(set, sender).weight(v.current().id);
  });
  StepperFactory stepper;
  if (sender == UtilityMode::Cardinal)
    stepper = detail::make_stepper_factory([n, s] { return std::make_unique<detail::GrowingParetoCardinalStepper>(n, s); });
  else
    stepper = detail::make_stepper_factory([n, s] { return std::make_unique<detail::GrowingParetoOrdinalStepper>(n, s); });
  return MechanismPolicy("growing-pareto", n, false, {PolicyBranch{1, std::move(policy), std::move(stepper)}});
}

inline std::size_t default_growing_sample(std::size_t n, UtilityMode sender) {
  return sender == UtilityMode::Cardinal ? floor_n_over_sqrt3(n) : n / 2;
}

// Full knowledge with disclosure: per-round Pareto lottery over the candidates yet to arrive.
inline MechanismPolicy shrinking_pareto(const Instance& inst, UtilityMode sender) {
  const std::size_t n = inst.size();
  auto policy = standard_rounds(n, [inst, sender](const SenderView& v) -> Rational {
    std::vector<bool> gone(inst.size(), false);
    auto arrived = v.arrived();
    for (std::size_t j = 0; j + 1 < arrived.size(); ++j) gone[arrived[j].id] = true;
    std::vector<const Candidate*> rest;
    for (const auto& c : inst.candidates())
      if (!gone[c.id]) rest.push_back(&c);
    return detail::lottery(rest, sender).weight(v.current().id);
  });
  return MechanismPolicy("shrinking-pareto", n, true, {PolicyBranch{1, std::move(policy), {}}});
}

inline MechanismPolicy nested_lp_mechanism(const Instance& inst, UtilityMode sender) {
  auto table = std::make_shared<const NestedLPPolicy>(nested_lp_policy(inst, sender));
  const std::size_t n = inst.size();
  auto policy = standard_rounds(n, [table](const SenderView& v) -> Rational {
    std::uint64_t remaining = table->full_mask();
    auto arrived = v.arrived();
    for (std::size_t j = 0; j + 1 < arrived.size(); ++j) remaining &= ~(1ull << arrived[j].id);
    return table->hire_probability(remaining, v.current().id);
  });
  auto stepper = detail::make_stepper_factory([table] { return std::make_unique<detail::MaskStepper>(table); });
  return MechanismPolicy("nested-lp", n, true, {PolicyBranch{1, std::move(policy), std::move(stepper)}});
}

inline MechanismPolicy elementary(const Instance& inst) {
  const std::size_t n = inst.size();
  auto best = best_candidates(inst);
  std::vector<PolicyBranch> br;
  if (best.sender == best.receiver || n == 1) {
    br.push_back(detail::target_branch(n, best.sender, 1));
  } else {
    Rational w = Rational(1, static_cast<long>(n));
    br.push_back(detail::target_branch(n, best.receiver, w));
    br.push_back(detail::target_branch(n, best.sender, 1 - w));
  }
  return MechanismPolicy("elementary", n, true, std::move(br));
}

// HIRE for c_S always; for c_R with probability 1/(n - t), which is 1 from round n - 1 on.
inline MechanismPolicy adaptive_elementary(const Instance& inst) {
  const std::size_t n = inst.size();
  auto best = best_candidates(inst);
  auto policy = standard_rounds(n, [n, best](const SenderView& v) -> Rational {
    auto id = v.current().id;
    if (id == best.sender) return 1;
    if (id == best.receiver) return v.round() + 1 >= n ? Rational(1) : Rational(1, static_cast<long>(n - v.round()));
    return 0;
  });
  auto stepper = detail::make_stepper_factory(
      [n, best] { return std::make_unique<detail::AdaptiveElementaryStepper>(n, best.sender, best.receiver); });
  return MechanismPolicy("adaptive-elementary", n, true, {PolicyBranch{1, std::move(policy), std::move(stepper)}});
}

inline PolicyBranch dynkin_branch(std::size_t n, std::size_t s, Selector sel, Rational weight) {
  auto policy = standard_rounds(n, [s, sel](const SenderView& v) -> Rational {
    return v.round() > s && detail::best_so_far(v, sel) ? 1 : 0;
  });
  return PolicyBranch{std::move(weight), std::move(policy),
                      detail::make_stepper_factory([n, s, sel] { return std::make_unique<detail::DynkinStepper>(n, s, sel); })};
}

// Classic secretary stopping rule on one side's values.
inline MechanismPolicy dynkin(std::size_t n, std::size_t s, Selector sel) {
  detail::check_sample(n, s, 0, "dynkin");
  return MechanismPolicy(sel == Selector::Sender ? "dynkin-sender" : "dynkin-receiver", n, false,
                         {dynkin_branch(n, s, sel, 1)});
}

// Dynkin on receiver values with probability `w`, on sender values otherwise.
inline MechanismPolicy dynkin_mixture(std::size_t n, std::size_t s, const Rational& w, std::string name = "dynkin-mixture") {
  detail::check_sample(n, s, 0, "dynkin mixture");
  if (sgn(w) < 0 || w > 1) throw InvalidArgument("mixing weight outside [0,1]");
  std::vector<PolicyBranch> br;
  if (sgn(w) > 0) br.push_back(dynkin_branch(n, s, Selector::Receiver, w));
  if (w < 1) br.push_back(dynkin_branch(n, s, Selector::Sender, 1 - w));
  return MechanismPolicy(std::move(name), n, false, std::move(br));
}

inline MechanismPolicy simple_secretary(std::size_t n) {
  Rational w = e_approx() / Rational(static_cast<long>(n));
  if (w > 1) w = 1;
  return dynkin_mixture(n, floor_n_over_e(n), w, "simple-secretary");
}

inline MechanismPolicy first_opt(std::size_t n, std::size_t s) {
  detail::check_sample(n, s, 0, "first-opt");
  auto policy = standard_rounds(n, [s](const SenderView& v) -> Rational {
    if (v.round() <= s) return 0;
    return detail::best_so_far(v, Selector::Sender) || detail::best_so_far(v, Selector::Receiver) ? 1 : 0;
  });
  std::vector<double> p(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t t = s + 1; t < n; ++t) p[t - 1] = 1.0;
  auto stepper = detail::make_stepper_factory([n, p] { return std::make_unique<detail::BestSoFarStepper>(n, p, p); });
  return MechanismPolicy("first-opt", n, false, {PolicyBranch{1, std::move(policy), std::move(stepper)}});
}

inline MechanismPolicy trivial(std::size_t n) {
  if (n < 1) throw TooSmall("trivial mechanism needs n >= 1");
  std::vector<PolicyBranch> br;
  for (std::size_t k = 1; k <= n; ++k) {
    auto policy = [k](const SenderView& v) -> Rational { return !v.refused_hire() && v.round() == k ? 1 : 0; };
    br.push_back(PolicyBranch{Rational(1, static_cast<long>(n)), policy,
                              detail::make_stepper_factory([k] { return std::make_unique<detail::RoundStepper>(k); })});
  }
  return MechanismPolicy("trivial", n, false, std::move(br));
}

// HIRE probabilities for best-so-far candidates in rounds 1..n-1; round n always hires. When θ_t is
// best so far on both sides the larger entry applies.
struct BestSoFarTable {
  std::vector<Rational> sender;
  std::vector<Rational> receiver;
};

inline MechanismPolicy best_so_far_mechanism(std::size_t n, const BestSoFarTable& table) {
  if (n < 1) throw TooSmall("best-so-far mechanism needs n >= 1");
  if (table.sender.size() + 1 != n || table.receiver.size() + 1 != n)
    throw InvalidArgument("best-so-far table needs n - 1 entries per side");
  for (const auto* side : {&table.sender, &table.receiver})
    for (const auto& p : *side)
      if (sgn(p) < 0 || p > 1) throw InvalidArgument("best-so-far table entry outside [0,1]");
  auto policy = standard_rounds(n, [table](const SenderView& v) -> Rational {
    Rational p = 0;
    if (detail::best_so_far(v, Selector::Sender)) p = table.sender[v.round() - 1];
    if (detail::best_so_far(v, Selector::Receiver) && table.receiver[v.round() - 1] > p) p = table.receiver[v.round() - 1];
    return p;
  });
  std::vector<double> ps, pr;
  for (const auto& p : table.sender) ps.push_back(p.get_d());
  for (const auto& p : table.receiver) pr.push_back(p.get_d());
  auto stepper = detail::make_stepper_factory([n, ps, pr] { return std::make_unique<detail::BestSoFarStepper>(n, ps, pr); });
  return MechanismPolicy("best-so-far", n, false, {PolicyBranch{1, std::move(policy), std::move(stepper)}});
}

}  // namespace persuasion
