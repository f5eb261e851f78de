#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/parallel.hpp"
#include "persuasion/rng.hpp"

namespace persuasion {

struct Estimate {
  double mean = 0;
  double halfwidth = 0;  // 95% normal approximation
  friend bool operator==(const Estimate&, const Estimate&) = default;
};

struct MonteCarloReport {
  Estimate sender_success;
  Estimate sender_eu;
  Estimate receiver_success;
  Estimate receiver_eu;
  std::vector<double> hire_round_pmf;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const MonteCarloReport&, const MonteCarloReport&) = default;
};

namespace detail {

// Drives an exact behavioral policy one round at a time; used when a branch has no stepper.
class ExactPolicyStepper final : public TrajectoryStepper {
 public:
  ExactPolicyStepper(const Instance& inst, const BehavioralPolicy& policy, Knowledge k)
      : inst_(inst), policy_(policy), knowledge_(k) {}
  void reset() override { arrived_.clear(); }
  double step(std::size_t round, const FloatCandidate& c) override {
    arrived_.push_back(inst_[c.id]);
    std::vector<Signal> sig(round - 1, Signal::Not);
    std::vector<Action> act(round - 1, Action::Rejected);
    SenderView v(knowledge_, round, arrived_, sig, act, knowledge_ == Knowledge::Basic ? &inst_ : nullptr);
    return policy_(v).get_d();
  }

 private:
  const Instance& inst_;
  const BehavioralPolicy& policy_;
  Knowledge knowledge_;
  std::vector<Candidate> arrived_;
};

struct ChunkSums {
  double s[4] = {0, 0, 0, 0};
  double q[4] = {0, 0, 0, 0};
  std::vector<std::uint64_t> rounds;
};

}  // namespace detail

constexpr std::uint64_t monte_carlo_chunk = 4096;

// Obedient play on uniformly random arrival orders. Sample i draws from the counter stream
// (seed, i) only, and chunk sums are combined in index order, so the report does not depend on
// `jobs`.
inline MonteCarloReport monte_carlo_evaluate(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s,
                                             std::uint64_t samples, std::uint64_t seed, unsigned jobs = 1) {
  check_instance_size(inst, m);
  check_knowledge(s, m);
  if (samples < 2) throw InvalidArgument("need at least two samples");
  const std::size_t n = inst.size();
  const auto best = best_candidates(inst);
  std::vector<FloatCandidate> fc(n);
  for (std::size_t i = 0; i < n; ++i) fc[i] = {i, inst[i].rho.get_d(), inst[i].xi.get_d()};
  std::vector<double> cum;
  double acc = 0;
  for (const auto& b : m.branches()) cum.push_back(acc += b.weight.get_d());
  cum.back() = 2.0;  // guard against rounding

  const std::uint64_t chunks = (samples + monte_carlo_chunk - 1) / monte_carlo_chunk;
  std::vector<detail::ChunkSums> sums(chunks);
  unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(chunks, 1024))));
  std::vector<std::vector<std::unique_ptr<TrajectoryStepper>>> steppers(workers);
  for (auto& row : steppers)
    for (const auto& b : m.branches())
      row.push_back(b.stepper ? b.stepper() : std::make_unique<detail::ExactPolicyStepper>(inst, b.policy, s.knowledge));

  // Chunks are dealt round-robin to a fixed worker each, so worker state never races.
  parallel_for(workers, workers, [&](std::size_t w) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::size_t> swaps(n);
    for (std::uint64_t c = w; c < chunks; c += workers) {
      auto& out = sums[c];
      out.rounds.assign(n, 0);
      const std::uint64_t lo = c * monte_carlo_chunk, hi = std::min(samples, lo + monte_carlo_chunk);
      for (std::uint64_t i = lo; i < hi; ++i) {
        CounterRng rng(seed, streams::monte_carlo, i);
        double u = rng.uniform();
        std::size_t b = 0;
        while (u >= cum[b]) ++b;
        auto& st = *steppers[w][b];
        st.reset();
        std::size_t t = 0, hired = n;
        for (; t < n; ++t) {
          std::size_t j = t + static_cast<std::size_t>(rng.below(n - t));
          swaps[t] = j;
          std::swap(perm[t], perm[j]);
          double p = st.step(t + 1, fc[perm[t]]);
          if (p >= 1.0 || (p > 0.0 && rng.uniform() < p)) {
            hired = perm[t];
            break;
          }
        }
        std::size_t used = std::min(t + 1, n);
        for (std::size_t k = used; k-- > 0;) std::swap(perm[k], perm[swaps[k]]);
        if (hired == n) continue;
        ++out.rounds[t];
        double x[4] = {hired == best.sender ? 1.0 : 0.0, fc[hired].xi, hired == best.receiver ? 1.0 : 0.0, fc[hired].rho};
        for (int k = 0; k < 4; ++k) {
          out.s[k] += x[k];
          out.q[k] += x[k] * x[k];
        }
      }
    }
  });

  MonteCarloReport r;
  r.samples = samples;
  r.seed = seed;
  double s4[4] = {0, 0, 0, 0}, q4[4] = {0, 0, 0, 0};
  std::vector<std::uint64_t> rounds(n, 0);
  for (const auto& c : sums) {
    for (int k = 0; k < 4; ++k) {
      s4[k] += c.s[k];
      q4[k] += c.q[k];
    }
    for (std::size_t t = 0; t < n; ++t) rounds[t] += c.rounds[t];
  }
  const double N = static_cast<double>(samples);
  Estimate* est[4] = {&r.sender_success, &r.sender_eu, &r.receiver_success, &r.receiver_eu};
  for (int k = 0; k < 4; ++k) {
    double mean = s4[k] / N;
    double var = std::max(0.0, (q4[k] - N * mean * mean) / (N - 1));
    *est[k] = {mean, 1.96 * std::sqrt(var / N)};
  }
  r.hire_round_pmf.resize(n);
  for (std::size_t t = 0; t < n; ++t) r.hire_round_pmf[t] = static_cast<double>(rounds[t]) / N;
  return r;
}

}  // namespace persuasion
