#pragma once

#include <array>
#include <vector>

#include "persuasion/exact.hpp"
#include "persuasion/mechanisms.hpp"
#include "persuasion/pareto.hpp"

namespace persuasion {

// Optimal best-so-far stopping for the sender on a negatively correlated instance. Index t-1.
struct DPTable {
  std::size_t n = 0;
  std::vector<Rational> u;       // success from round t on, given θ_t is best so far on one side
  std::vector<Rational> v;       // success from round t + 1 on, given θ_t was passed
  std::vector<bool> hire;        // hire[t-1]: HIRE best-so-far candidates in round t (ties hire)
  std::size_t threshold = 0;     // first round that hires; the sample size is threshold - 1
};

inline DPTable best_so_far_dp(std::size_t n) {
  if (n < 2) throw TooSmall("best-so-far DP needs n >= 2");
  DPTable d;
  d.n = n;
  d.u.assign(n, 0);
  d.v.assign(n, 0);
  d.hire.assign(n, true);
  const Rational two_n(2 * static_cast<long>(n));
  d.v[n - 1] = 0;
  d.u[n - 1] = Rational(1, 2);
  for (std::size_t t = n - 1; t >= 1; --t) {
    Rational tt(static_cast<long>(t));
    d.v[t - 1] = Rational(2) / (tt + 1) * d.u[t] + (tt - 1) / (tt + 1) * d.v[t];
    Rational stop = tt / two_n;
    d.hire[t - 1] = stop >= d.v[t - 1];
    d.u[t - 1] = d.hire[t - 1] ? stop : d.v[t - 1];
  }
  d.threshold = n;
  for (std::size_t t = 1; t < n; ++t)
    if (d.hire[t - 1]) {
      d.threshold = t;
      break;
    }
  return d;
}

// Table for secretary mechanisms on instance I (a = (0,1), b = (1,0), c = (1/2,0)):
// p[t-1][history class][current type]. Class bit 1 = a already arrived, bit 2 = b already arrived.
// Types: 0 = a, 1 = b, 2 = c.
struct IncentiveTable {
  std::vector<std::array<std::array<Rational, 3>, 4>> p;
};

struct IncentiveSearchResult {
  Rational max_success;
  Rational ratio_to_opt;
  IncentiveTable table;
};

namespace detail {

inline int instance_i_type(const Candidate& c) {
  if (sgn(c.rho) == 0 && c.xi == 1) return 0;
  if (c.rho == 1 && sgn(c.xi) == 0) return 1;
  return 2;
}

inline int type_bit(int type) { return type == 0 ? 1 : type == 1 ? 2 : 0; }

}  // namespace detail

inline MechanismPolicy incentive_table_mechanism(std::size_t n, const IncentiveTable& table) {
  if (table.p.size() + 1 != n) throw InvalidArgument("incentive table needs n - 1 rounds");
  auto policy = standard_rounds(n, [table](const SenderView& v) -> Rational {
    int cls = 0;
    auto arrived = v.arrived();
    for (std::size_t j = 0; j + 1 < arrived.size(); ++j) cls |= detail::type_bit(detail::instance_i_type(arrived[j]));
    return table.p[v.round() - 1][static_cast<std::size_t>(cls)][static_cast<std::size_t>(detail::instance_i_type(v.current()))];
  });
  return MechanismPolicy("incentive-table", n, false, {PolicyBranch{1, std::move(policy), {}}});
}

// Maximises the probability of hiring a on instance I over tables meeting the necessary obedience
// inequalities (a never gets a higher HIRE probability than the candidates that could be confused
// with it in the same history), each entry on the grid {0, 1/g, ..., 1}. Parameters of different
// (round, history) states never interact, so backward induction over states is exact.
inline IncentiveSearchResult incentive_constraint_search(std::size_t n, std::size_t grid) {
  if (n < 3) throw TooSmall("incentive search needs n >= 3");
  if (n > 12) throw TooLarge(n, 12, "incentive search");
  if (grid < 1) throw InvalidArgument("grid resolution must be positive");
  std::vector<Rational> levels;
  for (std::size_t k = grid + 1; k-- > 0;) levels.push_back(make_rational(static_cast<long>(k), static_cast<long>(grid)));

  IncentiveSearchResult res;
  res.table.p.resize(n - 1);
  std::array<Rational, 4> next{};
  for (int cls = 0; cls < 4; ++cls) next[static_cast<std::size_t>(cls)] = (cls & 1) ? 0 : 1;  // round n: a hired iff still to come
  for (std::size_t t = n - 1; t >= 1; --t) {
    std::array<Rational, 4> cur{};
    const long remaining = static_cast<long>(n - t + 1);
    for (int cls = 0; cls < 4; ++cls) {
      if (t == 1 && cls != 0) continue;
      const bool a_left = !(cls & 1), b_left = !(cls & 2);
      const long c_left = remaining - (a_left ? 1 : 0) - (b_left ? 1 : 0);
      if (c_left < 0) continue;
      std::array<Rational, 3> prob{make_rational(a_left ? 1 : 0, remaining), make_rational(b_left ? 1 : 0, remaining),
                                   make_rational(c_left, remaining)};
      auto value = [&](const std::array<Rational, 3>& p) {
        Rational v = 0;
        for (int ty = 0; ty < 3; ++ty) {
          if (sgn(prob[static_cast<std::size_t>(ty)]) == 0) continue;
          const auto& q = p[static_cast<std::size_t>(ty)];
          v += prob[static_cast<std::size_t>(ty)] * ((ty == 0 ? q : Rational(0)) +
                                                     (1 - q) * next[static_cast<std::size_t>(cls | detail::type_bit(ty))]);
        }
        return v;
      };
      std::array<Rational, 3> best_p{Rational(1), Rational(1), Rational(1)};
      Rational best_v = value(best_p);
      if (cls != 3) {
        for (const auto& pa : levels)
          for (const auto& pb : levels)
            for (const auto& pc : levels) {
              if (cls == 0 && (pa > pb || pa > pc)) continue;
              if (cls == 1 && (pc > pb || pa != 1)) continue;  // a cannot arrive again
              if (cls == 2 && (pa > pc || pb != 1)) continue;
              std::array<Rational, 3> p{pa, pb, pc};
              Rational v = value(p);
              if (v > best_v) {
                best_v = v;
                best_p = p;
              }
            }
      }
      res.table.p[t - 1][static_cast<std::size_t>(cls)] = best_p;
      cur[static_cast<std::size_t>(cls)] = best_v;
    }
    for (int cls = 1; cls < 4 && t == 1; ++cls) res.table.p[0][static_cast<std::size_t>(cls)] = {Rational(1), Rational(1), Rational(1)};
    next = cur;
  }
  res.max_success = next[0];
  res.ratio_to_opt = res.max_success / Rational(1, 2);
  return res;
}

inline Rational sender_objective(const ExactEvalReport& r, UtilityMode sender) {
  return sender == UtilityMode::Ordinal ? r.sender_success : r.sender_eu;
}

inline Rational approximation_ratio(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s) {
  Rational opt = benchmark_opt(inst, s.sender, s.receiver);
  if (sgn(opt) == 0) throw ZeroBenchmark();
  return sender_objective(exact_evaluate(inst, m, s), s.sender) / opt;
}

// Guarantee of Growing Pareto as a fraction of OPT implied by the per-round decay bounds
// (round n contributes nothing).
inline Rational growing_pareto_guarantee(std::size_t n, std::size_t s, UtilityMode sender) {
  if (n < 3 || s < 1 || s >= n) throw InvalidArgument("guarantee needs n >= 3 and 1 <= s < n");
  Rational total = 0;
  const Rational nn(static_cast<long>(n)), ss(static_cast<long>(s));
  for (std::size_t t = s + 1; t < n; ++t) {
    const Rational tt(static_cast<long>(t));
    Rational hire = ss / (tt * (tt - 1));
    Rational keep = sender == UtilityMode::Cardinal ? Rational(tt * (tt - 1) * (tt - 2) / (nn * (nn - 1) * (nn - 2)))
                                                    : Rational((tt - 1) * (tt - 2) / ((nn - 1) * (nn - 2)));
    if (t >= 3 || sender == UtilityMode::Ordinal) total += hire * keep;
  }
  return total;
}

}  // namespace persuasion
