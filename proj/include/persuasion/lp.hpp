#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

// max c·x  s.t.  w·x >= 0,  0 <= x <= 1. `tie` is an optional secondary objective used to pick
// among optimal points; remaining ties go to the smaller index.
struct BoxLP {
  std::vector<Rational> c;
  std::vector<Rational> w;
  std::vector<Rational> tie;
};

struct LPSolution {
  std::vector<Rational> x;
  Rational objective;
};

namespace detail {

inline int lex_sign(const Rational& a, const Rational& b) { return sgn(a) != 0 ? sgn(a) : sgn(b); }

}  // namespace detail

// One constraint plus a box: start from the unconstrained optimum and buy back feasibility at the
// cheapest marginal cost. Optimal by LP duality; at most one coordinate ends up fractional.
inline LPSolution solve_box_lp(const BoxLP& lp) {
  const std::size_t n = lp.c.size();
  if (lp.w.size() != n || (!lp.tie.empty() && lp.tie.size() != n)) throw InvalidArgument("box LP size mismatch");
  auto tie = [&](std::size_t i) -> Rational { return lp.tie.empty() ? Rational(0) : lp.tie[i]; };
  LPSolution sol;
  sol.x.assign(n, 0);
  Rational deficit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int s = detail::lex_sign(lp.c[i], tie(i));
    if (s > 0 || (s == 0 && sgn(lp.w[i]) >= 0)) sol.x[i] = 1;
    deficit -= lp.w[i] * sol.x[i];
  }
  if (sgn(deficit) > 0) {
    // Each move gains |w_i| of slack per unit at cost (c_i, tie_i)/|w_i| (lexicographic).
    struct Move {
      std::size_t i;
      Rational cost, cost2, gain;
      bool lower;
    };
    std::vector<Move> moves;
    for (std::size_t i = 0; i < n; ++i) {
      if (sol.x[i] == 1 && sgn(lp.w[i]) < 0) {
        Rational g = -lp.w[i];
        moves.push_back({i, lp.c[i] / g, tie(i) / g, g, true});
      } else if (sol.x[i] == 0 && sgn(lp.w[i]) > 0) {
        moves.push_back({i, -lp.c[i] / lp.w[i], -tie(i) / lp.w[i], lp.w[i], false});
      }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& l, const Move& r) {
      if (l.cost != r.cost) return l.cost < r.cost;
      if (l.cost2 != r.cost2) return l.cost2 < r.cost2;
      return l.i < r.i;
    });
    for (const auto& m : moves) {
      if (sgn(deficit) <= 0) break;
      Rational step = m.gain <= deficit ? Rational(1) : Rational(deficit / m.gain);
      sol.x[m.i] = m.lower ? Rational(1 - step) : step;
      deficit -= step * m.gain;
    }
    if (sgn(deficit) > 0) throw InvalidArgument("box LP infeasible");
  }
  sol.objective = 0;
  for (std::size_t i = 0; i < n; ++i) sol.objective += lp.c[i] * sol.x[i];
  return sol;
}

constexpr std::size_t nested_lp_cap = 16;

// Optimal persuasive policy under full knowledge and disclosure, indexed by the set of candidates
// still to arrive (bit i = candidate id i).
struct NestedLPPolicy {
  std::size_t n = 0;
  UtilityMode sender = UtilityMode::Cardinal;
  std::vector<std::vector<Rational>> x;  // x[mask][k]: HIRE probability for the k-th member of mask
  std::vector<Rational> u_sender;
  std::vector<Rational> u_receiver;

  std::uint64_t full_mask() const { return n == 64 ? ~0ull : (1ull << n) - 1; }

  const Rational& hire_probability(std::uint64_t mask, std::size_t id) const {
    std::size_t k = static_cast<std::size_t>(std::popcount(mask & ((1ull << id) - 1)));
    return x[mask][k];
  }
};

inline NestedLPPolicy nested_lp_policy(const Instance& inst, UtilityMode sender, std::size_t cap = nested_lp_cap) {
  const std::size_t n = inst.size();
  if (n > cap) throw TooLarge(n, cap, "nested LP");
  auto cs = best_candidates(inst).sender;
  auto xi = [&](std::size_t i) -> Rational {
    if (sender == UtilityMode::Ordinal) return i == cs ? 1 : 0;
    return inst[i].xi;
  };
  NestedLPPolicy p;
  p.n = n;
  p.sender = sender;
  const std::uint64_t full = (1ull << n) - 1;
  p.x.resize(full + 1);
  p.u_sender.resize(full + 1);
  p.u_receiver.resize(full + 1);
  std::vector<std::vector<std::uint64_t>> by_size(n + 1);
  for (std::uint64_t m = 1; m <= full; ++m) by_size[std::popcount(m)].push_back(m);
  for (std::size_t size = 1; size <= n; ++size) {
    for (std::uint64_t mask : by_size[size]) {
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) ids.push_back(i);
      if (size == 1) {
        p.x[mask] = {Rational(1)};
        p.u_sender[mask] = xi(ids[0]);
        p.u_receiver[mask] = inst[ids[0]].rho;
        continue;
      }
      const Rational inv = Rational(1, static_cast<long>(size));
      const Rational inv_rest = Rational(1, static_cast<long>(size - 1));
      Rational rho_sum = 0;
      for (auto i : ids) rho_sum += inst[i].rho;
      BoxLP lp;
      Rational base_s = 0, base_r = 0;
      for (auto i : ids) {
        std::uint64_t rest = mask & ~(1ull << i);
        lp.c.push_back(inv * (xi(i) - p.u_sender[rest]));
        lp.w.push_back(inst[i].rho - inv_rest * (rho_sum - inst[i].rho));
        lp.tie.push_back(inst[i].rho - p.u_receiver[rest]);
        base_s += p.u_sender[rest];
        base_r += p.u_receiver[rest];
      }
      auto sol = solve_box_lp(lp);
      Rational ur = 0;
      for (std::size_t k = 0; k < ids.size(); ++k) ur += sol.x[k] * lp.tie[k];
      p.u_sender[mask] = inv * base_s + sol.objective;
      p.u_receiver[mask] = inv * (base_r + ur);
      p.x[mask] = std::move(sol.x);
    }
  }
  return p;
}

// True when, for every set whose policy meets the HIRE-obedience constraint, the NOT-obedience
// constraint with the stored receiver continuation values holds too.
inline bool check_redundancy(const Instance& inst, const NestedLPPolicy& p) {
  const std::size_t n = inst.size();
  if (p.n != n) throw InvalidArgument("policy and instance sizes differ");
  for (std::uint64_t mask = 1; mask <= p.full_mask(); ++mask) {
    std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size < 2) continue;
    Rational rho_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) rho_sum += inst[i].rho;
    Rational hire = 0, lhs = 0, rhs = 0;
    for (std::size_t i = 0, k = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      const Rational& x = p.x[mask][k++];
      hire += x * (inst[i].rho - (rho_sum - inst[i].rho) / Rational(static_cast<long>(size - 1)));
      lhs += (1 - x) * p.u_receiver[mask & ~(1ull << i)];
      rhs += (1 - x) * inst[i].rho;
    }
    if (sgn(hire) >= 0 && lhs < rhs) return false;
  }
  return true;
}

}  // namespace persuasion
