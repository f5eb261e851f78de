#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

struct FrontierVertex {
  Rational rho;
  Rational xi;
  std::size_t id = 0;
};

// Vertices of the non-dominated upper boundary of the convex hull, by increasing rho.
using FrontierPolyline = std::vector<FrontierVertex>;

struct ParetoResult {
  std::size_t a = 0;   // lower-rho endpoint (0-based id)
  std::size_t b = 0;   // higher-rho endpoint
  Rational alpha;      // probability mass on a
  Rational opt_value;  // sender value, original units (success probability in ordinal mode)
  Rational mu_r;       // mean receiver value, original units

  Rational weight(std::size_t id) const {
    if (a == b) return id == a ? Rational(1) : Rational(0);
    if (id == a) return alpha;
    if (id == b) return 1 - alpha;
    return 0;
  }
};

namespace detail {

struct PointRef {
  const Rational* rho;
  const Rational* xi;
  std::size_t id;
};

inline const Rational& zero_q() {
  static const Rational z(0);
  return z;
}
inline const Rational& one_q() {
  static const Rational o(1);
  return o;
}

// (q - p) x (r - p); negative for a clockwise turn.
inline Rational cross(const PointRef& p, const PointRef& q, const PointRef& r) {
  return (*q.rho - *p.rho) * (*r.xi - *p.xi) - (*q.xi - *p.xi) * (*r.rho - *p.rho);
}

inline std::vector<PointRef> frontier_of(std::vector<PointRef> pts) {
  std::sort(pts.begin(), pts.end(), [](const PointRef& l, const PointRef& r) {
    if (*l.rho != *r.rho) return *l.rho < *r.rho;
    if (*l.xi != *r.xi) return *l.xi > *r.xi;
    return l.id < r.id;
  });
  std::vector<PointRef> hull;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && *pts[i].rho == *pts[i - 1].rho) continue;  // only the top point per rho matters
    while (hull.size() >= 2 && sgn(cross(hull[hull.size() - 2], hull.back(), pts[i])) >= 0) hull.pop_back();
    hull.push_back(pts[i]);
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < hull.size(); ++i)
    if (*hull[i].xi >= *hull[top].xi) top = i;
  return {hull.begin() + static_cast<std::ptrdiff_t>(top), hull.end()};
}

// Lottery over a candidate set, computed on original values (the hull and alpha are invariant
// under positive rescaling of either axis). All-zero axes are handled geometrically instead of
// raising, which is what adaptive mechanisms need on small subsets.
inline ParetoResult lottery(std::span<const Candidate* const> set, UtilityMode mode) {
  if (set.empty()) throw AllRemoved();
  std::size_t cs = 0;
  Rational sum = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    sum += set[i]->rho;
    if (set[i]->xi > set[cs]->xi || (set[i]->xi == set[cs]->xi && set[i]->id < set[cs]->id)) cs = i;
  }
  std::vector<PointRef> pts;
  pts.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Rational* xi = mode == UtilityMode::Cardinal ? &set[i]->xi : (i == cs ? &one_q() : &zero_q());
    pts.push_back({&set[i]->rho, xi, set[i]->id});
  }
  ParetoResult res;
  res.mu_r = sum / Rational(static_cast<long>(set.size()));
  auto f = frontier_of(std::move(pts));
  std::size_t k = 0;
  if (*f[0].rho >= res.mu_r) {
    res.a = res.b = f[0].id;
    res.alpha = 1;
  } else {
    while (*f[k + 1].rho < res.mu_r) ++k;
    if (*f[k + 1].rho == res.mu_r) {
      res.a = res.b = f[k + 1].id;
      res.alpha = 1;
      ++k;
    } else {
      res.a = f[k].id;
      res.b = f[k + 1].id;
      if (*f[k].rho == *f[k + 1].rho)
        res.alpha = 1;
      else if (*f[k].xi == *f[k + 1].xi)
        res.alpha = 0;
      else
        res.alpha = (res.mu_r - *f[k + 1].rho) / (*f[k].rho - *f[k + 1].rho);
    }
  }
  if (res.a == res.b) res.alpha = 1;
  auto value_of = [&](std::size_t id) -> Rational {
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i]->id == id) return mode == UtilityMode::Cardinal ? set[i]->xi : Rational(i == cs ? 1 : 0);
    return 0;
  };
  res.opt_value = res.a == res.b ? value_of(res.a) : res.alpha * value_of(res.a) + (1 - res.alpha) * value_of(res.b);
  return res;
}

inline std::vector<const Candidate*> refs(const Instance& inst) {
  std::vector<const Candidate*> r;
  r.reserve(inst.size());
  for (const auto& c : inst.candidates()) r.push_back(&c);
  return r;
}

}  // namespace detail

inline FrontierPolyline upper_convex_frontier(std::span<const Candidate> pts) {
  if (pts.empty()) throw EmptyInstance();
  std::vector<detail::PointRef> refs;
  for (const auto& c : pts) refs.push_back({&c.rho, &c.xi, c.id});
  FrontierPolyline out;
  for (const auto& p : detail::frontier_of(std::move(refs))) out.push_back({*p.rho, *p.xi, p.id});
  return out;
}

inline ParetoResult pareto_procedure(const Instance& inst, UtilityMode mode) {
  auto best = best_candidates(inst);
  if (sgn(inst[best.receiver].rho) == 0) throw DegenerateInstance("all receiver values are zero");
  if (sgn(inst[best.sender].xi) == 0) throw DegenerateInstance("all sender values are zero");
  auto r = detail::refs(inst);
  return detail::lottery(r, mode);
}

// Lottery on the candidates whose bit is set in `mask` (ids < 64).
inline ParetoResult pareto_on_subset(const Instance& inst, std::uint64_t mask, UtilityMode mode) {
  std::vector<const Candidate*> r;
  for (const auto& c : inst.candidates())
    if (mask >> c.id & 1u) r.push_back(&c);
  return detail::lottery(r, mode);
}

// Benchmark value when the candidates in `removed` are absent. In ordinal mode the target stays the
// full instance's c_S, so removing it yields 0.
inline Rational opt_minus(const Instance& inst, const std::set<std::size_t>& removed, UtilityMode mode) {
  std::vector<const Candidate*> r;
  for (const auto& c : inst.candidates())
    if (!removed.count(c.id)) r.push_back(&c);
  if (r.empty()) throw AllRemoved();
  if (mode == UtilityMode::Ordinal && removed.count(best_candidates(inst).sender)) return 0;
  return detail::lottery(r, mode).opt_value;
}

// Replaces receiver values by the ordinal indicator of c_R when the receiver is ordinal.
inline Instance receiver_view_instance(const Instance& inst, UtilityMode receiver) {
  if (receiver == UtilityMode::Cardinal) return inst;
  auto cr = best_candidates(inst).receiver;
  std::vector<std::pair<Rational, Rational>> v;
  for (const auto& c : inst.candidates()) v.emplace_back(Rational(c.id == cr ? 1 : 0), c.xi);
  return validate_instance(v, inst.name());
}

// Best sender objective over all persuasive mechanisms in the benchmark scenario.
inline Rational benchmark_opt(const Instance& inst, UtilityMode sender, UtilityMode receiver) {
  auto view = receiver_view_instance(inst, receiver);
  auto r = detail::refs(view);
  return detail::lottery(r, sender).opt_value;
}

struct BenchmarkLP {
  Rational value;
  std::vector<Rational> x;
};

// max x·xi  s.t.  x·rho >= mean rho, sum x = 1, x >= 0, by enumerating every vertex. A vertex of
// this feasible region has support at most two.
inline BenchmarkLP solve_benchmark_lp(const Instance& inst, UtilityMode mode) {
  auto best = best_candidates(inst);
  if (sgn(inst[best.receiver].rho) == 0) throw DegenerateInstance("all receiver values are zero");
  if (sgn(inst[best.sender].xi) == 0) throw DegenerateInstance("all sender values are zero");
  const std::size_t n = inst.size();
  Rational mu = mu_receiver(inst);
  auto xi = [&](std::size_t i) -> Rational {
    if (mode == UtilityMode::Ordinal) return i == best.sender ? 1 : 0;
    return inst[i].xi;
  };
  BenchmarkLP out;
  out.x.assign(n, 0);
  bool found = false;
  auto offer = [&](const Rational& value, std::size_t i, std::size_t j, const Rational& wi) {
    if (found && value <= out.value) return;
    found = true;
    out.value = value;
    std::fill(out.x.begin(), out.x.end(), Rational(0));
    out.x[i] += wi;
    out.x[j] += 1 - wi;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (inst[i].rho >= mu) offer(xi(i), i, i, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(inst[i].rho < mu && mu < inst[j].rho)) continue;
      Rational wi = (inst[j].rho - mu) / (inst[j].rho - inst[i].rho);
      offer(wi * xi(i) + (1 - wi) * xi(j), i, j, wi);
    }
  return out;
}

}  // namespace persuasion
