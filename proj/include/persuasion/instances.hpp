#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/rng.hpp"

namespace persuasion {

inline Instance figure1_instance() {
  return make_instance({{1, 8}, {3, 1}, {6, 10}, {7, 4}, {12, 8}, {13, 5}, {14, 6}, {16, 2}}, "fig1");
}

// Candidate 1 = ((n-2)/(n-1), 1), candidate 2 = (0, 0), the rest (1, 0).
inline Instance ub_disclosure_instance(std::size_t n) {
  if (n < 3) throw TooSmall("ub-disclosure instance needs n >= 3");
  std::vector<std::pair<Rational, Rational>> v;
  v.emplace_back(make_rational(static_cast<long>(n) - 2, static_cast<long>(n) - 1), Rational(1));
  v.emplace_back(Rational(0), Rational(0));
  for (std::size_t i = 2; i < n; ++i) v.emplace_back(Rational(1), Rational(0));
  return validate_instance(v, "ub-disclosure-" + std::to_string(n));
}

inline std::size_t isqrt(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while ((k + 1) * (k + 1) <= n) ++k;
  while (k * k > n) --k;
  return k;
}

// a = (0,1), b = (1,0), n - 2 copies of c = (1/2, 0).
inline Instance instance_I(std::size_t n) {
  if (n < 2) throw TooSmall("instance I needs n >= 2");
  std::vector<std::pair<Rational, Rational>> v{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  for (std::size_t i = 2; i < n; ++i) v.emplace_back(make_rational(1, 2), Rational(0));
  return validate_instance(v, "instance-I-" + std::to_string(n));
}

// a = (0,1), n - 1 copies of c = (1/2, 0).
inline Instance instance_II(std::size_t n) {
  if (n < 2) throw TooSmall("instance II needs n >= 2");
  std::vector<std::pair<Rational, Rational>> v{{Rational(0), Rational(1)}};
  for (std::size_t i = 1; i < n; ++i) v.emplace_back(make_rational(1, 2), Rational(0));
  return validate_instance(v, "instance-II-" + std::to_string(n));
}

namespace detail {

// n distinct integers from [1, k], in random order (Floyd's algorithm, then a shuffle).
inline std::vector<long> distinct_draw(CounterRng& rng, std::size_t n, std::size_t k) {
  if (k < n) throw InvalidArgument("grid too coarse for distinct values");
  std::set<long> chosen;
  for (std::size_t j = k - n + 1; j <= k; ++j) {
    long t = 1 + static_cast<long>(rng.below(j));
    if (!chosen.insert(t).second) chosen.insert(static_cast<long>(j));
  }
  std::vector<long> out(chosen.begin(), chosen.end());
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

inline std::size_t default_grid(std::size_t n) { return std::max<std::size_t>(100, 10 * n); }

}  // namespace detail

// ξ-values distinct and random; ρ-values distinct with the opposite ranking.
inline Instance negatively_correlated(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw TooSmall("need n >= 1");
  CounterRng rng(seed, streams::instance, 0);
  const std::size_t k = detail::default_grid(n);
  auto xs = detail::distinct_draw(rng, n, k);
  auto rs = detail::distinct_draw(rng, n, k);
  std::sort(rs.begin(), rs.end());
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] > xs[b]; });
  std::vector<std::pair<Rational, Rational>> v(n);
  const long kk = static_cast<long>(k);
  for (std::size_t r = 0; r < n; ++r) v[order[r]] = {make_rational(rs[r], kk), make_rational(xs[order[r]], kk)};
  return validate_instance(v, "negcorr-" + std::to_string(n) + "-" + std::to_string(seed));
}

struct Distribution {
  enum class Kind { UniformGrid, AlignedUtilities, Independent };
  Kind kind = Kind::UniformGrid;
  std::size_t k = 0;  // grid resolution; 0 picks max(100, 10n)

  static Distribution uniform_grid(std::size_t k = 0) { return {Kind::UniformGrid, k}; }
  static Distribution aligned(std::size_t k = 0) { return {Kind::AlignedUtilities, k}; }
  static Distribution independent(std::size_t k = 0) { return {Kind::Independent, k}; }
};

inline const char* to_string(Distribution::Kind k) {
  switch (k) {
    case Distribution::Kind::UniformGrid: return "grid";
    case Distribution::Kind::AlignedUtilities: return "aligned";
    case Distribution::Kind::Independent: return "independent";
  }
  return "?";
}

// Grid: distinct values i/k on each side, drawn independently. Aligned: ξ = ρ. Independent: each
// value uniform on {0, 1/k, ..., 1}, ties allowed.
inline Instance random_instance(std::size_t n, std::uint64_t seed, Distribution dist = {}) {
  if (n < 1) throw TooSmall("need n >= 1");
  const std::size_t k = dist.k ? dist.k : detail::default_grid(n);
  const long kk = static_cast<long>(k);
  CounterRng rng(seed, streams::instance, 1);
  std::vector<std::pair<Rational, Rational>> v(n);
  switch (dist.kind) {
    case Distribution::Kind::UniformGrid: {
      auto rs = detail::distinct_draw(rng, n, k);
      auto xs = detail::distinct_draw(rng, n, k);
      for (std::size_t i = 0; i < n; ++i) v[i] = {make_rational(rs[i], kk), make_rational(xs[i], kk)};
      break;
    }
    case Distribution::Kind::AlignedUtilities: {
      auto rs = detail::distinct_draw(rng, n, k);
      for (std::size_t i = 0; i < n; ++i) v[i] = {make_rational(rs[i], kk), make_rational(rs[i], kk)};
      break;
    }
    case Distribution::Kind::Independent:
      for (auto& p : v) {
        long r = static_cast<long>(rng.below(k + 1));
        long x = static_cast<long>(rng.below(k + 1));
        p = {make_rational(r, kk), make_rational(x, kk)};
      }
      break;
  }
  return validate_instance(v, std::string("random-") + to_string(dist.kind) + "-" + std::to_string(n) + "-" +
                                  std::to_string(seed));
}

// Seed for the i-th derived instance of a run; keeps derived seeds independent of each other.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  CounterRng rng(seed, streams::seeds, i);
  return rng.next_u64();
}

}  // namespace persuasion
