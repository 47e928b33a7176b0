#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "commutelab/mat2.hpp"
#include "commutelab/measure.hpp"
#include "commutelab/rational.hpp"

namespace commutelab {

/// SplitMix64: the fixed deterministic generator behind every seeded
/// run. Same seed, same stream, on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d9f29146bb25ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

/// [N] = {1, ..., N}.
inline std::vector<Rat> interval(long n) {
  if (n < 1) throw std::invalid_argument("interval: N must be >= 1");
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) out.emplace_back(i);
  return out;
}

/// Generalised arithmetic progression {base + sum l_i * steps_i}.
struct GapSpec {
  Rat base;
  std::vector<Rat> steps;
  std::vector<long> lengths;
};

struct GapResult {
  std::vector<Rat> elements;      // distinct values
  Int nominal_cardinality;        // product of the lengths
};

/// Duplicates collapse; the nominal cardinality is reported alongside so
/// collisions stay visible.
inline GapResult gap(const GapSpec& spec) {
  if (spec.steps.empty() || spec.steps.size() != spec.lengths.size())
    throw std::invalid_argument("gap: steps and lengths must match, d >= 1");
  for (long l : spec.lengths)
    if (l < 1) throw std::invalid_argument("gap: lengths must be positive");
  std::set<Rat> values{spec.base};
  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    std::set<Rat> next;
    for (const Rat& v : values)
      for (long l = 0; l < spec.lengths[i]; ++l)
        next.insert(v + Rat(l) * spec.steps[i]);
    values.swap(next);
  }
  GapResult out;
  out.elements.assign(values.begin(), values.end());
  out.nominal_cardinality = 1;
  for (long l : spec.lengths) out.nominal_cardinality *= l;
  return out;
}

/// {r, r^2, ..., r^N}.
inline std::vector<Rat> geometric(long n, const Rat& ratio) {
  if (n < 1) throw std::invalid_argument("geometric: N must be >= 1");
  if (ratio == 0 || ratio == 1 || ratio == -1)
    throw std::invalid_argument("geometric: ratio must not be 0, 1 or -1");
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n));
  Rat v = ratio;
  for (long i = 0; i < n; ++i, v *= ratio) out.push_back(v);
  return out;
}

/// Uniform measure on the N^3 matrices [[n, 2^j], [2^k, n]], n,j,k in [N].
inline MatrixMeasure sharp_example(long n) {
  if (n < 2) throw std::invalid_argument("sharp_example: N must be >= 2");
  MatrixMeasure mu;
  mu.is_probability = true;
  Rat w = make_rat(1, Int(n) * n * n);
  for (long d = 1; d <= n; ++d)
    for (long j = 1; j <= n; ++j)
      for (long k = 1; k <= n; ++k)
        mu.atoms[Mat2{Rat(d), rat_pow(Rat(2), static_cast<unsigned>(j)),
                      rat_pow(Rat(2), static_cast<unsigned>(k)), Rat(d)}] = w;
  return mu;
}

/// Uniform measure on {iA + jB : i, j in [N]} for commuting independent
/// A, B; every pair in the support commutes.
inline MatrixMeasure commuting_plane_example(long n, const Mat2& a,
                                             const Mat2& b) {
  if (n < 1) throw std::invalid_argument("commuting_plane_example: N >= 1");
  if (a.is_zero()) throw std::invalid_argument("commuting_plane_example: A is zero");
  if (b.is_zero()) throw std::invalid_argument("commuting_plane_example: B is zero");
  if (span_dim({a, b}) != 2)
    throw std::invalid_argument("commuting_plane_example: A, B dependent");
  if (!commutes(a, b))
    throw std::invalid_argument("commuting_plane_example: AB != BA");
  MatrixMeasure mu;
  mu.is_probability = true;
  Rat w = make_rat(1, Int(n) * n);
  for (long i = 1; i <= n; ++i)
    for (long j = 1; j <= n; ++j) mu.atoms[Rat(i) * a + Rat(j) * b] = w;
  return mu;
}

/// n distinct integers uniform in [lo, hi].
inline std::vector<Rat> random_set(std::size_t n, std::int64_t lo,
                                   std::int64_t hi, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_set: n must be >= 1");
  if (lo > hi || static_cast<std::uint64_t>(hi - lo) + 1 < n)
    throw std::invalid_argument("random_set: range too small for n distinct values");
  SplitMix64 rng(seed);
  std::set<std::int64_t> picked;
  while (picked.size() < n) picked.insert(rng.in_range(lo, hi));
  std::vector<Rat> out;
  out.reserve(n);
  for (std::int64_t v : picked) out.emplace_back(v);
  return out;
}

/// Probability measure on a random set; weights are random integers in
/// [1, 2^16], normalized.
inline ScalarMeasure random_measure(std::size_t n, std::int64_t lo,
                                    std::int64_t hi, std::uint64_t seed) {
  std::vector<Rat> support = random_set(n, lo, hi, seed);
  SplitMix64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ull);
  std::vector<Int> raw;
  Int total(0);
  for (std::size_t i = 0; i < n; ++i) {
    raw.emplace_back(rng.in_range(1, 1 << 16));
    total += raw.back();
  }
  ScalarMeasure nu;
  nu.is_probability = true;
  for (std::size_t i = 0; i < n; ++i)
    nu.atoms[support[i]] = make_rat(raw[i], total);
  return nu;
}

/// Probability measure on n distinct random matrices with integer
/// entries in [lo, hi]; weights as in random_measure.
inline MatrixMeasure random_matrix_measure(std::size_t n, std::int64_t lo,
                                           std::int64_t hi,
                                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_matrix_measure: n >= 1");
  SplitMix64 rng(seed);
  std::set<Mat2> picked;
  while (picked.size() < n) {
    Mat2 m{Rat(rng.in_range(lo, hi)), Rat(rng.in_range(lo, hi)),
           Rat(rng.in_range(lo, hi)), Rat(rng.in_range(lo, hi))};
    picked.insert(m);
  }
  std::vector<Int> raw;
  Int total(0);
  for (std::size_t i = 0; i < n; ++i) {
    raw.emplace_back(rng.in_range(1, 1 << 16));
    total += raw.back();
  }
  MatrixMeasure mu;
  mu.is_probability = true;
  std::size_t i = 0;
  for (const Mat2& m : picked) mu.atoms[m] = make_rat(raw[i++], total);
  return mu;
}

}  // namespace commutelab
