#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutelab/commute.hpp"
#include "commutelab/mat2.hpp"
#include "commutelab/measure.hpp"
#include "commutelab/rational.hpp"

// Brute-force reference implementations of every counted quantity.
// These enumerate the defining sums directly from the exact primitives
// and share no counting code with the bucketed engines.

namespace commutelab::oracle {

struct Caps {
  std::size_t brute_set_max = 6;            // |A| for brute_T_set
  unsigned long long tuple_max = 10'000'000;  // quadruple-space size
  std::size_t brute_delta_support = 14;
  std::size_t product_support = 12;
};

/// Process-wide caps; COMMUTE_LAB_CAPS="brute_set=8,tuples=20000000,
/// delta_support=64,product_support=12" overrides any subset.
inline Caps& caps() {
  static Caps c = [] {
    Caps c;
    const char* env = std::getenv("COMMUTE_LAB_CAPS");
    if (env) {
      std::string s(env);
      std::size_t pos = 0;
      while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq != std::string::npos) {
          std::string key = item.substr(0, eq);
          unsigned long long value = std::stoull(item.substr(eq + 1));
          if (key == "brute_set") c.brute_set_max = value;
          else if (key == "tuples") c.tuple_max = value;
          else if (key == "delta_support") c.brute_delta_support = value;
          else if (key == "product_support") c.product_support = value;
          else throw std::invalid_argument("COMMUTE_LAB_CAPS: unknown key " + key);
        }
        pos = comma + 1;
      }
    }
    return c;
  }();
  return c;
}

namespace detail {

inline void check_tuples(unsigned long long n, const char* what) {
  if (n > caps().tuple_max)
    throw cap_error(std::string(what) + ": quadruple space exceeds cap tuples=" +
                    std::to_string(caps().tuple_max));
}

inline std::vector<Mat2> all_matrices(const std::vector<Rat>& a) {
  std::vector<Mat2> mats;
  mats.reserve(a.size() * a.size() * a.size() * a.size());
  for (const Rat& x1 : a)
    for (const Rat& x2 : a)
      for (const Rat& x3 : a)
        for (const Rat& x4 : a) mats.push_back(Mat2{x1, x2, x3, x4});
  return mats;
}

}  // namespace detail

/// T(A) by enumerating all |A|^8 ordered matrix pairs and comparing the
/// two products entrywise.
inline Int brute_T_set(const std::vector<Rat>& a) {
  if (a.size() > caps().brute_set_max)
    throw cap_error("brute_T_set: |A| exceeds cap brute_set=" +
                    std::to_string(caps().brute_set_max));
  std::vector<Mat2> mats = detail::all_matrices(a);
  Int count(mats.size());  // X = Y pairs
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (mat_mul(mats[i], mats[j]) == mat_mul(mats[j], mats[i])) count += 2;
  return count;
}

inline Rat brute_T_measure(const MatrixMeasure& mu) {
  detail::check_tuples(static_cast<unsigned long long>(mu.atoms.size()) *
                           mu.atoms.size(),
                       "brute_T_measure");
  Rat t(0);
  for (const auto& [x, wx] : mu.atoms)
    for (const auto& [y, wy] : mu.atoms)
      if (mat_mul(x, y) == mat_mul(y, x)) t += wx * wy;
  return t;
}

inline Rat brute_E(const ScalarMeasure& nu) {
  unsigned long long n = nu.atoms.size();
  detail::check_tuples(n * n * n * n, "brute_E");
  Rat t(0);
  for (const auto& [a1, w1] : nu.atoms)
    for (const auto& [a2, w2] : nu.atoms)
      for (const auto& [a3, w3] : nu.atoms)
        for (const auto& [a4, w4] : nu.atoms)
          if (a1 + a2 == a3 + a4) t += w1 * w2 * w3 * w4;
  return t;
}

inline Int brute_E_set(const std::vector<Rat>& a) {
  unsigned long long n = a.size();
  detail::check_tuples(n * n * n * n, "brute_E_set");
  Int count(0);
  for (const Rat& a1 : a)
    for (const Rat& a2 : a)
      for (const Rat& a3 : a)
        for (const Rat& a4 : a)
          if (a1 + a2 == a3 + a4) ++count;
  return count;
}

inline Rat brute_M(const ScalarMeasure& nu) {
  unsigned long long n = nu.atoms.size();
  detail::check_tuples(n * n * n * n, "brute_M");
  Rat t(0);
  for (const auto& [a1, w1] : nu.atoms)
    for (const auto& [a2, w2] : nu.atoms)
      for (const auto& [a3, w3] : nu.atoms)
        for (const auto& [a4, w4] : nu.atoms) {
          if (a1 == 0 || a2 == 0 || a3 == 0 || a4 == 0) continue;
          if (a1 / a2 == a3 / a4) t += w1 * w2 * w3 * w4;
        }
  return t;
}

inline Int brute_M_set(const std::vector<Rat>& a) {
  unsigned long long n = a.size();
  detail::check_tuples(n * n * n * n, "brute_M_set");
  Int count(0);
  for (const Rat& a1 : a)
    for (const Rat& a2 : a)
      for (const Rat& a3 : a)
        for (const Rat& a4 : a) {
          if (a1 == 0 || a2 == 0 || a3 == 0 || a4 == 0) continue;
          if (a1 / a2 == a3 / a4) ++count;
        }
  return count;
}

namespace detail {

/// Map x -> slope * x + shift, composed and inverted exactly.
struct AffineMap {
  Rat slope, shift;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
  AffineMap after(const AffineMap& inner) const {
    return {slope * inner.slope, slope * inner.shift + shift};
  }
  AffineMap inverse() const { return {1 / slope, -shift / slope}; }
};

}  // namespace detail

/// E(Aff(A)) by direct enumeration of map quadruples.
inline Int brute_affine_energy(const std::vector<Rat>& a,
                               AffineForm form = AffineForm::right_quotient) {
  std::vector<detail::AffineMap> maps;
  for (const Rat& s : a) {
    if (s == 0) continue;
    for (const Rat& b : a) maps.push_back({s, b});
  }
  if (maps.empty())
    throw std::invalid_argument("brute_affine_energy: Aff(A) empty");
  unsigned long long n = maps.size();
  detail::check_tuples(n * n * n * n, "brute_affine_energy");
  auto quotient = [&](const detail::AffineMap& g, const detail::AffineMap& h) {
    return form == AffineForm::right_quotient ? g.after(h.inverse())
                                              : g.inverse().after(h);
  };
  Int count(0);
  for (const auto& g : maps)
    for (const auto& gp : maps) {
      detail::AffineMap lhs = quotient(g, gp);
      for (const auto& h : maps)
        for (const auto& hp : maps)
          if (lhs == quotient(h, hp)) ++count;
    }
  return count;
}

/// Commuting pairs with off-diagonals in A\{0} and diagonals in A.
inline Int brute_offdiag_nonzero(const std::vector<Rat>& a) {
  std::vector<Rat> nz;
  for (const Rat& x : a)
    if (x != 0) nz.push_back(x);
  unsigned long long n = a.size() * a.size() * nz.size() * nz.size();
  detail::check_tuples(n * n, "brute_offdiag_nonzero");
  Int count(0);
  for (const Rat& x1 : a)
    for (const Rat& x2 : nz)
      for (const Rat& x3 : nz)
        for (const Rat& x4 : a) {
          Mat2 x{x1, x2, x3, x4};
          for (const Rat& y1 : a)
            for (const Rat& y2 : nz)
              for (const Rat& y3 : nz)
                for (const Rat& y4 : a) {
                  Mat2 y{y1, y2, y3, y4};
                  if (mat_mul(x, y) == mat_mul(y, x)) ++count;
                }
        }
  return count;
}

/// Count of c1/c2 = c3/c4 = (d1-d2)/(d3-d4) over C^4 x D^4.
inline Int brute_asym(const std::vector<Rat>& c, const std::vector<Rat>& d) {
  for (const Rat& x : c)
    if (x == 0) throw std::invalid_argument("brute_asym: 0 in C");
  unsigned long long nc = c.size(), nd = d.size();
  detail::check_tuples(nc * nc * nc * nc * nd * nd * nd * nd, "brute_asym");
  Int count(0);
  for (const Rat& c1 : c)
    for (const Rat& c2 : c)
      for (const Rat& c3 : c)
        for (const Rat& c4 : c) {
          if (c1 / c2 != c3 / c4) continue;
          Rat z = c1 / c2;
          for (const Rat& d1 : d)
            for (const Rat& d2 : d)
              for (const Rat& d3 : d)
                for (const Rat& d4 : d) {
                  if (d3 == d4) continue;
                  if (d1 - d2 == z * (d3 - d4)) ++count;
                }
        }
  return count;
}

/// Count of c1/c3 = c2/c4 and c4(d1-d2) = c2(d3-d4) over C^4 x D^4.
inline Int brute_affine_energy_asym(const std::vector<Rat>& c,
                                    const std::vector<Rat>& d) {
  for (const Rat& x : c)
    if (x == 0) throw std::invalid_argument("brute_affine_energy_asym: 0 in C");
  unsigned long long nc = c.size(), nd = d.size();
  detail::check_tuples(nc * nc * nc * nc * nd * nd * nd * nd,
                       "brute_affine_energy_asym");
  Int count(0);
  for (const Rat& c1 : c)
    for (const Rat& c2 : c)
      for (const Rat& c3 : c)
        for (const Rat& c4 : c) {
          if (c1 / c3 != c2 / c4) continue;
          for (const Rat& d1 : d)
            for (const Rat& d2 : d)
              for (const Rat& d3 : d)
                for (const Rat& d4 : d)
                  if (c4 * (d1 - d2) == c2 * (d3 - d4)) ++count;
        }
  return count;
}

/// delta(mu) by enumerating subsets of the support, pruning branches as
/// soon as the partial span reaches dimension 3.
inline Rat brute_delta(const MatrixMeasure& mu) {
  if (mu.atoms.empty()) throw std::invalid_argument("brute_delta: empty support");
  if (mu.atoms.size() > caps().brute_delta_support)
    throw cap_error("brute_delta: support exceeds cap delta_support=" +
                    std::to_string(caps().brute_delta_support));
  std::vector<std::pair<Mat2, Rat>> atoms(mu.atoms.begin(), mu.atoms.end());
  Rat best(0);
  auto dfs = [&](auto&& self, std::size_t i, commutelab::detail::RowSpan span,
                 Rat mass) -> void {
    if (mass > best) best = mass;
    for (std::size_t j = i; j < atoms.size(); ++j) {
      commutelab::detail::RowSpan extended = span;
      extended.add(atoms[j].first.vec());
      if (extended.rank() > 2) continue;
      self(self, j + 1, std::move(extended), mass + atoms[j].second);
    }
  };
  dfs(dfs, 0, commutelab::detail::RowSpan{}, Rat(0));
  return best;
}

}  // namespace commutelab::oracle
