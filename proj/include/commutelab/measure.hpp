#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "commutelab/mat2.hpp"
#include "commutelab/rational.hpp"

namespace commutelab {

struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finitely-supported measure on Q with strictly positive weights and
/// total mass at most 1.
struct ScalarMeasure {
  std::map<Rat, Rat> atoms;
  bool is_probability = false;

  Rat total_mass() const {
    Rat s(0);
    for (const auto& [x, w] : atoms) s += w;
    return s;
  }

  Rat at(const Rat& x) const {
    auto it = atoms.find(x);
    return it == atoms.end() ? Rat(0) : it->second;
  }

  Rat mass_at_zero() const { return at(Rat(0)); }

  /// Sum of w^p over the support; callers compare p-th powers directly.
  Rat norm_pow(unsigned p) const {
    Rat s(0);
    for (const auto& [x, w] : atoms) s += rat_pow(w, p);
    return s;
  }

  Rat norm_inf() const {
    Rat m(0);
    for (const auto& [x, w] : atoms)
      if (w > m) m = w;
    return m;
  }

  std::vector<Rat> support() const {
    std::vector<Rat> s;
    s.reserve(atoms.size());
    for (const auto& [x, w] : atoms) s.push_back(x);
    return s;
  }

  void validate() const {
    for (const auto& [x, w] : atoms)
      if (w <= 0) throw std::invalid_argument("non-positive atom weight");
    Rat m = total_mass();
    if (m > 1) throw std::invalid_argument("total mass exceeds 1");
    if (is_probability && m != 1)
      throw std::invalid_argument("probability flag set but mass != 1");
  }
};

struct MatrixMeasure {
  std::map<Mat2, Rat> atoms;
  bool is_probability = false;

  Rat total_mass() const {
    Rat s(0);
    for (const auto& [x, w] : atoms) s += w;
    return s;
  }

  void validate() const {
    for (const auto& [x, w] : atoms)
      if (w <= 0) throw std::invalid_argument("non-positive atom weight");
    Rat m = total_mass();
    if (m > 1) throw std::invalid_argument("total mass exceeds 1");
    if (is_probability && m != 1)
      throw std::invalid_argument("probability flag set but mass != 1");
  }
};

inline ScalarMeasure uniform_on(const std::vector<Rat>& set) {
  if (set.empty()) throw std::invalid_argument("empty support");
  ScalarMeasure nu;
  nu.is_probability = true;
  Rat w = make_rat(1, Int(set.size()));
  for (const Rat& x : set) nu.atoms[x] = w;
  if (nu.atoms.size() != set.size())
    throw std::invalid_argument("duplicate elements in set");
  return nu;
}

/// Explicit product measure on |supp(nu)|^4 matrices. Guarded by a cap;
/// large supports go through the implicit engines in commute.hpp instead.
inline MatrixMeasure product_measure(const ScalarMeasure& nu,
                                     std::size_t support_cap = 12) {
  if (nu.atoms.size() > support_cap)
    throw cap_error(
        "product measure support exceeds cap " + std::to_string(support_cap) +
        "; use the implicit product-measure engines in module commute");
  MatrixMeasure mu;
  mu.is_probability = nu.is_probability;
  for (const auto& [a, wa] : nu.atoms)
    for (const auto& [b, wb] : nu.atoms)
      for (const auto& [c, wc] : nu.atoms)
        for (const auto& [d, wd] : nu.atoms)
          mu.atoms[Mat2{a, b, c, d}] = wa * wb * wc * wd;
  return mu;
}

}  // namespace commutelab
