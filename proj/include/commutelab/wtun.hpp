#pragma once

#include <map>
#include <vector>

#include "commutelab/measure.hpp"
#include "commutelab/rational.hpp"

// Weighted additive-energy inequalities: the mixed-energy bound
// (a Cauchy-Schwarz chain) and the fourth-root union bound.

namespace commutelab {

namespace detail {

inline std::map<Rat, Rat> restricted_diff_counts(const ScalarMeasure& nu,
                                                 const std::vector<Rat>& a,
                                                 const std::vector<Rat>& b) {
  std::map<Rat, Rat> r;
  for (const Rat& x : a) {
    Rat wx = nu.at(x);
    if (wx == 0) continue;
    for (const Rat& y : b) {
      Rat wy = nu.at(y);
      if (wy != 0) r[x - y] += wx * wy;
    }
  }
  return r;
}

}  // namespace detail

/// Sum over a_i in A_i of nu(a1)...nu(a4) with a1 - a2 = a3 - a4.
inline Rat mixed_energy(const ScalarMeasure& nu, const std::vector<Rat>& a1,
                        const std::vector<Rat>& a2, const std::vector<Rat>& a3,
                        const std::vector<Rat>& a4) {
  auto r12 = detail::restricted_diff_counts(nu, a1, a2);
  auto r34 = detail::restricted_diff_counts(nu, a3, a4);
  Rat t(0);
  for (const auto& [x, m] : r12) {
    auto it = r34.find(x);
    if (it != r34.end()) t += m * it->second;
  }
  return t;
}

/// E_nu(A): weighted additive energy of a subset of the support.
inline Rat energy_restricted(const ScalarMeasure& nu,
                             const std::vector<Rat>& a) {
  return mixed_energy(nu, a, a, a, a);
}

/// Mixed energy <= product of E_nu(A_i)^(1/4), compared via 4th powers.
inline bool fiun_holds(const ScalarMeasure& nu, const std::vector<Rat>& a1,
                       const std::vector<Rat>& a2, const std::vector<Rat>& a3,
                       const std::vector<Rat>& a4) {
  Rat mixed = mixed_energy(nu, a1, a2, a3, a4);
  Rat rhs4 = energy_restricted(nu, a1) * energy_restricted(nu, a2) *
             energy_restricted(nu, a3) * energy_restricted(nu, a4);
  return rat_pow(mixed, 4) <= rhs4;
}

/// Decides whole^(1/4) <= sum of parts[i]^(1/4) exactly: rational
/// interval enclosures of the fourth roots, refined until the comparison
/// separates, with an exact shortcut when at most one part is nonzero.
inline bool union3_root_bound_holds(const Rat& whole,
                                    const std::vector<Rat>& parts) {
  std::vector<Rat> nonzero;
  for (const Rat& p : parts)
    if (p != 0) nonzero.push_back(p);
  if (nonzero.empty()) return whole == 0;
  if (nonzero.size() == 1) return whole <= nonzero.front();
  for (unsigned bits = 16;; bits *= 2) {
    auto [wlo, whi] = fourth_root_bounds(whole, bits);
    Rat sum_lo(0), sum_hi(0);
    for (const Rat& p : nonzero) {
      auto [lo, hi] = fourth_root_bounds(p, bits);
      sum_lo += lo;
      sum_hi += hi;
    }
    if (whi <= sum_lo) return true;
    if (wlo > sum_hi) return false;
    if (bits > 4096)
      throw std::runtime_error("union3_root_bound_holds: did not separate");
  }
}

/// E_nu(union A_i)^(1/4) <= sum E_nu(A_i)^(1/4) for disjoint parts.
inline bool union3_holds(const ScalarMeasure& nu,
                         const std::vector<std::vector<Rat>>& parts) {
  std::vector<Rat> all;
  std::vector<Rat> energies;
  for (const auto& p : parts) {
    all.insert(all.end(), p.begin(), p.end());
    energies.push_back(energy_restricted(nu, p));
  }
  return union3_root_bound_holds(energy_restricted(nu, all), energies);
}

}  // namespace commutelab
