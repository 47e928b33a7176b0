#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commutelab/measure.hpp"
#include "commutelab/parallel.hpp"
#include "commutelab/rational.hpp"

namespace commutelab {

enum class ProfileKind { quotient, sum, difference, diff_ratio };

inline const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::quotient: return "quotient";
    case ProfileKind::sum: return "sum";
    case ProfileKind::difference: return "difference";
    case ProfileKind::diff_ratio: return "diff_ratio";
  }
  return "?";
}

/// Representation-count function: bucket key -> exact mass. Set-based
/// profiles carry integer masses, weighted ones rational masses.
struct Profile {
  ProfileKind kind;
  std::map<Rat, Rat> buckets;

  Rat total_mass() const {
    Rat s(0);
    for (const auto& [z, m] : buckets) s += m;
    return s;
  }

  Rat at(const Rat& z) const {
    auto it = buckets.find(z);
    return it == buckets.end() ? Rat(0) : it->second;
  }
};

inline Rat moment(const Profile& p, unsigned k) {
  Rat s(0);
  for (const auto& [z, m] : p.buckets) s += rat_pow(m, k);
  return s;
}

namespace detail {

using WeightMap = std::map<Rat, Rat>;

/// Counting measure with unit weights; the shared engine below handles
/// both the weighted and unweighted cases through this.
inline WeightMap unit_weights(const std::vector<Rat>& set) {
  WeightMap w;
  for (const Rat& x : set) w[x] = 1;
  if (w.size() != set.size())
    throw std::invalid_argument("duplicate elements in set");
  return w;
}

template <typename Op>
Profile pair_profile(const WeightMap& w, ProfileKind kind, Op&& op,
                     bool skip_zero_operands) {
  std::vector<std::pair<Rat, Rat>> items(w.begin(), w.end());
  auto build = [&](std::size_t begin, std::size_t end) {
    std::map<Rat, Rat> local;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& [a, wa] = items[i];
      if (skip_zero_operands && a == 0) continue;
      for (const auto& [b, wb] : items) {
        if (skip_zero_operands && b == 0) continue;
        local[op(a, b)] += wa * wb;
      }
    }
    return local;
  };
  Profile p{kind, {}};
  for (auto& part : chunked_map<std::map<Rat, Rat>>(items.size(), build))
    for (auto& [z, m] : part) p.buckets[z] += m;
  return p;
}

inline Profile quotient_profile_impl(const WeightMap& w) {
  return pair_profile(
      w, ProfileKind::quotient, [](const Rat& a, const Rat& b) { return a / b; },
      /*skip_zero_operands=*/true);
}

inline Profile sum_profile_impl(const WeightMap& w) {
  return pair_profile(
      w, ProfileKind::sum, [](const Rat& a, const Rat& b) { return a + b; },
      /*skip_zero_operands=*/false);
}

inline Profile difference_profile_impl(const WeightMap& w) {
  return pair_profile(
      w, ProfileKind::difference,
      [](const Rat& a, const Rat& b) { return a - b; },
      /*skip_zero_operands=*/false);
}

}  // namespace detail

/// q(z): mass of z as a ratio a/b over the support minus zero.
inline Profile quotient_profile(const ScalarMeasure& nu) {
  return detail::quotient_profile_impl(nu.atoms);
}
inline Profile quotient_profile(const std::vector<Rat>& set) {
  return detail::quotient_profile_impl(detail::unit_weights(set));
}

inline Profile sum_profile(const ScalarMeasure& nu) {
  return detail::sum_profile_impl(nu.atoms);
}
inline Profile sum_profile(const std::vector<Rat>& set) {
  return detail::sum_profile_impl(detail::unit_weights(set));
}

inline Profile difference_profile(const ScalarMeasure& nu) {
  return detail::difference_profile_impl(nu.atoms);
}
inline Profile difference_profile(const std::vector<Rat>& set) {
  return detail::difference_profile_impl(detail::unit_weights(set));
}

/// r1(z): number of quadruples (a,b,c,d) in A^4 with a != b, c != d and
/// (a-b)/(c-d) = z. Empty for |A| < 2.
inline Profile diff_ratio_profile(const std::vector<Rat>& set) {
  Profile p{ProfileKind::diff_ratio, {}};
  if (set.size() < 2) return p;
  Profile d = difference_profile(set);
  for (const auto& [x, mx] : d.buckets) {
    if (x == 0) continue;
    for (const auto& [y, my] : d.buckets) {
      if (y == 0) continue;
      p.buckets[x / y] += mx * my;
    }
  }
  return p;
}

/// E: second moment of the sum profile.
inline Rat energy_additive(const ScalarMeasure& nu) {
  return moment(sum_profile(nu), 2);
}
inline Int energy_additive_set(const std::vector<Rat>& set) {
  return numerator(moment(sum_profile(set), 2));
}

/// M: second moment of the quotient profile (zero excluded).
inline Rat energy_mult(const ScalarMeasure& nu) {
  return moment(quotient_profile(nu), 2);
}
inline Int energy_mult_set(const std::vector<Rat>& set) {
  return numerator(moment(quotient_profile(set), 2));
}

/// Dyadic histogram: for each tau = 2^j, the number of buckets with
/// tau <= mass < 2*tau. Requires an integer-mass (set-based) profile.
inline std::vector<std::pair<Int, std::size_t>> dyadic_levels(
    const Profile& p) {
  std::map<Int, std::size_t> levels;
  for (const auto& [z, m] : p.buckets) {
    if (!is_integer(m) || m <= 0)
      throw std::invalid_argument("dyadic levels require set profiles");
    Int tau(1);
    while (tau * 2 <= numerator(m)) tau *= 2;
    ++levels[tau];
  }
  return {levels.begin(), levels.end()};
}

namespace detail {

/// d-type pairing: sum over nonzero difference buckets s of
/// dp(z*s) * dp(s), i.e. the mass of pairs of differences with ratio z.
inline Rat paired_difference_mass(const Profile& dp, const Rat& z) {
  Rat s(0);
  for (const auto& [c, m] : dp.buckets) {
    if (c == 0) continue;
    Rat other = dp.at(z * c);
    if (other != 0) s += other * m;
  }
  return s;
}

}  // namespace detail

/// Count of (c1..c4, d1..d4) with c1/c2 = c3/c4 = (d1-d2)/(d3-d4).
/// The common ratio is nonzero, so the difference constraints are implied.
inline Int asym_commute_count(const std::vector<Rat>& c,
                              const std::vector<Rat>& d) {
  for (const Rat& x : c)
    if (x == 0) throw std::invalid_argument("asym_commute_count: 0 in C");
  Profile q = quotient_profile(c);
  Profile r = diff_ratio_profile(d);
  Rat total(0);
  for (const auto& [z, qm] : q.buckets) total += qm * qm * r.at(z);
  return numerator(total);
}

/// Count of (c1..c4, d1..d4) with c1/c3 = c2/c4 and
/// c4(d1-d2) = c2(d3-d4); zero differences allowed.
inline Int affine_energy_asym(const std::vector<Rat>& c,
                              const std::vector<Rat>& d) {
  for (const Rat& x : c)
    if (x == 0) throw std::invalid_argument("affine_energy_asym: 0 in C");
  // Bucket on w = c2/c4; the difference condition becomes
  // d1 - d2 = w * (d3 - d4) once c2 = w * c4 is substituted.
  Profile q = quotient_profile(c);
  Profile dp = difference_profile(d);
  Rat total(0);
  Rat zero_diffs = dp.at(Rat(0));
  for (const auto& [w, qm] : q.buckets) {
    Rat coupled = detail::paired_difference_mass(dp, w) + zero_diffs * zero_diffs;
    total += qm * qm * coupled;
  }
  return numerator(total);
}

/// CSV rows (key, mass_num, mass_den), keys in increasing order.
inline std::string profile_csv(const Profile& p) {
  std::string out = "key,mass_num,mass_den\n";
  for (const auto& [z, m] : p.buckets) {
    out += format_rat(z);
    out += ',';
    out += numerator(m).str();
    out += ',';
    out += denominator(m).str();
    out += '\n';
  }
  return out;
}

inline std::string dyadic_csv(const std::vector<std::pair<Int, std::size_t>>& h) {
  std::string out = "tau,count\n";
  for (const auto& [tau, n] : h)
    out += tau.str() + ',' + std::to_string(n) + '\n';
  return out;
}

}  // namespace commutelab
