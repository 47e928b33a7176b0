#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutelab/mat2.hpp"
#include "commutelab/measure.hpp"
#include "commutelab/parallel.hpp"
#include "commutelab/profile.hpp"
#include "commutelab/rational.hpp"

namespace commutelab {

enum class Algo { pairwise, zero_pattern, commutant };

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::pairwise: return "pairwise";
    case Algo::zero_pattern: return "zero_pattern";
    case Algo::commutant: return "commutant";
  }
  return "?";
}

/// T split into the degenerate part H1 (some off-diagonal entry or
/// diagonal difference vanishes) and the non-degenerate part H2.
struct CommuteReport {
  Rat total;
  Rat h1_degenerate;
  Rat h2_nondegenerate;
  Algo algorithm;
};

/// T(mu): mass of commuting ordered support pairs, X = Y included.
inline Rat commute_count_measure(const MatrixMeasure& mu) {
  std::vector<std::pair<Mat2, Rat>> atoms(mu.atoms.begin(), mu.atoms.end());
  auto part = [&](std::size_t begin, std::size_t end) {
    Rat t(0);
    for (std::size_t i = begin; i < end; ++i) {
      t += atoms[i].second * atoms[i].second;
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (commutes(atoms[i].first, atoms[j].first))
          t += 2 * atoms[i].second * atoms[j].second;
    }
    return t;
  };
  Rat total(0);
  for (const Rat& t : chunked_map<Rat>(atoms.size(), part)) total += t;
  return total;
}

namespace detail {

/// Shared inputs of the zero-pattern reducer: scalar masses and the
/// coupled profile sums, weighted or with unit weights.
struct PatternContext {
  Rat zero_mass;     // mass at 0
  Rat nonzero_mass;  // mass of the support minus 0
  Rat diag_mass;     // mass of pairs (x1, x4) with x4 = x1
  Rat offdiag_mass;  // mass of pairs with x4 != x1
  Rat prod_energy;   // mass of (u,t,v,w), all nonzero, with u*t = v*w
  Rat qd;            // sum over z of q(z) * d(z)
  Rat q2d;           // sum over z of q(z)^2 * d(z)   (the H2 term)
};

inline PatternContext make_pattern_context(const WeightMap& w) {
  PatternContext ctx;
  Rat total(0), sq(0);
  ctx.zero_mass = 0;
  for (const auto& [x, m] : w) {
    total += m;
    sq += m * m;
    if (x == 0) ctx.zero_mass = m;
  }
  ctx.nonzero_mass = total - ctx.zero_mass;
  ctx.diag_mass = sq;
  ctx.offdiag_mass = total * total - sq;

  Profile q = quotient_profile_impl(w);
  Profile prod = pair_profile(
      w, ProfileKind::quotient, [](const Rat& a, const Rat& b) { return a * b; },
      /*skip_zero_operands=*/true);
  ctx.prod_energy = moment(prod, 2);

  Profile dp = difference_profile_impl(w);
  std::vector<std::pair<Rat, Rat>> qitems(q.buckets.begin(), q.buckets.end());
  auto part = [&](std::size_t begin, std::size_t end) {
    std::pair<Rat, Rat> acc{Rat(0), Rat(0)};  // (qd, q2d)
    for (std::size_t i = begin; i < end; ++i) {
      const auto& [z, qm] = qitems[i];
      Rat d = paired_difference_mass(dp, z);
      if (d == 0) continue;
      acc.first += qm * d;
      acc.second += qm * qm * d;
    }
    return acc;
  };
  ctx.qd = 0;
  ctx.q2d = 0;
  for (const auto& [qd, q2d] :
       chunked_map<std::pair<Rat, Rat>>(qitems.size(), part)) {
    ctx.qd += qd;
    ctx.q2d += q2d;
  }
  return ctx;
}

// Slot layout for the zero/nonzero pattern of a solution of the
// commuting equations: 0:x2  1:x3  2:y2  3:y3  4:x4-x1  5:y4-y1.
// The three equations, as (left slots, right slots):
//   x2*y3 = x3*y2,  x2*(y4-y1) = y2*(x4-x1),  x3*(y4-y1) = y3*(x4-x1).
inline constexpr std::array<std::array<std::array<int, 2>, 2>, 3> kPatternEqs{
    {{{{0, 3}, {1, 2}}}, {{{0, 5}, {2, 4}}}, {{{1, 5}, {3, 4}}}}};

enum class EqState { dropped, infeasible, survives };

inline EqState classify_equation(unsigned mask, int eq) {
  auto nonzero_side = [&](const std::array<int, 2>& side) {
    return ((mask >> side[0]) & 1u) && ((mask >> side[1]) & 1u);
  };
  bool left = nonzero_side(kPatternEqs[eq][0]);
  bool right = nonzero_side(kPatternEqs[eq][1]);
  if (left != right) return EqState::infeasible;
  return left ? EqState::survives : EqState::dropped;
}

/// Contribution of one of the 64 zero/nonzero patterns. Infeasible
/// patterns (an equation with exactly one vanishing side) return 0.
inline Rat pattern_contribution(const PatternContext& ctx, unsigned mask) {
  std::vector<int> surviving;
  for (int eq = 0; eq < 3; ++eq) {
    switch (classify_equation(mask, eq)) {
      case EqState::infeasible: return Rat(0);
      case EqState::survives: surviving.push_back(eq); break;
      case EqState::dropped: break;
    }
  }
  if (mask == 63u) return ctx.q2d;  // H2: all three equations couple
  // Any two surviving equations force all six slots nonzero, so a
  // non-H2 pattern keeps at most one equation.
  if (surviving.size() > 1)
    throw std::logic_error("pattern reducer: unexpected equation set");
  std::uint8_t used = 0;
  Rat contribution(1);
  if (!surviving.empty()) {
    int eq = surviving.front();
    for (const auto& side : kPatternEqs[eq])
      for (int slot : side) used |= std::uint8_t(1u << slot);
    contribution = (eq == 0) ? ctx.prod_energy : ctx.qd;
  }
  for (int slot = 0; slot < 6; ++slot) {
    if (used & (1u << slot)) continue;
    bool nonzero = (mask >> slot) & 1u;
    if (slot < 4)
      contribution *= nonzero ? ctx.nonzero_mass : ctx.zero_mass;
    else
      contribution *= nonzero ? ctx.offdiag_mass : ctx.diag_mass;
  }
  return contribution;
}

inline CommuteReport zero_pattern_count(const WeightMap& w, Algo tag) {
  PatternContext ctx = make_pattern_context(w);
  CommuteReport report{Rat(0), Rat(0), Rat(0), tag};
  for (unsigned mask = 0; mask < 64; ++mask) {
    Rat c = pattern_contribution(ctx, mask);
    if (mask == 63u)
      report.h2_nondegenerate = c;
    else
      report.h1_degenerate += c;
  }
  report.total = report.h1_degenerate + report.h2_nondegenerate;
  return report;
}

}  // namespace detail

/// T(A) by enumerating the |A|^4 matrices and testing pairs with the
/// entrywise commuting conditions.
inline CommuteReport commute_count_set_pairwise(const std::vector<Rat>& a) {
  std::vector<Mat2> mats;
  mats.reserve(a.size() * a.size() * a.size() * a.size());
  for (const Rat& x1 : a)
    for (const Rat& x2 : a)
      for (const Rat& x3 : a)
        for (const Rat& x4 : a) mats.push_back(Mat2{x1, x2, x3, x4});

  auto nondegenerate = [](const Mat2& x, const Mat2& y) {
    return x.a12 != 0 && x.a21 != 0 && y.a12 != 0 && y.a21 != 0 &&
           x.a11 != x.a22 && y.a11 != y.a22;
  };
  auto part = [&](std::size_t begin, std::size_t end) {
    std::pair<Int, Int> acc{0, 0};  // (h1, h2), unordered off-diagonal pairs
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < mats.size(); ++j) {
        if (!commutes(mats[i], mats[j])) continue;
        (nondegenerate(mats[i], mats[j]) ? acc.second : acc.first) += 1;
      }
    }
    return acc;
  };
  Int h1 = 0, h2 = 0;
  for (const auto& [d, n] :
       chunked_map<std::pair<Int, Int>>(mats.size(), part)) {
    h1 += d;
    h2 += n;
  }
  h1 = 2 * h1;
  h2 = 2 * h2;
  // Diagonal X = Y: always commutes; degenerate iff some entry pattern
  // coordinate vanishes.
  for (const Mat2& m : mats)
    (m.a12 != 0 && m.a21 != 0 && m.a11 != m.a22 ? h2 : h1) += 1;
  return CommuteReport{Rat(h1 + h2), Rat(h1), Rat(h2), Algo::pairwise};
}

namespace detail {

/// T(A) via commutants: every X commutes with exactly the elements of
/// span{I, X} when X is nonscalar, and with everything when scalar.
/// Classes of X are keyed by (x2, x3, x4 - x1).
inline Rat commutant_total(const std::vector<Rat>& a) {
  WeightMap w = unit_weights(a);
  bool zero_in = w.count(Rat(0)) > 0;
  Int n(a.size());
  Int n4 = n * n * n * n;
  Profile dp = difference_profile_impl(w);

  Rat total(0);
  if (zero_in) {
    total += Rat(n * n4);                   // scalar X: |A| of them
    total += Rat((n * n - n) * (n * n));    // diagonal nonscalar X
  }

  std::vector<std::pair<Rat, Rat>> classes;  // (x2, x3), not both zero
  for (const Rat& x2 : a)
    for (const Rat& x3 : a)
      if (x2 != 0 || x3 != 0) classes.emplace_back(x2, x3);

  auto part = [&](std::size_t begin, std::size_t end) {
    Rat t(0);
    for (std::size_t ci = begin; ci < end; ++ci) {
      const auto& [x2, x3] = classes[ci];
      // B: slopes beta with beta*x2 and beta*x3 both in A.
      std::vector<Rat> slopes;
      const Rat& anchor = (x2 != 0) ? x2 : x3;
      const Rat& other = (x2 != 0) ? x3 : x2;
      for (const Rat& v : a) {
        Rat beta = v / anchor;
        if (other != 0 && !w.count(beta * other)) continue;
        slopes.push_back(beta);
      }
      for (const auto& [delta, m] : dp.buckets) {
        Rat inner(0);
        for (const Rat& beta : slopes) inner += dp.at(beta * delta);
        t += m * inner;
      }
    }
    return t;
  };
  for (const Rat& t : chunked_map<Rat>(classes.size(), part)) total += t;
  return total;
}

}  // namespace detail

inline CommuteReport commute_count_set(const std::vector<Rat>& a, Algo algo) {
  if (a.empty()) throw std::invalid_argument("commute_count_set: empty set");
  switch (algo) {
    case Algo::pairwise:
      return commute_count_set_pairwise(a);
    case Algo::zero_pattern:
      return detail::zero_pattern_count(detail::unit_weights(a),
                                        Algo::zero_pattern);
    case Algo::commutant: {
      // The commutant route yields the total only; the H2 term is taken
      // from the bucketed formula so the partition invariant holds.
      detail::WeightMap w = detail::unit_weights(a);
      Rat total = detail::commutant_total(a);
      Rat h2 = detail::make_pattern_context(w).q2d;
      return CommuteReport{total, total - h2, h2, Algo::commutant};
    }
  }
  throw std::logic_error("unknown algorithm");
}

/// T(mu_nu) without materializing the product measure.
inline CommuteReport commute_count_product_measure(const ScalarMeasure& nu) {
  return detail::zero_pattern_count(nu.atoms, Algo::zero_pattern);
}

struct DeltaResult {
  Rat mass;
  std::vector<Mat2> witness_basis;  // 0, 1 or 2 support elements
};

/// delta(mu): maximum mass of a support subset spanning dimension <= 2.
/// Candidates: the zero subspace, lines through single support elements,
/// and planes through independent support pairs; any rank <= 2 subset is
/// contained in the span of at most two of its own elements.
inline DeltaResult delta_with_witness(const MatrixMeasure& mu) {
  if (mu.atoms.empty()) throw std::invalid_argument("delta: empty support");
  std::vector<std::pair<Mat2, Rat>> atoms(mu.atoms.begin(), mu.atoms.end());

  // normalized integer rows once, so membership tests stay allocation-free
  std::vector<std::array<Int, 4>> rows;
  rows.reserve(atoms.size());
  for (const auto& [m, w] : atoms) rows.push_back(detail::integer_row(m.vec()));

  auto pivot_of = [](const std::array<Int, 4>& r) {
    for (int i = 0; i < 4; ++i)
      if (r[i] != 0) return i;
    return -1;
  };
  auto reduce = [](std::array<Int, 4>& r, int pivot,
                   const std::array<Int, 4>& basis) {
    if (r[pivot] == 0) return;
    Int a = basis[pivot], b = r[pivot];
    for (int i = 0; i < 4; ++i) r[i] = r[i] * a - basis[i] * b;
  };

  DeltaResult best{Rat(0), {}};
  auto consider = [&](const Rat& mass, std::vector<Mat2> basis) {
    if (mass > best.mass) best = DeltaResult{mass, std::move(basis)};
  };

  Rat zero_atom(0);
  for (const auto& [m, w] : atoms)
    if (m.is_zero()) zero_atom = w;
  consider(zero_atom, {});

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].first.is_zero()) continue;
    const std::array<Int, 4>& b1 = rows[i];
    int p1 = pivot_of(b1);
    Rat mass(0);
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      std::array<Int, 4> r = rows[k];
      reduce(r, p1, b1);
      if (r == std::array<Int, 4>{}) mass += atoms[k].second;
    }
    consider(mass, {atoms[i].first});
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      std::array<Int, 4> b2 = rows[j];
      reduce(b2, p1, b1);
      int p2 = pivot_of(b2);
      if (p2 < 0) continue;  // dependent pair, already counted as a line
      Rat pm(0);
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        std::array<Int, 4> r = rows[k];
        reduce(r, p1, b1);
        reduce(r, p2, b2);
        if (r == std::array<Int, 4>{}) pm += atoms[k].second;
      }
      consider(pm, {atoms[i].first, atoms[j].first});
    }
  }
  return best;
}

inline Rat delta(const MatrixMeasure& mu) { return delta_with_witness(mu).mass; }

/// Which of the two composition conventions defines the affine energy.
enum class AffineForm { right_quotient /* g o g'^-1 */, left_quotient /* g^-1 o g' */ };

/// E(Aff(A)): quadruples (g, g', h, h') of maps x -> ax + b with
/// a in A\{0}, b in A and equal quotient compositions. Both conventions
/// bucket to the same sum over slope ratios z of q(z)^2 times the count
/// of (a2, a4, b2, b4) in A^4 with a2 - b2 = z*(a4 - b4).
inline Int affine_energy(const std::vector<Rat>& a,
                         AffineForm = AffineForm::right_quotient) {
  bool has_nonzero = false;
  for (const Rat& x : a)
    if (x != 0) has_nonzero = true;
  if (!has_nonzero)
    throw std::invalid_argument("affine_energy: A has no nonzero element");
  Profile q = quotient_profile(a);
  Profile dp = difference_profile(a);
  Rat zero_pairs = dp.at(Rat(0));
  Rat total(0);
  for (const auto& [z, qm] : q.buckets) {
    Rat coupled =
        detail::paired_difference_mass(dp, z) + zero_pairs * zero_pairs;
    total += qm * qm * coupled;
  }
  return numerator(total);
}

/// Commuting ordered pairs whose four off-diagonal entries are nonzero
/// elements of A (diagonals anywhere in A). Enumerates the off-diagonal
/// quadruples directly, so it is a separate path from affine_energy.
inline Int commute_offdiag_nonzero_count(const std::vector<Rat>& a) {
  std::vector<Rat> nz;
  for (const Rat& x : a)
    if (x != 0) nz.push_back(x);
  Profile dp = difference_profile(a);
  Rat zero_pairs = dp.at(Rat(0));
  std::map<Rat, Rat> coupled_memo;
  Rat total(0);
  for (const Rat& x2 : nz)
    for (const Rat& x3 : nz)
      for (const Rat& y2 : nz)
        for (const Rat& y3 : nz) {
          if (x2 * y3 != x3 * y2) continue;
          Rat z = x2 / y2;
          auto it = coupled_memo.find(z);
          if (it == coupled_memo.end()) {
            Rat c =
                detail::paired_difference_mass(dp, z) + zero_pairs * zero_pairs;
            it = coupled_memo.emplace(z, c).first;
          }
          total += it->second;
        }
  return numerator(total);
}

/// Commuting ordered pairs with at least one vanishing off-diagonal
/// entry; T(A) = affine_energy(A) + this count.
inline Int commute_some_offdiag_zero_count(const std::vector<Rat>& a) {
  detail::PatternContext ctx =
      detail::make_pattern_context(detail::unit_weights(a));
  Rat total(0);
  for (unsigned mask = 0; mask < 64; ++mask) {
    bool offdiag_all_nonzero = (mask & 0b1111u) == 0b1111u;
    if (offdiag_all_nonzero) continue;
    total += detail::pattern_contribution(ctx, mask);
  }
  return numerator(total);
}

struct Theorem1Result {
  Rat t;
  Rat delta;
  bool holds;
};

/// Exact check of T(mu) <= 8 * delta(mu) for a probability measure.
/// A false result is a reportable discrepancy, not an error.
inline Theorem1Result theorem1_check(const MatrixMeasure& mu) {
  if (mu.total_mass() != 1)
    throw std::invalid_argument("theorem1_check requires a probability measure");
  Theorem1Result r{commute_count_measure(mu), delta(mu), false};
  r.holds = r.t <= 8 * r.delta;
  return r;
}

}  // namespace commutelab
