// Acceptance suite: one line of output per criterion, nonzero exit if
// any fails. Runs everything with exact arithmetic; expected runtime is
// minutes, dominated by the brute-force cross-checks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "commutelab/commute.hpp"
#include "commutelab/generators.hpp"
#include "commutelab/io.hpp"
#include "commutelab/oracle.hpp"
#include "commutelab/profile.hpp"
#include "commutelab/wtun.hpp"

using namespace commutelab;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            double seconds) {
  std::printf("criterion %d: %s  %s  (%.1fs)\n", criterion,
              pass ? "PASS" : "FAIL", what.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename F>
void run(int criterion, const std::string& what, F&& f) {
  auto start = std::chrono::steady_clock::now();
  bool pass = false;
  try {
    pass = f();
  } catch (const std::exception& e) {
    std::printf("criterion %d: exception: %s\n", criterion, e.what());
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(criterion, pass, what, seconds);
}

// 1. The three algorithms agree with the brute-force count.
bool oracle_equivalence() {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_set(1 + rng.below(4), -9, 9, rng.next());
    Rat expected(oracle::brute_T_set(a));
    for (Algo algo : {Algo::pairwise, Algo::zero_pattern, Algo::commutant}) {
      CommuteReport r = commute_count_set(a, algo);
      if (r.total != expected) return false;
      if (r.total != r.h1_degenerate + r.h2_nondegenerate) return false;
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_set(trial < 35 ? 5 : 6, -9, 9, rng.next());
    Rat expected(oracle::brute_T_set(a));
    CommuteReport zp = commute_count_set(a, Algo::zero_pattern);
    CommuteReport cm = commute_count_set(a, Algo::commutant);
    if (zp.total != expected || cm.total != expected) return false;
  }
  return true;
}

// 2. T(mu) <= 8 delta(mu) on random and family measures.
bool theorem_bound() {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    MatrixMeasure mu =
        random_matrix_measure(1 + rng.below(10), -6, 6, rng.next());
    if (!theorem1_check(mu).holds) return false;
  }
  for (long n = 2; n <= 6; ++n)
    if (!theorem1_check(sharp_example(n)).holds) return false;
  for (long n = 1; n <= 5; ++n) {
    MatrixMeasure mu = commuting_plane_example(
        n, identity2(), Mat2{Rat(1), Rat(1), Rat(0), Rat(1)});
    if (!theorem1_check(mu).holds) return false;
  }
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    ScalarMeasure nu = random_measure(5, -9, 9, seed);
    MatrixMeasure mu = product_measure(nu);
    if (!theorem1_check(mu).holds) return false;
  }
  return true;
}

// 3. Sharp family: closed form, N*T decreasing toward 2/3, delta <= 1/N.
bool sharp_family() {
  Rat prev;
  for (long n = 2; n <= 10; ++n) {
    Rat t = commute_count_measure(sharp_example(n));
    if (t != make_rat(2 * Int(n) * n * n + n, 3 * Int(n) * n * n * n))
      return false;
    Rat scaled = Rat(n) * t;
    if (scaled <= make_rat(2, 3)) return false;
    if (n > 2 && scaled >= prev) return false;
    prev = scaled;
  }
  for (long n = 2; n <= 4; ++n) {
    MatrixMeasure mu = sharp_example(n);
    Rat d = oracle::brute_delta(mu);
    if (d > make_rat(1, n)) return false;
    if (d != delta(mu)) return false;
  }
  return true;
}

// 4. commute_offdiag_nonzero_count == affine_energy, and the remainder
// is the vanishing-entry commuting count.
bool affine_bijection() {
  auto check = [](const std::vector<Rat>& a) {
    Int affine = affine_energy(a);
    if (commute_offdiag_nonzero_count(a) != affine) return false;
    Rat total = commute_count_set(a, Algo::zero_pattern).total;
    Rat rest = total - Rat(affine);
    return rest >= 0 && rest == Rat(commute_some_offdiag_zero_count(a));
  };
  SplitMix64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_set(1 + rng.below(8), -9, 9, rng.next());
    if (a.size() == 1 && a[0] == 0) continue;
    if (!check(a)) return false;
  }
  for (long n = 1; n <= 8; ++n) {
    if (!check(interval(n))) return false;
    if (!check(geometric(n, Rat(2)))) return false;
  }
  return true;
}

// 5. Exact lower bounds for T and E.
bool lower_bounds() {
  SplitMix64 rng(505);
  for (int trial = 0; trial < 120; ++trial) {
    auto a = random_set(1 + rng.below(8), -12, 12, rng.next());
    Rat t = commute_count_set(a, Algo::zero_pattern).total;
    Int n(a.size());
    if (t < Rat(n * n * n * n)) return false;
    bool zero_in = std::find(a.begin(), a.end(), Rat(0)) != a.end();
    if (zero_in && t < Rat(n * n * n * n * n)) return false;
    if (!zero_in && t < moment(quotient_profile(a), 4)) return false;
    Profile s = sum_profile(a);
    if (Rat(energy_additive_set(a)) * Int(s.buckets.size()) <
        Rat(n * n * n * n))
      return false;
  }
  // product measures: T(mu_nu) >= ||nu||_2^4 * E_nu(supp nu)
  for (int trial = 0; trial < 40; ++trial) {
    ScalarMeasure nu = random_measure(2 + rng.below(8), -10, 10, rng.next());
    Rat t = commute_count_product_measure(nu).total;
    Rat bound = rat_pow(nu.norm_pow(2), 2) * energy_additive(nu);
    if (t < bound) return false;
  }
  return true;
}

// 6. Weighted-energy inequalities on random partitions.
bool energy_inequalities() {
  SplitMix64 rng(606);
  int instances = 0;
  while (instances < 500) {
    ScalarMeasure nu = random_measure(3 + rng.below(8), -20, 20, rng.next());
    std::vector<std::vector<Rat>> parts(3);
    for (const Rat& x : nu.support()) parts[rng.below(3)].push_back(x);
    if (!union3_holds(nu, parts)) return false;
    std::vector<std::vector<Rat>> pick(4);
    for (auto& p : pick) p = parts[rng.below(3)];
    if (!fiun_holds(nu, pick[0], pick[1], pick[2], pick[3])) return false;
    instances += 2;
  }
  return true;
}

// 7. Closed-form energies on intervals and geometric sets.
bool closed_forms() {
  for (long n = 2; n <= 12; ++n) {
    Int expected = (2 * Int(n) * n * n + n) / 3;
    if (energy_additive_set(interval(n)) != expected) return false;
    if (energy_mult_set(geometric(n, Rat(2))) != expected) return false;
  }
  return true;
}

// 8. Normalized ratios stay within a factor 4 of their N=8 values.
bool growth_rates() {
  auto within4 = [](const Rat& x, const Rat& ref) {
    return 4 * x >= ref && x <= 4 * ref;
  };
  std::map<long, Rat> t_norm, cmeas_sq_i;
  for (long n = 4; n <= 24; ++n) {
    auto a = interval(n);
    Int card(a.size());
    Rat t = commute_count_set(a, Algo::zero_pattern).total;
    t_norm[n] = t / rat_pow(Rat(card), 5);
    Rat m(energy_mult_set(a));
    cmeas_sq_i[n] = t * t / (rat_pow(Rat(card), 8) * m);
  }
  for (const auto& [n, v] : t_norm)
    if (!within4(v, t_norm.at(8))) return false;
  // stability of the squared (nim) constant: factor 4 on squares would be
  // factor 2 on the constant; allow 16 on squares = factor 4 on C_meas
  auto within16 = [](const Rat& x, const Rat& ref) {
    return 16 * x >= ref && x <= 16 * ref;
  };
  for (const auto& [n, v] : cmeas_sq_i)
    if (!within16(v, cmeas_sq_i.at(8))) return false;
  std::map<long, Rat> e_norm, cmeas_sq_g;
  for (long n = 4; n <= 20; ++n) {
    auto a = geometric(n, Rat(2));
    Int card(a.size());
    e_norm[n] = Rat(energy_additive_set(a)) / Rat(card * card);
    Rat t = commute_count_set(a, Algo::zero_pattern).total;
    Rat m(energy_mult_set(a));
    cmeas_sq_g[n] = t * t / (rat_pow(Rat(card), 8) * m);
  }
  for (const auto& [n, v] : e_norm)
    if (!within4(v, e_norm.at(8))) return false;
  for (const auto& [n, v] : cmeas_sq_g)
    if (!within16(v, cmeas_sq_g.at(8))) return false;
  return true;
}

// 9. Byte-identical reports for thread counts 1 and 4.
bool determinism() {
  auto snapshot = [] {
    json j;
    SplitMix64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_set(3 + rng.below(5), -15, 15, rng.next());
      j.push_back(to_json(commute_count_set(a, Algo::zero_pattern)));
      j.push_back(to_json(commute_count_set(a, Algo::commutant)));
      j.push_back(format_rat(Rat(affine_energy(a))));
      j.push_back(profile_csv(quotient_profile(a)));
      ScalarMeasure nu = random_measure(6, -10, 10, rng.next());
      j.push_back(to_json(commute_count_product_measure(nu)));
      j.push_back(format_rat(energy_additive(nu)));
    }
    j.push_back(to_json(delta_with_witness(sharp_example(4)).mass));
    return j.dump();
  };
  thread_count() = 1;
  std::string base = snapshot();
  thread_count() = 4;
  std::string parallel = snapshot();
  thread_count() = 1;
  return base == parallel;
}

}  // namespace

int main() {
  // criterion 3 needs the subset oracle on 64 atoms; the env var still
  // wins if the caller set it
  setenv("COMMUTE_LAB_CAPS", "delta_support=64", /*overwrite=*/0);

  run(1, "three algorithms match brute-force counts", oracle_equivalence);
  run(2, "T(mu) <= 8 delta(mu) on 1000+ measures", theorem_bound);
  run(3, "sharp family closed form, ratio limit, delta bound", sharp_family);
  run(4, "off-diagonal count equals affine energy", affine_bijection);
  run(5, "exact lower bounds for T and E", lower_bounds);
  run(6, "weighted energy inequalities (500 instances)", energy_inequalities);
  run(7, "closed-form energies, N in 2..12", closed_forms);
  run(8, "normalized growth ratios within factor 4", growth_rates);
  run(9, "identical results for 1 and 4 threads", determinism);

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
