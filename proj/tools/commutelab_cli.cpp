// commutelab: exact commuting-pair statistics and additive energies.
//
// Subcommands:
//   compute  one-off statistics for a set or measure, JSON report
//   verify   randomized / family verification suites, JSON verdict
//   sweep    family parameter sweeps, CSV
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 size cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
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

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<long, long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    long v = std::stol(text);
    return {v, v};
  }
  long lo = std::stol(text.substr(0, dots));
  long hi = std::stol(text.substr(dots + 2));
  if (lo > hi) throw UsageError("empty range: " + text);
  return {lo, hi};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

/// Input resolved to exactly one of the three shapes.
struct Input {
  std::optional<std::vector<Rat>> set;
  std::optional<ScalarMeasure> scalar;
  std::optional<MatrixMeasure> matrix;
  std::string description;
};

Input from_generator(const std::string& spec) {
  Input in;
  in.description = spec;
  std::vector<std::string> p = split(spec, ':');
  if (p.empty()) throw UsageError("empty generator spec");
  const std::string& family = p[0];
  auto need = [&](std::size_t n) {
    if (p.size() != n + 1)
      throw UsageError("generator " + family + ": expected " +
                       std::to_string(n) + " parameters");
  };
  try {
    if (family == "interval") {
      need(1);
      in.set = interval(std::stol(p[1]));
    } else if (family == "geometric") {
      need(2);
      in.set = geometric(std::stol(p[1]), parse_rat(p[2]));
    } else if (family == "gap") {
      need(3);  // gap:base:step1,step2:len1,len2
      GapSpec g;
      g.base = parse_rat(p[1]);
      for (const std::string& s : split(p[2], ',')) g.steps.push_back(parse_rat(s));
      for (const std::string& s : split(p[3], ',')) g.lengths.push_back(std::stol(s));
      in.set = gap(g).elements;
    } else if (family == "sharp") {
      need(1);
      in.matrix = sharp_example(std::stol(p[1]));
    } else if (family == "plane") {
      need(1);
      in.matrix = commuting_plane_example(
          std::stol(p[1]), identity2(), Mat2{Rat(1), Rat(1), Rat(0), Rat(1)});
    } else if (family == "random-set") {
      need(4);
      in.set = random_set(std::stoul(p[1]), std::stol(p[2]), std::stol(p[3]),
                          std::stoull(p[4]));
    } else if (family == "random-measure") {
      need(4);
      in.scalar = random_measure(std::stoul(p[1]), std::stol(p[2]),
                                 std::stol(p[3]), std::stoull(p[4]));
    } else if (family == "random-matrix") {
      need(4);
      in.matrix = random_matrix_measure(std::stoul(p[1]), std::stol(p[2]),
                                        std::stol(p[3]), std::stoull(p[4]));
    } else {
      throw UsageError("unknown generator family: " + family);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError("generator " + spec + ": " + e.what());
  }
  return in;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << text;
}

Algo parse_algo(const std::string& name) {
  if (name == "pairwise") return Algo::pairwise;
  if (name == "zero_pattern") return Algo::zero_pattern;
  if (name == "commutant") return Algo::commutant;
  throw UsageError("unknown algorithm: " + name);
}

json profile_json(const Profile& p) {
  json buckets = json::array();
  for (const auto& [z, m] : p.buckets)
    buckets.push_back({{"key", format_rat(z)}, {"mass", format_rat(m)}});
  return {{"kind", to_string(p.kind)}, {"buckets", buckets}};
}

// ---------------------------------------------------------------- compute

int run_compute(const Input& in, const std::vector<std::string>& quantities,
                Algo algo, bool with_oracle, const std::string& out_path) {
  json report;
  report["schema"] = "commutelab-report/1";
  report["input"] = in.description;
  report["algorithm"] = to_string(algo);
  bool agreement = true;

  auto set_profiles = [&](const Profile& q, const Profile& s, const Profile& d) {
    report["profiles"] = json::array(
        {profile_json(q), profile_json(s), profile_json(d)});
  };

  for (const std::string& q : quantities) {
    if (q == "T") {
      CommuteReport r;
      if (in.set)
        r = commute_count_set(*in.set, algo);
      else if (in.scalar)
        r = commute_count_product_measure(*in.scalar);
      else
        r = CommuteReport{commute_count_measure(*in.matrix), Rat(0), Rat(0),
                          Algo::pairwise};
      json jr = to_json(r);
      if (in.matrix) jr = json{{"total", format_rat(r.total)},
                               {"algorithm", "pairwise"}};
      if (with_oracle) {
        Rat expect = in.set ? Rat(oracle::brute_T_set(*in.set))
                     : in.scalar
                         ? oracle::brute_T_measure(product_measure(
                               *in.scalar, oracle::caps().product_support))
                         : oracle::brute_T_measure(*in.matrix);
        jr["oracle"] = format_rat(expect);
        if (expect != r.total) agreement = false;
      }
      report["T"] = jr;
    } else if (q == "E") {
      Rat e = in.set ? Rat(energy_additive_set(*in.set))
                     : energy_additive(in.scalar ? *in.scalar
                                                 : throw UsageError(
                                                       "E needs a scalar input"));
      report["E"] = format_rat(e);
      if (with_oracle) {
        Rat expect = in.set ? Rat(oracle::brute_E_set(*in.set))
                            : oracle::brute_E(*in.scalar);
        report["E_oracle"] = format_rat(expect);
        if (expect != e) agreement = false;
      }
    } else if (q == "M") {
      if (!in.set && !in.scalar) throw UsageError("M needs a scalar input");
      Rat m = in.set ? Rat(energy_mult_set(*in.set)) : energy_mult(*in.scalar);
      report["M"] = format_rat(m);
      if (with_oracle) {
        Rat expect = in.set ? Rat(oracle::brute_M_set(*in.set))
                            : oracle::brute_M(*in.scalar);
        report["M_oracle"] = format_rat(expect);
        if (expect != m) agreement = false;
      }
    } else if (q == "delta") {
      if (!in.matrix) throw UsageError("delta needs a matrix-measure input");
      DeltaResult d = delta_with_witness(*in.matrix);
      json witness = json::array();
      for (const Mat2& b : d.witness_basis) witness.push_back(to_json(b));
      report["delta"] = {{"mass", format_rat(d.mass)}, {"witness", witness}};
      if (with_oracle) {
        Rat expect = oracle::brute_delta(*in.matrix);
        report["delta"]["oracle"] = format_rat(expect);
        if (expect != d.mass) agreement = false;
      }
    } else if (q == "affine_energy") {
      if (!in.set) throw UsageError("affine_energy needs a set input");
      Int e = affine_energy(*in.set);
      report["affine_energy"] = format_rat(Rat(e));
      if (with_oracle) {
        Int expect = oracle::brute_affine_energy(*in.set);
        report["affine_energy_oracle"] = format_rat(Rat(expect));
        if (expect != e) agreement = false;
      }
    } else if (q == "profiles") {
      if (in.set)
        set_profiles(quotient_profile(*in.set), sum_profile(*in.set),
                     difference_profile(*in.set));
      else if (in.scalar)
        set_profiles(quotient_profile(*in.scalar), sum_profile(*in.scalar),
                     difference_profile(*in.scalar));
      else
        throw UsageError("profiles need a scalar input");
    } else if (q == "dyadic") {
      if (!in.set) throw UsageError("dyadic needs a set input");
      json levels = json::array();
      for (const auto& [tau, count] : dyadic_levels(quotient_profile(*in.set)))
        levels.push_back({{"tau", tau.str()}, {"count", count}});
      report["dyadic"] = levels;
    } else {
      throw UsageError("unknown quantity: " + q);
    }
  }
  if (with_oracle) report["agreement"] = agreement;
  write_output(out_path, report.dump(2) + "\n");
  return (with_oracle && !agreement) ? kExitFail : kExitPass;
}

// ----------------------------------------------------------------- verify

struct SuiteResult {
  json report;
  bool pass = true;
  std::size_t instances = 0;
};

SuiteResult suite_theorem1(long trials, std::uint64_t seed) {
  SuiteResult out;
  SplitMix64 rng(seed);
  Rat max_ratio(0);
  json worst;
  auto check = [&](const MatrixMeasure& mu, const std::string& label) {
    Theorem1Result r = theorem1_check(mu);
    ++out.instances;
    if (!r.holds) out.pass = false;
    if (r.delta != 0 && r.t / r.delta > max_ratio) {
      max_ratio = r.t / r.delta;
      worst = {{"instance", label},
               {"T", format_rat(r.t)},
               {"delta", format_rat(r.delta)}};
    }
  };
  for (long i = 0; i < trials; ++i)
    check(random_matrix_measure(1 + rng.below(10), -5, 5, rng.next()),
          "random#" + std::to_string(i));
  for (long n = 2; n <= 6; ++n)
    check(sharp_example(n), "sharp:" + std::to_string(n));
  for (long n = 1; n <= 5; ++n)
    check(commuting_plane_example(n, identity2(),
                                  Mat2{Rat(1), Rat(1), Rat(0), Rat(1)}),
          "plane:" + std::to_string(n));
  out.report = {{"max_T_over_delta", format_rat(max_ratio)}, {"worst", worst}};
  return out;
}

SuiteResult suite_sharp_ratio(long lo, long hi) {
  SuiteResult out;
  json rows = json::array();
  Rat prev(0);
  bool first = true;
  for (long n = std::max(lo, 2L); n <= hi; ++n) {
    Rat t = commute_count_measure(sharp_example(n));
    Rat expected = make_rat(2 * Int(n) * n * n + n, 3 * Int(n) * n * n * n);
    Rat scaled = Rat(n) * t;
    ++out.instances;
    if (t != expected || scaled <= make_rat(2, 3)) out.pass = false;
    if (!first && scaled >= prev) out.pass = false;
    rows.push_back({{"N", n},
                    {"T", format_rat(t)},
                    {"N_times_T", format_rat(scaled)}});
    prev = scaled;
    first = false;
  }
  out.report = {{"rows", rows}, {"limit", "2/3"}};
  return out;
}

SuiteResult suite_affine_bijection(long size_lo, long size_hi, long trials,
                                   std::uint64_t seed) {
  SuiteResult out;
  SplitMix64 rng(seed);
  for (long t = 0; t < trials; ++t) {
    long n = size_lo + static_cast<long>(rng.below(size_hi - size_lo + 1));
    std::vector<Rat> a = random_set(n, -9, 9, rng.next());
    bool trivial = a.size() == 1 && a[0] == 0;
    if (trivial) continue;
    ++out.instances;
    Int affine = affine_energy(a);
    if (commute_offdiag_nonzero_count(a) != affine) out.pass = false;
    Rat total = commute_count_set(a, Algo::zero_pattern).total;
    Rat rest = total - Rat(affine);
    if (rest < 0 || rest != Rat(commute_some_offdiag_zero_count(a)))
      out.pass = false;
  }
  out.report = {{"identity", "commute_offdiag_nonzero_count == affine_energy"}};
  return out;
}

SuiteResult suite_lower_bounds(long trials, std::uint64_t seed) {
  SuiteResult out;
  SplitMix64 rng(seed);
  for (long t = 0; t < trials; ++t) {
    std::vector<Rat> a = random_set(2 + rng.below(7), -12, 12, rng.next());
    ++out.instances;
    Rat total = commute_count_set(a, Algo::zero_pattern).total;
    Int n(a.size());
    if (total < Rat(n * n * n * n)) out.pass = false;
    bool zero_in = std::find(a.begin(), a.end(), Rat(0)) != a.end();
    if (zero_in) {
      if (total < Rat(n * n * n * n * n)) out.pass = false;
    } else {
      if (total < moment(quotient_profile(a), 4)) out.pass = false;
    }
    // E(A) * |A+A| >= |A|^4
    Profile s = sum_profile(a);
    if (Rat(energy_additive_set(a)) * Int(s.buckets.size()) <
        Rat(n * n * n * n))
      out.pass = false;
  }
  out.report = {{"bounds", json::array({"T >= |A|^4", "T >= |A|^5 when 0 in A",
                                        "T >= sum q^4 when 0 not in A",
                                        "E * |A+A| >= |A|^4"})}};
  return out;
}

SuiteResult suite_wtun(long trials, std::uint64_t seed) {
  SuiteResult out;
  SplitMix64 rng(seed);
  for (long t = 0; t < trials; ++t) {
    ScalarMeasure nu = random_measure(3 + rng.below(7), -15, 15, rng.next());
    std::vector<std::vector<Rat>> parts(3);
    for (const Rat& x : nu.support()) parts[rng.below(3)].push_back(x);
    ++out.instances;
    if (!union3_holds(nu, parts)) out.pass = false;
    std::vector<std::vector<Rat>> pick(4);
    for (auto& p : pick) p = parts[rng.below(3)];
    if (!fiun_holds(nu, pick[0], pick[1], pick[2], pick[3])) out.pass = false;
  }
  out.report = {
      {"inequalities",
       json::array({"mixed energy <= product of energies (4th powers)",
                    "union fourth-root subadditivity"})}};
  return out;
}

int run_verify(const std::string& suite, long trials, std::uint64_t seed,
               const std::string& n_range, const std::string& sizes,
               const std::string& out_path) {
  SuiteResult r;
  if (suite == "theorem1") {
    r = suite_theorem1(trials, seed);
  } else if (suite == "sharp-ratio") {
    auto [lo, hi] = parse_range(n_range.empty() ? "2..12" : n_range);
    r = suite_sharp_ratio(lo, hi);
  } else if (suite == "affine-bijection") {
    auto [lo, hi] = parse_range(sizes.empty() ? "2..8" : sizes);
    r = suite_affine_bijection(lo, hi, trials, seed);
  } else if (suite == "lower-bounds") {
    r = suite_lower_bounds(trials, seed);
  } else if (suite == "wtun") {
    r = suite_wtun(trials, seed);
  } else {
    throw UsageError("unknown suite: " + suite);
  }
  json report = {{"schema", "commutelab-report/1"},
                 {"suite", suite},
                 {"instances", r.instances},
                 {"pass", r.pass}};
  report.update(r.report);
  write_output(out_path, report.dump(2) + "\n");
  return r.pass ? kExitPass : kExitFail;
}

// ------------------------------------------------------------------ sweep

std::size_t pair_set_size(const std::vector<Rat>& a, bool product) {
  std::set<Rat> values;
  for (const Rat& x : a)
    for (const Rat& y : a) values.insert(product ? Rat(x * y) : Rat(x + y));
  return values.size();
}

double to_double(const Rat& r) {
  return numerator(r).convert_to<double>() /
         denominator(r).convert_to<double>();
}

int run_sweep(const std::string& family, const std::string& n_range,
              const std::string& ratio, const std::string& out_path) {
  auto [lo, hi] = parse_range(n_range.empty() ? "4..12" : n_range);
  std::ostringstream csv;
  csv << "family,param,algorithm,card,sumset_card,prodset_card,E,M_energy,"
         "T,affine_E,T_over_card5,E_over_card2,Cmeas_sq,approx_T_over_card5\n";
  for (long n = lo; n <= hi; ++n) {
    std::vector<Rat> a;
    if (family == "interval") {
      a = interval(n);
    } else if (family == "geometric") {
      a = geometric(n, parse_rat(ratio.empty() ? "2" : ratio));
    } else if (family == "gap") {
      // L x L grid {l1 + l2*(2L+1)}: a proper 2-dimensional progression
      GapSpec g{Rat(0), {Rat(1), Rat(2 * n + 1)}, {n, n}};
      a = gap(g).elements;
    } else {
      throw UsageError("unknown family: " + family);
    }
    Int card(a.size());
    Rat e(energy_additive_set(a));
    Rat m(energy_mult_set(a));
    Rat t = commute_count_set(a, Algo::zero_pattern).total;
    Rat affine(affine_energy(a));
    Rat card5 = rat_pow(Rat(card), 5);
    Rat t_norm = t / card5;
    Rat e_norm = e / Rat(card * card);
    // squared form of T / (|A|^4 sqrt(M)): exact, no irrational sqrt
    Rat cmeas_sq = (t * t) / (rat_pow(Rat(card), 8) * m);
    csv << family << ',' << n << ',' << "zero_pattern" << ',' << card << ','
        << pair_set_size(a, false) << ',' << pair_set_size(a, true) << ','
        << format_rat(e) << ',' << format_rat(m) << ',' << format_rat(t) << ','
        << format_rat(affine) << ',' << format_rat(t_norm) << ','
        << format_rat(e_norm) << ',' << format_rat(cmeas_sq) << ','
        << to_double(t_norm) << '\n';
  }
  write_output(out_path, csv.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact commuting-pair statistics for 2x2 rational matrices"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker count (output identical for all values)");

  auto* compute = app.add_subcommand("compute", "compute statistics for one input");
  compute->fallthrough();
  std::string set_file, measure_file, matrix_file, gen_spec, quantities = "T";
  std::string algo_name = "zero_pattern", out_path;
  bool with_oracle = false;
  compute->add_option("--set", set_file, "newline-delimited scalar set file");
  compute->add_option("--measure", measure_file, "scalar measure JSON file");
  compute->add_option("--matrix-measure", matrix_file, "matrix measure JSON file");
  compute->add_option("--gen", gen_spec,
                      "generator spec, e.g. interval:4, geometric:6:2, "
                      "gap:0:1,10:3,3, sharp:2, plane:3, random-set:5:-9:9:1");
  compute->add_option("--q", quantities,
                      "comma list of T,E,M,delta,affine_energy,profiles,dyadic");
  compute->add_option("--algorithm", algo_name, "pairwise|zero_pattern|commutant");
  compute->add_flag("--oracle", with_oracle, "add brute-force columns and verdict");
  compute->add_option("--out", out_path, "write report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  std::string suite, n_range, sizes;
  long trials = 200;
  std::uint64_t seed = 7;
  std::string verify_out;
  verify->add_option("suite", suite,
                     "theorem1|sharp-ratio|affine-bijection|lower-bounds|wtun")
      ->required();
  verify->add_option("--trials", trials, "randomized instance count");
  verify->add_option("--seed", seed, "generator seed");
  verify->add_option("--N", n_range, "parameter range a..b");
  verify->add_option("--sizes", sizes, "set size range a..b");
  verify->add_option("--out", verify_out, "write report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "CSV sweep over a family");
  sweep->fallthrough();
  std::string family, sweep_range, sweep_ratio, sweep_out;
  sweep->add_option("--family", family, "interval|geometric|gap")->required();
  sweep->add_option("--N", sweep_range, "parameter range a..b");
  sweep->add_option("--ratio", sweep_ratio, "geometric ratio (default 2)");
  sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    thread_count() = threads == 0 ? 1 : threads;
    if (*compute) {
      int sources = !set_file.empty() + !measure_file.empty() +
                    !matrix_file.empty() + !gen_spec.empty();
      if (sources != 1)
        throw UsageError("give exactly one of --set/--measure/--matrix-measure/--gen");
      Input in;
      if (!gen_spec.empty()) {
        in = from_generator(gen_spec);
      } else if (!set_file.empty()) {
        std::ifstream f(set_file);
        if (!f) throw UsageError("cannot open " + set_file);
        in.set = read_scalar_set(f);
        in.description = set_file;
      } else {
        const std::string& path = measure_file.empty() ? matrix_file : measure_file;
        std::ifstream f(path);
        if (!f) throw UsageError("cannot open " + path);
        json j = json::parse(f);
        if (measure_file.empty())
          in.matrix = matrix_measure_from_json(j);
        else
          in.scalar = scalar_measure_from_json(j);
        in.description = path;
      }
      return run_compute(in, split(quantities, ','), parse_algo(algo_name),
                         with_oracle, out_path);
    }
    if (*verify)
      return run_verify(suite, trials, seed, n_range, sizes, verify_out);
    if (*sweep) return run_sweep(family, sweep_range, sweep_ratio, sweep_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
