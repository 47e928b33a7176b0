#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace commutelab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact rational with reduced numerator and positive denominator.
/// Construction goes through division so the canonical-form invariant
/// (gcd(|num|, den) = 1, den >= 1) holds for every value in the library.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num) / Rat(den);
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Rat rat_pow(const Rat& base, unsigned exp) {
  Rat acc(1);
  Rat b = base;
  for (unsigned e = exp; e != 0; e >>= 1) {
    if (e & 1u) acc *= b;
    b *= b;
  }
  return acc;
}

/// Serialized form is "num/den", with "/den" omitted for integers.
inline std::string format_rat(const Rat& r) {
  std::string s = numerator(r).str();
  if (!is_integer(r)) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

inline Rat parse_rat(std::string_view text) {
  auto bad = [&] {
    return std::invalid_argument("bad rational: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(text)));
    Int num(std::string(text.substr(0, slash)));
    Int den(std::string(text.substr(slash + 1)));
    if (den == 0) throw bad();
    return make_rat(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

inline Int floor_sqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("floor_sqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

/// Encloses r^(1/4) for r >= 0 in a rational interval of width 2^-bits.
inline std::pair<Rat, Rat> fourth_root_bounds(const Rat& r, unsigned bits) {
  if (r < 0) throw std::invalid_argument("fourth root of negative value");
  if (r == 0) return {Rat(0), Rat(0)};
  // r^(1/4) = (num * den^3)^(1/4) / den; scale by 2^(4*bits) so the
  // integer fourth root carries `bits` fractional bits.
  Int m = numerator(r) * denominator(r) * denominator(r) * denominator(r);
  Int scaled = m << (8 * bits);
  Int root = floor_sqrt(floor_sqrt(scaled));  // floor of scaled^(1/4)
  Int scale = Int(1) << (2 * bits);
  Rat lo = make_rat(root, denominator(r) * scale);
  if (rat_pow(lo, 4) == r) return {lo, lo};  // exact fourth power
  Rat hi = make_rat(root + 1, denominator(r) * scale);
  return {lo, hi};
}

}  // namespace commutelab
