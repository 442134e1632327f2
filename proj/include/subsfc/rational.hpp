#pragma once

// Exact rationals for Cantor interval endpoints.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "subsfc/error.hpp"

namespace subsfc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "num/den" in lowest terms; integers are written "n/1".
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Accepts "num/den" or a plain integer, optional leading sign.
inline Rational parse_rational(std::string_view s) {
  const auto valid_int = [](std::string_view d, bool allow_sign) {
    if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+')) d.remove_prefix(1);
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw OutOfRange("not a rational: '" + std::string(s) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  const BigInt d{std::string(den)};
  if (d == 0) throw OutOfRange("zero denominator in '" + std::string(s) + "'");
  return Rational(BigInt{n}, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace subsfc
