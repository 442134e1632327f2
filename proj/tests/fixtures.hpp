#pragma once

#include <cmath>
#include <numbers>

#include "subsfc/subsfc.hpp"

namespace fixtures {

using namespace subsfc;

inline constexpr double kPhi = std::numbers::phi;

inline const LoadedSubstitution& nu() {
  static const auto s = load_builtin("fib2d");
  return s;
}

inline const LoadedSubstitution& tm_lebesgue() {
  static const auto s = load_builtin("thue_morse_2d#lebesgue");
  return s;
}

inline const LoadedSubstitution& tm_variant() {
  static const auto s = load_builtin("thue_morse_2d#tm");
  return s;
}

inline const LoadedSubstitution& equithirds() {
  static const auto s = load_builtin("equithirds_variant");
  return s;
}

inline std::vector<const LoadedSubstitution*> all_builtins() { return {&nu(), &tm_lebesgue(), &tm_variant(), &equithirds()}; }

/// Prototiles reachable from the ones a builtin is normally used with.
inline std::vector<ProtoIndex> main_prototiles(const LoadedSubstitution& s) {
  if (s.name == "fib2d") return {s.rule.index_of("a"), s.rule.index_of("d")};
  if (s.name == "thue_morse_2d") return {s.rule.index_of("A"), s.rule.index_of("B")};
  return {s.rule.index_of("A+"), s.rule.index_of("B+"), s.rule.index_of("B-")};
}

inline std::uint64_t fibonacci(std::size_t k) {  // F_1 = F_2 = 1
  std::uint64_t a = 0, b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline Polygon unit_square(double s = 1) { return make_polygon({{0, 0}, {s, 0}, {s, s}, {0, s}}); }

}  // namespace fixtures
