#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace spai {

/// Characteristic vector of a subset of a state space: bit i is state i.
using Mask = std::uint64_t;

/// Hard ceiling imposed by the 64-bit mask representation.
inline constexpr std::size_t kMaxRepresentableStates = 63;

namespace bits {

constexpr Mask full(std::size_t n) {
  return n == 0 ? Mask{0} : (~Mask{0} >> (64 - n));
}

constexpr Mask single(std::size_t i) { return Mask{1} << i; }

constexpr bool test(Mask m, std::size_t i) { return ((m >> i) & 1U) != 0; }

constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::size_t count(Mask m) {
  return static_cast<std::size_t>(std::popcount(m));
}

/// Lexicographic order on characteristic vectors read from state 0:
/// at the first differing state the vector holding 0 is smaller.
constexpr bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  const Mask lowest = diff & (~diff + 1);
  return (a & lowest) == 0;
}

struct LexLess {
  constexpr bool operator()(Mask a, Mask b) const { return lex_less(a, b); }
};

/// Calls f(i) for each set bit, lowest first.
template <typename F>
void for_each(Mask m, F&& f) {
  while (m != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    f(i);
    m &= m - 1;
  }
}

}  // namespace bits
}  // namespace spai
