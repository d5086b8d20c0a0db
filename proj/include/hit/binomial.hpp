#pragma once

#include <cstdint>

namespace hit {

/// C(n, r) mod 2 by Lucas: odd iff r is a binary submask of n.
constexpr bool binomial_odd(std::uint64_t n, std::uint64_t r) noexcept { return (r & ~n) == 0; }

/// Exact C(n, r); throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Number of monomials of degree n in k variables, C(n + k - 1, k - 1).
std::uint64_t monomial_count(int k, std::uint64_t n);

}  // namespace hit
