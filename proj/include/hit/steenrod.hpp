#pragma once

#include "hit/monomial.hpp"

#include <cstdint>
#include <functional>

namespace hit {

/// Calls emit(term) for every monomial of Sq^i(x) with odd coefficient.
/// Terms are distinct, so the result is the mod-2 sum of the emitted monomials.
void for_each_square_term(std::uint64_t i, const Monomial& x, const std::function<void(const Monomial&)>& emit);

/// Sq^i(x) for a monomial x, via the Cartan formula and Lucas' rule.
Polynomial sq(std::uint64_t i, const Monomial& x);

/// Sq^i(f). Throws std::invalid_argument if f is not homogeneous.
Polynomial sq(std::uint64_t i, const Polynomial& f);

/// A hit generator Sq^{2^u}(m) together with its source.
struct HitGenerator {
    int u = 0;
    Monomial source;
    Polynomial image;
};

/// Streams Sq^{2^u}(m) for every 2^u <= n and every monomial m of degree n - 2^u,
/// skipping zero images. Sources follow enumerate_monomials order within each u.
void hit_generators(int k, Degree n, const std::function<void(const HitGenerator&)>& emit);

}  // namespace hit
