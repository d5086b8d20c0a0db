#pragma once

#include "hit/monomial.hpp"

#include <cstdint>
#include <vector>

namespace hit {

/// Every exponent is of the form 2^d - 1.
bool is_spike(const Monomial& x);

/// All spikes of degree n in k variables, descending in cmp_monomial order.
std::vector<Monomial> spikes(int k, Degree n);
std::uint64_t spike_count(int k, Degree n);

/// The spike with exponents 2^{d_1}-1, ..., 2^{d_r}-1, 1, ..., where
/// d_1 > ... > d_{r-1} >= d_r > 0 and the remaining exponents vanish.
/// Found by scanning all spikes of degree n; throws std::domain_error when
/// alpha(n + k) > k and std::logic_error if the pattern is not unique.
Monomial minimal_spike(int k, Degree n);

/// Sufficient hit test: weight(x) < weight(minimal_spike(k, n)).
/// Throws std::invalid_argument if deg x != n, std::domain_error if alpha(n + k) > k.
bool singer_is_hit(const Monomial& x, int k, Degree n);

/// Spike z in k variables with weight(z) = omega: variable j gets 2^{m_j} - 1 where
/// m_j = #{ i : omega_i >= j }. Needs omega weakly decreasing and omega_1 <= k.
Monomial spike_from_weight(const WeightVector& omega, int k);

}  // namespace hit
