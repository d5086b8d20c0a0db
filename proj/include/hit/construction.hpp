#pragma once

#include "hit/monomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hit {

/// (i; I) with 1 <= i < i_1 < ... < i_r <= k and 0 <= r < k.
struct IndexPair {
    int i = 1;
    std::vector<int> I;

    int length() const noexcept { return static_cast<int>(I.size()); }
    std::string to_string() const;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Throws std::invalid_argument unless pair is a valid element of the k-variable index set.
void validate_pair(const IndexPair& pair, int k);

/// Pairs with length(I) < h, ordered by length then lexicographically.
/// There are C(k,1) + ... + C(k,h) of them. Needs 1 <= h <= k.
std::vector<IndexPair> enumerate_pairs(int k, int h);

/// {i} u I within {j} u J, and i >= j.
bool pair_contained(const IndexPair& inner, const IndexPair& outer);

/// Algebra map P_{k-1} -> P_k: x_j -> x_j for j < i, x_j -> x_{j+1} for j >= i.
Monomial f_embed(int i, const Monomial& y);
Polynomial f_embed(int i, const Polynomial& y);

/// The u in [1, r] for which x (in k-1 variables) is u-compatible with pair, if any.
/// Pairs with I empty are 1-compatible with everything.
std::optional<int> u_compatibility(const Monomial& x, const IndexPair& pair);

/// x_{(I,u)}: x_{i_u}^{2^{r-1} + ... + 2^{r-u}} * prod_{u < t <= r} x_{i_t}^{2^{r-t}}, in k variables.
Monomial x_I_u(const IndexPair& pair, int u, int k);

/// (x_i^{2^r - 1} f_i(x)) / x_{(I,u)} when x is u-compatible with pair, otherwise zero.
/// Throws std::logic_error if the division is not exact.
Polynomial phi(const IndexPair& pair, const Monomial& x);
Polynomial phi(const IndexPair& pair, const Polynomial& f);

/// Algebra map P_k -> P_{k-1}: x_j -> x_j (j < i), x_i -> sum_{s in I} x_{s-1}, x_j -> x_{j-1} (j > i).
Polynomial p_project(const IndexPair& pair, const Monomial& x);
Polynomial p_project(const IndexPair& pair, const Polynomial& f);

/// C_k in P_{k-1}: x_{j_1} ... x_{j_{k-3}} x_j^2 with j_1 < ... < j_{k-3} < k and j_1 <= j < k.
/// Empty for k = 3.
std::vector<Monomial> c_family(int k);

/// X = x_1 ... x_{k-1} in P_{k-1}.
Monomial x_bar(int k);

/// phi_{(i;I)}(X^{2^d - 1}) over pairs with length(I) < min(k, d).
std::vector<Polynomial> basis_B(int k, int d);

struct BbarElement {
    IndexPair pair;
    Monomial z;
    Polynomial value;
};
/// phi_{(i;I)}(X^{2^{d-1} - 1} z^{2^{d-1}}) over pairs with length(I) < min(k, d - 1) and z in C_k.
std::vector<BbarElement> basis_Bbar_elements(int k, int d);
std::vector<Polynomial> basis_Bbar(int k, int d);

/// sum_{t=1}^{p} C(k,t) + (k-3) C(k,2) sum_{u=1}^{q} C(k,u), p = min(k,d), q = min(k,d-1).
std::uint64_t c_formula(int k, int d);
/// N(k,n) + sum_{t=2}^{p} C(k,t) with n = (k-1)(2^d - 1).
std::uint64_t mothebe_bound(int k, int d);
/// N(k,n) + sum_{t=2}^{p} C(k,t) + (k-3) C(k,2) sum_{u=2}^{q} C(k,u).
std::uint64_t spike_refined_bound(int k, int d);

}  // namespace hit
