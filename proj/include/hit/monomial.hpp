#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hit {

using Exponent = std::uint32_t;
using Degree = std::uint64_t;

/// Number of 1-bits in the dyadic expansion of a.
constexpr int alpha(std::uint64_t a) noexcept { return __builtin_popcountll(a); }

/// i-th binary digit of a.
constexpr int alpha_bit(int i, std::uint64_t a) noexcept
{
    return i < 64 ? static_cast<int>((a >> i) & 1U) : 0;
}

/// Subset J of {1, ..., k}, 1-based.
struct IndexSet {
    std::vector<int> members;  // strictly increasing

    bool contains(int j) const noexcept;
};

/// x_1^{a_1} ... x_k^{a_k}. Variables are 1-based in all public functions.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {}
    static Monomial one(int k) { return Monomial(std::vector<Exponent>(static_cast<std::size_t>(k), 0)); }

    int arity() const noexcept { return static_cast<int>(exps_.size()); }
    Degree degree() const noexcept;

    /// nu_j(x), j in [1, k].
    Exponent nu(int j) const { return exps_.at(static_cast<std::size_t>(j - 1)); }
    void set_nu(int j, Exponent a) { exps_.at(static_cast<std::size_t>(j - 1)) = a; }

    std::span<const Exponent> exponents() const noexcept { return exps_; }
    std::vector<Exponent>& mutable_exponents() noexcept { return exps_; }

    /// J_t(x) = { j : alpha_t(nu_j(x)) = 0 }.
    IndexSet zero_bit_set(int t) const;

    /// Throws std::overflow_error when an exponent leaves the 32-bit range.
    Monomial operator*(const Monomial& other) const;
    Monomial pow(std::uint64_t e) const;

    /// True when *this divides other.
    bool divides(const Monomial& other) const noexcept;
    /// Throws std::domain_error when the division is not exact.
    Monomial operator/(const Monomial& divisor) const;

    std::string to_string() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<Exponent> exps_;
};

/// X_J = product of x_j over j not in J, in k variables.
Monomial complement_product(int k, const IndexSet& J);

/// Parse "x1^3 x2 x3^2" (or "1") into a monomial in k variables.
Monomial parse_monomial(std::string_view text, int k);

/// Weight vector with trailing zeros trimmed; compared left-lexicographically.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<std::uint32_t> entries);

    std::span<const std::uint32_t> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    /// omega_i, 1-based; zero past the end.
    std::uint32_t operator[](std::size_t i) const noexcept
    {
        return i >= 1 && i <= entries_.size() ? entries_[i - 1] : 0;
    }

    Degree degree() const noexcept;
    bool weakly_decreasing() const noexcept;
    std::string to_string() const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend std::strong_ordering operator<=>(const WeightVector& a, const WeightVector& b) noexcept;

private:
    std::vector<std::uint32_t> entries_;
};

WeightVector parse_weight(std::string_view text);

WeightVector weight(const Monomial& x);
std::vector<Exponent> sigma(const Monomial& x);

/// Admissibility order: weight first, then exponent tuple, both left-lex.
/// Throws std::invalid_argument on arity or degree mismatch.
std::strong_ordering cmp_monomial(const Monomial& x, const Monomial& y);

enum class OmegaKind { plain, bar, tilde };

/// ((k-1)^(d)), ((k-1)^(d-1), k-3, 1) or ((k-1)^(d-2), k-3, k-4, 2).
WeightVector omega_family(OmegaKind kind, int k, int d);

/// All monomials of degree n, descending in cmp_monomial order.
std::vector<Monomial> enumerate_monomials(int k, Degree n);

/// Monomials of degree deg(omega) with weight <= omega (strict: < omega), descending.
std::vector<Monomial> enumerate_P_omega(int k, const WeightVector& omega, bool strict);

/// n = s(2^d - 1) + 2^d m, with 1 <= s.
Degree degree_form(int s, int d, Degree m);
/// (k-1)(2^d - 1).
Degree n_of(int k, int d);

/// Homogeneous polynomial over GF(2): a sorted set of monomials of one degree and arity.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int k) : k_(k) {}
    Polynomial(const Monomial& m);  // NOLINT: a monomial is a polynomial
    /// Duplicate terms cancel in pairs. Throws std::invalid_argument if not homogeneous.
    static Polynomial from_terms(int k, std::vector<Monomial> terms);

    int arity() const noexcept { return k_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    /// Degree of the terms; 0 for the zero polynomial.
    Degree degree() const noexcept { return terms_.empty() ? 0 : terms_.front().degree(); }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool contains(const Monomial& m) const;

    Polynomial& operator+=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept
    {
        return a.terms_ == b.terms_ && (a.k_ == b.k_ || a.terms_.empty());
    }

private:
    int k_ = 0;
    std::vector<Monomial> terms_;
};

}  // namespace hit
