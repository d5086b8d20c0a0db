#pragma once

#include "hit/gf2.hpp"
#include "hit/monomial.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hit {

/// Bump when the column order or the snapshot layout changes.
inline constexpr std::uint32_t snapshot_format_version = 1;
inline constexpr std::uint32_t column_order_version = 1;

/// Monomials of degree n in k variables, column 0 being the largest in cmp_monomial order.
class ColumnMap {
public:
    ColumnMap(int k, Degree n);

    int k() const noexcept { return k_; }
    Degree n() const noexcept { return n_; }
    std::size_t size() const noexcept { return monomials_.size(); }

    const Monomial& monomial(std::size_t c) const { return monomials_.at(c); }
    const WeightVector& weight_of(std::size_t c) const { return weights_.at(c); }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

    /// Throws std::invalid_argument for a monomial of the wrong arity or degree.
    std::uint32_t column_of(const Monomial& x) const;
    std::uint32_t column_of(std::span<const Exponent> exponents) const;
    /// Columns of the terms of f (f must have degree n or be zero).
    std::vector<std::uint32_t> columns_of(const Polynomial& f) const;
    gf2::BitVector vector_of(const Polynomial& f) const;
    Polynomial polynomial_of(const gf2::BitVector& v) const;

    /// First column whose weight is <= omega (strict: < omega); size() if none.
    std::size_t first_column_at_or_below(const WeightVector& omega) const;
    std::size_t first_column_below(const WeightVector& omega) const;

    /// Distinct weights of degree-n monomials, descending.
    std::vector<WeightVector> weights_present() const;

private:
    std::uint64_t lex_rank(std::span<const Exponent> exponents) const;

    int k_;
    Degree n_;
    std::vector<Monomial> monomials_;
    std::vector<WeightVector> weights_;
    std::vector<std::uint32_t> column_of_rank_;
    std::vector<std::vector<std::uint64_t>> binom_;  // binom_[p][j] = C(p, j), j < k
};

struct EngineConfig {
    std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;
    std::optional<std::filesystem::path> cache_dir;
    unsigned threads = 1;
};

/// Thrown when a computation would need more memory than the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget, const std::string& what);
    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// Worst-case bytes for the hit space of degree n in k variables.
std::uint64_t estimate_hit_space_bytes(int k, Degree n);

/// (A+ P_k)_n as an echelon basis under the admissibility column order.
struct HitSpace {
    std::shared_ptr<const ColumnMap> columns;
    gf2::RowSpace space;
    std::size_t generators_seen = 0;
    bool from_cache = false;

    int k() const noexcept { return columns->k(); }
    Degree n() const noexcept { return columns->n(); }
};

/// Builds (or loads from config.cache_dir) the hit space. Throws BudgetExceeded.
std::shared_ptr<const HitSpace> hit_space(int k, Degree n, const EngineConfig& config = {});

std::filesystem::path cache_path(const std::filesystem::path& dir, int k, Degree n);

struct AdmissibleBasis {
    int k = 0;
    Degree n = 0;
    std::vector<Monomial> monomials;  // descending
};

std::size_t qp_dim(const HitSpace& hs);
AdmissibleBasis admissible_basis(const HitSpace& hs);

/// Throws std::invalid_argument when a polynomial does not live in degree hs.n().
bool is_hit(const HitSpace& hs, const Polynomial& f);
bool equiv(const HitSpace& hs, const Polynomial& f, const Polynomial& g);
/// f - g in A+P_k + P_k^-(omega); requires deg omega = hs.n().
bool equiv_omega(const HitSpace& hs, const Polynomial& f, const Polynomial& g, const WeightVector& omega);
/// Normal form: the unique polynomial on admissible monomials equivalent to f.
Polynomial reduce(const HitSpace& hs, const Polynomial& f);

/// Class of f in QP_k(omega), as a vector over the columns of weight exactly omega.
/// Throws std::invalid_argument if f has a term of weight > omega.
gf2::BitVector omega_class(const HitSpace& hs, const Polynomial& f, const WeightVector& omega);
/// Rank of the classes of fs in QP_k(omega).
std::size_t omega_class_rank(const HitSpace& hs, const std::vector<Polynomial>& fs, const WeightVector& omega);

std::size_t qp_omega_dim(const HitSpace& hs, const WeightVector& omega);

struct OmegaDim {
    WeightVector omega;
    std::size_t dim = 0;
};
std::vector<OmegaDim> omega_decomposition(const HitSpace& hs);

/// Certificate f = sum_u Sq^{2^u}(g_u) for a hit polynomial, found by elimination with
/// generator provenance. Empty when f is not hit. Doubles the memory of a plain build,
/// so it has its own budget check.
struct HitWitness {
    std::vector<std::pair<int, Polynomial>> terms;  // (u, g_u)
};
std::optional<HitWitness> hit_witness(int k, const Polynomial& f, const EngineConfig& config = {});

}  // namespace hit
