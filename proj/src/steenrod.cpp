#include "hit/steenrod.hpp"
#include "hit/binomial.hpp"

#include <limits>
#include <stdexcept>

namespace hit {

namespace {

// Sub-masks of a (the i_j with C(a, i_j) odd), capped at `limit`.
std::vector<Exponent> odd_binomial_indices(Exponent a, std::uint64_t limit)
{
    std::vector<Exponent> out;
    for (Exponent s = a;; s = (s - 1) & a) {
        if (s <= limit)
            out.push_back(s);
        if (s == 0)
            break;
    }
    return out;
}

void expand(const std::vector<std::vector<Exponent>>& choices, std::span<const Exponent> base, std::size_t j,
            std::uint64_t remaining, std::vector<Exponent>& cur, const std::function<void(const Monomial&)>& emit)
{
    if (j == choices.size()) {
        if (remaining == 0)
            emit(Monomial(cur));
        return;
    }
    for (auto s : choices[j]) {
        if (s > remaining)
            continue;
        std::uint64_t e = std::uint64_t{base[j]} + s;
        if (e > std::numeric_limits<Exponent>::max())
            throw std::overflow_error("Sq: exponent exceeds 32 bits");
        cur[j] = static_cast<Exponent>(e);
        expand(choices, base, j + 1, remaining - s, cur, emit);
    }
}

}  // namespace

void for_each_square_term(std::uint64_t i, const Monomial& x, const std::function<void(const Monomial&)>& emit)
{
    if (i > x.degree())
        return;
    auto base = x.exponents();
    std::vector<std::vector<Exponent>> choices;
    choices.reserve(base.size());
    for (auto a : base)
        choices.push_back(odd_binomial_indices(a, i));
    std::vector<Exponent> cur(base.begin(), base.end());
    expand(choices, base, 0, i, cur, emit);
}

Polynomial sq(std::uint64_t i, const Monomial& x)
{
    std::vector<Monomial> terms;
    for_each_square_term(i, x, [&](const Monomial& t) { terms.push_back(t); });
    return Polynomial::from_terms(x.arity(), std::move(terms));
}

Polynomial sq(std::uint64_t i, const Polynomial& f)
{
    std::vector<Monomial> terms;
    for (const auto& x : f.terms()) {
        if (x.degree() != f.degree())
            throw std::invalid_argument("Sq of a non-homogeneous polynomial");
        for_each_square_term(i, x, [&](const Monomial& t) { terms.push_back(t); });
    }
    return Polynomial::from_terms(f.arity(), std::move(terms));
}

void hit_generators(int k, Degree n, const std::function<void(const HitGenerator&)>& emit)
{
    for (int u = 0; (Degree{1} << u) <= n; ++u) {
        const Degree step = Degree{1} << u;
        for (const auto& m : enumerate_monomials(k, n - step)) {
            HitGenerator g{u, m, sq(step, m)};
            if (!g.image.is_zero())
                emit(g);
        }
    }
}

}  // namespace hit
