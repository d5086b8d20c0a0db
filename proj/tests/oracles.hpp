#pragma once
// Independent reference implementations used by the tests. Deliberately slow and
// simple: dense byte matrices, schoolbook binomials, no shared code with the engine
// beyond the Monomial value type.

#include "hit/monomial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Row = std::vector<std::uint8_t>;

/// Pascal-triangle parity, independent of the bitmask rule.
inline bool binom_odd(std::uint64_t n, std::uint64_t r)
{
    if (r > n)
        return false;
    std::vector<std::uint8_t> row{1};
    for (std::uint64_t i = 1; i <= n; ++i) {
        Row next(row.size() + 1, 0);
        next.front() = next.back() = 1;
        for (std::size_t j = 1; j < row.size(); ++j)
            next[j] = row[j - 1] ^ row[j];
        row = std::move(next);
    }
    return row[r] != 0;
}

/// Gaussian elimination on a dense copy; returns the rank.
inline std::size_t rank(std::vector<Row> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && !m[p][c])
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j)
                    m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

inline bool in_span(const std::vector<Row>& m, const Row& v)
{
    auto with = m;
    with.push_back(v);
    return rank(with) == rank(m);
}

/// Monomials of degree n in k variables by plain recursion (any order).
inline void all_monomials(int k, std::uint64_t n, std::vector<hit::Exponent>& cur, std::vector<hit::Monomial>& out)
{
    if (static_cast<int>(cur.size()) == k - 1) {
        cur.push_back(static_cast<hit::Exponent>(n));
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (std::uint64_t a = 0; a <= n; ++a) {
        cur.push_back(static_cast<hit::Exponent>(a));
        all_monomials(k, n - a, cur, out);
        cur.pop_back();
    }
}

inline std::vector<hit::Monomial> monomials(int k, std::uint64_t n)
{
    std::vector<hit::Monomial> out;
    std::vector<hit::Exponent> cur;
    if (k == 0)
        return out;
    all_monomials(k, n, cur, out);
    return out;
}

/// Sq^i(x) as a term -> coefficient map, by iterating the one-variable formula
/// Sq^j(y^a) = C(a, j) y^{a+j} over compositions of i.
inline std::map<std::vector<hit::Exponent>, int> square(std::uint64_t i, const hit::Monomial& x)
{
    const std::vector<hit::Exponent> start(x.exponents().begin(), x.exponents().end());
    // states: (partial exponent vector, degree raised so far), one variable at a time
    std::vector<std::pair<std::vector<hit::Exponent>, std::uint64_t>> states{{start, 0}};
    for (int v = 0; v < x.arity(); ++v) {
        std::vector<std::pair<std::vector<hit::Exponent>, std::uint64_t>> next;
        for (const auto& [e, s] : states) {
            const auto a = x.exponents()[static_cast<std::size_t>(v)];
            for (std::uint64_t j = 0; j <= a && s + j <= i; ++j)
                if (binom_odd(a, j)) {
                    auto f = e;
                    f[static_cast<std::size_t>(v)] = static_cast<hit::Exponent>(a + j);
                    next.emplace_back(f, s + j);
                }
        }
        states = std::move(next);
    }
    std::map<std::vector<hit::Exponent>, int> out;
    for (const auto& [e, s] : states)
        if (s == i)
            out[e] ^= 1;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// Brute-force hit space: every Sq^i(m), i >= 1, as dense rows over `basis`.
struct HitOracle {
    std::vector<hit::Monomial> basis;  // sorted descending by cmp_monomial
    std::map<std::vector<hit::Exponent>, std::size_t> index;
    std::vector<Row> rows;

    HitOracle(int k, std::uint64_t n)
    {
        basis = monomials(k, n);
        std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return hit::cmp_monomial(a, b) > 0; });
        for (std::size_t c = 0; c < basis.size(); ++c)
            index[std::vector<hit::Exponent>(basis[c].exponents().begin(), basis[c].exponents().end())] = c;
        for (std::uint64_t i = 1; i <= n; ++i)
            for (const auto& m : monomials(k, n - i)) {
                Row r(basis.size(), 0);
                bool any = false;
                for (const auto& [e, c] : square(i, m)) {
                    r[index.at(e)] ^= static_cast<std::uint8_t>(c);
                    any = true;
                }
                if (any)
                    rows.push_back(std::move(r));
            }
    }

    Row vec(const hit::Polynomial& f) const
    {
        Row r(basis.size(), 0);
        for (const auto& t : f.terms())
            r[index.at(std::vector<hit::Exponent>(t.exponents().begin(), t.exponents().end()))] ^= 1;
        return r;
    }

    std::size_t hit_rank() const { return rank(rows); }
    std::size_t dim() const { return basis.size() - hit_rank(); }
    bool is_hit(const hit::Polynomial& f) const { return in_span(rows, vec(f)); }

    /// x is inadmissible iff x lies in hit + span{y : y < x}.
    bool admissible(std::size_t c) const
    {
        auto m = rows;
        for (std::size_t y = c + 1; y < basis.size(); ++y) {
            Row e(basis.size(), 0);
            e[y] = 1;
            m.push_back(std::move(e));
        }
        Row x(basis.size(), 0);
        x[c] = 1;
        return !in_span(m, x);
    }
};

inline Row random_row(std::size_t cols, std::mt19937_64& rng, double density = 0.5)
{
    std::bernoulli_distribution bit(density);
    Row r(cols);
    for (auto& b : r)
        b = bit(rng) ? 1 : 0;
    return r;
}

}  // namespace oracle
