#include "hit/construction.hpp"
#include "hit/binomial.hpp"
#include "hit/spikes.hpp"

#include <algorithm>
#include <stdexcept>

namespace hit {

std::string IndexPair::to_string() const
{
    std::string out = "(" + std::to_string(i) + ";";
    for (std::size_t t = 0; t < I.size(); ++t)
        out += (t ? "," : "") + std::to_string(I[t]);
    return out + ")";
}

void validate_pair(const IndexPair& pair, int k)
{
    bool ok = pair.i >= 1 && pair.i <= k && pair.length() < k;
    int prev = pair.i;
    for (int s : pair.I) {
        ok = ok && s > prev && s <= k;
        prev = s;
    }
    if (!ok)
        throw std::invalid_argument("invalid index pair " + pair.to_string() + " for k=" + std::to_string(k));
}

namespace {

void subsets(int lo, int hi, int size, std::vector<int>& cur, const auto& emit)
{
    if (static_cast<int>(cur.size()) == size) {
        emit(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        subsets(v + 1, hi, size, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::vector<IndexPair> enumerate_pairs(int k, int h)
{
    if (h < 1 || h > k)
        throw std::invalid_argument("enumerate_pairs needs 1 <= h <= k");
    std::vector<IndexPair> out;
    for (int r = 0; r < h; ++r)
        for (int i = 1; i <= k; ++i) {
            std::vector<int> cur;
            subsets(i + 1, k, r, cur, [&](const std::vector<int>& I) { out.push_back({i, I}); });
        }
    return out;
}

bool pair_contained(const IndexPair& inner, const IndexPair& outer)
{
    if (inner.i < outer.i)
        return false;
    auto in_outer = [&](int v) { return v == outer.i || std::binary_search(outer.I.begin(), outer.I.end(), v); };
    return in_outer(inner.i) && std::all_of(inner.I.begin(), inner.I.end(), in_outer);
}

Monomial f_embed(int i, const Monomial& y)
{
    const int k = y.arity() + 1;
    if (i < 1 || i > k)
        throw std::invalid_argument("f_embed index " + std::to_string(i) + " outside 1.." + std::to_string(k));
    auto x = Monomial::one(k);
    for (int j = 1; j < k; ++j)
        x.set_nu(j < i ? j : j + 1, y.nu(j));
    return x;
}

Polynomial f_embed(int i, const Polynomial& y)
{
    std::vector<Monomial> terms;
    for (const auto& t : y.terms())
        terms.push_back(f_embed(i, t));
    return Polynomial::from_terms(y.arity() + 1, std::move(terms));
}

std::optional<int> u_compatibility(const Monomial& x, const IndexPair& pair)
{
    const int k = x.arity() + 1;
    validate_pair(pair, k);
    const int r = pair.length();
    if (r == 0)
        return 1;
    const std::uint64_t full = (std::uint64_t{1} << r) - 1;
    auto nu_at = [&](int t) -> std::uint64_t { return x.nu(pair.I[static_cast<std::size_t>(t - 1)] - 1); };
    std::optional<int> found;
    for (int u = 1; u <= r; ++u) {
        bool ok = true;
        for (int s = 1; ok && s < u; ++s)
            ok = nu_at(s) == full;
        ok = ok && nu_at(u) > full;
        for (int t = 1; ok && t <= u; ++t)
            ok = alpha_bit(r - t, nu_at(u)) == 1;
        for (int t = u + 1; ok && t <= r; ++t)
            ok = alpha_bit(r - t, nu_at(t)) == 1;
        if (!ok)
            continue;
        if (found)
            throw std::logic_error("monomial " + x.to_string() + " is compatible with " + pair.to_string() +
                                   " for two values of u");
        found = u;
    }
    return found;
}

Monomial x_I_u(const IndexPair& pair, int u, int k)
{
    validate_pair(pair, k);
    auto m = Monomial::one(k);
    const int r = pair.length();
    if (r == 0)
        return m;
    if (u < 1 || u > r)
        throw std::invalid_argument("u outside 1..r");
    Exponent head = 0;
    for (int t = 1; t <= u; ++t)
        head += Exponent{1} << (r - t);
    m.set_nu(pair.I[static_cast<std::size_t>(u - 1)], head);
    for (int t = u + 1; t <= r; ++t)
        m.set_nu(pair.I[static_cast<std::size_t>(t - 1)], Exponent{1} << (r - t));
    return m;
}

Polynomial phi(const IndexPair& pair, const Monomial& x)
{
    const int k = x.arity() + 1;
    auto u = u_compatibility(x, pair);
    if (!u)
        return Polynomial(k);
    const int r = pair.length();
    auto numerator = f_embed(pair.i, x);
    numerator.set_nu(pair.i, numerator.nu(pair.i) + ((Exponent{1} << r) - 1));
    const auto divisor = x_I_u(pair, *u, k);
    if (!divisor.divides(numerator))
        throw std::logic_error("phi" + pair.to_string() + "(" + x.to_string() + "): inexact division by " +
                               divisor.to_string());
    return Polynomial(numerator / divisor);
}

Polynomial phi(const IndexPair& pair, const Polynomial& f)
{
    Polynomial out(f.arity() + 1);
    for (const auto& t : f.terms())
        out += phi(pair, t);
    return out;
}

Polynomial p_project(const IndexPair& pair, const Monomial& x)
{
    const int k = x.arity();
    validate_pair(pair, k);
    auto y = Monomial::one(k - 1);
    for (int j = 1; j <= k; ++j)
        if (j != pair.i)
            y.set_nu(j < pair.i ? j : j - 1, x.nu(j));
    const Exponent a = x.nu(pair.i);
    if (a == 0)
        return Polynomial(y);
    if (pair.I.empty())
        return Polynomial(k - 1);
    // (sum_s x_{s-1})^a = prod over bits 2^b of a of (sum_s x_{s-1}^{2^b})
    std::vector<Exponent> bits;
    for (int b = 0; b < 32; ++b)
        if ((a >> b) & 1U)
            bits.push_back(Exponent{1} << b);
    std::vector<Monomial> terms;
    std::vector<std::size_t> choice(bits.size(), 0);
    for (;;) {
        auto t = y;
        for (std::size_t b = 0; b < bits.size(); ++b) {
            const int var = pair.I[choice[b]] - 1;
            t.set_nu(var, t.nu(var) + bits[b]);
        }
        terms.push_back(std::move(t));
        std::size_t b = 0;
        while (b < choice.size() && ++choice[b] == pair.I.size())
            choice[b++] = 0;
        if (b == choice.size())
            break;
    }
    return Polynomial::from_terms(k - 1, std::move(terms));
}

Polynomial p_project(const IndexPair& pair, const Polynomial& f)
{
    Polynomial out(f.arity() - 1);
    for (const auto& t : f.terms())
        out += p_project(pair, t);
    return out;
}

std::vector<Monomial> c_family(int k)
{
    if (k < 3)
        throw std::invalid_argument("c_family needs k >= 3");
    std::vector<Monomial> out;
    if (k == 3)
        return out;
    std::vector<int> cur;
    subsets(1, k - 1, k - 3, cur, [&](const std::vector<int>& js) {
        for (int j = js.front(); j < k; ++j) {
            auto z = Monomial::one(k - 1);
            for (int s : js)
                z.set_nu(s, 1);
            z.set_nu(j, z.nu(j) + 2);
            out.push_back(std::move(z));
        }
    });
    return out;
}

Monomial x_bar(int k)
{
    auto X = Monomial::one(k - 1);
    for (int j = 1; j < k; ++j)
        X.set_nu(j, 1);
    return X;
}

namespace {

void require_kd(int k, int d)
{
    if (k < 3 || d < 1)
        throw std::invalid_argument("needs k >= 3 and d >= 1");
    if (d > 31)
        throw std::overflow_error("2^d - 1 exceeds 32-bit exponents");
}

}  // namespace

std::vector<Polynomial> basis_B(int k, int d)
{
    require_kd(k, d);
    const auto base = x_bar(k).pow((std::uint64_t{1} << d) - 1);
    std::vector<Polynomial> out;
    for (const auto& pair : enumerate_pairs(k, std::min(k, d)))
        out.push_back(phi(pair, base));
    return out;
}

std::vector<BbarElement> basis_Bbar_elements(int k, int d)
{
    require_kd(k, d);
    const int q = std::min(k, d - 1);
    if (q < 1)
        throw std::invalid_argument("basis_Bbar needs d >= 2");
    const std::uint64_t half = std::uint64_t{1} << (d - 1);
    const auto base = x_bar(k).pow(half - 1);
    const auto pairs = enumerate_pairs(k, q);
    std::vector<BbarElement> out;
    for (const auto& z : c_family(k)) {
        const auto arg = base * z.pow(half);
        for (const auto& pair : pairs)
            out.push_back({pair, z, phi(pair, arg)});
    }
    return out;
}

std::vector<Polynomial> basis_Bbar(int k, int d)
{
    std::vector<Polynomial> out;
    for (auto& e : basis_Bbar_elements(k, d))
        out.push_back(std::move(e.value));
    return out;
}

namespace {

std::uint64_t binomial_sum(int k, int from, int to)
{
    std::uint64_t s = 0;
    for (int t = from; t <= to; ++t)
        s += binomial(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t));
    return s;
}

std::uint64_t c_k_size(int k) { return static_cast<std::uint64_t>(k - 3) * binomial(static_cast<std::uint64_t>(k), 2); }

}  // namespace

std::uint64_t c_formula(int k, int d)
{
    require_kd(k, d);
    const int p = std::min(k, d), q = std::min(k, d - 1);
    return binomial_sum(k, 1, p) + c_k_size(k) * binomial_sum(k, 1, q);
}

std::uint64_t mothebe_bound(int k, int d)
{
    require_kd(k, d);
    const int p = std::min(k, d);
    return spike_count(k, n_of(k, d)) + binomial_sum(k, 2, p);
}

std::uint64_t spike_refined_bound(int k, int d)
{
    require_kd(k, d);
    const int q = std::min(k, d - 1);
    return mothebe_bound(k, d) + c_k_size(k) * binomial_sum(k, 2, q);
}

}  // namespace hit
