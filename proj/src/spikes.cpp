#include "hit/spikes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hit {

namespace {

constexpr bool all_ones(std::uint64_t a) noexcept { return (a & (a + 1)) == 0; }

int bit_length(std::uint64_t a) noexcept { return a == 0 ? 0 : 64 - __builtin_clzll(a); }

void place(std::size_t j, Degree remaining, std::vector<Exponent>& cur, std::vector<Monomial>& out)
{
    if (j == cur.size()) {
        if (remaining == 0)
            out.emplace_back(cur);
        return;
    }
    for (Degree part = 0; part <= remaining && part <= 0xffffffffULL; part = 2 * part + 1) {
        cur[j] = static_cast<Exponent>(part);
        place(j + 1, remaining - part, cur, out);
    }
}

}  // namespace

bool is_spike(const Monomial& x)
{
    return std::all_of(x.exponents().begin(), x.exponents().end(), [](Exponent a) { return all_ones(a); });
}

std::vector<Monomial> spikes(int k, Degree n)
{
    if (k < 1)
        throw std::invalid_argument("spikes needs k >= 1");
    std::vector<Monomial> out;
    std::vector<Exponent> cur(static_cast<std::size_t>(k), 0);
    place(0, n, cur, out);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return cmp_monomial(a, b) > 0; });
    return out;
}

std::uint64_t spike_count(int k, Degree n) { return spikes(k, n).size(); }

Monomial minimal_spike(int k, Degree n)
{
    if (alpha(n + static_cast<Degree>(k)) > k)
        throw std::domain_error("no minimal spike guaranteed: alpha(" + std::to_string(n + static_cast<Degree>(k)) +
                                ") > " + std::to_string(k));
    std::vector<Monomial> found;
    for (const auto& z : spikes(k, n)) {
        std::vector<int> d;
        for (auto a : z.exponents())
            d.push_back(bit_length(a));
        std::size_t r = 0;
        while (r < d.size() && d[r] > 0)
            ++r;
        bool ok = std::all_of(d.begin() + static_cast<std::ptrdiff_t>(r), d.end(), [](int v) { return v == 0; });
        // d_1 > ... > d_{r-1} >= d_r: only the last step may be an equality
        for (std::size_t j = 0; ok && j + 1 < r; ++j)
            ok = j + 2 == r ? d[j] >= d[j + 1] : d[j] > d[j + 1];
        if (ok)
            found.push_back(z);
    }
    if (found.size() != 1)
        throw std::logic_error("expected exactly one minimal spike of degree " + std::to_string(n) + " in " +
                               std::to_string(k) + " variables, found " + std::to_string(found.size()));
    return found.front();
}

bool singer_is_hit(const Monomial& x, int k, Degree n)
{
    if (x.arity() != k || x.degree() != n)
        throw std::invalid_argument("singer_is_hit: monomial is not in degree " + std::to_string(n) + " of P_" +
                                    std::to_string(k));
    return weight(x) < weight(minimal_spike(k, n));
}

Monomial spike_from_weight(const WeightVector& omega, int k)
{
    if (!omega.weakly_decreasing())
        throw std::invalid_argument("weight vector " + omega.to_string() + " is not weakly decreasing");
    if (omega[1] > static_cast<std::uint32_t>(k))
        throw std::invalid_argument("weight vector " + omega.to_string() + " has omega_1 > " + std::to_string(k));
    if (omega.size() > 32)
        throw std::overflow_error("spike exponent exceeds 32 bits");
    auto z = Monomial::one(k);
    for (int j = 1; j <= k; ++j) {
        Exponent m = 0;
        for (auto w : omega.entries())
            if (w >= static_cast<std::uint32_t>(j))
                ++m;
        z.set_nu(j, m == 32 ? 0xffffffffU : (Exponent{1} << m) - 1);
    }
    return z;
}

}  // namespace hit
