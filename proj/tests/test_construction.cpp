#include "hit/binomial.hpp"
#include "hit/construction.hpp"
#include "hit/hit_space.hpp"
#include "hit/spikes.hpp"
#include "hit/steenrod.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace hit;

namespace {

Monomial mono(std::vector<Exponent> e) { return Monomial(std::move(e)); }

Polynomial random_poly(int k, Degree n, std::mt19937_64& rng)
{
    std::vector<Monomial> terms;
    for (const auto& m : enumerate_monomials(k, n))
        if (rng() % 3 == 0)
            terms.push_back(m);
    return Polynomial::from_terms(k, std::move(terms));
}

bool below(const Polynomial& f, const WeightVector& w)
{
    return std::all_of(f.terms().begin(), f.terms().end(), [&](const Monomial& t) { return weight(t) < w; });
}

}  // namespace

TEST_CASE("index pairs")
{
    auto one = enumerate_pairs(3, 1);
    REQUIRE(one.size() == 3);
    CHECK(one[0] == IndexPair{1, {}});
    CHECK(one[2] == IndexPair{3, {}});
    CHECK(enumerate_pairs(3, 2).size() == 6);
    CHECK(enumerate_pairs(5, 5).size() == 31);
    CHECK_THROWS_AS(enumerate_pairs(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_pairs(3, 4), std::invalid_argument);
    CHECK((IndexPair{1, {2, 3}}).to_string() == "(1;2,3)");
    CHECK((IndexPair{2, {}}).to_string() == "(2;)");
    CHECK_THROWS_AS(validate_pair(IndexPair{2, {2}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(validate_pair(IndexPair{1, {5}}, 4), std::invalid_argument);

    CHECK(pair_contained(IndexPair{2, {3}}, IndexPair{1, {2, 3}}));
    CHECK(pair_contained(IndexPair{1, {}}, IndexPair{1, {2}}));
    CHECK(!pair_contained(IndexPair{1, {2}}, IndexPair{2, {}}));
    CHECK(!pair_contained(IndexPair{1, {}}, IndexPair{2, {3}}));
}

TEST_CASE("embedding f_i")
{
    CHECK(f_embed(1, mono({3, 3})) == mono({0, 3, 3}));
    CHECK(f_embed(3, mono({1, 2})) == mono({1, 2, 0}));
    CHECK(f_embed(2, mono({1, 1})) == mono({1, 0, 1}));
    CHECK_THROWS_AS(f_embed(4, mono({1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(f_embed(0, mono({1, 1})), std::invalid_argument);
}

TEST_CASE("u-compatibility")
{
    CHECK(u_compatibility(mono({3, 3}), IndexPair{1, {2}}) == 1);
    CHECK(!u_compatibility(mono({3, 3, 0}), IndexPair{1, {2, 3}}).has_value());
    CHECK(u_compatibility(mono({5, 0, 2}), IndexPair{3, {}}) == 1);
    CHECK_THROWS_AS(u_compatibility(mono({1, 1}), IndexPair{1, {4}}), std::invalid_argument);
}

TEST_CASE("phi")
{
    CHECK(phi(IndexPair{1, {2}}, mono({3, 3})) == Polynomial(mono({1, 2, 3})));
    CHECK(phi(IndexPair{1, {2, 3}}, mono({3, 3, 0})).is_zero());
    CHECK(phi(IndexPair{2, {}}, mono({1, 1})) == Polynomial(mono({1, 0, 1})));
    // phi on pairs with empty I is the embedding
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        auto y = mono({static_cast<Exponent>(rng() % 9), static_cast<Exponent>(rng() % 9), static_cast<Exponent>(rng() % 9)});
        const int i = 1 + static_cast<int>(rng() % 4);
        CHECK(phi(IndexPair{i, {}}, y) == Polynomial(f_embed(i, y)));
    }
}

TEST_CASE("p_project")
{
    CHECK(p_project(IndexPair{1, {2}}, mono({1, 2, 3})) == Polynomial(mono({3, 3})));
    CHECK(p_project(IndexPair{1, {}}, mono({1, 1})).is_zero());
    CHECK(p_project(IndexPair{1, {}}, mono({0, 2})) == Polynomial(mono({2})));
    // x_1 -> x_1 + x_2: (x_1 + x_2)^3 = x1^3 + x1^2 x2 + x1 x2^2 + x2^3
    CHECK(p_project(IndexPair{1, {2, 3}}, mono({3, 0, 0})) ==
          Polynomial::from_terms(2, {mono({3, 0}), mono({2, 1}), mono({1, 2}), mono({0, 3})}));

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 4);
        std::vector<Exponent> e(static_cast<std::size_t>(k - 1));
        for (auto& a : e)
            a = static_cast<Exponent>(rng() % 20);
        const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
        for (const auto& pair : enumerate_pairs(k, k))
            if (pair.i == i)
                CHECK(p_project(pair, Polynomial(f_embed(i, mono(e)))) == Polynomial(mono(e)));
    }
}

TEST_CASE("p_project commutes with the squares")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 3);
        auto f = random_poly(k, 1 + rng() % 6, rng);
        const auto pairs = enumerate_pairs(k, k);
        const auto& pair = pairs[rng() % pairs.size()];
        const std::uint64_t i = rng() % 8;
        CHECK(p_project(pair, sq(i, f)) == sq(i, p_project(pair, f)));
    }
}

TEST_CASE("p_project never raises the weight")
{
    for (int k = 2; k <= 4; ++k)
        for (Degree n = 0; n <= 9; ++n)
            for (const auto& x : enumerate_monomials(k, n))
                for (const auto& pair : enumerate_pairs(k, k)) {
                    const auto image = p_project(pair, x);
                    for (const auto& t : image.terms())
                        CHECK(weight(t) <= weight(x));
                }
}

TEST_CASE("C_k")
{
    auto c4 = c_family(4);
    std::set<Monomial> got(c4.begin(), c4.end());
    std::set<Monomial> want{mono({3, 0, 0}), mono({1, 2, 0}), mono({1, 0, 2}), mono({0, 3, 0}), mono({0, 1, 2}), mono({0, 0, 3})};
    CHECK(got == want);
    CHECK(c4.size() == 6);
    CHECK(c_family(5).size() == 20);
    CHECK(c_family(6).size() == 45);
    CHECK(c_family(3).empty());
    CHECK_THROWS_AS(c_family(2), std::invalid_argument);
}

TEST_CASE("C_k is the admissible part of weight (k-3, 1)")
{
    for (int k = 4; k <= 6; ++k) {
        auto hs = hit_space(k - 1, static_cast<Degree>(k - 1));
        const WeightVector w({static_cast<std::uint32_t>(k - 3), 1});
        std::set<Monomial> admissible;
        for (const auto& x : admissible_basis(*hs).monomials)
            if (weight(x) == w)
                admissible.insert(x);
        auto c = c_family(k);
        CHECK(admissible == std::set<Monomial>(c.begin(), c.end()));
        CHECK(qp_omega_dim(*hs, w) == c.size());
    }
}

TEST_CASE("B(d) and Bbar(d)")
{
    CHECK(basis_B(5, 2).size() == 15);
    CHECK(basis_B(3, 1) == std::vector<Polynomial>{Polynomial(mono({0, 1, 1})), Polynomial(mono({1, 0, 1})),
                                                   Polynomial(mono({1, 1, 0}))});
    CHECK(basis_Bbar(5, 3).size() == 300);
    CHECK(basis_Bbar(4, 2).size() == 24);
    CHECK_THROWS_AS(basis_Bbar(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(basis_B(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(basis_B(3, 0), std::invalid_argument);

    for (int k = 3; k <= 5; ++k)
        for (int d = 1; d <= 4; ++d)
            for (const auto& f : basis_B(k, d)) {
                REQUIRE(f.size() == 1);
                CHECK(f.degree() == n_of(k, d));
                CHECK(weight(f.terms().front()) == omega_family(OmegaKind::plain, k, d));
            }
}

TEST_CASE("Bbar elements factor through phi of the X part")
{
    for (int k = 4; k <= 5; ++k)
        for (int d = 2; d <= 4; ++d) {
            const auto X = x_bar(k).pow((std::uint64_t{1} << (d - 1)) - 1);
            for (const auto& e : basis_Bbar_elements(k, d)) {
                const auto factored =
                    phi(e.pair, X) * Polynomial(f_embed(e.pair.i, e.z.pow(std::uint64_t{1} << (d - 1))));
                CHECK(e.value == factored);
                CHECK(e.value.degree() == n_of(k, d));
            }
        }
}

TEST_CASE("phi images with nonempty I are not spikes")
{
    for (int k = 3; k <= 6; ++k)
        for (int d = 1; d <= 5; ++d)
            for (const auto& pair : enumerate_pairs(k, std::min(k, d))) {
                const auto f = phi(pair, x_bar(k).pow((std::uint64_t{1} << d) - 1));
                REQUIRE(f.size() == 1);
                if (pair.length() > 0)
                    CHECK(!is_spike(f.terms().front()));
            }
}

TEST_CASE("projections of phi(X^(2^b - 1)) separate the pairs")
{
    for (int k = 3; k <= 5; ++k)
        for (int b = 1; b <= 3; ++b) {
            const auto X = x_bar(k).pow((std::uint64_t{1} << b) - 1);
            const auto w = omega_family(OmegaKind::plain, k, b);
            for (const auto& inner : enumerate_pairs(k, std::min(k, b)))
                for (const auto& outer : enumerate_pairs(k, k)) {
                    const auto g = p_project(outer, phi(inner, X));
                    if (pair_contained(inner, outer))
                        CHECK(below(g + Polynomial(X), w));
                    else
                        CHECK(below(g, w));
                }
        }
}

TEST_CASE("products of X_j powers reduce to phi(X^(2^b - 1))")
{
    std::mt19937_64 rng(4);
    for (int k = 3; k <= 5; ++k)
        for (int b = 1; b <= 3; ++b) {
            auto hs = hit_space(k, n_of(k, b));
            const auto w = omega_family(OmegaKind::plain, k, b);
            for (int trial = 0; trial < 25; ++trial) {
                std::vector<int> js(static_cast<std::size_t>(b));
                auto prod = Monomial::one(k);
                for (int t = 0; t < b; ++t) {
                    js[static_cast<std::size_t>(t)] = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
                    prod = prod * complement_product(k, IndexSet{{js[static_cast<std::size_t>(t)]}}).pow(std::uint64_t{1} << t);
                }
                const int i = *std::min_element(js.begin(), js.end());
                std::set<int> rest(js.begin(), js.end());
                rest.erase(i);
                const IndexPair pair{i, std::vector<int>(rest.begin(), rest.end())};
                CHECK(equiv_omega(*hs, Polynomial(prod), phi(pair, x_bar(k).pow((std::uint64_t{1} << b) - 1)), w));
            }
        }
}

TEST_CASE("counting formulas")
{
    for (int k = 3; k <= 8; ++k)
        CHECK(c_formula(k, 1) == static_cast<std::uint64_t>(k));
    CHECK(c_formula(5, 6) == 651);
    CHECK(c_formula(5, 5) == 631);  // q = 4 still short of the stable range
    CHECK(c_formula(3, 2) == 6);
    CHECK(c_formula(3, 5) == 7);
    CHECK(mothebe_bound(5, 1) == 25);
    CHECK(spike_refined_bound(4, 1) == mothebe_bound(4, 1));
    CHECK(spike_refined_bound(5, 3) >= mothebe_bound(5, 3));
    CHECK_THROWS_AS(c_formula(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(c_formula(3, 0), std::invalid_argument);
    // stable value for d > k
    for (int k = 3; k <= 7; ++k)
        CHECK(c_formula(k, k + 1) == ((static_cast<std::uint64_t>(k) - 3) * binomial(static_cast<std::uint64_t>(k), 2) + 1) * ((1U << k) - 1));
}
