#include "hit/hit_space.hpp"
#include "hit/spikes.hpp"
#include "hit/steenrod.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace hit;

namespace {

Monomial mono(std::vector<Exponent> e) { return Monomial(std::move(e)); }

Polynomial poly(int k, std::vector<Monomial> terms) { return Polynomial::from_terms(k, std::move(terms)); }

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("hitqp_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("small hit spaces")
{
    auto a = hit_space(2, 2);
    CHECK(a->space.rank() == 2);
    CHECK(qp_dim(*a) == 1);
    CHECK(admissible_basis(*a).monomials == std::vector<Monomial>{mono({1, 1})});

    auto b = hit_space(1, 4);
    CHECK(b->space.rank() == 1);
    CHECK(qp_dim(*b) == 0);

    auto c = hit_space(1, 3);
    CHECK(admissible_basis(*c).monomials == std::vector<Monomial>{mono({3})});

    auto d = hit_space(5, 4);
    CHECK(d->columns->size() == 70);
    CHECK(d->space.rank() == 25);
    CHECK(qp_dim(*d) == 45);

    CHECK(qp_dim(*hit_space(5, 12)) == 190);
    CHECK(qp_dim(*hit_space(3, 2)) == 3);
    CHECK(qp_dim(*hit_space(3, 0)) == 1);
}

TEST_CASE("column map")
{
    ColumnMap cols(3, 4);
    CHECK(cols.size() == 15);
    for (std::size_t c = 0; c < cols.size(); ++c)
        CHECK(cols.column_of(cols.monomial(c)) == c);
    CHECK_THROWS_AS(cols.column_of(mono({1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(cols.column_of(mono({1, 1, 1})), std::invalid_argument);
    const auto ws = cols.weights_present();
    for (std::size_t i = 1; i < ws.size(); ++i)
        CHECK(ws[i - 1] > ws[i]);
    const WeightVector w({2, 1});
    const auto lo = cols.first_column_at_or_below(w), hi = cols.first_column_below(w);
    CHECK(lo < hi);
    for (std::size_t c = 0; c < cols.size(); ++c)
        CHECK((c >= lo && c < hi) == (cols.weight_of(c) == w));
    auto f = poly(3, {mono({2, 1, 1}), mono({0, 0, 4})});
    CHECK(cols.polynomial_of(cols.vector_of(f)) == f);
}

TEST_CASE("hit and equivalence queries")
{
    auto hs = hit_space(2, 2);
    CHECK(is_hit(*hs, Polynomial(mono({2, 0}))));
    CHECK(!is_hit(*hs, Polynomial(mono({1, 1}))));
    CHECK(is_hit(*hs, Polynomial(2)));
    auto f = poly(2, {mono({2, 0}), mono({1, 1})});
    CHECK(equiv(*hs, f, f));
    CHECK(equiv(*hs, f, Polynomial(mono({1, 1}))));
    CHECK_THROWS_AS(is_hit(*hs, Polynomial(mono({1, 2}))), std::invalid_argument);

    auto h4 = hit_space(2, 4);
    CHECK(equiv_omega(*h4, Polynomial(mono({4, 0})), Polynomial(2), WeightVector({2, 1})));
    CHECK(!equiv_omega(*h4, Polynomial(mono({3, 1})), Polynomial(2), WeightVector({2, 1})));
    CHECK_THROWS_AS(equiv_omega(*h4, Polynomial(mono({3, 1})), Polynomial(2), WeightVector({2})), std::invalid_argument);
}

TEST_CASE("reduce")
{
    auto h2 = hit_space(2, 2);
    CHECK(reduce(*h2, Polynomial(mono({2, 0}))).is_zero());
    CHECK(reduce(*h2, Polynomial(mono({1, 1}))) == Polynomial(mono({1, 1})));

    auto h3 = hit_space(2, 3);
    auto f = poly(2, {mono({2, 1}), mono({1, 2})});
    auto r = reduce(*h3, f);
    oracle::HitOracle o(2, 3);
    CHECK(oracle::in_span(o.rows, o.vec(f + r)));
    for (const auto& t : r.terms())
        CHECK(!h3->space.is_pivot(h3->columns->column_of(t)));
}

TEST_CASE("reduce is idempotent and stays in the class")
{
    std::mt19937_64 rng(31);
    for (auto [k, n] : std::vector<std::pair<int, Degree>>{{3, 7}, {4, 9}, {4, 12}, {5, 4}}) {
        auto hs = hit_space(k, n);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Monomial> terms;
            for (const auto& m : hs->columns->monomials())
                if (rng() % 5 == 0)
                    terms.push_back(m);
            auto f = poly(k, terms);
            auto r = reduce(*hs, f);
            CHECK(reduce(*hs, r) == r);
            CHECK(equiv(*hs, f, r));
        }
    }
}

TEST_CASE("dimensions agree with the brute-force oracle")
{
    for (int k = 1; k <= 4; ++k)
        for (Degree n = 0; n <= (k <= 2 ? 14U : k == 3 ? 10U : 6U); ++n) {
            oracle::HitOracle o(k, n);
            auto hs = hit_space(k, n);
            CHECK(qp_dim(*hs) == o.dim());
            CHECK(hs->space.rank() <= hs->columns->size());
        }
}

TEST_CASE("admissible monomials agree with the definition")
{
    for (auto [k, n] : std::vector<std::pair<int, Degree>>{{2, 5}, {3, 4}, {3, 6}, {3, 7}, {4, 4}, {4, 5}}) {
        oracle::HitOracle o(k, n);
        auto hs = hit_space(k, n);
        const auto basis = admissible_basis(*hs).monomials;
        CHECK(basis.size() == qp_dim(*hs));
        std::vector<Monomial> expected;
        for (std::size_t c = 0; c < o.basis.size(); ++c)
            if (o.admissible(c))
                expected.push_back(o.basis[c]);
        CHECK(basis == expected);
    }
}

TEST_CASE("spikes are never hit and always admissible")
{
    for (int k = 1; k <= 4; ++k)
        for (Degree n = 0; n <= 16; ++n) {
            auto hs = hit_space(k, n);
            const auto basis = admissible_basis(*hs).monomials;
            CHECK(basis.size() == qp_dim(*hs));
            for (const auto& z : spikes(k, n)) {
                CHECK(!is_hit(*hs, Polynomial(z)));
                CHECK(std::binary_search(basis.begin(), basis.end(), z,
                                         [](const auto& a, const auto& b) { return cmp_monomial(a, b) > 0; }));
            }
        }
    auto hs = hit_space(5, 4);
    const auto basis = admissible_basis(*hs).monomials;
    std::size_t found = 0;
    for (const auto& z : spikes(5, 4))
        found += std::count(basis.begin(), basis.end(), z);
    CHECK(found == 25);
}

TEST_CASE("Singer's criterion only flags hit monomials")
{
    for (int k = 1; k <= 4; ++k)
        for (Degree n = 1; n <= 16; ++n) {
            if (alpha(n + static_cast<Degree>(k)) > k)
                continue;
            auto hs = hit_space(k, n);
            for (const auto& x : hs->columns->monomials())
                if (singer_is_hit(x, k, n))
                    CHECK(is_hit(*hs, Polynomial(x)));
        }
}

TEST_CASE("weight decomposition")
{
    auto hs = hit_space(3, 2);
    auto parts = omega_decomposition(*hs);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].omega == WeightVector({2}));
    CHECK(parts[0].dim == 3);
    CHECK(parts[1].omega == WeightVector({0, 1}));
    CHECK(parts[1].dim == 0);

    auto one = omega_decomposition(*hit_space(1, 3));
    REQUIRE(one.size() == 1);
    CHECK(one[0].omega == WeightVector({1, 1}));
    CHECK(one[0].dim == 1);

    CHECK(qp_omega_dim(*hit_space(5, 4), WeightVector({4})) == 5);
    CHECK(qp_omega_dim(*hit_space(4, 9), WeightVector({3, 3})) == 10);
    CHECK(qp_omega_dim(*hit_space(3, 3), WeightVector({1, 1})) == 6);
    CHECK(qp_omega_dim(*hit_space(3, 3), WeightVector({3})) == 1);  // x1 x2 x3
    CHECK_THROWS_AS(qp_omega_dim(*hit_space(3, 3), WeightVector({2})), std::invalid_argument);
}

TEST_CASE("weight pieces add up to the whole")
{
    auto check_sum = [](int k, Degree n) {
        auto hs = hit_space(k, n);
        std::size_t total = 0;
        for (const auto& part : omega_decomposition(*hs))
            total += part.dim;
        CHECK(total == qp_dim(*hs));
    };
    for (int k = 1; k <= 4; ++k)
        for (Degree n = 0; n <= 16; ++n)
            check_sum(k, n);
    check_sum(5, 4);
    check_sum(5, 12);
}

TEST_CASE("per-weight quotient agrees with a direct computation")
{
    // QP_k(omega) computed densely from the definition
    for (auto [k, n] : std::vector<std::pair<int, Degree>>{{3, 4}, {3, 6}, {4, 5}, {4, 6}}) {
        oracle::HitOracle o(k, n);
        auto hs = hit_space(k, n);
        for (const auto& w : hs->columns->weights_present()) {
            std::vector<oracle::Row> m;
            std::vector<std::size_t> exact;
            for (std::size_t c = 0; c < o.basis.size(); ++c) {
                const auto wc = weight(o.basis[c]);
                if (wc < w) {
                    oracle::Row e(o.basis.size(), 0);
                    e[c] = 1;
                    m.push_back(e);
                } else if (wc == w) {
                    exact.push_back(c);
                }
            }
            // V = hit + P^-(omega); dim of V inside P(omega) = rank V - rank of V on heavier columns
            std::vector<oracle::Row> rows = o.rows;
            for (const auto& e : m)
                rows.push_back(e);
            std::vector<oracle::Row> outside;
            for (auto r : rows) {
                for (std::size_t c = 0; c < o.basis.size(); ++c)
                    if (weight(o.basis[c]) <= w)
                        r[c] = 0;
                outside.push_back(r);
            }
            const std::size_t inside = oracle::rank(rows) - oracle::rank(outside);
            const std::size_t expected = exact.size() - (inside - m.size());
            CHECK(qp_omega_dim(*hs, w) == expected);
        }
    }
}

TEST_CASE("omega classes")
{
    auto hs = hit_space(4, 9);
    const WeightVector w({3, 3});
    CHECK_THROWS_AS(omega_class(*hs, Polynomial(mono({3, 3, 3, 0})), WeightVector({1, 0, 0, 1})), std::invalid_argument);
    auto v = omega_class(*hs, Polynomial(mono({3, 3, 3, 0})), w);
    CHECK(v.any());
    CHECK(!omega_class(*hs, Polynomial(mono({9, 0, 0, 0})), w).any());
    std::vector<Polynomial> fs;
    for (const auto& x : hs->columns->monomials())
        if (weight(x) == w)
            fs.push_back(Polynomial(x));
    CHECK(omega_class_rank(*hs, fs, w) == qp_omega_dim(*hs, w));
}

TEST_CASE("hit witnesses")
{
    auto f = poly(3, {mono({2, 1, 1}), mono({1, 2, 1}), mono({1, 1, 2})});  // Sq^1(x1 x2 x3)
    auto w = hit_witness(3, f);
    REQUIRE(w.has_value());
    Polynomial sum(3);
    for (const auto& [u, g] : w->terms)
        sum += sq(std::uint64_t{1} << u, g);
    CHECK(sum == f);

    CHECK(!hit_witness(3, Polynomial(mono({1, 1, 2}))).has_value());

    std::mt19937_64 rng(77);
    auto hs = hit_space(3, 8);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Monomial> terms;
        for (const auto& m : hs->columns->monomials())
            if (rng() % 4 == 0)
                terms.push_back(m);
        auto g = poly(3, terms);
        auto hit_part = g + reduce(*hs, g);
        auto cert = hit_witness(3, hit_part);
        REQUIRE(cert.has_value());
        Polynomial total(3);
        for (const auto& [u, gu] : cert->terms)
            total += sq(std::uint64_t{1} << u, gu);
        CHECK(total == hit_part);
    }
    EngineConfig tiny;
    tiny.memory_budget_bytes = 16;
    CHECK_THROWS_AS(hit_witness(3, f, tiny), BudgetExceeded);
}

TEST_CASE("memory budget")
{
    EngineConfig tiny;
    tiny.memory_budget_bytes = 1 << 20;
    CHECK_THROWS_AS(hit_space(5, 28, tiny), BudgetExceeded);
    try {
        hit_space(5, 60);
        FAIL("expected a refusal");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() > e.budget());
        CHECK(std::string(e.what()).find("635376") != std::string::npos);
    }
    CHECK(estimate_hit_space_bytes(5, 28) < (std::uint64_t{2} << 30));
    CHECK_THROWS_AS(hit_space(0, 3), std::invalid_argument);
}

TEST_CASE("snapshot cache")
{
    const auto dir = scratch_dir("cache");
    EngineConfig cfg;
    cfg.cache_dir = dir;
    auto first = hit_space(4, 9, cfg);
    CHECK(!first->from_cache);
    const auto file = cache_path(dir, 4, 9);
    CHECK(file.filename() == "k4_n9.hitf2");
    REQUIRE(std::filesystem::exists(file));

    auto second = hit_space(4, 9, cfg);
    CHECK(second->from_cache);
    CHECK(second->space.rows() == first->space.rows());
    CHECK(qp_dim(*second) == qp_dim(*first));

    // a truncated file is ignored and rewritten
    std::filesystem::resize_file(file, 20);
    auto third = hit_space(4, 9, cfg);
    CHECK(!third->from_cache);
    CHECK(third->space.rows() == first->space.rows());
    CHECK(hit_space(4, 9, cfg)->from_cache);

    // a snapshot for another degree under this name is ignored
    std::filesystem::copy_file(cache_path(dir, 4, 9), cache_path(dir, 4, 10));
    auto other = hit_space(4, 10, cfg);
    CHECK(!other->from_cache);
    CHECK(qp_dim(*other) == qp_dim(*hit_space(4, 10)));

    std::filesystem::remove_all(dir);
}

TEST_CASE("threaded generator expansion gives the same space")
{
    EngineConfig cfg;
    cfg.threads = 3;
    auto a = hit_space(4, 13, cfg);
    auto b = hit_space(4, 13);
    CHECK(a->space.rows() == b->space.rows());
}
