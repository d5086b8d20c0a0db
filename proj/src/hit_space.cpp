#include "hit/hit_space.hpp"
#include "hit/binomial.hpp"
#include "hit/steenrod.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <thread>

namespace hit {

ColumnMap::ColumnMap(int k, Degree n) : k_(k), n_(n), monomials_(enumerate_monomials(k, n))
{
    const std::size_t top = static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
    binom_.assign(top + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0));
    for (std::size_t p = 0; p <= top; ++p)
        for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j)
            binom_[p][j] = binomial(p, j);
    weights_.reserve(monomials_.size());
    column_of_rank_.assign(monomials_.size(), 0);
    for (std::size_t c = 0; c < monomials_.size(); ++c) {
        weights_.push_back(weight(monomials_[c]));
        column_of_rank_[lex_rank(monomials_[c].exponents())] = static_cast<std::uint32_t>(c);
    }
}

// Stars and bars: bar j sits at (a_1 + ... + a_j) + j - 1; rank = sum_j C(bar_j, j).
std::uint64_t ColumnMap::lex_rank(std::span<const Exponent> e) const
{
    std::uint64_t rank = 0, prefix = 0;
    for (std::size_t j = 1; j < e.size(); ++j) {
        prefix += e[j - 1];
        rank += binom_[prefix + j - 1][j];
    }
    return rank;
}

std::uint32_t ColumnMap::column_of(std::span<const Exponent> e) const
{
    if (e.size() != static_cast<std::size_t>(k_))
        throw std::invalid_argument("monomial arity does not match column map");
    Degree d = 0;
    for (auto a : e)
        d += a;
    if (d != n_)
        throw std::invalid_argument("monomial degree " + std::to_string(d) + " does not match " + std::to_string(n_));
    return column_of_rank_[lex_rank(e)];
}

std::uint32_t ColumnMap::column_of(const Monomial& x) const { return column_of(x.exponents()); }

std::vector<std::uint32_t> ColumnMap::columns_of(const Polynomial& f) const
{
    if (!f.is_zero() && f.arity() != k_)
        throw std::invalid_argument("polynomial arity does not match column map");
    std::vector<std::uint32_t> out;
    out.reserve(f.size());
    for (const auto& t : f.terms())
        out.push_back(column_of(t));
    return out;
}

gf2::BitVector ColumnMap::vector_of(const Polynomial& f) const
{
    auto cols = columns_of(f);
    return gf2::BitVector::from_columns(size(), cols);
}

Polynomial ColumnMap::polynomial_of(const gf2::BitVector& v) const
{
    std::vector<Monomial> terms;
    for (auto c : v.support())
        terms.push_back(monomials_[c]);
    return Polynomial::from_terms(k_, std::move(terms));
}

std::size_t ColumnMap::first_column_at_or_below(const WeightVector& omega) const
{
    auto it = std::partition_point(weights_.begin(), weights_.end(), [&](const WeightVector& w) { return w > omega; });
    return static_cast<std::size_t>(it - weights_.begin());
}

std::size_t ColumnMap::first_column_below(const WeightVector& omega) const
{
    auto it = std::partition_point(weights_.begin(), weights_.end(), [&](const WeightVector& w) { return w >= omega; });
    return static_cast<std::size_t>(it - weights_.begin());
}

std::vector<WeightVector> ColumnMap::weights_present() const
{
    std::vector<WeightVector> out;
    for (const auto& w : weights_)
        if (out.empty() || out.back() != w)
            out.push_back(w);
    return out;
}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget, const std::string& what)
    : std::runtime_error(what + ": needs about " + std::to_string(required >> 20) + " MiB, budget is " +
                         std::to_string(budget >> 20) + " MiB"),
      required_(required),
      budget_(budget)
{
}

std::uint64_t estimate_hit_space_bytes(int k, Degree n)
{
    const auto cols = monomial_count(k, n);
    const auto row_bytes = gf2::words_for(cols) * sizeof(gf2::Word);
    const auto per_column = sizeof(Monomial) + sizeof(WeightVector) + 8 * static_cast<std::uint64_t>(k) + 32;
    const double rows_bytes = static_cast<double>(cols) * static_cast<double>(row_bytes);
    const double total = rows_bytes + static_cast<double>(cols) * static_cast<double>(per_column);
    return total > 1.8e19 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(total);
}

std::filesystem::path cache_path(const std::filesystem::path& dir, int k, Degree n)
{
    return dir / ("k" + std::to_string(k) + "_n" + std::to_string(n) + ".hitf2");
}

namespace {

std::vector<std::uint32_t> generator_support(const ColumnMap& cols, std::uint64_t step, const Monomial& source)
{
    std::vector<std::uint32_t> out;
    for_each_square_term(step, source, [&](const Monomial& t) { out.push_back(cols.column_of(t)); });
    return out;
}

std::size_t insert_generators(const ColumnMap& cols, gf2::RowSpace& space, unsigned threads)
{
    const int k = cols.k();
    const Degree n = cols.n();
    std::size_t seen = 0;
    for (int u = 0; (Degree{1} << u) <= n; ++u) {
        const std::uint64_t step = std::uint64_t{1} << u;
        const auto sources = enumerate_monomials(k, n - step);
        if (threads <= 1) {
            for (const auto& m : sources) {
                auto support = generator_support(cols, step, m);
                if (support.empty())
                    continue;
                ++seen;
                space.insert_support(support);
            }
            continue;
        }
        std::vector<std::vector<std::uint32_t>> supports(sources.size());
        std::vector<std::jthread> pool;
        const std::size_t chunk = (sources.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                const std::size_t lo = t * chunk, hi = std::min(sources.size(), lo + chunk);
                for (std::size_t i = lo; i < hi; ++i)
                    supports[i] = generator_support(cols, step, sources[i]);
            });
        pool.clear();
        for (const auto& s : supports)
            if (!s.empty()) {
                ++seen;
                space.insert_support(s);
            }
    }
    space.freeze();
    return seen;
}

std::shared_ptr<HitSpace> try_load(const std::filesystem::path& file, std::shared_ptr<const ColumnMap> cols)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        return nullptr;
    try {
        auto snap = gf2::load_snapshot(in);
        const auto& h = snap.header;
        if (h.format_version != snapshot_format_version || h.order_version != column_order_version ||
            h.k != static_cast<std::uint32_t>(cols->k()) || h.n != cols->n())
            return nullptr;
        auto hs = std::make_shared<HitSpace>(HitSpace{std::move(cols), std::move(snap.space), 0, true});
        return hs;
    } catch (const std::runtime_error&) {
        return nullptr;
    }
}

}  // namespace

std::shared_ptr<const HitSpace> hit_space(int k, Degree n, const EngineConfig& config)
{
    if (k < 1)
        throw std::invalid_argument("hit_space needs k >= 1");
    if (n > 0xffffffffULL)
        throw std::invalid_argument("degree exceeds 32 bits");
    const auto need = estimate_hit_space_bytes(k, n);
    if (need > config.memory_budget_bytes)
        throw BudgetExceeded(need, config.memory_budget_bytes,
                             "hit space k=" + std::to_string(k) + " n=" + std::to_string(n) + " with " +
                                 std::to_string(monomial_count(k, n)) + " columns");
    auto cols = std::make_shared<const ColumnMap>(k, n);
    if (config.cache_dir)
        if (auto hs = try_load(cache_path(*config.cache_dir, k, n), cols))
            return hs;
    gf2::RowSpace space(cols->size());
    const auto seen = insert_generators(*cols, space, std::max(1U, config.threads));
    auto hs = std::make_shared<HitSpace>(HitSpace{cols, std::move(space), seen, false});
    if (config.cache_dir) {
        std::filesystem::create_directories(*config.cache_dir);
        const auto file = cache_path(*config.cache_dir, k, n);
        const auto tmp = std::filesystem::path(file).concat(".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            gf2::save_snapshot(out,
                               {snapshot_format_version, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(n),
                                column_order_version},
                               hs->space);
        }
        std::filesystem::rename(tmp, file);
    }
    return hs;
}

std::size_t qp_dim(const HitSpace& hs) { return hs.columns->size() - hs.space.rank(); }

AdmissibleBasis admissible_basis(const HitSpace& hs)
{
    AdmissibleBasis b{hs.k(), hs.n(), {}};
    for (std::size_t c = 0; c < hs.columns->size(); ++c)
        if (!hs.space.is_pivot(c))
            b.monomials.push_back(hs.columns->monomial(c));
    return b;
}

namespace {

void require_degree(const HitSpace& hs, const Polynomial& f)
{
    if (!f.is_zero() && (f.degree() != hs.n() || f.arity() != hs.k()))
        throw std::invalid_argument("polynomial " + f.to_string() + " is not in degree " + std::to_string(hs.n()) +
                                    " of P_" + std::to_string(hs.k()));
}

void require_omega(const HitSpace& hs, const WeightVector& omega)
{
    if (omega.degree() != hs.n())
        throw std::invalid_argument("weight vector " + omega.to_string() + " has degree " +
                                    std::to_string(omega.degree()) + ", expected " + std::to_string(hs.n()));
}

}  // namespace

bool is_hit(const HitSpace& hs, const Polynomial& f)
{
    require_degree(hs, f);
    return hs.space.contains_support(hs.columns->columns_of(f));
}

bool equiv(const HitSpace& hs, const Polynomial& f, const Polynomial& g)
{
    require_degree(hs, f);
    require_degree(hs, g);
    return is_hit(hs, f + g);
}

bool equiv_omega(const HitSpace& hs, const Polynomial& f, const Polynomial& g, const WeightVector& omega)
{
    require_degree(hs, f);
    require_degree(hs, g);
    require_omega(hs, omega);
    const auto below = hs.columns->first_column_below(omega);
    auto r = hs.space.reduce_support(hs.columns->columns_of(f + g));
    return r.lowest() >= below;
}

Polynomial reduce(const HitSpace& hs, const Polynomial& f)
{
    require_degree(hs, f);
    return hs.columns->polynomial_of(hs.space.reduce_support(hs.columns->columns_of(f)));
}

gf2::BitVector omega_class(const HitSpace& hs, const Polynomial& f, const WeightVector& omega)
{
    require_degree(hs, f);
    require_omega(hs, omega);
    for (const auto& t : f.terms())
        if (weight(t) > omega)
            throw std::invalid_argument("term " + t.to_string() + " lies outside P_k" + omega.to_string());
    const auto lo = hs.columns->first_column_at_or_below(omega);
    const auto hi = hs.columns->first_column_below(omega);
    auto r = hs.space.reduce_support(hs.columns->columns_of(f));
    gf2::BitVector cls(hi - lo);
    for (auto c : r.support())
        if (c >= lo && c < hi)
            cls.set(c - lo);
    return cls;
}

std::size_t omega_class_rank(const HitSpace& hs, const std::vector<Polynomial>& fs, const WeightVector& omega)
{
    const auto lo = hs.columns->first_column_at_or_below(omega);
    const auto hi = hs.columns->first_column_below(omega);
    gf2::RowSpace classes(hi - lo);
    for (const auto& f : fs)
        classes.insert(omega_class(hs, f, omega));
    return classes.rank();
}

std::size_t qp_omega_dim(const HitSpace& hs, const WeightVector& omega)
{
    require_omega(hs, omega);
    const auto& cols = *hs.columns;
    std::vector<bool> allowed(cols.size());
    std::size_t dim_p = 0;
    for (std::size_t c = 0; c < cols.size(); ++c)
        if ((allowed[c] = cols.weight_of(c) <= omega))
            ++dim_p;
    // A+P_k meet P_k(omega), then quotient by the span of P_k^-(omega).
    const auto restricted = hs.space.restrict_to_columns(allowed);
    std::vector<std::size_t> block_pos(cols.size(), cols.size());
    std::size_t block = 0, minus = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (!allowed[c])
            continue;
        if (cols.weight_of(c) == omega)
            block_pos[c] = block++;
        else
            ++minus;
    }
    gf2::RowSpace projected(block);
    for (const auto& row : restricted.rows()) {
        gf2::BitVector v(block);
        for (auto c : row.support())
            if (block_pos[c] != cols.size())
                v.set(block_pos[c]);
        projected.insert(v);
    }
    return dim_p - (minus + projected.rank());
}

std::vector<OmegaDim> omega_decomposition(const HitSpace& hs)
{
    std::vector<OmegaDim> out;
    for (auto& w : hs.columns->weights_present()) {
        auto d = qp_omega_dim(hs, w);
        out.push_back({std::move(w), d});
    }
    return out;
}

std::optional<HitWitness> hit_witness(int k, const Polynomial& f, const EngineConfig& config)
{
    const Degree n = f.is_zero() ? 0 : f.degree();
    if (!f.is_zero() && f.arity() != k)
        throw std::invalid_argument("polynomial arity mismatch");
    if (f.is_zero())
        return HitWitness{};
    ColumnMap cols(k, n);
    std::vector<HitGenerator> gens;
    hit_generators(k, n, [&](const HitGenerator& g) { gens.push_back(g); });
    const double side = static_cast<double>(cols.size()) + static_cast<double>(gens.size());
    const double need = side * side / 8.0;
    if (need > static_cast<double>(config.memory_budget_bytes))
        throw BudgetExceeded(static_cast<std::uint64_t>(need), config.memory_budget_bytes, "hit witness");

    struct Row {
        gf2::BitVector value;
        gf2::BitVector provenance;
    };
    std::map<std::size_t, Row> pivots;
    auto eliminate = [&](Row r) {
        for (auto p = r.value.lowest(); p < cols.size(); p = r.value.lowest()) {
            auto it = pivots.find(p);
            if (it == pivots.end())
                return r;
            r.value ^= it->second.value;
            r.provenance ^= it->second.provenance;
        }
        return r;
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto r = eliminate({cols.vector_of(gens[i].image), gf2::BitVector::unit(gens.size(), i)});
        if (r.value.any()) {
            auto p = r.value.lowest();
            pivots.emplace(p, std::move(r));
        }
    }
    auto r = eliminate({cols.vector_of(f), gf2::BitVector(gens.size())});
    if (r.value.any())
        return std::nullopt;
    std::map<int, std::vector<Monomial>> by_u;
    for (auto i : r.provenance.support())
        by_u[gens[i].u].push_back(gens[i].source);
    HitWitness w;
    for (auto& [u, sources] : by_u) {
        auto g = Polynomial::from_terms(k, std::move(sources));
        if (!g.is_zero())
            w.terms.emplace_back(u, std::move(g));
    }
    return w;
}

}  // namespace hit
