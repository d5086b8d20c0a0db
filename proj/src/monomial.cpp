#include "hit/monomial.hpp"
#include "hit/binomial.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace hit {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t monomial_count(int k, std::uint64_t n)
{
    if (k <= 0)
        return n == 0 ? 1 : 0;
    return binomial(n + static_cast<std::uint64_t>(k) - 1, static_cast<std::uint64_t>(k) - 1);
}

bool IndexSet::contains(int j) const noexcept
{
    return std::binary_search(members.begin(), members.end(), j);
}

Degree Monomial::degree() const noexcept
{
    Degree d = 0;
    for (auto a : exps_)
        d += a;
    return d;
}

IndexSet Monomial::zero_bit_set(int t) const
{
    IndexSet J;
    for (int j = 1; j <= arity(); ++j)
        if (alpha_bit(t, nu(j)) == 0)
            J.members.push_back(j);
    return J;
}

namespace {

Exponent checked_exponent(std::uint64_t v)
{
    if (v > std::numeric_limits<Exponent>::max())
        throw std::overflow_error("exponent exceeds 32 bits");
    return static_cast<Exponent>(v);
}

void require_same_arity(const Monomial& a, const Monomial& b)
{
    if (a.arity() != b.arity())
        throw std::invalid_argument("monomial arity mismatch");
}

}  // namespace

Monomial Monomial::operator*(const Monomial& other) const
{
    require_same_arity(*this, other);
    std::vector<Exponent> e(exps_.size());
    for (std::size_t j = 0; j < e.size(); ++j)
        e[j] = checked_exponent(std::uint64_t{exps_[j]} + other.exps_[j]);
    return Monomial(std::move(e));
}

Monomial Monomial::pow(std::uint64_t e) const
{
    std::vector<Exponent> out(exps_.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        unsigned __int128 v = static_cast<unsigned __int128>(exps_[j]) * e;
        if (v > std::numeric_limits<Exponent>::max())
            throw std::overflow_error("exponent exceeds 32 bits");
        out[j] = static_cast<Exponent>(v);
    }
    return Monomial(std::move(out));
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    if (arity() != other.arity())
        return false;
    for (std::size_t j = 0; j < exps_.size(); ++j)
        if (exps_[j] > other.exps_[j])
            return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const
{
    if (!divisor.divides(*this))
        throw std::domain_error("inexact monomial division: " + to_string() + " / " + divisor.to_string());
    std::vector<Exponent> e(exps_.size());
    for (std::size_t j = 0; j < e.size(); ++j)
        e[j] = exps_[j] - divisor.exps_[j];
    return Monomial(std::move(e));
}

std::string Monomial::to_string() const
{
    std::string out;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        if (exps_[j] == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += 'x' + std::to_string(j + 1);
        if (exps_[j] != 1)
            out += '^' + std::to_string(exps_[j]);
    }
    return out.empty() ? "1" : out;
}

Monomial complement_product(int k, const IndexSet& J)
{
    auto x = Monomial::one(k);
    for (int j = 1; j <= k; ++j)
        if (!J.contains(j))
            x.set_nu(j, 1);
    return x;
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

Monomial parse_monomial(std::string_view text, int k)
{
    auto x = Monomial::one(k);
    text = trim(text);
    if (text == "1")
        return x;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == '*') {
            ++pos;
            continue;
        }
        auto end = text.find_first_of(" *", pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto factor = text.substr(pos, end - pos);
        pos = end;
        if (factor.size() < 2 || factor[0] != 'x')
            throw std::invalid_argument("bad monomial factor: '" + std::string(factor) + "'");
        auto caret = factor.find('^');
        auto var = parse_uint(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1),
                              "variable index");
        std::uint64_t e = caret == std::string_view::npos ? 1 : parse_uint(factor.substr(caret + 1), "exponent");
        if (var < 1 || var > static_cast<std::uint64_t>(k))
            throw std::invalid_argument("variable x" + std::to_string(var) + " outside 1.." + std::to_string(k));
        x.set_nu(static_cast<int>(var), checked_exponent(x.nu(static_cast<int>(var)) + e));
    }
    return x;
}

WeightVector::WeightVector(std::vector<std::uint32_t> entries) : entries_(std::move(entries))
{
    while (!entries_.empty() && entries_.back() == 0)
        entries_.pop_back();
}

Degree WeightVector::degree() const noexcept
{
    Degree d = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        d += Degree{entries_[i]} << i;
    return d;
}

bool WeightVector::weakly_decreasing() const noexcept
{
    return std::is_sorted(entries_.begin(), entries_.end(), std::greater<>{});
}

std::string WeightVector::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(entries_[i]);
    }
    return out + ")";
}

std::strong_ordering operator<=>(const WeightVector& a, const WeightVector& b) noexcept
{
    // Implicit trailing zeros: plain lexicographic compare on trimmed vectors is exact,
    // because a proper prefix is followed by zeros while the longer side ends nonzero.
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                  b.entries_.end());
}

WeightVector parse_weight(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '(')
        text.remove_prefix(1);
    if (!text.empty() && text.back() == ')')
        text.remove_suffix(1);
    std::vector<std::uint32_t> entries;
    text = trim(text);
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        auto v = parse_uint(item, "weight entry");
        if (v > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("weight entry too large");
        entries.push_back(static_cast<std::uint32_t>(v));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return WeightVector(std::move(entries));
}

WeightVector weight(const Monomial& x)
{
    std::vector<std::uint32_t> w;
    for (auto a : x.exponents())
        for (int i = 0; a != 0; ++i, a >>= 1) {
            if (static_cast<std::size_t>(i) >= w.size())
                w.resize(static_cast<std::size_t>(i) + 1, 0);
            w[static_cast<std::size_t>(i)] += a & 1U;
        }
    return WeightVector(std::move(w));
}

std::vector<Exponent> sigma(const Monomial& x)
{
    return {x.exponents().begin(), x.exponents().end()};
}

std::strong_ordering cmp_monomial(const Monomial& x, const Monomial& y)
{
    if (x.arity() != y.arity())
        throw std::invalid_argument("cmp_monomial: arity mismatch");
    if (x.degree() != y.degree())
        throw std::invalid_argument("cmp_monomial: degree mismatch");
    if (auto c = weight(x) <=> weight(y); c != 0)
        return c;
    return x <=> y;
}

WeightVector omega_family(OmegaKind kind, int k, int d)
{
    if (k < 3 || d < 1)
        throw std::invalid_argument("omega_family needs k >= 3 and d >= 1");
    const auto top = static_cast<std::uint32_t>(k - 1);
    std::vector<std::uint32_t> w;
    switch (kind) {
    case OmegaKind::plain:
        w.assign(static_cast<std::size_t>(d), top);
        break;
    case OmegaKind::bar:
        w.assign(static_cast<std::size_t>(d - 1), top);
        w.push_back(static_cast<std::uint32_t>(k - 3));
        w.push_back(1);
        break;
    case OmegaKind::tilde:
        if (k < 6 || d < 2)
            throw std::invalid_argument("tilde omega needs k >= 6 and d >= 2");
        w.assign(static_cast<std::size_t>(d - 2), top);
        w.push_back(static_cast<std::uint32_t>(k - 3));
        w.push_back(static_cast<std::uint32_t>(k - 4));
        w.push_back(2);
        break;
    }
    return WeightVector(std::move(w));
}

namespace {

void compositions(int k, Degree n, std::vector<Exponent>& cur, std::size_t j, std::vector<Monomial>& out)
{
    if (j + 1 == cur.size()) {
        cur[j] = checked_exponent(n);
        out.emplace_back(cur);
        return;
    }
    for (Degree a = 0; a <= n; ++a) {
        cur[j] = static_cast<Exponent>(a);
        compositions(k, n - a, cur, j + 1, out);
    }
}

void sort_descending(std::vector<Monomial>& xs)
{
    std::vector<std::pair<WeightVector, std::size_t>> keyed;
    keyed.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        keyed.emplace_back(weight(xs[i]), i);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (auto c = a.first <=> b.first; c != 0)
            return c > 0;
        return xs[a.second] > xs[b.second];
    });
    std::vector<Monomial> sorted;
    sorted.reserve(xs.size());
    for (auto& [w, i] : keyed)
        sorted.push_back(std::move(xs[i]));
    xs = std::move(sorted);
}

}  // namespace

std::vector<Monomial> enumerate_monomials(int k, Degree n)
{
    if (k < 1)
        throw std::invalid_argument("enumerate_monomials needs k >= 1");
    std::vector<Monomial> out;
    out.reserve(monomial_count(k, n));
    std::vector<Exponent> cur(static_cast<std::size_t>(k), 0);
    compositions(k, n, cur, 0, out);
    sort_descending(out);
    return out;
}

std::vector<Monomial> enumerate_P_omega(int k, const WeightVector& omega, bool strict)
{
    auto all = enumerate_monomials(k, omega.degree());
    std::erase_if(all, [&](const Monomial& y) {
        auto c = weight(y) <=> omega;
        return strict ? c >= 0 : c > 0;
    });
    return all;
}

Degree degree_form(int s, int d, Degree m)
{
    if (s < 1 || d < 0 || d > 62)
        throw std::invalid_argument("degree_form needs s >= 1 and 0 <= d <= 62");
    return static_cast<Degree>(s) * ((Degree{1} << d) - 1) + (Degree{1} << d) * m;
}

Degree n_of(int k, int d)
{
    if (k < 2)
        throw std::invalid_argument("n_of needs k >= 2");
    return degree_form(k - 1, d, 0);
}

Polynomial::Polynomial(const Monomial& m) : k_(m.arity()), terms_{m} {}

Polynomial Polynomial::from_terms(int k, std::vector<Monomial> terms)
{
    std::sort(terms.begin(), terms.end());
    Polynomial p(k);
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) % 2 == 1)
            p.terms_.push_back(std::move(terms[i]));
        i = j;
    }
    for (const auto& t : p.terms_) {
        if (t.arity() != k)
            throw std::invalid_argument("polynomial term arity mismatch");
        if (t.degree() != p.terms_.front().degree())
            throw std::invalid_argument("polynomial is not homogeneous");
    }
    return p;
}

bool Polynomial::contains(const Monomial& m) const
{
    return std::binary_search(terms_.begin(), terms_.end(), m);
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    if (other.is_zero())
        return *this;
    if (is_zero())
        k_ = other.k_;
    if (k_ != other.k_)
        throw std::invalid_argument("polynomial arity mismatch");
    if (!is_zero() && degree() != other.degree())
        throw std::invalid_argument("adding polynomials of different degrees");
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    std::vector<Monomial> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            terms.push_back(x * y);
    return Polynomial::from_terms(a.arity() ? a.arity() : b.arity(), std::move(terms));
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    auto sorted = terms_;
    sort_descending(sorted);
    std::string out;
    for (const auto& t : sorted) {
        if (!out.empty())
            out += " + ";
        out += t.to_string();
    }
    return out;
}

}  // namespace hit
