#include "hit/gf2.hpp"
#include "hit/binomial.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hit::gf2 {

BitVector BitVector::unit(std::size_t bits, std::size_t c)
{
    BitVector v(bits);
    v.set(c);
    return v;
}

BitVector BitVector::from_columns(std::size_t bits, std::span<const std::uint32_t> columns)
{
    BitVector v(bits);
    for (auto c : columns) {
        if (c >= bits)
            throw std::out_of_range("column outside vector");
        v.flip(c);
    }
    return v;
}

bool BitVector::any() const noexcept
{
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVector::count() const noexcept
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t BitVector::lowest() const noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i])
            return i * word_bits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return bits_;
}

std::vector<std::uint32_t> BitVector::support() const
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i)
        for (Word w = words_[i]; w; w &= w - 1)
            out.push_back(static_cast<std::uint32_t>(i * word_bits + static_cast<std::size_t>(std::countr_zero(w))));
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other)
{
    if (other.bits_ != bits_)
        throw std::invalid_argument("BitVector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

namespace {

inline bool test_bit(const Word* w, std::size_t p) noexcept { return (w[p / word_bits] >> (p % word_bits)) & 1U; }
inline void flip_bit(Word* w, std::size_t p) noexcept { w[p / word_bits] ^= Word{1} << (p % word_bits); }

inline void xor_range(Word* dst, const Word* src, std::size_t lo, std::size_t hi) noexcept
{
    for (std::size_t i = lo; i < hi; ++i)
        dst[i] ^= src[i];
}

// [first nonzero word, last nonzero word + 1)
std::pair<std::size_t, std::size_t> nonzero_span(std::span<const Word> w) noexcept
{
    std::size_t lo = 0, hi = w.size();
    while (lo < hi && w[lo] == 0)
        ++lo;
    while (hi > lo && w[hi - 1] == 0)
        --hi;
    return {lo, hi};
}

}  // namespace

RowSpace::RowSpace(std::size_t columns)
    : columns_(columns),
      width_(words_for(columns)),
      pos_of_col_(columns),
      col_of_pos_(columns),
      live_positions_(columns),
      row_of_col_(columns, no_row)
{
    for (std::size_t c = 0; c < columns; ++c) {
        pos_of_col_[c] = static_cast<std::uint32_t>(c);
        col_of_pos_[c] = static_cast<std::uint32_t>(c);
    }
}

std::vector<Word> RowSpace::packed_row(std::size_t r) const
{
    return {row_ptr(r), row_ptr(r) + width_};
}

std::vector<Word> RowSpace::reduce_packed(std::span<const std::uint32_t> support) const
{
    std::vector<Word> res(width_, 0);
    for (auto c : support) {
        if (c >= columns_)
            throw std::out_of_range("column outside row space");
        const auto r = row_of_col_[c];
        if (r == no_row)
            flip_bit(res.data(), pos_of_col_[c]);
        else if (r & pending_flag)
            xor_range(res.data(), pending_rows_[r & ~pending_flag].data(), 0, width_);
        else
            xor_range(res.data(), row_ptr(r), 0, width_);
    }
    // Stored rows may still carry staged pivot columns.
    for (std::size_t q = 0; q < pending_pivot_.size(); ++q) {
        const auto p = pos_of_col_[pending_pivot_[q]];
        if (test_bit(res.data(), p)) {
            xor_range(res.data(), pending_rows_[q].data(), 0, width_);
            flip_bit(res.data(), p);
        }
    }
    return res;
}

std::vector<Word> RowSpace::pack(const BitVector& v) const
{
    if (v.size() != columns_)
        throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match " +
                                    std::to_string(columns_) + " columns");
    auto support = v.support();
    return reduce_packed(support);
}

BitVector RowSpace::unpack(std::span<const Word> packed) const
{
    BitVector v(columns_);
    for (std::size_t i = 0; i < packed.size(); ++i)
        for (Word w = packed[i]; w; w &= w - 1) {
            auto p = i * word_bits + static_cast<std::size_t>(std::countr_zero(w));
            v.set(col_of_pos_[p]);
        }
    return v;
}

bool RowSpace::install(std::vector<Word>& residual)
{
    auto [lo, hi] = nonzero_span(residual);
    if (lo == hi)
        return false;
    const std::size_t p = lo * word_bits + static_cast<std::size_t>(std::countr_zero(residual[lo]));
    const std::uint32_t c = col_of_pos_[p];
    // residual still has bit p set, so xoring it clears p in the target row
    for (auto& row : pending_rows_)
        if (test_bit(row.data(), p))
            xor_range(row.data(), residual.data(), lo, hi);
    flip_bit(residual.data(), p);
    row_of_col_[c] = pending_flag | static_cast<std::uint32_t>(pending_rows_.size());
    pending_rows_.push_back(std::move(residual));
    pending_pivot_.push_back(c);
    --live_positions_;
    if (pending_rows_.size() >= batch_size)
        flush();
    return true;
}

InsertResult RowSpace::insert(const BitVector& v)
{
    auto packed = pack(v);
    InsertResult result{unpack(packed), false};
    result.pivot_created = install(packed);
    return result;
}

bool RowSpace::insert_support(std::span<const std::uint32_t> support)
{
    auto packed = reduce_packed(support);
    return install(packed);
}

bool RowSpace::contains(const BitVector& v) const
{
    auto packed = pack(v);
    return std::all_of(packed.begin(), packed.end(), [](Word w) { return w == 0; });
}

bool RowSpace::contains_support(std::span<const std::uint32_t> support) const
{
    auto packed = reduce_packed(support);
    return std::all_of(packed.begin(), packed.end(), [](Word w) { return w == 0; });
}

BitVector RowSpace::reduce(const BitVector& v) const { return unpack(pack(v)); }

BitVector RowSpace::reduce_support(std::span<const std::uint32_t> support) const
{
    return unpack(reduce_packed(support));
}

void RowSpace::flush()
{
    if (pending_rows_.empty())
        return;
    const std::size_t m = pending_rows_.size();
    std::vector<std::size_t> pos(m), lo(m), hi(m);
    for (std::size_t q = 0; q < m; ++q) {
        pos[q] = pos_of_col_[pending_pivot_[q]];
        // xor source includes the pivot bit so the target's bit is cleared
        flip_bit(pending_rows_[q].data(), pos[q]);
        auto [a, b] = nonzero_span(pending_rows_[q]);
        lo[q] = a;
        hi[q] = b;
    }
    const std::size_t stored = row_pivot_.size();
    for (std::size_t r = 0; r < stored; ++r) {
        Word* row = row_ptr(r);
        for (std::size_t q = 0; q < m; ++q)
            if (test_bit(row, pos[q]))
                xor_range(row, pending_rows_[q].data(), lo[q], hi[q]);
    }
    for (std::size_t q = 0; q < m; ++q) {
        flip_bit(pending_rows_[q].data(), pos[q]);
        data_.insert(data_.end(), pending_rows_[q].begin(), pending_rows_[q].end());
        row_of_col_[pending_pivot_[q]] = static_cast<std::uint32_t>(row_pivot_.size());
        row_pivot_.push_back(pending_pivot_[q]);
    }
    pending_rows_.clear();
    pending_pivot_.clear();
    if (width_ > 4 && live_positions_ * 2 < width_ * word_bits)
        compact();
}

void RowSpace::compact()
{
    std::vector<std::uint32_t> free_cols;
    free_cols.reserve(live_positions_);
    for (auto c : col_of_pos_)
        if (c != dead && row_of_col_[c] == no_row)
            free_cols.push_back(c);
    const std::size_t new_width = words_for(free_cols.size());
    const std::size_t rows = row_pivot_.size();
    std::vector<Word> packed(rows * new_width, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        const Word* src = row_ptr(r);
        Word* dst = packed.data() + r * new_width;
        for (std::size_t np = 0; np < free_cols.size(); ++np)
            if (test_bit(src, pos_of_col_[free_cols[np]]))
                flip_bit(dst, np);
    }
    std::fill(pos_of_col_.begin(), pos_of_col_.end(), dead);
    for (std::size_t np = 0; np < free_cols.size(); ++np)
        pos_of_col_[free_cols[np]] = static_cast<std::uint32_t>(np);
    col_of_pos_ = std::move(free_cols);
    width_ = new_width;
    data_ = std::move(packed);
    live_positions_ = col_of_pos_.size();
}

void RowSpace::freeze() { flush(); }

bool RowSpace::is_pivot(std::size_t c) const noexcept { return c < columns_ && row_of_col_[c] != no_row; }

std::vector<std::uint32_t> RowSpace::leading_columns() const
{
    std::vector<std::uint32_t> out;
    out.reserve(rank());
    for (std::size_t c = 0; c < columns_; ++c)
        if (row_of_col_[c] != no_row)
            out.push_back(static_cast<std::uint32_t>(c));
    return out;
}

BitVector RowSpace::row_with_pivot(std::size_t c) const
{
    if (!is_pivot(c))
        throw std::invalid_argument("column " + std::to_string(c) + " is not a pivot");
    const auto r = row_of_col_[c];
    std::vector<Word> packed;
    if (r & pending_flag) {
        packed = pending_rows_[r & ~pending_flag];
    } else {
        packed = packed_row(r);
        for (std::size_t q = 0; q < pending_pivot_.size(); ++q) {
            const auto p = pos_of_col_[pending_pivot_[q]];
            if (test_bit(packed.data(), p)) {
                xor_range(packed.data(), pending_rows_[q].data(), 0, width_);
                flip_bit(packed.data(), p);
            }
        }
    }
    auto v = unpack(packed);
    v.set(c);
    return v;
}

std::vector<BitVector> RowSpace::rows() const
{
    std::vector<BitVector> out;
    out.reserve(rank());
    for (auto c : leading_columns())
        out.push_back(row_with_pivot(c));
    return out;
}

std::size_t RowSpace::memory_bytes() const noexcept
{
    std::size_t bytes = data_.capacity() * sizeof(Word);
    for (const auto& r : pending_rows_)
        bytes += r.capacity() * sizeof(Word);
    return bytes + (pos_of_col_.capacity() + col_of_pos_.capacity() + row_of_col_.capacity() +
                    row_pivot_.capacity()) * sizeof(std::uint32_t);
}

RowSpace RowSpace::restrict_to_columns(const std::vector<bool>& allowed) const
{
    if (allowed.size() != columns_)
        throw std::invalid_argument("allowed mask length does not match column count");
    auto first_allowed = static_cast<std::size_t>(std::find(allowed.begin(), allowed.end(), true) - allowed.begin());
    const bool suffix = std::all_of(allowed.begin() + static_cast<std::ptrdiff_t>(first_allowed), allowed.end(),
                                    [](bool b) { return b; });
    if (suffix) {
        // Rows pivoting inside a suffix are supported in it and span its intersection.
        std::vector<BitVector> kept;
        for (auto c : leading_columns())
            if (c >= first_allowed)
                kept.push_back(row_with_pivot(c));
        return from_reduced_rows(columns_, kept);
    }
    // Re-eliminate with every disallowed column ordered ahead of the allowed ones;
    // rows whose pivot lands among the allowed columns then avoid all disallowed ones.
    std::vector<std::uint32_t> to_new(columns_), to_old;
    to_old.reserve(columns_);
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < columns_; ++c)
            if (allowed[c] == (pass == 1)) {
                to_new[c] = static_cast<std::uint32_t>(to_old.size());
                to_old.push_back(static_cast<std::uint32_t>(c));
            }
    const std::size_t disallowed = columns_ - static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), true));
    RowSpace permuted(columns_);
    for (const auto& row : rows()) {
        auto support = row.support();
        for (auto& c : support)
            c = to_new[c];
        permuted.insert_support(support);
    }
    permuted.freeze();
    RowSpace out(columns_);
    for (const auto& row : permuted.rows()) {
        if (row.lowest() < disallowed)
            continue;
        auto support = row.support();
        for (auto& c : support)
            c = to_old[c];
        out.insert_support(support);
    }
    out.freeze();
    return out;
}

RowSpace RowSpace::from_reduced_rows(std::size_t columns, const std::vector<BitVector>& rows)
{
    RowSpace s(columns);
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (pivot, input index)
    order.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != columns)
            throw std::invalid_argument("row length mismatch");
        auto p = rows[i].lowest();
        if (p == columns)
            throw std::invalid_argument("zero row in echelon basis");
        order.emplace_back(p, i);
    }
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i].first == order[i - 1].first)
            throw std::invalid_argument("repeated pivot column in echelon basis");
    BitVector pivots(columns);
    for (auto [p, i] : order)
        pivots.set(p);
    s.data_.reserve(order.size() * s.width_);
    for (auto [p, i] : order) {
        const auto& row = rows[i];
        auto w = row.words();
        std::size_t hits = 0;
        for (std::size_t j = 0; j < w.size(); ++j)
            hits += static_cast<std::size_t>(std::popcount(w[j] & pivots.words()[j]));
        if (hits != 1)
            throw std::invalid_argument("echelon basis is not reduced");
        s.data_.insert(s.data_.end(), w.begin(), w.end());
        flip_bit(s.data_.data() + s.row_pivot_.size() * s.width_, p);
        s.row_of_col_[p] = static_cast<std::uint32_t>(s.row_pivot_.size());
        s.row_pivot_.push_back(static_cast<std::uint32_t>(p));
    }
    s.live_positions_ = columns - order.size();
    if (s.width_ > 4 && s.live_positions_ * 2 < s.width_ * word_bits)
        s.compact();
    return s;
}

namespace {

constexpr std::array<char, 5> magic{'H', 'I', 'T', 'F', '2'};

void put_u32(std::ostream& out, std::uint32_t v)
{
    char b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v)
{
    char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint64_t get_le(std::istream& in, int bytes)
{
    unsigned char b[8] = {};
    if (!in.read(reinterpret_cast<char*>(b), bytes))
        throw std::runtime_error("truncated snapshot");
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i)
        v = (v << 8) | b[i];
    return v;
}

}  // namespace

void save_snapshot(std::ostream& out, const SnapshotHeader& header, const RowSpace& space)
{
    if (monomial_count(static_cast<int>(header.k), header.n) != space.columns())
        throw std::invalid_argument("snapshot header does not match row space width");
    out.write(magic.data(), magic.size());
    put_u32(out, header.format_version);
    put_u32(out, header.k);
    put_u32(out, header.n);
    put_u32(out, header.order_version);
    put_u64(out, space.rank());
    std::vector<char> buf(words_for(space.columns()) * 8);
    for (auto c : space.leading_columns()) {
        auto row = space.row_with_pivot(c);
        auto w = row.words();
        for (std::size_t i = 0; i < w.size(); ++i)
            for (int b = 0; b < 8; ++b)
                buf[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((w[i] >> (8 * b)) & 0xff);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out)
        throw std::runtime_error("failed writing snapshot");
}

SnapshotHeader peek_snapshot_header(std::istream& in)
{
    std::array<char, 5> m{};
    if (!in.read(m.data(), m.size()) || m != magic)
        throw std::runtime_error("not a HITF2 snapshot");
    SnapshotHeader h;
    h.format_version = static_cast<std::uint32_t>(get_le(in, 4));
    h.k = static_cast<std::uint32_t>(get_le(in, 4));
    h.n = static_cast<std::uint32_t>(get_le(in, 4));
    h.order_version = static_cast<std::uint32_t>(get_le(in, 4));
    return h;
}

Snapshot load_snapshot(std::istream& in)
{
    auto h = peek_snapshot_header(in);
    const auto columns = monomial_count(static_cast<int>(h.k), h.n);
    const auto rows = get_le(in, 8);
    if (rows > columns)
        throw std::runtime_error("snapshot row count exceeds column count");
    const std::size_t words = words_for(columns);
    std::vector<BitVector> basis;
    basis.reserve(rows);
    std::vector<unsigned char> buf(words * 8);
    for (std::uint64_t r = 0; r < rows; ++r) {
        if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
            throw std::runtime_error("truncated snapshot");
        BitVector v(columns);
        auto w = v.words();
        for (std::size_t i = 0; i < words; ++i) {
            Word x = 0;
            for (int b = 7; b >= 0; --b)
                x = (x << 8) | buf[i * 8 + static_cast<std::size_t>(b)];
            w[i] = x;
        }
        if (columns % word_bits && (w[words - 1] >> (columns % word_bits)))
            throw std::runtime_error("snapshot row has bits past the last column");
        basis.push_back(std::move(v));
    }
    try {
        return {h, RowSpace::from_reduced_rows(columns, basis)};
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("corrupt snapshot: ") + e.what());
    }
}

}  // namespace hit::gf2
