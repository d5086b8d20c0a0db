#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace hit::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + word_bits - 1) / word_bits; }

/// Fixed-length vector over GF(2), 64-bit words, bit c lives in word c / 64 at bit c % 64.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}
    static BitVector unit(std::size_t bits, std::size_t c);
    static BitVector from_columns(std::size_t bits, std::span<const std::uint32_t> columns);

    std::size_t size() const noexcept { return bits_; }
    bool test(std::size_t c) const noexcept { return (words_[c / word_bits] >> (c % word_bits)) & 1U; }
    void set(std::size_t c) noexcept { words_[c / word_bits] |= Word{1} << (c % word_bits); }
    void reset(std::size_t c) noexcept { words_[c / word_bits] &= ~(Word{1} << (c % word_bits)); }
    void flip(std::size_t c) noexcept { words_[c / word_bits] ^= Word{1} << (c % word_bits); }

    bool any() const noexcept;
    std::size_t count() const noexcept;
    /// Lowest set index, or size() when zero.
    std::size_t lowest() const noexcept;
    std::vector<std::uint32_t> support() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

private:
    std::size_t bits_ = 0;
    std::vector<Word> words_;
};

struct InsertResult {
    BitVector residual;  // input reduced by the pivots present before the call
    bool pivot_created = false;
};

/// Reduced row echelon basis of a subspace of GF(2)^columns.
///
/// A row's pivot is its lowest-index nonzero column, and no row has a nonzero
/// entry in another row's pivot column. Rows are stored without their pivot bit,
/// packed over the columns that were still free at the last compaction, so the
/// row width shrinks as the rank approaches the column count.
///
/// Newly created pivots are staged in a small batch and folded into the existing
/// rows 64 at a time. Every query accounts for the staged batch, so the batching
/// is invisible from the outside.
class RowSpace {
public:
    explicit RowSpace(std::size_t columns = 0);

    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return row_pivot_.size() + pending_pivot_.size(); }

    /// Throws std::invalid_argument when v.size() != columns().
    InsertResult insert(const BitVector& v);
    /// Inserts the sum of unit vectors e_c over `support` (repeated columns cancel).
    /// Returns true when the rank grew.
    bool insert_support(std::span<const std::uint32_t> support);

    bool contains(const BitVector& v) const;
    bool contains_support(std::span<const std::uint32_t> support) const;
    /// Unique representative of v modulo the space, supported on non-pivot columns.
    BitVector reduce(const BitVector& v) const;
    BitVector reduce_support(std::span<const std::uint32_t> support) const;

    bool is_pivot(std::size_t c) const noexcept;
    /// Pivot columns in increasing order.
    std::vector<std::uint32_t> leading_columns() const;
    /// Basis rows in increasing pivot order, full width.
    std::vector<BitVector> rows() const;
    BitVector row_with_pivot(std::size_t c) const;

    /// Echelon basis of { v in this space : support(v) subset of allowed }.
    /// allowed.size() must equal columns().
    RowSpace restrict_to_columns(const std::vector<bool>& allowed) const;

    /// Folds staged pivots into the stored rows. Queries are safe to run
    /// concurrently only after this has been called.
    void freeze();

    /// Bytes currently held by row storage.
    std::size_t memory_bytes() const noexcept;

    /// Builds a space directly from rows that already satisfy the reduced echelon
    /// conditions. Throws std::invalid_argument otherwise.
    static RowSpace from_reduced_rows(std::size_t columns, const std::vector<BitVector>& rows);

private:
    static constexpr std::uint32_t no_row = 0xffffffffU;
    static constexpr std::uint32_t dead = 0xffffffffU;
    static constexpr std::size_t batch_size = 64;

    std::vector<Word> reduce_packed(std::span<const std::uint32_t> support) const;
    std::vector<Word> pack(const BitVector& v) const;
    BitVector unpack(std::span<const Word> packed) const;
    bool install(std::vector<Word>& residual);
    void flush();
    void compact();

    Word* row_ptr(std::size_t r) noexcept { return data_.data() + r * width_; }
    const Word* row_ptr(std::size_t r) const noexcept { return data_.data() + r * width_; }
    std::vector<Word> packed_row(std::size_t r) const;

    std::size_t columns_ = 0;
    std::size_t width_ = 0;                 // words per packed row
    std::vector<std::uint32_t> pos_of_col_; // packed position or dead
    std::vector<std::uint32_t> col_of_pos_;
    std::size_t live_positions_ = 0;        // positions whose column is still free

    std::vector<Word> data_;                // row-major packed rows
    std::vector<std::uint32_t> row_pivot_;  // pivot column per stored row
    std::vector<std::uint32_t> row_of_col_; // stored row index, pending index | pending_flag, or no_row

    std::vector<std::vector<Word>> pending_rows_;
    std::vector<std::uint32_t> pending_pivot_;
    static constexpr std::uint32_t pending_flag = 0x80000000U;
};

struct SnapshotHeader {
    std::uint32_t format_version = 1;
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::uint32_t order_version = 1;
};

/// Layout: "HITF2", u32 format version, u32 k, u32 n, u32 order version, u64 row count,
/// then each row as ceil(C(n+k-1, k-1) / 64) little-endian u64 words, in pivot order.
/// All integers little-endian. The column count of `space` must match (k, n).
void save_snapshot(std::ostream& out, const SnapshotHeader& header, const RowSpace& space);

struct Snapshot {
    SnapshotHeader header;
    RowSpace space;
};
/// Throws std::runtime_error on a malformed stream.
Snapshot load_snapshot(std::istream& in);
/// Reads only the header; throws std::runtime_error on bad magic.
SnapshotHeader peek_snapshot_header(std::istream& in);

}  // namespace hit::gf2
