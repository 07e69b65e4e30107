#pragma once

// Exact linear algebra over the two-element field.
//
// BitMatrix stores its rows either as packed 64-bit words (dense) or as
// sorted column-index lists (sparse). The automatic layout switches to sparse
// at kSparseColumnThreshold columns. Every elimination routine pivots on the
// first nonzero column and, within it, on the lowest available row index, so
// all results are reproducible bit for bit.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace floer {

/// Packed vector over F_2.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);

    /// Builds a vector from 0/1 entries, e.g. {1, 0, 1}.
    static BitVector from_bits(std::initializer_list<int> bits);
    static BitVector from_bits(const std::vector<int>& bits);
    /// The i-th standard basis vector of length `size`.
    static BitVector unit(std::size_t size, std::size_t i);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);
    /// Grows (zero-filled) or truncates to `size` entries.
    void resize(std::size_t size);

    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;
    /// Index of the first set bit at or after `from`.
    std::optional<std::size_t> first_set(std::size_t from = 0) const;
    /// Indices of all set bits, ascending.
    std::vector<std::size_t> support() const;
    /// Parity of the overlap, i.e. the F_2 inner product.
    bool dot(const BitVector& other) const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
    bool operator==(const BitVector& other) const = default;

    /// "1011"-style rendering, index 0 first.
    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t kSparseColumnThreshold = 4096;

/// Matrix over F_2. Column j of an operator matrix is the image of basis
/// vector j; entry (i, j) is the coefficient of target i.
class BitMatrix {
public:
    enum class Layout { automatic, dense, sparse };

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols, Layout layout = Layout::automatic);

    static BitMatrix identity(std::size_t n, Layout layout = Layout::automatic);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }
    /// Row-major 0/1 literal, e.g. {{1, 1}, {0, 1}}.
    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows,
                               Layout layout = Layout::automatic);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static BitMatrix from_columns(std::size_t rows, const std::vector<BitVector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_sparse() const { return sparse_; }
    /// Same entries, requested storage.
    BitMatrix with_layout(Layout layout) const;

    bool get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, bool value = true);
    void flip(std::size_t i, std::size_t j);

    BitVector row(std::size_t i) const;
    BitVector column(std::size_t j) const;
    /// Nonzero column indices of row i, ascending.
    std::vector<std::size_t> row_support(std::size_t i) const;

    bool is_zero() const;
    std::size_t count_ones() const;
    /// All (row, col) pairs holding a one, row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> nonzeros() const;

    BitMatrix transpose() const;
    /// Rows/cols picked by index lists, in the given order.
    BitMatrix submatrix(const std::vector<std::size_t>& row_ids,
                        const std::vector<std::size_t>& col_ids) const;

    BitVector operator*(const BitVector& v) const;
    BitMatrix operator*(const BitMatrix& other) const;
    BitMatrix& operator+=(const BitMatrix& other);
    friend BitMatrix operator+(BitMatrix lhs, const BitMatrix& rhs) { return lhs += rhs; }
    bool operator==(const BitMatrix& other) const;

    std::string to_string() const;

private:
    friend struct EchelonAccess;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool sparse_ = false;
    std::vector<BitVector> dense_;
    std::vector<std::vector<std::uint32_t>> sparse_rows_;
};

/// Result of row reduction to reduced echelon form.
struct Echelon {
    std::size_t rank = 0;
    /// Pivot column of each nonzero row of the reduced matrix.
    std::vector<std::size_t> pivot_columns;
    /// Reduced rows, first `rank` of them nonzero.
    BitMatrix reduced;
};

Echelon row_reduce(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// Basis of {x : m x = 0}; cols(m) - rank(m) vectors of length cols(m),
/// one per free column in ascending order.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Whether v lies in the column span of m, with a preimage when it does.
struct Membership {
    bool member = false;
    /// x with m x = v, present iff member.
    std::optional<BitVector> witness;
};

/// Throws DimensionError when v.size() != m.rows().
Membership image_membership(const BitMatrix& m, const BitVector& v);

/// dim ker(outer) - rank(inner), i.e. dim of ker(outer)/im(inner).
/// Throws PreconditionError carrying the first column of `inner` that is
/// not annihilated by `outer`.
std::size_t quotient_dim(const BitMatrix& outer, const BitMatrix& inner);

/// Incremental column space with provenance: every vector added is reduced
/// against the current basis, and membership queries return the combination
/// of added vectors that reproduces the query.
class ColumnSpace {
public:
    explicit ColumnSpace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t added() const { return added_; }

    /// Adds v; returns true when v was independent of what came before.
    bool add(const BitVector& v);
    /// Combination (over the added vectors, in insertion order) equal to v.
    std::optional<BitVector> express(const BitVector& v) const;
    bool contains(const BitVector& v) const { return express(v).has_value(); }

private:
    struct Entry {
        BitVector vector;
        BitVector combination;
    };

    BitVector reduce(BitVector v, BitVector& combination) const;

    std::size_t ambient_;
    std::size_t added_ = 0;
    std::map<std::size_t, Entry> basis_; // keyed by pivot (first set bit)
};

} // namespace floer
