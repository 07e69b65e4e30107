#include "floer/gf2.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <sstream>

#include "floer/errors.hpp"

namespace floer {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

using SparseRow = std::vector<std::uint32_t>;

bool sparse_test(const SparseRow& row, std::size_t j)
{
    return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(j));
}

void sparse_xor(SparseRow& target, const SparseRow& source)
{
    SparseRow out;
    out.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(out));
    target.swap(out);
}

void sparse_flip(SparseRow& row, std::size_t j)
{
    auto value = static_cast<std::uint32_t>(j);
    auto it = std::lower_bound(row.begin(), row.end(), value);
    if (it != row.end() && *it == value)
        row.erase(it);
    else
        row.insert(it, value);
}

} // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_bits(std::initializer_list<int> bits)
{
    return from_bits(std::vector<int>(bits));
}

BitVector BitVector::from_bits(const std::vector<int>& bits)
{
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1)
            v.set(i);
    return v;
}

BitVector BitVector::unit(std::size_t size, std::size_t i)
{
    BitVector v(size);
    v.set(i);
    return v;
}

bool BitVector::test(std::size_t i) const
{
    if (i >= size_)
        throw DimensionError("bit index " + std::to_string(i) + " out of range " +
                             std::to_string(size_));
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i, bool value)
{
    if (i >= size_)
        throw DimensionError("bit index " + std::to_string(i) + " out of range " +
                             std::to_string(size_));
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value)
        words_[i / kWordBits] |= mask;
    else
        words_[i / kWordBits] &= ~mask;
}

void BitVector::flip(std::size_t i)
{
    if (i >= size_)
        throw DimensionError("bit index " + std::to_string(i) + " out of range " +
                             std::to_string(size_));
    words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

void BitVector::resize(std::size_t size)
{
    words_.resize(word_count(size), 0);
    size_ = size;
    if (size_ % kWordBits != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (size_ % kWordBits)) - 1;
}

bool BitVector::any() const
{
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::optional<std::size_t> BitVector::first_set(std::size_t from) const
{
    if (from >= size_)
        return std::nullopt;
    std::size_t w = from / kWordBits;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from % kWordBits));
    while (true) {
        if (word != 0) {
            std::size_t i = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
            return i < size_ ? std::optional<std::size_t>(i) : std::nullopt;
        }
        if (++w >= words_.size())
            return std::nullopt;
        word = words_[w];
    }
}

std::vector<std::size_t> BitVector::support() const
{
    std::vector<std::size_t> out;
    for (auto i = first_set(); i; i = first_set(*i + 1))
        out.push_back(*i);
    return out;
}

bool BitVector::dot(const BitVector& other) const
{
    if (other.size_ != size_)
        throw DimensionError("dot product of vectors of length " + std::to_string(size_) +
                             " and " + std::to_string(other.size_));
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
        acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other)
{
    if (other.size_ != size_)
        throw DimensionError("adding vectors of length " + std::to_string(size_) + " and " +
                             std::to_string(other.size_));
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] ^= other.words_[w];
    return *this;
}

std::string BitVector::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (test(i))
            s[i] = '1';
    return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols, Layout layout)
    : rows_(rows), cols_(cols)
{
    sparse_ = layout == Layout::sparse ||
              (layout == Layout::automatic && cols >= kSparseColumnThreshold);
    if (sparse_)
        sparse_rows_.assign(rows, {});
    else
        dense_.assign(rows, BitVector(cols));
}

BitMatrix BitMatrix::identity(std::size_t n, Layout layout)
{
    BitMatrix m(n, n, layout);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows, Layout layout)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols, layout);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("ragged matrix literal at row " + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i][j] & 1)
                m.set(i, j);
    }
    return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, const std::vector<BitVector>& columns)
{
    BitMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw DimensionError("column " + std::to_string(j) + " has length " +
                                 std::to_string(columns[j].size()) + ", expected " +
                                 std::to_string(rows));
        for (auto i : columns[j].support())
            m.set(i, j);
    }
    return m;
}

BitMatrix BitMatrix::with_layout(Layout layout) const
{
    BitMatrix m(rows_, cols_, layout);
    for (auto [i, j] : nonzeros())
        m.set(i, j);
    return m;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const
{
    if (i >= rows_ || j >= cols_)
        throw DimensionError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    return sparse_ ? sparse_test(sparse_rows_[i], j) : dense_[i].test(j);
}

void BitMatrix::set(std::size_t i, std::size_t j, bool value)
{
    if (get(i, j) != value)
        flip(i, j);
}

void BitMatrix::flip(std::size_t i, std::size_t j)
{
    if (i >= rows_ || j >= cols_)
        throw DimensionError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    if (sparse_)
        sparse_flip(sparse_rows_[i], j);
    else
        dense_[i].flip(j);
}

BitVector BitMatrix::row(std::size_t i) const
{
    if (!sparse_)
        return dense_.at(i);
    BitVector v(cols_);
    for (auto j : sparse_rows_.at(i))
        v.set(j);
    return v;
}

BitVector BitMatrix::column(std::size_t j) const
{
    BitVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (get(i, j))
            v.set(i);
    return v;
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t i) const
{
    if (!sparse_)
        return dense_.at(i).support();
    const auto& r = sparse_rows_.at(i);
    return {r.begin(), r.end()};
}

bool BitMatrix::is_zero() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        if (sparse_ ? !sparse_rows_[i].empty() : dense_[i].any())
            return false;
    return true;
}

std::size_t BitMatrix::count_ones() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows_; ++i)
        n += sparse_ ? sparse_rows_[i].size() : dense_[i].count();
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> BitMatrix::nonzeros() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : row_support(i))
            out.emplace_back(i, j);
    return out;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(cols_, rows_);
    for (auto [i, j] : nonzeros())
        t.set(j, i);
    return t;
}

BitMatrix BitMatrix::submatrix(const std::vector<std::size_t>& row_ids,
                               const std::vector<std::size_t>& col_ids) const
{
    BitMatrix m(row_ids.size(), col_ids.size());
    for (std::size_t a = 0; a < row_ids.size(); ++a)
        for (std::size_t b = 0; b < col_ids.size(); ++b)
            if (get(row_ids[a], col_ids[b]))
                m.set(a, b);
    return m;
}

BitVector BitMatrix::operator*(const BitVector& v) const
{
    if (v.size() != cols_)
        throw DimensionError("matrix with " + std::to_string(cols_) +
                             " columns applied to vector of length " + std::to_string(v.size()));
    BitVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        bool bit = false;
        if (sparse_) {
            for (auto j : sparse_rows_[i])
                bit ^= v.test(j);
        } else {
            bit = dense_[i].dot(v);
        }
        if (bit)
            out.set(i);
    }
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const
{
    if (cols_ != other.rows_)
        throw DimensionError("cannot multiply " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " by " + std::to_string(other.rows_) + "x" +
                             std::to_string(other.cols_));
    BitMatrix out(rows_, other.cols_);
    // Row i of the product is the sum of the rows of `other` selected by row i.
    for (std::size_t i = 0; i < rows_; ++i) {
        BitVector acc(other.cols_);
        for (auto k : row_support(i))
            acc ^= other.row(k);
        for (auto j : acc.support())
            out.set(i, j);
    }
    return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("cannot add " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                             " and " + std::to_string(other.rows_) + "x" +
                             std::to_string(other.cols_));
    for (auto [i, j] : other.nonzeros())
        flip(i, j);
    return *this;
}

bool BitMatrix::operator==(const BitMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && nonzeros() == other.nonzeros();
}

std::string BitMatrix::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i)
        os << row(i).to_string() << '\n';
    return os.str();
}

// ---------------------------------------------------------------- elimination

struct EchelonAccess {
    static bool row_test(const BitVector& r, std::size_t c) { return r.test(c); }
    static bool row_test(const SparseRow& r, std::size_t c) { return sparse_test(r, c); }
    static void row_add(BitVector& a, const BitVector& b) { a ^= b; }
    static void row_add(SparseRow& a, const SparseRow& b) { sparse_xor(a, b); }

    template <class Row>
    static std::vector<std::size_t> reduce(std::vector<Row>& rows, std::size_t cols)
    {
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
            std::size_t pivot = rank;
            while (pivot < rows.size() && !row_test(rows[pivot], c))
                ++pivot;
            if (pivot == rows.size())
                continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != rank && row_test(rows[i], c))
                    row_add(rows[i], rows[rank]);
            pivots.push_back(c);
            ++rank;
        }
        return pivots;
    }

    static Echelon row_reduce(const BitMatrix& m)
    {
        Echelon e;
        e.reduced = m;
        e.pivot_columns = m.sparse_ ? reduce(e.reduced.sparse_rows_, m.cols_)
                                    : reduce(e.reduced.dense_, m.cols_);
        e.rank = e.pivot_columns.size();
        return e;
    }
};

Echelon row_reduce(const BitMatrix& m) { return EchelonAccess::row_reduce(m); }

std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank; }

std::vector<BitVector> kernel_basis(const BitMatrix& m)
{
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns)
        is_pivot[c] = true;

    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        BitVector x(m.cols());
        x.set(free);
        for (std::size_t r = 0; r < e.rank; ++r)
            if (e.reduced.get(r, free))
                x.set(e.pivot_columns[r]);
        basis.push_back(std::move(x));
    }
    return basis;
}

Membership image_membership(const BitMatrix& m, const BitVector& v)
{
    if (v.size() != m.rows())
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " tested against a matrix with " + std::to_string(m.rows()) +
                             " rows");
    BitMatrix augmented(m.rows(), m.cols() + 1,
                        m.is_sparse() ? BitMatrix::Layout::sparse : BitMatrix::Layout::dense);
    for (auto [i, j] : m.nonzeros())
        augmented.set(i, j);
    for (auto i : v.support())
        augmented.set(i, m.cols());

    const Echelon e = row_reduce(augmented);
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols())
        return {};
    BitVector x(m.cols());
    for (std::size_t r = 0; r < e.rank; ++r)
        if (e.reduced.get(r, m.cols()))
            x.set(e.pivot_columns[r]);
    return {true, std::move(x)};
}

std::size_t quotient_dim(const BitMatrix& outer, const BitMatrix& inner)
{
    if (inner.rows() != outer.cols())
        throw DimensionError("inner map lands in a space of dimension " +
                             std::to_string(inner.rows()) + " but outer map starts from " +
                             std::to_string(outer.cols()));
    const BitMatrix composite = outer * inner;
    for (std::size_t j = 0; j < composite.cols(); ++j)
        if (composite.column(j).any())
            throw PreconditionError("column " + std::to_string(j) +
                                        " of the inner map is not in the kernel of the outer map",
                                    j);
    return (outer.cols() - rank(outer)) - rank(inner);
}

// ---------------------------------------------------------------- ColumnSpace

BitVector ColumnSpace::reduce(BitVector v, BitVector& combination) const
{
    for (auto p = v.first_set(); p; p = v.first_set(*p)) {
        auto it = basis_.find(*p);
        if (it == basis_.end())
            break;
        v ^= it->second.vector;
        BitVector c = it->second.combination;
        c.resize(combination.size());
        combination ^= c;
    }
    return v;
}

bool ColumnSpace::add(const BitVector& v)
{
    if (v.size() != ambient_)
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " added to a space of dimension " + std::to_string(ambient_));
    BitVector combination(added_ + 1);
    combination.set(added_);
    ++added_;
    BitVector reduced = reduce(v, combination);
    auto pivot = reduced.first_set();
    if (!pivot)
        return false;
    basis_.emplace(*pivot, Entry{std::move(reduced), std::move(combination)});
    return true;
}

std::optional<BitVector> ColumnSpace::express(const BitVector& v) const
{
    if (v.size() != ambient_)
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " expressed in a space of dimension " + std::to_string(ambient_));
    BitVector combination(added_);
    if (reduce(v, combination).any())
        return std::nullopt;
    return combination;
}

} // namespace floer
