#include "hkq/matrix.hpp"

#include <stdexcept>

#include "hkq/errors.hpp"

namespace hkq {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
    {
        if (r.size() != cols_)
            throw std::invalid_argument("RatMatrix: ragged initializer");
        for (long x : r)
            data_.emplace_back(x);
    }
}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols)
{
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != cols)
            throw DimensionMismatch("row " + std::to_string(i + 1) + " has "
                                    + std::to_string(rows[i].size()) + " entries, expected "
                                    + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows, std::size_t cols)
{
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != cols)
            throw DimensionMismatch("ragged rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVec>& cols, std::size_t rows)
{
    RatMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
    {
        if (cols[j].size() != rows)
            throw DimensionMismatch("ragged columns");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

RatVec RatMatrix::row(std::size_t i) const
{
    return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatVec RatMatrix::col(std::size_t j) const
{
    RatVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::select_rows(std::span<const std::size_t> idx) const
{
    RatMatrix out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            out(k, j) = (*this)(idx[k], j);
    return out;
}

RatMatrix RatMatrix::select_cols(std::span<const std::size_t> idx) const
{
    RatMatrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k)
            out(i, k) = (*this)(i, idx[k]);
    return out;
}

bool RatMatrix::is_integral() const
{
    for (const auto& x : data_)
    {
        if (!hkq::is_integer(x))
            return false;
    }
    return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatVec operator*(const RatMatrix& a, const RatVec& v)
{
    if (a.cols() != v.size())
        throw std::invalid_argument("matrix-vector product: shape mismatch");
    RatVec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out[i] += a(i, j) * v[j];
    return out;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row count mismatch");
    RatMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column count mismatch");
    RatMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(a.rows() + i, j) = b(i, j);
    return out;
}

Echelon rref(const RatMatrix& m)
{
    Echelon e{m, {}};
    RatMatrix& a = e.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c)
    {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Rat inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            if (i == r || a(i, c) == 0)
                continue;
            Rat f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t rank(const RatMatrix& m)
{
    return rref(m).pivots.size();
}

RatMatrix nullspace(const RatMatrix& m)
{
    Echelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < n; ++f)
    {
        if (is_pivot[f])
            continue;
        RatVec v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(primitive_integer(v));
    }
    return RatMatrix::from_columns(basis, n);
}

std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: rhs length mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    RatVec x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

RatMatrix inverse(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    Echelon e = rref(hstack(m, RatMatrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw RankDeficient("matrix is singular");
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = e.reduced(i, n + j);
    return out;
}

RatVec RowSpace::reduce(RatVec v) const
{
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
        const std::size_t p = pivots_[r];
        if (v[p] == 0)
            continue;
        Rat f = v[p];
        const RatVec& row = rows_[r];
        for (std::size_t j = 0; j < dim_; ++j)
        {
            if (row[j] != 0)
                v[j] -= f * row[j];
        }
    }
    return v;
}

bool RowSpace::contains(const RatVec& v) const
{
    return is_zero(reduce(v));
}

bool RowSpace::insert(RatVec v)
{
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0)
        ++p;
    if (p == dim_)
        return false;
    Rat inv = 1 / v[p];
    for (auto& x : v)
        x *= inv;
    // keep the stored rows mutually reduced
    for (auto& row : rows_)
    {
        if (row[p] == 0)
            continue;
        Rat f = row[p];
        for (std::size_t j = 0; j < dim_; ++j)
        {
            if (v[j] != 0)
                row[j] -= f * v[j];
        }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

}  // namespace hkq
