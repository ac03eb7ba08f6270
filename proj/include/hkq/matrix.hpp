#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "hkq/rational.hpp"

namespace hkq {

/** Dense row-major matrix of exact rationals. */
class RatMatrix
{
    public:
        RatMatrix() = default;
        RatMatrix(std::size_t rows, std::size_t cols);
        RatMatrix(std::initializer_list<std::initializer_list<long>> rows);

        static RatMatrix identity(std::size_t n);
        /// Builds a matrix from integer rows; every row must have `cols` entries.
        static RatMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols);
        static RatMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);
        static RatMatrix from_columns(const std::vector<RatVec>& cols, std::size_t rows);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        bool empty() const { return rows_ == 0 || cols_ == 0; }

        Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        RatVec row(std::size_t i) const;
        RatVec col(std::size_t j) const;

        RatMatrix transpose() const;
        RatMatrix select_rows(std::span<const std::size_t> idx) const;
        RatMatrix select_cols(std::span<const std::size_t> idx) const;
        bool is_integral() const;

        friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Rat> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatVec operator*(const RatMatrix& a, const RatVec& v);
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

struct Echelon
{
    RatMatrix reduced;               ///< reduced row echelon form
    std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
};

Echelon rref(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Basis of {v : m v = 0} as the columns of a cols x (cols - rank) matrix.
/// Each basis vector is a primitive integer vector with first nonzero entry positive.
RatMatrix nullspace(const RatMatrix& m);

/// Some solution of m x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);

/// Inverse of a square nonsingular matrix; throws RankDeficient otherwise.
RatMatrix inverse(const RatMatrix& m);

/**
 * Incrementally maintained row space, for membership tests and rank growth.
 * Rows are stored fully reduced against each other.
 */
class RowSpace
{
    public:
        explicit RowSpace(std::size_t dim) : dim_(dim) {}

        std::size_t dim() const { return dim_; }
        std::size_t rank() const { return rows_.size(); }
        bool full() const { return rows_.size() == dim_; }
        const std::vector<RatVec>& rows() const { return rows_; }

        /// Reduces v against the stored rows; returns the residual.
        RatVec reduce(RatVec v) const;
        bool contains(const RatVec& v) const;
        /// Adds v; returns true if the rank grew.
        bool insert(RatVec v);

    private:
        std::size_t dim_;
        std::vector<RatVec> rows_;
        std::vector<std::size_t> pivots_;
};

}  // namespace hkq
