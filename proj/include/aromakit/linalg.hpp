#pragma once

#include <optional>
#include <vector>

#include "aromakit/rational.hpp"

namespace aromakit {

// Sparse matrix with exact rational entries, stored by rows.
class SparseRationalMatrix {
  public:
    using Row = std::vector<std::pair<int, Rational>>; // sorted by column

    SparseRationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Row& row(int r) const { return data_[r]; }

    void add(int r, int c, const Rational& v);
    Rational at(int r, int c) const;
    SparseRationalMatrix transpose() const;

    // append the columns of `other` on the right
    static SparseRationalMatrix hstack(const SparseRationalMatrix& a,
                                       const SparseRationalMatrix& b);

  private:
    int rows_, cols_;
    std::vector<Row> data_;
};

// Fraction-free row echelon form: rows are scaled to primitive integer
// vectors, elimination keeps them integral (cross-multiplication followed by
// content removal), pivots chosen deterministically (shortest row first).
struct Echelon {
    int rank = 0;
    std::vector<int> pivot_cols;                 // one per echelon row, increasing
    std::vector<SparseRationalMatrix::Row> rows; // echelon rows
    std::vector<Rational> rhs;                   // transformed right-hand side, if any
};

Echelon echelon(const SparseRationalMatrix& m,
                const std::vector<Rational>* rhs = nullptr);

int rank(const SparseRationalMatrix& m);

// basis of the right null space; each vector has size cols
std::vector<std::vector<Rational>> kernel(const SparseRationalMatrix& m);

// one solution of m x = b, or nullopt when inconsistent
std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m,
                                           const std::vector<Rational>& b);

} // namespace aromakit
