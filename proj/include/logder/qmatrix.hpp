#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "logder/rational.hpp"

namespace logder {

/// Dense matrix over the rationals. All reductions are exact and deterministic:
/// pivots are chosen as the first nonzero entry in column order.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return QMatrix();
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw std::invalid_argument("from_rows: ragged row lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  /// Append a row; on an empty matrix this fixes the column count.
  void append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("append_row: wrong length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  QMatrix mat;
  std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
};

/// Reduced row echelon form via Gauss-Jordan elimination.
inline RrefResult rref(QMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    const Rational inv = Rational(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

/// Basis of the right null space. One vector per free column, in column order,
/// with a unit entry in the free position.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  const RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.mat.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Incremental echelon accumulator: tracks the row space of inserted vectors.
/// Used wherever we need "does this vector enlarge the span" decisions.
class RowSpan {
 public:
  explicit RowSpan(std::size_t cols) : cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduce v against the current span; returns true (and absorbs the residue)
  /// if v was independent.
  bool insert(std::vector<Rational> v) {
    reduce(v);
    std::size_t lead = leading(v);
    if (lead == cols_) return false;
    const Rational inv = Rational(1) / v[lead];
    for (auto& x : v) x *= inv;
    std::size_t pos = 0;
    while (pos < rows_.size() && leads_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    leads_.insert(leads_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    return true;
  }

  bool contains(std::vector<Rational> v) const {
    reduce(v);
    return leading(v) == cols_;
  }

 private:
  std::size_t leading(const std::vector<Rational>& v) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) return j;
    return cols_;
  }
  void reduce(std::vector<Rational>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[leads_[i]];
      if (f == 0) continue;
      for (std::size_t j = leads_[i]; j < cols_; ++j) v[j] -= f * rows_[i][j];
    }
  }

  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;  // unit leading entries, ascending leads
  std::vector<std::size_t> leads_;
};

}  // namespace logder
