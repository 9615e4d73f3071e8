#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"

namespace bok {

using Vector = std::vector<FieldElem>;

inline bool is_zero(const Vector& v) {
  return std::ranges::all_of(v, [](FieldElem x) { return x.value == 0; });
}

struct SparseEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  FieldElem value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElem{1};
    return m;
  }

  /// Rows given as nested initializer data (residues, reduced by the field).
  static DenseMatrix from_rows(const Field& field, const std::vector<std::vector<std::int64_t>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::dimension_mismatch, "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<FieldElem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

/// Coordinate-format matrix: entries sorted by (row, col), no duplicates and
/// no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Sums duplicate coordinates and drops zeros.
  static SparseMatrix from_triples(const Field& field, std::size_t rows, std::size_t cols,
                                   std::vector<SparseEntry> entries) {
    for (const auto& e : entries)
      if (e.row >= rows || e.col >= cols)
        throw Error(ErrorKind::dimension_mismatch, "entry outside matrix bounds");
    std::ranges::sort(entries, [](const SparseEntry& a, const SparseEntry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseMatrix m(rows, cols);
    for (const auto& e : entries) {
      if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
        m.entries_.back().value = field.add(m.entries_.back().value, e.value);
      } else {
        m.entries_.push_back(e);
      }
    }
    std::erase_if(m.entries_, [](const SparseEntry& e) { return e.value.value == 0; });
    return m;
  }

  static SparseMatrix from_dense(const DenseMatrix& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d(r, c).value != 0)
          m.entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), d(r, c)});
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.entries_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), FieldElem{1}});
    return m;
  }

  DenseMatrix to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (const auto& e : entries_) d(e.row, e.col) = e.value;
    return d;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }

  SparseMatrix transpose() const {
    std::vector<SparseEntry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    std::ranges::sort(t, [](const SparseEntry& a, const SparseEntry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseMatrix m(cols_, rows_);
    m.entries_ = std::move(t);
    return m;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseEntry> entries_;
};

inline Vector multiply(const Field& field, const SparseMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector product");
  Vector y(a.rows());
  for (const auto& e : a.entries()) y[e.row] = field.mul_add(y[e.row], e.value, x[e.col]);
  return y;
}

inline Vector multiply(const Field& field, const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector product");
  Vector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    FieldElem acc{};
    auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (row[c].value != 0 && x[c].value != 0) acc = field.mul_add(acc, row[c], x[c]);
    y[r] = acc;
  }
  return y;
}

inline DenseMatrix multiply(const Field& field, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "matrix product");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElem x = a(i, k);
      if (x.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = field.mul_add(c(i, j), x, b(k, j));
    }
  return c;
}

/// y^T A
inline Vector left_multiply(const Field& field, const Vector& y, const SparseMatrix& a) {
  if (y.size() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "vector-matrix product");
  Vector out(a.cols());
  for (const auto& e : a.entries()) out[e.col] = field.mul_add(out[e.col], y[e.row], e.value);
  return out;
}

inline SparseMatrix multiply(const Field& field, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "matrix product");
  // row starts of b
  std::vector<std::size_t> start(b.rows() + 1, 0);
  for (const auto& e : b.entries()) ++start[e.row + 1];
  for (std::size_t i = 0; i < b.rows(); ++i) start[i + 1] += start[i];
  std::vector<SparseEntry> out;
  for (const auto& e : a.entries()) {
    for (std::size_t k = start[e.col]; k < start[e.col + 1]; ++k) {
      const auto& f = b.entries()[k];
      out.push_back({e.row, f.col, field.mul(e.value, f.value)});
    }
  }
  return SparseMatrix::from_triples(field, a.rows(), b.cols(), std::move(out));
}

inline SparseMatrix vstack(const Field& field, std::span<const SparseMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  std::vector<SparseEntry> all;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(ErrorKind::dimension_mismatch, "vstack column counts differ");
    for (const auto& e : b.entries())
      all.push_back({static_cast<std::uint32_t>(e.row + rows), e.col, e.value});
    rows += b.rows();
  }
  return SparseMatrix::from_triples(field, rows, cols, std::move(all));
}

inline SparseMatrix add(const Field& field, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::dimension_mismatch, "matrix sum");
  std::vector<SparseEntry> all = a.entries();
  all.insert(all.end(), b.entries().begin(), b.entries().end());
  return SparseMatrix::from_triples(field, a.rows(), a.cols(), std::move(all));
}

inline SparseMatrix scale(const Field& field, FieldElem s, const SparseMatrix& a) {
  std::vector<SparseEntry> all = a.entries();
  for (auto& e : all) e.value = field.mul(s, e.value);
  return SparseMatrix::from_triples(field, a.rows(), a.cols(), std::move(all));
}

// Coordinate text format:
//   %%GFpMatrix p rows cols
//   row col value        (1-based indices, one entry per line)
// Only prime fields are representable.

inline void write_coordinate(std::ostream& os, const Field& field, const SparseMatrix& m) {
  if (!field.is_prime_field())
    throw Error(ErrorKind::precondition_violated, "coordinate format holds prime-field matrices only");
  os << "%%GFpMatrix " << field.characteristic() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (const auto& e : m.entries()) os << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.value << '\n';
}

inline SparseMatrix read_coordinate(std::istream& is, const Field& field) {
  std::string line;
  while (std::getline(is, line) && line.empty()) {
  }
  std::istringstream header(line);
  std::string tag;
  std::size_t p = 0, rows = 0, cols = 0;
  if (!(header >> tag >> p >> rows >> cols) || tag != "%%GFpMatrix")
    throw Error(ErrorKind::parse_error, "missing %%GFpMatrix header");
  if (p != field.characteristic() || !field.is_prime_field())
    throw Error(ErrorKind::parse_error, "matrix characteristic does not match the field");
  std::vector<SparseEntry> entries;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    std::int64_t r = 0, c = 0, v = 0;
    if (!(ls >> r >> c >> v) || r < 1 || c < 1 || static_cast<std::size_t>(r) > rows ||
        static_cast<std::size_t>(c) > cols)
      throw Error(ErrorKind::parse_error, "bad coordinate line: " + line);
    entries.push_back({static_cast<std::uint32_t>(r - 1), static_cast<std::uint32_t>(c - 1), field.from_int(v)});
  }
  return SparseMatrix::from_triples(field, rows, cols, std::move(entries));
}

}  // namespace bok
