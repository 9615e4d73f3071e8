#pragma once

// Exact linear algebra over a Field: rank, kernels, and certified subspace
// membership.  The dense routines are the reference implementation; the
// sparse backend (SparseEliminator) takes over for matrices too large to
// hold densely.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/matrix.hpp"
#include "bokstedt/sparse_eliminator.hpp"

namespace bok {

enum class Backend { dense, sparse, automatic };

inline std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::dense: return "dense";
    case Backend::sparse: return "sparse";
    case Backend::automatic: return "auto";
  }
  return "?";
}

/// Dense storage is used up to this many entries when the backend is automatic.
inline constexpr std::size_t kDenseEntryLimit = 12'000'000;

inline Backend resolve_backend(Backend requested, std::size_t rows, std::size_t cols) {
  if (requested != Backend::automatic) return requested;
  return rows * cols <= kDenseEntryLimit && cols <= 5000 ? Backend::dense : Backend::sparse;
}

/// Reduced row echelon form in place; returns the pivot columns.  Only the
/// first `pivot_cols` columns are eligible as pivots, so trailing columns
/// (right-hand sides, identity blocks) are carried along.
inline std::vector<std::size_t> rref(const Field& field, DenseMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).value == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      auto a = m.row(piv), b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(r);
    const FieldElem inv = field.inv(prow[c]);
    for (std::size_t j = c; j < cols; ++j)
      if (prow[j].value != 0) prow[j] = field.mul(prow[j], inv);
    // nonzero support of the pivot row, for the row updates below
    std::vector<std::size_t> support;
    for (std::size_t j = c; j < cols; ++j)
      if (prow[j].value != 0) support.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto row = m.row(i);
      const FieldElem f = row[c];
      if (f.value == 0) continue;
      const FieldElem nf = field.neg(f);
      for (std::size_t j : support) row[j] = field.mul_add(row[j], nf, prow[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Field& field, DenseMatrix m) { return rref(field, m, m.cols()).size(); }

inline std::size_t rank(const Field& field, const SparseMatrix& a, Backend backend = Backend::automatic) {
  if (resolve_backend(backend, a.rows(), a.cols()) == Backend::dense) return rank(field, a.to_dense());
  return SparseEliminator(field, a).rank();
}

inline std::vector<Vector> kernel_basis(const Field& field, DenseMatrix m) {
  const std::size_t cols = m.cols();
  const auto pivots = rref(field, m, cols);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

/// Basis of {v : A v = 0}; each vector is 1 on its own free column and 0 on
/// the other free columns.
inline std::vector<Vector> kernel_basis(const Field& field, const SparseMatrix& a,
                                        Backend backend = Backend::automatic) {
  if (resolve_backend(backend, a.rows(), a.cols()) == Backend::dense) return kernel_basis(field, a.to_dense());
  return SparseEliminator(field, a).kernel_basis();
}

/// Kernel basis together with its free columns: basis[k] is 1 at
/// free_columns[k] and 0 at the other free columns, so the values of any
/// kernel element at the free columns are its coordinates.
struct Kernel {
  std::vector<Vector> basis;
  std::vector<std::uint32_t> free_columns;

  Vector coordinates(const Vector& x) const {
    Vector c(free_columns.size());
    for (std::size_t k = 0; k < free_columns.size(); ++k) c[k] = x[free_columns[k]];
    return c;
  }
};

inline Kernel kernel(const Field& field, const SparseMatrix& a, Backend backend = Backend::automatic) {
  Kernel out;
  if (resolve_backend(backend, a.rows(), a.cols()) == Backend::dense) {
    DenseMatrix m = a.to_dense();
    const auto pivots = rref(field, m, m.cols());
    std::vector<char> is_pivot(a.cols(), 0);
    for (auto c : pivots) is_pivot[c] = 1;
    for (std::uint32_t f = 0; f < a.cols(); ++f) {
      if (is_pivot[f]) continue;
      Vector v(a.cols());
      v[f] = field.one();
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, f));
      out.basis.push_back(std::move(v));
      out.free_columns.push_back(f);
    }
  } else {
    SparseEliminator e(field, a);
    out.basis = e.kernel_basis();
    out.free_columns = e.free_columns();
  }
  return out;
}

/// Common kernel of matrices sharing a column count.
inline std::vector<Vector> intersect_kernels(const Field& field, std::span<const SparseMatrix> as,
                                             Backend backend = Backend::automatic) {
  if (as.empty()) throw Error(ErrorKind::dimension_mismatch, "no matrices to intersect");
  for (const auto& a : as)
    if (a.cols() != as.front().cols()) throw Error(ErrorKind::dimension_mismatch, "column counts differ");
  return kernel_basis(field, vstack(field, as), backend);
}

/// Outcome of a membership question b in A(span(basis)).
struct Membership {
  /// Coefficients c with A (sum_j c_j basis_j) = b.
  std::optional<Vector> coefficients;
  /// When b is not in the image: y with y^T A basis_j = 0 for all j and y^T b != 0.
  std::optional<Vector> certificate;

  explicit operator bool() const noexcept { return coefficients.has_value(); }
};

/// Factorises M once (as [M | I] -> [R | T] with T M = R) so that many
/// right-hand sides can be tested against its column space.
class DenseColumnSpace {
 public:
  DenseColumnSpace(const Field& field, const DenseMatrix& m) : field_(field), rows_(m.rows()), cols_(m.cols()) {
    DenseMatrix aug(rows_, cols_ + rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = m(r, c);
      aug(r, cols_ + r) = field.one();
    }
    pivots_ = rref(field, aug, cols_);
    transform_ = DenseMatrix(rows_, rows_);
    reduced_ = DenseMatrix(pivots_.size(), cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < rows_; ++c) transform_(r, c) = aug(r, cols_ + c);
      if (r < pivots_.size())
        for (std::size_t c = 0; c < cols_; ++c) reduced_(r, c) = aug(r, c);
    }
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  Membership solve(const Vector& b) const {
    if (b.size() != rows_) throw Error(ErrorKind::dimension_mismatch, "right-hand side length");
    const Vector tb = multiply(field_, transform_, b);
    Membership out;
    for (std::size_t r = pivots_.size(); r < rows_; ++r) {
      if (tb[r].value != 0) {
        out.certificate = Vector(transform_.row(r).begin(), transform_.row(r).end());
        return out;
      }
    }
    Vector c(cols_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[pivots_[i]] = tb[i];
    out.coefficients = std::move(c);
    return out;
  }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<std::size_t> pivots_;
  DenseMatrix transform_;
  DenseMatrix reduced_;
};

/// The matrix with columns A * basis_j.
inline DenseMatrix image_of_basis(const Field& field, const SparseMatrix& a, std::span<const Vector> basis) {
  DenseMatrix m(a.rows(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "basis vector length");
    const Vector col = multiply(field, a, basis[j]);
    for (std::size_t r = 0; r < a.rows(); ++r) m(r, j) = col[r];
  }
  return m;
}

inline Vector combine(const Field& field, std::span<const Vector> basis, const Vector& coefficients,
                      std::size_t length) {
  Vector v(length);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (coefficients[j].value == 0) continue;
    for (std::size_t i = 0; i < length; ++i)
      if (basis[j][i].value != 0) v[i] = field.mul_add(v[i], coefficients[j], basis[j][i]);
  }
  return v;
}

/// Solves A (sum_j c_j basis_j) = b.  Positive answers are re-substituted
/// and negative answers carry a left-null certificate; both are checked
/// before returning.
inline Membership solve_in_subspace(const Field& field, const SparseMatrix& a, std::span<const Vector> basis,
                                    const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "target length");
  const DenseMatrix m = image_of_basis(field, a, basis);
  Membership out = DenseColumnSpace(field, m).solve(b);
  if (out.coefficients) {
    const Vector x = combine(field, basis, *out.coefficients, a.cols());
    if (multiply(field, a, x) != b)
      throw Error(ErrorKind::precondition_violated, "re-substitution failed");
  } else {
    const Vector& y = *out.certificate;
    FieldElem yb{};
    for (std::size_t i = 0; i < b.size(); ++i) yb = field.mul_add(yb, y[i], b[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      FieldElem s{};
      for (std::size_t i = 0; i < m.rows(); ++i) s = field.mul_add(s, y[i], m(i, j));
      if (s.value != 0) throw Error(ErrorKind::precondition_violated, "certificate is not left-null");
    }
    if (yb.value == 0) throw Error(ErrorKind::precondition_violated, "certificate does not separate target");
  }
  return out;
}

}  // namespace bok
