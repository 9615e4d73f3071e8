#pragma once

// Right-looking sparse Gaussian elimination over a finite field with
// Markowitz pivot selection.
//
// Rows live as sorted (column, value) lists.  At each step the pivot is the
// entry minimising the Markowitz cost (r - 1)(c - 1) among the few shortest
// active rows and the few lightest active columns, ties broken by the
// smallest (row, column) pair, so the elimination order is a pure function
// of the input.  Right-hand sides ride along as extra dense row data; a row
// that becomes empty certifies consistency (zero right-hand side) or
// inconsistency (nonzero).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/matrix.hpp"

namespace bok {

class SparseEliminator {
 public:
  struct Options {
    std::size_t nnz_budget = 0;   // 0: unlimited
    std::size_t search_depth = 4;  // rows and columns inspected per pivot search
  };

  SparseEliminator(const Field& field, const SparseMatrix& a, std::span<const Vector> rhs = {})
      : SparseEliminator(field, a, rhs, Options{}) {}

  SparseEliminator(const Field& field, const SparseMatrix& a, std::span<const Vector> rhs, Options options)
      : field_(field),
        options_(options),
        nrows_(a.rows()),
        ncols_(a.cols()),
        nrhs_(rhs.size()),
        rows_(a.rows()),
        rhs_(a.rows() * rhs.size()),
        active_(a.rows(), 1),
        col_count_(a.cols(), 0),
        col_rows_(a.cols()),
        col_done_(a.cols(), 0),
        inconsistent_(rhs.size(), 0) {
    for (std::size_t k = 0; k < nrhs_; ++k) {
      if (rhs[k].size() != nrows_) throw Error(ErrorKind::dimension_mismatch, "right-hand side length");
      for (std::size_t r = 0; r < nrows_; ++r) rhs_[r * nrhs_ + k] = rhs[k][r];
    }
    for (const auto& e : a.entries()) {
      rows_[e.row].cols.push_back(e.col);
      rows_[e.row].vals.push_back(e.value);
      col_rows_[e.col].push_back(e.row);
      ++col_count_[e.col];
    }
    live_nnz_ = a.nnz();
    for (std::uint32_t c = 0; c < ncols_; ++c)
      if (col_count_[c] > 0) col_queue_.insert({col_count_[c], c});
    for (std::uint32_t r = 0; r < nrows_; ++r) {
      if (rows_[r].cols.empty()) {
        retire_empty_row(r);
      } else {
        row_queue_.insert({static_cast<std::uint32_t>(rows_[r].cols.size()), r});
      }
    }
    eliminate();
  }

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t rows() const noexcept { return nrows_; }
  std::size_t cols() const noexcept { return ncols_; }

  /// (row, column) pairs in elimination order.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pivots() const noexcept { return pivots_; }

  bool consistent(std::size_t k) const { return inconsistent_.at(k) == 0; }

  /// Some x with A x = b_k, or nullopt when b_k is outside the column space.
  std::optional<Vector> solution(std::size_t k) const {
    if (!consistent(k)) return std::nullopt;
    Vector x(ncols_);
    back_substitute(x, [&](std::uint32_t r) { return rhs_[r * nrhs_ + k]; });
    return x;
  }

  std::vector<std::uint32_t> free_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < ncols_; ++c)
      if (!col_done_[c]) out.push_back(c);
    return out;
  }

  /// One vector per free column: 1 there, 0 on the other free columns.
  std::vector<Vector> kernel_basis() const {
    std::vector<Vector> out;
    for (std::uint32_t f : free_columns()) {
      Vector x(ncols_);
      x[f] = field_.one();
      back_substitute(x, [&](std::uint32_t) { return field_.zero(); });
      out.push_back(std::move(x));
    }
    return out;
  }

  std::size_t peak_nnz() const noexcept { return peak_nnz_; }

 private:
  struct Row {
    std::vector<std::uint32_t> cols;
    std::vector<FieldElem> vals;
  };

  struct Candidate {
    std::uint64_t cost = std::numeric_limits<std::uint64_t>::max();
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    bool better_than(const Candidate& o) const {
      if (cost != o.cost) return cost < o.cost;
      if (row != o.row) return row < o.row;
      return col < o.col;
    }
  };

  template <class Rhs>
  void back_substitute(Vector& x, Rhs rhs_of) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto [r, c] = *it;
      const Row& row = rows_[r];
      FieldElem s = rhs_of(r);
      FieldElem pivot_value{};
      for (std::size_t t = 0; t < row.cols.size(); ++t) {
        if (row.cols[t] == c) {
          pivot_value = row.vals[t];
        } else if (x[row.cols[t]].value != 0) {
          s = field_.sub(s, field_.mul(row.vals[t], x[row.cols[t]]));
        }
      }
      x[c] = field_.div(s, pivot_value);
    }
  }

  std::optional<FieldElem> entry(std::uint32_t r, std::uint32_t c) const {
    const auto& cols = rows_[r].cols;
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return std::nullopt;
    return rows_[r].vals[static_cast<std::size_t>(it - cols.begin())];
  }

  void set_count(std::uint32_t c, std::uint32_t value) {
    if (col_count_[c] > 0 && !col_done_[c]) col_queue_.erase({col_count_[c], c});
    col_count_[c] = value;
    if (value > 0 && !col_done_[c]) col_queue_.insert({value, c});
  }

  void retire_empty_row(std::uint32_t r) {
    active_[r] = 0;
    for (std::size_t k = 0; k < nrhs_; ++k)
      if (rhs_[r * nrhs_ + k].value != 0) inconsistent_[k] = 1;
  }

  Candidate choose_pivot() const {
    Candidate best;
    std::size_t seen = 0;
    for (auto it = row_queue_.begin(); it != row_queue_.end() && seen < options_.search_depth; ++it, ++seen) {
      const auto [len, r] = *it;
      for (std::uint32_t c : rows_[r].cols) {
        Candidate cand{std::uint64_t{len - 1} * (col_count_[c] - 1), r, c};
        if (cand.better_than(best)) best = cand;
      }
      if (best.cost == 0) return best;
    }
    seen = 0;
    for (auto it = col_queue_.begin(); it != col_queue_.end() && seen < options_.search_depth; ++it, ++seen) {
      const auto [count, c] = *it;
      for (std::uint32_t r : col_rows_[c]) {
        if (!active_[r] || !entry(r, c)) continue;
        Candidate cand{std::uint64_t{rows_[r].cols.size() - 1} * (count - 1), r, c};
        if (cand.better_than(best)) best = cand;
      }
    }
    return best;
  }

  void eliminate() {
    std::vector<std::uint32_t> targets;
    Row merged;
    while (!row_queue_.empty()) {
      const Candidate piv = choose_pivot();
      const std::uint32_t pr = piv.row, pc = piv.col;
      const Row& prow = rows_[pr];
      const FieldElem inv_pivot = field_.inv(*entry(pr, pc));

      targets.clear();
      for (std::uint32_t r : col_rows_[pc])
        if (r != pr && active_[r]) targets.push_back(r);
      std::ranges::sort(targets);
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

      for (std::uint32_t r : targets) {
        auto value = entry(r, pc);
        if (!value) continue;
        const FieldElem alpha = field_.mul(*value, inv_pivot);
        Row& row = rows_[r];
        row_queue_.erase({static_cast<std::uint32_t>(row.cols.size()), r});
        merged.cols.clear();
        merged.vals.clear();
        std::size_t i = 0, j = 0;
        while (i < row.cols.size() || j < prow.cols.size()) {
          if (j == prow.cols.size() || (i < row.cols.size() && row.cols[i] < prow.cols[j])) {
            merged.cols.push_back(row.cols[i]);
            merged.vals.push_back(row.vals[i]);
            ++i;
          } else if (i == row.cols.size() || prow.cols[j] < row.cols[i]) {
            const std::uint32_t c = prow.cols[j];
            merged.cols.push_back(c);
            merged.vals.push_back(field_.neg(field_.mul(alpha, prow.vals[j])));
            set_count(c, col_count_[c] + 1);
            col_rows_[c].push_back(r);
            ++j;
          } else {
            const std::uint32_t c = row.cols[i];
            const FieldElem v = field_.sub(row.vals[i], field_.mul(alpha, prow.vals[j]));
            if (v.value != 0) {
              merged.cols.push_back(c);
              merged.vals.push_back(v);
            } else {
              set_count(c, col_count_[c] - 1);
            }
            ++i;
            ++j;
          }
        }
        live_nnz_ += merged.cols.size();
        live_nnz_ -= row.cols.size();
        std::swap(row.cols, merged.cols);
        std::swap(row.vals, merged.vals);
        for (std::size_t k = 0; k < nrhs_; ++k) {
          FieldElem& t = rhs_[r * nrhs_ + k];
          t = field_.sub(t, field_.mul(alpha, rhs_[pr * nrhs_ + k]));
        }
        if (row.cols.empty()) {
          retire_empty_row(r);
        } else {
          row_queue_.insert({static_cast<std::uint32_t>(row.cols.size()), r});
        }
      }

      row_queue_.erase({static_cast<std::uint32_t>(prow.cols.size()), pr});
      active_[pr] = 0;
      for (std::uint32_t c : prow.cols) set_count(c, col_count_[c] - 1);
      if (col_count_[pc] != 0) throw Error(ErrorKind::precondition_violated, "pivot column not cleared");
      col_done_[pc] = 1;
      col_rows_[pc].clear();
      col_rows_[pc].shrink_to_fit();
      pivots_.emplace_back(pr, pc);

      peak_nnz_ = std::max(peak_nnz_, live_nnz_);
      if (options_.nnz_budget != 0 && live_nnz_ > options_.nnz_budget)
        throw Error(ErrorKind::budget_exceeded,
                    "sparse elimination exceeded " + std::to_string(options_.nnz_budget) + " stored entries");
    }
  }

  Field field_;
  Options options_;
  std::size_t nrows_, ncols_, nrhs_;
  std::vector<Row> rows_;
  std::vector<FieldElem> rhs_;
  std::vector<char> active_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<char> col_done_;
  std::vector<char> inconsistent_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> row_queue_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> col_queue_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots_;
  std::size_t live_nnz_ = 0;
  std::size_t peak_nnz_ = 0;
};

}  // namespace bok
