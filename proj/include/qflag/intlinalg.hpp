#pragma once
//
// Exact integer matrices: Hermite and Smith normal forms, saturated kernel
// lattices and lattice equality. Everything is fraction-free over Z.
//

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qflag/exactpoly.hpp"
#include "qflag/exec.hpp"

namespace qflag {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Integer> values);
  void swap_rows(std::size_t a, std::size_t b);

  bool is_zero() const;
  bool row_is_zero(std::size_t r) const;
  IntMatrix without_zero_rows() const;
  IntMatrix transposed() const;

  bool operator==(const IntMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// A sparse row: (column, value) pairs with strictly increasing columns.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

struct HermiteForm {
  IntMatrix hnf;        // row-style Hermite normal form
  IntMatrix transform;  // unimodular, transform * m == hnf
  std::size_t rank = 0;
};

// Upper echelon with positive pivots, entries above each pivot reduced into
// [0, pivot), zero rows at the bottom.
HermiteForm hermite_normal_form(const IntMatrix& m);

// Invariant factors d1 | d2 | ... of the Smith form, nonzero ones only.
std::vector<Integer> smith_invariants(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Rows form a Z-basis of {v : m v = 0}. The basis is built by unimodular
// updates, one constraint row at a time, so the lattice it spans is the
// full (saturated) integer kernel.
IntMatrix kernel_basis(const IntMatrix& m, Exec exec = Exec::parallel);
IntMatrix kernel_basis(std::span<const SparseRow> rows, std::size_t cols,
                       Exec exec = Exec::parallel);

// True iff the row lattices coincide.
bool lattices_equal(const IntMatrix& a, const IntMatrix& b);

// Finds integer c with c * m == target, or nothing if none exists.
std::optional<std::vector<Integer>> solve_row_combination(const IntMatrix& m,
                                                          std::span<const Integer> target);

nlohmann::json matrix_to_json(const IntMatrix& m);

}  // namespace qflag
