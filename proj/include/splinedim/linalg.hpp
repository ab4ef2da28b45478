#pragma once

#include <utility>
#include <vector>

#include "splinedim/rational.hpp"

namespace splinedim {

// Sparse integer row: (column, coefficient) pairs, strictly ascending columns,
// nonzero coefficients.
using SparseRow = std::vector<std::pair<int, Int>>;

// Divides out the content (gcd of coefficients) and makes the leading
// coefficient positive. No-op on empty rows.
void normalize_row(SparseRow& row);

// r := (b/g)*r - (a/g)*pivot where a = r[col], b = pivot[col], g = gcd(a, b);
// cancels `col` exactly. Result is content-normalized.
SparseRow eliminate(const SparseRow& row, const SparseRow& pivot, int col);

// Rank over the rationals of the span of the given integer rows, by exact
// fraction-free row echelon insertion. Pivot choice only affects speed; the
// result is independent of row order.
long long rank_of_rows(const std::vector<SparseRow>& rows, long long ncols);

// Incremental echelon form, one pivot row per leading column.
class RowEchelon {
 public:
  // Reduces `row` against the pivots; inserts the remainder as a new pivot
  // if nonzero. Returns true when the row increased the rank.
  bool insert(SparseRow row);

  long long rank() const { return static_cast<long long>(pivots_.size()); }

 private:
  // leading column -> pivot row
  std::vector<std::pair<int, SparseRow>> pivots_;  // sorted by leading column
  const SparseRow* find(int col) const;
};

}  // namespace splinedim
