#include "splinedim/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace splinedim {

void normalize_row(SparseRow& row) {
  if (row.empty()) return;
  Int g = 0;
  for (const auto& [col, val] : row) {
    g = gcd(g, val);
    if (g == 1) break;
  }
  const bool flip = sgn(row.front().second) < 0;
  if (g == 1 && !flip) return;
  for (auto& [col, val] : row) {
    if (g != 1) val /= g;
    if (flip) val = -val;
  }
}

SparseRow eliminate(const SparseRow& row, const SparseRow& pivot, int col) {
  Int a, b;
  for (const auto& [c, v] : row) {
    if (c == col) {
      a = v;
      break;
    }
  }
  for (const auto& [c, v] : pivot) {
    if (c == col) {
      b = v;
      break;
    }
  }
  if (a == 0 || b == 0) {
    throw std::logic_error("eliminate: both rows must be nonzero at the pivot column");
  }
  Int g = gcd(a, b);
  Int row_scale = b / g;
  Int pivot_scale = a / g;

  SparseRow out;
  out.reserve(row.size() + pivot.size());
  auto it = row.begin();
  auto jt = pivot.begin();
  while (it != row.end() || jt != pivot.end()) {
    if (jt == pivot.end() || (it != row.end() && it->first < jt->first)) {
      out.emplace_back(it->first, row_scale * it->second);
      ++it;
    } else if (it == row.end() || jt->first < it->first) {
      out.emplace_back(jt->first, -pivot_scale * jt->second);
      ++jt;
    } else {
      Int v = row_scale * it->second - pivot_scale * jt->second;
      if (v != 0) out.emplace_back(it->first, std::move(v));
      ++it;
      ++jt;
    }
  }
  normalize_row(out);
  return out;
}

const SparseRow* RowEchelon::find(int col) const {
  auto it = std::lower_bound(
      pivots_.begin(), pivots_.end(), col,
      [](const auto& entry, int c) { return entry.first < c; });
  if (it != pivots_.end() && it->first == col) return &it->second;
  return nullptr;
}

bool RowEchelon::insert(SparseRow row) {
  normalize_row(row);
  while (!row.empty()) {
    int lead = row.front().first;
    const SparseRow* pivot = find(lead);
    if (pivot == nullptr) {
      auto it = std::lower_bound(
          pivots_.begin(), pivots_.end(), lead,
          [](const auto& entry, int c) { return entry.first < c; });
      pivots_.insert(it, {lead, std::move(row)});
      return true;
    }
    row = eliminate(row, *pivot, lead);
  }
  return false;
}

long long rank_of_rows(const std::vector<SparseRow>& rows, long long ncols) {
  RowEchelon echelon;
  for (const auto& row : rows) {
    echelon.insert(row);
    if (echelon.rank() == ncols) break;  // cannot grow further
  }
  return echelon.rank();
}

}  // namespace splinedim
