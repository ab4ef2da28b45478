#include "splinedim/oracle.hpp"

#include <algorithm>

#include "splinedim/bounds.hpp"

namespace splinedim {

std::vector<std::pair<int, int>> monomial_basis(int k) {
  std::vector<std::pair<int, int>> basis;
  basis.reserve((k + 1) * (k + 2) / 2);
  for (int d = 0; d <= k; ++d) {
    for (int alpha = d; alpha >= 0; --alpha) {
      basis.emplace_back(alpha, d - alpha);
    }
  }
  return basis;
}

namespace {

// Bivariate polynomial in the edge frame (u, v), dense, truncated to
// u-degree <= rmax. Coefficients of u-degree beyond rmax are never read, and
// truncation is closed under the multiplications below.
struct FramePoly {
  int rmax;
  int kmax;
  std::vector<Int> c;  // c[du * (kmax+1) + dv]

  FramePoly(int r, int k) : rmax(r), kmax(k), c((r + 1) * (k + 1)) {}
  Int& at(int du, int dv) { return c[du * (kmax + 1) + dv]; }
  const Int& at(int du, int dv) const { return c[du * (kmax + 1) + dv]; }
};

// result = p * (lu*u + lv*v + l0)
FramePoly multiply_linear(const FramePoly& p, const Int& lu, const Int& lv,
                          const Int& l0) {
  FramePoly out(p.rmax, p.kmax);
  for (int du = 0; du <= p.rmax; ++du) {
    for (int dv = 0; dv <= p.kmax; ++dv) {
      const Int& v = p.at(du, dv);
      if (v == 0) continue;
      if (l0 != 0) out.at(du, dv) += l0 * v;
      if (lv != 0 && dv + 1 <= p.kmax) out.at(du, dv + 1) += lv * v;
      if (lu != 0 && du + 1 <= p.rmax) out.at(du + 1, dv) += lu * v;
    }
  }
  return out;
}

std::array<Int, 2> primitive_direction(const Point2& from, const Point2& to) {
  Rat dx = to.x - from.x;
  Rat dy = to.y - from.y;
  Int scale = lcm(dx.get_den(), dy.get_den());
  Int ix = Rat(dx * scale).get_num();
  Int iy = Rat(dy * scale).get_num();
  Int g = gcd(ix, iy);
  if (g != 0) {
    ix /= g;
    iy /= g;
  }
  return {ix, iy};
}

}  // namespace

std::vector<ConstraintRow> edge_smoothness_rows(const Triangulation& t,
                                                int edge_id, int r, int k) {
  if (edge_id < 0 || edge_id >= t.f1()) throw MeshError("edge id out of range");
  if (t.edge_on_boundary[edge_id]) {
    throw MeshError("edge " + std::to_string(edge_id) +
                    " is not interior; smoothness rows apply to interior edges");
  }
  if (r < 0 || k < r) throw std::invalid_argument("need 0 <= r <= k");

  const auto& e = t.edges[edge_id];
  const EdgeForm form = edge_form(t, edge_id);
  const auto dir = primitive_direction(t.vertices[e[0]], t.vertices[e[1]]);
  const Int& dx = dir[0];
  const Int& dy = dir[1];
  // Frame: u = A x + B y + C (the edge form), v = dx x + dy y (along the
  // edge). Inverting, with D = A dy - B dx != 0:
  //   D x = dy (u - C) - B v,   D y = -dx (u - C) + A v.
  const Int det = form.a * dy - form.b * dx;

  const auto basis = monomial_basis(k);
  const int block = static_cast<int>(basis.size());

  // table[i] = (D x)^alpha (D y)^beta for basis[i] = (alpha, beta),
  // as a polynomial in (u, v) truncated to u-degree <= r.
  std::vector<FramePoly> table;
  table.reserve(block);
  // Index of x^alpha y^0 within the basis, for the recurrence below.
  auto pure_x_index = [&](int alpha) {
    return alpha == 0 ? 0 : alpha * (alpha + 1) / 2;  // first entry of degree alpha
  };
  for (int i = 0; i < block; ++i) {
    const auto [alpha, beta] = basis[i];
    if (alpha == 0 && beta == 0) {
      FramePoly one(r, k);
      one.at(0, 0) = 1;
      table.push_back(std::move(one));
    } else if (beta == 0) {
      table.push_back(
          multiply_linear(table[pure_x_index(alpha - 1)], dy, -form.b, -dy * form.c));
    } else {
      // x^alpha y^(beta-1) has index of the previous degree's entry.
      int prev = (alpha + beta - 1) * (alpha + beta) / 2 + (alpha + beta - 1 - alpha);
      table.push_back(
          multiply_linear(table[prev], -dx, form.a, dx * form.c));
    }
  }

  std::vector<Int> det_pow(k + 1);
  det_pow[0] = 1;
  for (int i = 1; i <= k; ++i) det_pow[i] = det_pow[i - 1] * det;

  int s1 = t.edge_triangles[edge_id][0];
  int s2 = t.edge_triangles[edge_id][1];
  if (s1 > s2) std::swap(s1, s2);

  std::vector<ConstraintRow> rows;
  rows.reserve((r + 1) * (k + 1));
  for (int j = 0; j <= r; ++j) {
    for (int m = 0; m + j <= k; ++m) {
      ConstraintRow row;
      row.edge = edge_id;
      row.order_normal = j;
      row.order_along = m;
      // All entries share the scale D^k: entry (alpha, beta) is the (u^j v^m)
      // coefficient of x^alpha y^beta times D^(k - alpha - beta).
      for (int i = 0; i < block; ++i) {
        const auto [alpha, beta] = basis[i];
        const Int& base = table[i].at(j, m);
        if (base == 0) continue;
        row.coeffs.emplace_back(s1 * block + i, base * det_pow[k - alpha - beta]);
      }
      const size_t first_block = row.coeffs.size();
      for (size_t idx = 0; idx < first_block; ++idx) {
        row.coeffs.emplace_back(row.coeffs[idx].first + (s2 - s1) * block,
                                -row.coeffs[idx].second);
      }
      normalize_row(row.coeffs);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ConstraintSystem assemble_constraints(const Triangulation& t, int r, int k) {
  ConstraintSystem system;
  system.cols = static_cast<long long>(t.f2()) * binom2(k + 2);
  for (int e = 0; e < t.f1(); ++e) {
    if (t.edge_on_boundary[e]) continue;
    auto rows = edge_smoothness_rows(t, e, r, k);
    for (auto& row : rows) system.rows.push_back(std::move(row));
  }
  return system;
}

long long spline_dimension(const Triangulation& t, int r, int k) {
  if (r < 0 || k < r) throw std::invalid_argument("need 0 <= r <= k");
  const ValidationReport report = validate_disk(t);
  if (!report.ok()) throw MeshError(report.summary());

  const ConstraintSystem system = assemble_constraints(t, r, k);
  RowEchelon echelon;
  for (const auto& row : system.rows) echelon.insert(row.coeffs);
  return system.cols - echelon.rank();
}

long long homology_defect(const Triangulation& t, int r, int k) {
  const long long dim = spline_dimension(t, r, k);
  const long long lower = lower_bound_hom(t, r, k);
  if (dim < lower) {
    throw InternalInconsistencyError(
        "oracle dimension " + std::to_string(dim) + " below lower bound " +
        std::to_string(lower) + " (r=" + std::to_string(r) +
        ", k=" + std::to_string(k) + ")");
  }
  return dim - lower;
}

long long fatpoint_quotient_dim(const std::vector<SlopeKey>& slopes, int r, int k) {
  if (slopes.empty()) throw std::invalid_argument("need at least one slope");
  if (r < 0 || k < 0) throw std::invalid_argument("need r, k >= 0");
  {
    auto sorted = slopes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate slopes; deduplicate before calling");
    }
  }

  const long long space = binom2(k + 2);
  const int mult_deg = k - r - 1;  // degree of the generators' cofactors
  if (mult_deg < 0) return space;  // ideal empty in degree k

  // Trivariate monomials of degree exactly k, grouped by z-exponent; the
  // matrix is block-diagonal across these groups.
  auto column = [&](int z_exp, int x_exp) {
    // offset of group z_exp, plus position with x-exponent descending
    int offset = 0;
    for (int c = 0; c < z_exp; ++c) offset += k - c + 1;
    return offset + (k - z_exp - x_exp);
  };

  std::vector<SparseRow> rows;
  for (const auto& [a, b] : slopes) {
    // (a x + b y)^(r+1)
    std::vector<Int> form(r + 2);
    for (int i = 0; i <= r + 1; ++i) {
      Int bin;
      mpz_bin_uiui(bin.get_mpz_t(), r + 1, i);
      Int av, bv;
      mpz_pow_ui(av.get_mpz_t(), a.get_mpz_t(), r + 1 - i);
      mpz_pow_ui(bv.get_mpz_t(), b.get_mpz_t(), i);
      form[i] = bin * av * bv;  // coefficient of x^(r+1-i) y^i
    }
    for (int ez = 0; ez <= mult_deg; ++ez) {
      for (int ex = mult_deg - ez; ex >= 0; --ex) {
        SparseRow row;
        for (int i = 0; i <= r + 1; ++i) {
          if (form[i] == 0) continue;
          row.emplace_back(column(ez, ex + r + 1 - i), form[i]);
        }
        normalize_row(row);
        rows.push_back(std::move(row));
      }
    }
  }
  return space - rank_of_rows(rows, space);
}

}  // namespace splinedim
