#include "splinedim/bounds.hpp"

#include <string>

namespace splinedim {

long long binom2(long long n) {
  return n >= 2 ? n * (n - 1) / 2 : 0;
}

VertexTerm omega_a_b(long long t, long long r) {
  if (t <= 1) return VertexTerm{t, 0, 0, 0};
  VertexTerm v;
  v.t = t;
  v.omega = (t * r) / (t - 1) + 1;  // exact floor: t*r >= 0, t-1 > 0
  v.a = t * (r + 1) + (1 - t) * v.omega;
  v.b = t - 1 - v.a;
  return v;
}

long long vertex_term_hom(long long t, long long r, long long k) {
  if (t <= 0) return 0;
  const VertexTerm v = omega_a_b(t, r);
  if (t == 1) return binom2(k + 1 - r);
  return t * binom2(k + 1 - r) - v.b * binom2(k + 2 - v.omega) -
         v.a * binom2(k + 1 - v.omega);
}

long long vertex_term_sch(long long t, long long r, long long k) {
  long long penalty = 0;
  for (long long j = 1; j <= k - r; ++j) {
    long long excess = r + j + 1 - j * t;
    if (excess > 0) penalty += excess;
  }
  return binom2(k + 2) - binom2(r + 2) - penalty;
}

namespace {

void require_degrees(int r, int k) {
  if (r < 0 || k < r) {
    throw std::invalid_argument("need 0 <= r <= k, got r=" + std::to_string(r) +
                                ", k=" + std::to_string(k));
  }
}

}  // namespace

long long lower_bound_hom(const Triangulation& t, int r, int k) {
  require_degrees(r, k);
  long long sum = 0;
  for (int v : t.interior_vertices) {
    sum += vertex_term_hom(slope_count(t, v), r, k);
  }
  return binom2(k + 2) + static_cast<long long>(t.f1_interior()) * binom2(k + 1 - r) - sum;
}

long long upper_bound_hom(const Triangulation& t, const OrderedStats& stats,
                          int r, int k) {
  require_degrees(r, k);
  if (stats.ordering.size() != t.interior_vertices.size()) {
    throw MeshError("ordering does not cover the interior vertices");
  }
  long long sum = 0;
  for (int tilde : stats.tilde_t) {
    sum += vertex_term_hom(tilde, r, k);
  }
  return binom2(k + 2) + static_cast<long long>(t.f1_interior()) * binom2(k + 1 - r) - sum;
}

long long upper_bound_hom(const Triangulation& t,
                          const std::vector<int>& ordering, int r, int k) {
  return upper_bound_hom(t, tilde_slope_counts(t, ordering), r, k);
}

namespace {

// Shared body of Schumaker's two bounds: the global form with the given
// per-vertex counts (t_i for the lower bound, t~_i for the upper one).
long long schumaker_formula(const Triangulation& t,
                            const std::vector<int>& counts, int r, int k) {
  long long correction = 0;
  for (int ti : counts) {
    for (long long j = 1; j <= k - r; ++j) {
      long long excess = r + j + 1 - j * static_cast<long long>(ti);
      if (excess > 0) correction += excess;
    }
  }
  return binom2(k + 2) + static_cast<long long>(t.f1_interior()) * binom2(k - r + 1) -
         static_cast<long long>(t.f0_interior()) * (binom2(k + 2) - binom2(r + 2)) +
         correction;
}

}  // namespace

long long schumaker_lower(const Triangulation& t, int r, int k) {
  require_degrees(r, k);
  std::vector<int> counts;
  counts.reserve(t.interior_vertices.size());
  for (int v : t.interior_vertices) counts.push_back(slope_count(t, v));
  return schumaker_formula(t, counts, r, k);
}

long long schumaker_upper(const Triangulation& t, const OrderedStats& stats,
                          int r, int k) {
  require_degrees(r, k);
  if (!is_schumaker_ordering(t, stats.ordering)) {
    throw NotSchumakerOrderingError(
        "no Schumaker-valid ordering: consecutive vertices must share a triangle");
  }
  return schumaker_formula(t, stats.tilde_t, r, k);
}

long long schumaker_upper(const Triangulation& t,
                          const std::vector<int>& ordering, int r, int k) {
  return schumaker_upper(t, tilde_slope_counts(t, ordering), r, k);
}

void BoundReport::check_invariants() const {
  if (lbh != lbs) {
    throw InternalInconsistencyError(
        "lower bounds disagree: lbh=" + std::to_string(lbh) +
        " lbs=" + std::to_string(lbs));
  }
  if (homology_defect && *homology_defect < 0) {
    throw InternalInconsistencyError("negative homology defect");
  }
  if (oracle_dim) {
    if (lbh > *oracle_dim) {
      throw InternalInconsistencyError(
          "sandwich violated: lbh=" + std::to_string(lbh) +
          " > oracle=" + std::to_string(*oracle_dim));
    }
    if (best_ubh && *oracle_dim > *best_ubh) {
      throw InternalInconsistencyError(
          "sandwich violated: oracle=" + std::to_string(*oracle_dim) +
          " > ubh=" + std::to_string(*best_ubh));
    }
    if (ubh_for_ordering && *oracle_dim > *ubh_for_ordering) {
      throw InternalInconsistencyError(
          "sandwich violated: oracle=" + std::to_string(*oracle_dim) +
          " > ubh(ordering)=" + std::to_string(*ubh_for_ordering));
    }
  }
  if (best_ubh && *best_ubh < lbh) {
    throw InternalInconsistencyError("upper bound below lower bound");
  }
}

}  // namespace splinedim
