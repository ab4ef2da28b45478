#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "splinedim/mesh.hpp"
#include "splinedim/ordering.hpp"

namespace splinedim {

// n*(n-1)/2 for n >= 2, else 0. The single binomial convention used by every
// formula in this library.
long long binom2(long long n);

// Invariants of the ideal generated by the (r+1)-st powers of t distinct
// linear forms through one point: Omega-1 is the socle degree of the
// quotient, a and b the multiplicities of its last free module.
struct VertexTerm {
  long long t = 0;
  long long omega = 0;
  long long a = 0;
  long long b = 0;

  bool operator==(const VertexTerm&) const = default;
};

// Omega = floor(t*r/(t-1)) + 1, a = t(r+1) + (1-t)Omega, b = t-1-a for t >= 2;
// all zero for t <= 1.
VertexTerm omega_a_b(long long t, long long r);

// Per-vertex contribution in the homological bounds:
//   t*binom2(k+1-r) - b*binom2(k+2-Omega) - a*binom2(k+1-Omega).
// Evaluates to 0 for t = 0 (empty edge set) and binom2(k+1-r) for t = 1.
long long vertex_term_hom(long long t, long long r, long long k);

// Per-vertex contribution in Schumaker's form, valid for t >= 2:
//   binom2(k+2) - binom2(r+2) - sum_{j=1..k-r} max(r+j+1-j*t, 0).
long long vertex_term_sch(long long t, long long r, long long k);

// Lower bound on dim C^r_k: binom2(k+2) + f1_int*binom2(k+1-r) minus the sum
// of vertex_term_hom over interior vertices with their true slope counts.
long long lower_bound_hom(const Triangulation& t, int r, int k);

// Same formula with ordering-dependent t~ counts; an upper bound for any
// ordering of the interior vertices.
long long upper_bound_hom(const Triangulation& t, const OrderedStats& stats,
                          int r, int k);
long long upper_bound_hom(const Triangulation& t,
                          const std::vector<int>& ordering, int r, int k);

// Schumaker's lower bound, evaluated from its own global form (kept textually
// independent of lower_bound_hom; their equality is a continuous self-test).
long long schumaker_lower(const Triangulation& t, int r, int k);

struct NotSchumakerOrderingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schumaker's upper bound. Throws NotSchumakerOrderingError unless
// consecutive vertices of the ordering share a triangle; some meshes admit no
// such ordering at all.
long long schumaker_upper(const Triangulation& t, const OrderedStats& stats,
                          int r, int k);
long long schumaker_upper(const Triangulation& t,
                          const std::vector<int>& ordering, int r, int k);

// Everything the CLI reports for one (mesh, r, k).
struct BoundReport {
  int r = 0;
  int k = 0;
  long long lbh = 0;
  long long lbs = 0;
  std::optional<long long> ubh_for_ordering;
  std::optional<long long> ubs_for_ordering;
  std::optional<long long> best_ubh;
  std::optional<long long> oracle_dim;
  std::optional<long long> homology_defect;
  bool exactness_certified = false;
  // The trivial floor dim >= binom2(k+2) (global polynomials), reported as an
  // annotation and never substituted into the bounds.
  long long trivial_floor = 0;
  bool ordering_has_zero_tilde = false;

  // Throws InternalInconsistencyError when a proven relation fails
  // (lbh == lbs, lbh <= oracle <= best_ubh, defect >= 0).
  void check_invariants() const;
};

}  // namespace splinedim
