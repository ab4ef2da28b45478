#pragma once

#include <utility>
#include <vector>

#include "splinedim/linalg.hpp"
#include "splinedim/mesh.hpp"

namespace splinedim {

// Monomials x^alpha y^beta with alpha + beta <= k in graded lexicographic
// order (total degree ascending, then alpha descending). Fixed everywhere:
// the index of a monomial in this list is its column within a triangle block.
std::vector<std::pair<int, int>> monomial_basis(int k);

// One smoothness condition: a linear functional on the coefficient blocks of
// the two triangles of an interior edge. `coeffs` indexes global columns
// (triangle id * block size + monomial index).
struct ConstraintRow {
  int edge = -1;
  int order_normal = 0;   // power of the edge form (derivative order across)
  int order_along = 0;    // power of the along-edge coordinate
  SparseRow coeffs;
};

// Smoothness constraints for C^r matching of degree-<=k pieces: the system
// whose kernel is the spline space. One block of binom2(k+2) unknowns per
// triangle; every row touches exactly the two blocks of one interior edge.
struct ConstraintSystem {
  long long cols = 0;
  std::vector<ConstraintRow> rows;
};

// Rows forcing all coefficients of p_s1 - p_s2 with edge-form degree <= r to
// vanish, in an affine frame (edge form, edge direction) adapted to the edge.
// Row count is sum_{j=0..r} (k+1-j). Throws MeshError unless `edge_id` is an
// interior edge.
std::vector<ConstraintRow> edge_smoothness_rows(const Triangulation& t,
                                                int edge_id, int r, int k);

ConstraintSystem assemble_constraints(const Triangulation& t, int r, int k);

// Exact dimension of C^r_k: nullity (columns minus rank) of the assembled
// system over the rationals. Definition-level oracle, independent of every
// bound formula.
long long spline_dimension(const Triangulation& t, int r, int k);

// spline_dimension - lower_bound_hom; the degree-k dimension of the homology
// module measuring how far the lower bound is from exact. Never negative
// (throws InternalInconsistencyError if it were).
long long homology_defect(const Triangulation& t, int r, int k);

// dim (R/<l_1^{r+1}, ..., l_t^{r+1}>)_k for distinct lines l_i through one
// point, by exact rank of the degree-k coefficient matrix of the generators'
// multiples in three variables. Throws std::invalid_argument on duplicate
// slopes.
long long fatpoint_quotient_dim(const std::vector<SlopeKey>& slopes, int r, int k);

}  // namespace splinedim
