#pragma once

#include <array>
#include <optional>
#include <vector>

#include "splinedim/mesh.hpp"

namespace splinedim {

// A refinement output together with its provenance relative to the parent.
struct RefinementRecord {
  Triangulation child;
  std::vector<int> parent_of_triangle;   // child triangle -> parent triangle
  std::vector<int> parent_vertex_child;  // parent vertex id -> child vertex id
  std::vector<int> interior_point_child; // per parent triangle: nu (PS-6) or centroid (PS-12)
  std::vector<int> edge_point_child;     // per parent edge: the split point on it
  // PS-12 only: per parent triangle, the three medial-edge midpoints, in
  // order on the medians through parent corners 0, 1, 2.
  std::vector<std::array<int, 3>> medial_midpoint_child;
};

// Split every triangle into twelve by its medians and medial triangle:
// per parent triangle this adds the three edge midpoints, the centroid and
// the three median/medial intersection points (the medial-edge midpoints).
// Shared edges share midpoints, so the child conforms.
RefinementRecord ps12_split(const Triangulation& t);

struct Ps6CrossingError : MeshError {
  using MeshError::MeshError;
};

enum class Ps6InteriorRule {
  Centroid,           // exact, fails only on badly shaped neighbor pairs
  Incenter,           // rational approximation, verified exactly afterwards
  CentroidThenIncenter,  // default chain
  Explicit,
};

enum class Ps6BoundaryRule { Midpoint, Explicit };

struct Ps6Options {
  Ps6InteriorRule interior_rule = Ps6InteriorRule::CentroidThenIncenter;
  Ps6BoundaryRule boundary_rule = Ps6BoundaryRule::Midpoint;
  // Required for the Explicit rules: one point per parent triangle, strictly
  // interior; one point per parent boundary edge (indexed by parent edge id;
  // interior-edge entries ignored), strictly inside the edge.
  std::vector<Point2> explicit_interior;
  std::vector<std::optional<Point2>> explicit_boundary;
};

// The six-split: an interior point nu_i per triangle joined to its corners
// and to one point per edge; on a shared edge that point is the crossing of
// the segment nu_i nu_j with the edge, verified to be strictly interior.
// Throws Ps6CrossingError (naming the edge and both nu's) when the crossing
// condition fails and no fallback remains.
RefinementRecord ps6_split(const Triangulation& t, const Ps6Options& options = {});

// Closed form for dim C^1_k of the six-split, in terms of the PARENT mesh:
// 3*f0 for k = 2 and, for k >= 3,
//   binom2(k+2) + f1_int*binom2(k-2) + 2*f0_int*binom2(k-1) + binom2(2k-1)*(f0-2).
// The k >= 3 branch is audited against the exact oracle by the test suite;
// mismatches there are reported, never silently corrected here.
// Throws std::invalid_argument for k < 2.
long long ps6_dimension_formula(long long f0, long long f0_interior,
                                long long f1_interior, int k);

// The ordering used to certify the six-split: triangles peeled from the
// boundary inwards, and within each triangle nu first, then its unnumbered
// edge crossings, then its unnumbered interior parent corners.
std::vector<int> ps6_peeled_numbering(const RefinementRecord& record,
                                     const Triangulation& parent);

}  // namespace splinedim
