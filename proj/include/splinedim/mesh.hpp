#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splinedim/rational.hpp"

namespace splinedim {

// A point of the plane {z = 1}; the z-coordinate is implicit and always 1.
struct Point2 {
  Rat x;
  Rat y;

  bool operator==(const Point2& other) const {
    return x == other.x && y == other.y;
  }
  bool operator<(const Point2& other) const {
    if (x != other.x) return x < other.x;
    return y < other.y;
  }
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Direction class of a line, as a reduced, sign-normalized integer pair.
// Two edges through a common vertex are collinear iff their keys are equal.
using SlopeKey = std::pair<Int, Int>;

// Homogeneous linear form a*x + b*y + c*z vanishing on the cone over an edge.
// Coefficients are coprime integers with the first nonzero one positive.
struct EdgeForm {
  Int a;
  Int b;
  Int c;

  // Evaluation at (p.x, p.y, 1).
  Rat eval(const Point2& p) const;
  SlopeKey slope_key() const;

  bool operator==(const EdgeForm& other) const {
    return a == other.a && b == other.b && c == other.c;
  }
};

EdgeForm edge_form_between(const Point2& p, const Point2& q);

// Immutable planar simplicial complex supported on a topological disk.
// Construct through build_triangulation / parse_triangulation; all derived
// incidence fields are populated there. Safe for concurrent reads.
struct Triangulation {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise where possible

  // Derived.
  std::vector<std::array<int, 2>> edges;          // canonical (lo, hi) pairs
  std::vector<std::vector<int>> edge_triangles;   // incident triangle ids per edge
  std::vector<bool> edge_on_boundary;             // exactly one incident triangle
  std::vector<bool> vertex_on_boundary;
  std::vector<int> interior_vertices;             // ascending vertex ids
  std::vector<std::vector<int>> vertex_edges;     // incident edge ids, ascending
  std::map<std::pair<int, int>, int> edge_lookup; // canonical pair -> edge id

  int f0() const { return static_cast<int>(vertices.size()); }
  int f1() const { return static_cast<int>(edges.size()); }
  int f2() const { return static_cast<int>(triangles.size()); }
  int f0_interior() const { return static_cast<int>(interior_vertices.size()); }
  int f1_interior() const;
  int f0_boundary() const { return f0() - f0_interior(); }
  int f1_boundary() const { return f1() - f1_interior(); }

  // -1 when the pair is not an edge.
  int edge_index(int u, int v) const;
  bool is_interior_vertex(int v) const { return !vertex_on_boundary.at(v); }
};

// Twice the signed area of (a, b, c); exact orientation predicate.
Rat orientation(const Point2& a, const Point2& b, const Point2& c);

// Builds the incidence structure. Throws MeshError on structural defects that
// make incidence meaningless: out-of-range or repeated triangle indices,
// duplicate vertex coordinates, fewer than 3 vertices or no triangles.
// Geometric/topological defects are left to validate_disk.
Triangulation build_triangulation(std::vector<Point2> vertices,
                                  std::vector<std::array<int, 3>> triangles);

struct ValidationReport {
  std::vector<std::string> failures;  // one entry per failed invariant
  // Checks not performed, stated so callers know the report's scope.
  std::string note =
      "pairwise triangle-overlap testing not performed; orientation and "
      "boundary-cycle checks catch folded configurations";

  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

// Confirms the disk invariants: nondegenerate triangles, edge-manifoldness,
// single closed boundary cycle, connectivity, Euler characteristic 1,
// consistent orientation, and the self-check that every edge incident to an
// interior vertex is interior.
ValidationReport validate_disk(const Triangulation& t);

// Parses the mesh file format:
//   { "vertices": [["0","0"], ["1/2","3/4"], ...], "triangles": [[0,1,2], ...] }
// and returns a validated triangulation. Throws MeshError on parse or
// validation failure. Unknown keys are ignored.
Triangulation parse_triangulation(const std::string& document);

// Serializes in the same format, fractions reduced. `extra` entries are
// emitted after the mesh fields (used for refinement provenance).
std::string write_mesh_json(
    const Triangulation& t,
    const std::vector<std::pair<std::string, std::vector<int>>>& extra = {});

// Number of distinct slopes among the edges containing an interior vertex.
// Throws MeshError when `vertex` is not interior.
int slope_count(const Triangulation& t, int vertex);

EdgeForm edge_form(const Triangulation& t, int edge_id);

// Distinct slope keys of the edges incident to a vertex, sorted.
std::vector<SlopeKey> incident_slopes(const Triangulation& t, int vertex);

}  // namespace splinedim
