#include "splinedim/refine.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace splinedim {

namespace {

Point2 midpoint(const Point2& a, const Point2& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

Point2 centroid(const Point2& a, const Point2& b, const Point2& c) {
  return {(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3};
}

// Registry deduplicating child vertices by exact coordinates.
struct VertexRegistry {
  std::vector<Point2> points;
  std::map<Point2, int> index;

  int intern(const Point2& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(points.size());
    index.emplace(p, id);
    points.push_back(p);
    return id;
  }
};

bool strictly_inside_triangle(const Point2& p, const Point2& a, const Point2& b,
                              const Point2& c) {
  int s1 = sgn(orientation(a, b, p));
  int s2 = sgn(orientation(b, c, p));
  int s3 = sgn(orientation(c, a, p));
  return s1 != 0 && s1 == s2 && s2 == s3;
}

// Parameter of p along segment (a, b); p must be on the line through a, b.
Rat segment_parameter(const Point2& p, const Point2& a, const Point2& b) {
  if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
  return (p.y - a.y) / (b.y - a.y);
}

// Rational approximation of sqrt(value) good enough for an incenter guess;
// the result is validated exactly by the crossing checks afterwards.
Rat approx_sqrt(const Rat& value) {
  static const Int kScale = Int(1) << 48;
  Int scaled_num = value.get_num() * value.get_den() * kScale * kScale;
  Int root;
  mpz_sqrt(root.get_mpz_t(), scaled_num.get_mpz_t());
  Rat out(root, value.get_den() * kScale);
  out.canonicalize();
  return out;
}

Rat squared_distance(const Point2& a, const Point2& b) {
  Rat dx = a.x - b.x;
  Rat dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Point2 approx_incenter(const Point2& a, const Point2& b, const Point2& c) {
  Rat la = approx_sqrt(squared_distance(b, c));
  Rat lb = approx_sqrt(squared_distance(a, c));
  Rat lc = approx_sqrt(squared_distance(a, b));
  Rat total = la + lb + lc;
  return {(la * a.x + lb * b.x + lc * c.x) / total,
          (la * a.y + lb * b.y + lc * c.y) / total};
}

}  // namespace

RefinementRecord ps12_split(const Triangulation& t) {
  {
    ValidationReport report = validate_disk(t);
    if (!report.ok()) throw MeshError(report.summary());
  }

  RefinementRecord record;
  VertexRegistry registry;

  record.parent_vertex_child.reserve(t.f0());
  for (const auto& p : t.vertices) {
    record.parent_vertex_child.push_back(registry.intern(p));
  }
  record.edge_point_child.resize(t.f1());
  for (int e = 0; e < t.f1(); ++e) {
    record.edge_point_child[e] =
        registry.intern(midpoint(t.vertices[t.edges[e][0]], t.vertices[t.edges[e][1]]));
  }

  std::vector<std::array<int, 3>> child_triangles;
  for (int ti = 0; ti < t.f2(); ++ti) {
    const auto& tri = t.triangles[ti];
    const int v0 = record.parent_vertex_child[tri[0]];
    const int v1 = record.parent_vertex_child[tri[1]];
    const int v2 = record.parent_vertex_child[tri[2]];
    const int m01 = record.edge_point_child[t.edge_index(tri[0], tri[1])];
    const int m12 = record.edge_point_child[t.edge_index(tri[1], tri[2])];
    const int m02 = record.edge_point_child[t.edge_index(tri[0], tri[2])];
    const int g = registry.intern(
        centroid(t.vertices[tri[0]], t.vertices[tri[1]], t.vertices[tri[2]]));
    // Medial-edge midpoints; n0 lies on the median through corner 0, etc.
    const int n0 = registry.intern(midpoint(registry.points[m01], registry.points[m02]));
    const int n1 = registry.intern(midpoint(registry.points[m01], registry.points[m12]));
    const int n2 = registry.intern(midpoint(registry.points[m02], registry.points[m12]));

    record.interior_point_child.push_back(g);
    record.medial_midpoint_child.push_back({n0, n1, n2});

    const std::array<std::array<int, 3>, 12> children = {{
        {v0, m01, n0}, {v0, n0, m02},
        {v1, m12, n1}, {v1, n1, m01},
        {v2, m02, n2}, {v2, n2, m12},
        {m01, n1, g},  {n1, m12, g},
        {m12, n2, g},  {n2, m02, g},
        {m02, n0, g},  {n0, m01, g},
    }};
    for (const auto& child : children) {
      child_triangles.push_back(child);
      record.parent_of_triangle.push_back(ti);
    }
  }

  record.child = build_triangulation(registry.points, child_triangles);
  return record;
}

namespace {

std::vector<Point2> ps6_interior_points(const Triangulation& t,
                                        const Ps6Options& options,
                                        Ps6InteriorRule rule) {
  std::vector<Point2> nus;
  nus.reserve(t.f2());
  for (int ti = 0; ti < t.f2(); ++ti) {
    const auto& tri = t.triangles[ti];
    const Point2& a = t.vertices[tri[0]];
    const Point2& b = t.vertices[tri[1]];
    const Point2& c = t.vertices[tri[2]];
    switch (rule) {
      case Ps6InteriorRule::Centroid:
        nus.push_back(centroid(a, b, c));
        break;
      case Ps6InteriorRule::Incenter:
        nus.push_back(approx_incenter(a, b, c));
        break;
      case Ps6InteriorRule::Explicit:
        if (options.explicit_interior.size() != static_cast<size_t>(t.f2())) {
          throw MeshError("explicit interior points: need one per triangle");
        }
        nus.push_back(options.explicit_interior[ti]);
        break;
      default:
        throw MeshError("unresolved interior point rule");
    }
    if (!strictly_inside_triangle(nus.back(), a, b, c)) {
      throw Ps6CrossingError("interior point of triangle " + std::to_string(ti) +
                             " is not strictly inside it");
    }
  }
  return nus;
}

struct CrossingFailure {
  int edge;
  int tri_i, tri_j;
  Point2 nu_i, nu_j;
};

// For each interior parent edge, the crossing of segment nu_i nu_j with the
// edge; strictness is verified, not assumed.
std::vector<std::optional<Point2>> ps6_crossings(
    const Triangulation& t, const std::vector<Point2>& nus,
    std::optional<CrossingFailure>& failure) {
  std::vector<std::optional<Point2>> crossing(t.f1());
  for (int e = 0; e < t.f1(); ++e) {
    if (t.edge_on_boundary[e]) continue;
    const int ti = t.edge_triangles[e][0];
    const int tj = t.edge_triangles[e][1];
    const Point2& u = t.vertices[t.edges[e][0]];
    const Point2& w = t.vertices[t.edges[e][1]];
    const Point2& ni = nus[ti];
    const Point2& nj = nus[tj];

    // h(p) = orientation(u, w, p) is an affine form vanishing on the edge
    // line; nu_i and nu_j lie strictly on opposite sides of it.
    const Rat hi = orientation(u, w, ni);
    const Rat hj = orientation(u, w, nj);
    if (sgn(hi) == 0 || sgn(hj) == 0 || sgn(hi) == sgn(hj)) {
      failure = CrossingFailure{e, ti, tj, ni, nj};
      return crossing;
    }
    const Rat s = hi / (hi - hj);
    const Point2 mu{ni.x + s * (nj.x - ni.x), ni.y + s * (nj.y - ni.y)};
    const Rat along = segment_parameter(mu, u, w);
    if (!(along > 0 && along < 1)) {
      failure = CrossingFailure{e, ti, tj, ni, nj};
      return crossing;
    }
    crossing[e] = mu;
  }
  return crossing;
}

std::string point_str(const Point2& p) {
  return "(" + rational_to_string(p.x) + ", " + rational_to_string(p.y) + ")";
}

}  // namespace

RefinementRecord ps6_split(const Triangulation& t, const Ps6Options& options) {
  {
    ValidationReport report = validate_disk(t);
    if (!report.ok()) throw MeshError(report.summary());
  }

  std::vector<Ps6InteriorRule> attempts;
  if (options.interior_rule == Ps6InteriorRule::CentroidThenIncenter) {
    attempts = {Ps6InteriorRule::Centroid, Ps6InteriorRule::Incenter};
  } else {
    attempts = {options.interior_rule};
  }

  std::vector<Point2> nus;
  std::vector<std::optional<Point2>> crossing;
  std::optional<CrossingFailure> failure;
  for (size_t attempt = 0; attempt < attempts.size(); ++attempt) {
    failure.reset();
    nus = ps6_interior_points(t, options, attempts[attempt]);
    crossing = ps6_crossings(t, nus, failure);
    if (!failure) break;
    if (attempt + 1 == attempts.size()) {
      const auto& f = *failure;
      std::ostringstream os;
      os << "crossing condition violated on edge (" << t.edges[f.edge][0] << ","
         << t.edges[f.edge][1] << "): segment between nu_" << f.tri_i << " = "
         << point_str(f.nu_i) << " and nu_" << f.tri_j << " = "
         << point_str(f.nu_j)
         << " does not meet the open edge; supply explicit interior points";
      throw Ps6CrossingError(os.str());
    }
  }

  RefinementRecord record;
  VertexRegistry registry;
  record.parent_vertex_child.reserve(t.f0());
  for (const auto& p : t.vertices) {
    record.parent_vertex_child.push_back(registry.intern(p));
  }
  record.edge_point_child.resize(t.f1());
  for (int e = 0; e < t.f1(); ++e) {
    if (t.edge_on_boundary[e]) {
      Point2 p;
      if (options.boundary_rule == Ps6BoundaryRule::Midpoint) {
        p = midpoint(t.vertices[t.edges[e][0]], t.vertices[t.edges[e][1]]);
      } else {
        if (options.explicit_boundary.size() != static_cast<size_t>(t.f1()) ||
            !options.explicit_boundary[e]) {
          throw MeshError("explicit boundary points: need one per boundary edge");
        }
        p = *options.explicit_boundary[e];
        const Rat along =
            segment_parameter(p, t.vertices[t.edges[e][0]], t.vertices[t.edges[e][1]]);
        const EdgeForm line = edge_form(t, e);
        if (line.eval(p) != 0 || !(along > 0 && along < 1)) {
          throw MeshError("boundary point for edge " + std::to_string(e) +
                          " is not strictly inside the edge");
        }
      }
      record.edge_point_child[e] = registry.intern(p);
    } else {
      record.edge_point_child[e] = registry.intern(*crossing[e]);
    }
  }

  std::vector<std::array<int, 3>> child_triangles;
  for (int ti = 0; ti < t.f2(); ++ti) {
    const auto& tri = t.triangles[ti];
    const int nu = registry.intern(nus[ti]);
    record.interior_point_child.push_back(nu);
    for (int corner = 0; corner < 3; ++corner) {
      const int a = tri[corner];
      const int b = tri[(corner + 1) % 3];
      const int p = record.edge_point_child[t.edge_index(a, b)];
      child_triangles.push_back({nu, record.parent_vertex_child[a], p});
      child_triangles.push_back({nu, p, record.parent_vertex_child[b]});
      record.parent_of_triangle.push_back(ti);
      record.parent_of_triangle.push_back(ti);
    }
  }

  record.child = build_triangulation(registry.points, child_triangles);
  return record;
}

long long ps6_dimension_formula(long long f0, long long f0_interior,
                                long long f1_interior, int k) {
  if (k < 2) throw std::invalid_argument("six-split dimension formula needs k >= 2");
  auto binom2 = [](long long n) { return n >= 2 ? n * (n - 1) / 2 : 0; };
  if (k == 2) return 3 * f0;
  return binom2(k + 2) + f1_interior * binom2(k - 2) +
         2 * f0_interior * binom2(k - 1) + binom2(2 * k - 1) * (f0 - 2);
}

std::vector<int> ps6_peeled_numbering(const RefinementRecord& record,
                                     const Triangulation& parent) {
  if (record.interior_point_child.size() != static_cast<size_t>(parent.f2()) ||
      record.medial_midpoint_child.size() != 0) {
    throw MeshError("record is not a six-split of this parent");
  }

  std::vector<int> ordering;
  std::vector<char> triangle_done(parent.f2(), 0);
  std::vector<char> numbered(record.child.f0(), 0);
  // Edges of the moving boundary: original boundary plus processed triangles.
  std::vector<char> edge_settled(parent.f1(), 0);
  for (int e = 0; e < parent.f1(); ++e) edge_settled[e] = parent.edge_on_boundary[e];

  auto push_vertex = [&](int child_vertex) {
    if (child_vertex >= 0 && !numbered[child_vertex] &&
        record.child.is_interior_vertex(child_vertex)) {
      numbered[child_vertex] = 1;
      ordering.push_back(child_vertex);
    }
  };

  for (int done = 0; done < parent.f2(); ++done) {
    int chosen = -1;
    for (int ti = 0; ti < parent.f2() && chosen < 0; ++ti) {
      if (triangle_done[ti]) continue;
      const auto& tri = parent.triangles[ti];
      for (int c = 0; c < 3; ++c) {
        if (edge_settled[parent.edge_index(tri[c], tri[(c + 1) % 3])]) {
          chosen = ti;
          break;
        }
      }
    }
    if (chosen < 0) {
      throw InternalInconsistencyError(
          "boundary-inward peeling stalled on a valid disk");
    }
    const auto& tri = parent.triangles[chosen];
    push_vertex(record.interior_point_child[chosen]);           // nu
    for (int c = 0; c < 3; ++c) {                               // mu's
      const int e = parent.edge_index(tri[c], tri[(c + 1) % 3]);
      if (!parent.edge_on_boundary[e]) {
        push_vertex(record.edge_point_child[e]);
      }
    }
    for (int c = 0; c < 3; ++c) {                               // gamma's
      if (parent.is_interior_vertex(tri[c])) {
        push_vertex(record.parent_vertex_child[tri[c]]);
      }
    }
    triangle_done[chosen] = 1;
    for (int c = 0; c < 3; ++c) {
      edge_settled[parent.edge_index(tri[c], tri[(c + 1) % 3])] = 1;
    }
  }
  return ordering;
}

}  // namespace splinedim
