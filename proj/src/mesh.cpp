#include "splinedim/mesh.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace splinedim {

namespace {

std::pair<int, int> canonical_pair(int u, int v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

// Scales (a, b, c) rationals to coprime integers, first nonzero positive.
std::array<Int, 3> normalize_triple(const Rat& a, const Rat& b, const Rat& c) {
  Int lcm_den = 1;
  for (const Rat* q : {&a, &b, &c}) {
    Int den = q->get_den();
    lcm_den = lcm(lcm_den, den);
  }
  std::array<Int, 3> out{};
  const Rat* in[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    Rat scaled = *in[i] * Rat(lcm_den);
    scaled.canonicalize();
    out[i] = scaled.get_num();
  }
  Int g = gcd(gcd(out[0], out[1]), out[2]);
  if (g != 0) {
    for (auto& v : out) v /= g;
  }
  for (const auto& v : out) {
    if (v != 0) {
      if (v < 0) {
        for (auto& w : out) w = -w;
      }
      break;
    }
  }
  return out;
}

}  // namespace

Rat EdgeForm::eval(const Point2& p) const {
  return Rat(a) * p.x + Rat(b) * p.y + Rat(c);
}

SlopeKey EdgeForm::slope_key() const {
  Int sa = a, sb = b;
  Int g = gcd(sa, sb);
  if (g != 0) {
    sa /= g;
    sb /= g;
  }
  if (sa < 0 || (sa == 0 && sb < 0)) {
    sa = -sa;
    sb = -sb;
  }
  return {sa, sb};
}

EdgeForm edge_form_between(const Point2& p, const Point2& q) {
  // Cross product of the lifted endpoints (p.x, p.y, 1) x (q.x, q.y, 1).
  Rat a = p.y - q.y;
  Rat b = q.x - p.x;
  Rat c = p.x * q.y - p.y * q.x;
  auto n = normalize_triple(a, b, c);
  EdgeForm form{n[0], n[1], n[2]};
  if (form.a == 0 && form.b == 0) {
    throw MeshError("degenerate edge: identical endpoints");
  }
  return form;
}

Rat orientation(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int Triangulation::f1_interior() const {
  int n = 0;
  for (bool on_boundary : edge_on_boundary) {
    if (!on_boundary) ++n;
  }
  return n;
}

int Triangulation::edge_index(int u, int v) const {
  auto it = edge_lookup.find(canonical_pair(u, v));
  return it == edge_lookup.end() ? -1 : it->second;
}

Triangulation build_triangulation(std::vector<Point2> vertices,
                                  std::vector<std::array<int, 3>> triangles) {
  if (vertices.size() < 3) throw MeshError("fewer than 3 vertices");
  if (triangles.empty()) throw MeshError("no triangles");

  {
    std::map<Point2, int> seen;
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
      auto [it, inserted] = seen.emplace(vertices[i], i);
      if (!inserted) {
        throw MeshError("duplicate vertex coordinates: vertices " +
                        std::to_string(it->second) + " and " + std::to_string(i));
      }
    }
  }

  const int n = static_cast<int>(vertices.size());
  for (size_t ti = 0; ti < triangles.size(); ++ti) {
    auto& tri = triangles[ti];
    for (int idx : tri) {
      if (idx < 0 || idx >= n) {
        throw MeshError("triangle " + std::to_string(ti) +
                        ": index out of range (" + std::to_string(idx) + ")");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError("triangle " + std::to_string(ti) + ": repeated vertex index");
    }
    // Counterclockwise where orientation is decidable; degenerate triangles
    // are reported by validate_disk.
    if (sgn(orientation(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]])) < 0) {
      std::swap(tri[1], tri[2]);
    }
  }

  Triangulation t;
  t.vertices = std::move(vertices);
  t.triangles = std::move(triangles);

  for (int ti = 0; ti < t.f2(); ++ti) {
    const auto& tri = t.triangles[ti];
    for (int e = 0; e < 3; ++e) {
      auto key = canonical_pair(tri[e], tri[(e + 1) % 3]);
      auto it = t.edge_lookup.find(key);
      if (it == t.edge_lookup.end()) {
        int id = static_cast<int>(t.edges.size());
        t.edge_lookup.emplace(key, id);
        t.edges.push_back({key.first, key.second});
        t.edge_triangles.emplace_back();
        it = t.edge_lookup.find(key);
      }
      t.edge_triangles[it->second].push_back(ti);
    }
  }

  t.edge_on_boundary.resize(t.edges.size());
  t.vertex_on_boundary.assign(t.f0(), false);
  for (int e = 0; e < t.f1(); ++e) {
    t.edge_on_boundary[e] = t.edge_triangles[e].size() == 1;
    if (t.edge_on_boundary[e]) {
      t.vertex_on_boundary[t.edges[e][0]] = true;
      t.vertex_on_boundary[t.edges[e][1]] = true;
    }
  }
  for (int v = 0; v < t.f0(); ++v) {
    if (!t.vertex_on_boundary[v]) t.interior_vertices.push_back(v);
  }

  t.vertex_edges.assign(t.f0(), {});
  for (int e = 0; e < t.f1(); ++e) {
    t.vertex_edges[t.edges[e][0]].push_back(e);
    t.vertex_edges[t.edges[e][1]].push_back(e);
  }

  return t;
}

std::string ValidationReport::summary() const {
  if (failures.empty()) return "valid disk";
  std::ostringstream os;
  os << "invalid:";
  for (const auto& f : failures) os << "\n  - " << f;
  return os.str();
}

ValidationReport validate_disk(const Triangulation& t) {
  ValidationReport report;
  auto fail = [&](const std::string& msg) { report.failures.push_back(msg); };

  for (int ti = 0; ti < t.f2(); ++ti) {
    const auto& tri = t.triangles[ti];
    if (sgn(orientation(t.vertices[tri[0]], t.vertices[tri[1]],
                        t.vertices[tri[2]])) == 0) {
      fail("degenerate triangle " + std::to_string(ti) + " (collinear points)");
    }
  }

  for (int e = 0; e < t.f1(); ++e) {
    if (t.edge_triangles[e].size() > 2) {
      fail("edge (" + std::to_string(t.edges[e][0]) + "," +
           std::to_string(t.edges[e][1]) + ") shared by more than two triangles");
    }
  }

  // Isolated vertices break the f-vector bookkeeping.
  for (int v = 0; v < t.f0(); ++v) {
    if (t.vertex_edges[v].empty()) {
      fail("isolated vertex " + std::to_string(v));
    }
  }

  // Connectivity of the dual graph (triangles linked through shared edges).
  {
    std::vector<bool> seen(t.f2(), false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
      int ti = queue.front();
      queue.pop();
      const auto& tri = t.triangles[ti];
      for (int e = 0; e < 3; ++e) {
        int eid = t.edge_index(tri[e], tri[(e + 1) % 3]);
        if (eid < 0) continue;
        for (int other : t.edge_triangles[eid]) {
          if (!seen[other]) {
            seen[other] = true;
            ++reached;
            queue.push(other);
          }
        }
      }
    }
    if (reached != t.f2()) fail("complex is not connected through shared edges");
  }

  // Boundary must be one closed cycle: every boundary vertex has exactly two
  // incident boundary edges and the boundary-edge graph is a single cycle.
  {
    std::vector<std::vector<int>> boundary_at(t.f0());
    int boundary_edges = 0;
    for (int e = 0; e < t.f1(); ++e) {
      if (t.edge_on_boundary[e]) {
        ++boundary_edges;
        boundary_at[t.edges[e][0]].push_back(e);
        boundary_at[t.edges[e][1]].push_back(e);
      }
    }
    if (boundary_edges == 0) {
      fail("boundary is empty (not a disk)");
    } else {
      bool degrees_ok = true;
      int start = -1;
      for (int v = 0; v < t.f0(); ++v) {
        if (boundary_at[v].empty()) continue;
        if (start < 0) start = v;
        if (boundary_at[v].size() != 2) {
          degrees_ok = false;
          fail("boundary is not a single cycle: vertex " + std::to_string(v) +
               " lies on " + std::to_string(boundary_at[v].size()) +
               " boundary edges");
        }
      }
      if (degrees_ok && start >= 0) {
        // Walk the cycle from `start`; it must cover every boundary edge.
        int covered = 0;
        int prev_edge = -1;
        int v = start;
        do {
          int next_edge = boundary_at[v][0] == prev_edge ? boundary_at[v][1]
                                                         : boundary_at[v][0];
          ++covered;
          v = t.edges[next_edge][0] == v ? t.edges[next_edge][1]
                                         : t.edges[next_edge][0];
          prev_edge = next_edge;
        } while (v != start && covered <= boundary_edges);
        if (covered != boundary_edges) {
          fail("boundary is not a single cycle (multiple components)");
        }
      }
    }
  }

  if (t.f0() - t.f1() + t.f2() != 1) {
    fail("Euler characteristic V-E+F = " +
         std::to_string(t.f0() - t.f1() + t.f2()) + ", expected 1 (not a disk)");
  }

  // With every triangle counterclockwise, the two triangles of an interior
  // edge must traverse it in opposite directions; agreement means a fold.
  for (int e = 0; e < t.f1(); ++e) {
    if (t.edge_triangles[e].size() != 2) continue;
    int dir[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
      const auto& tri = t.triangles[t.edge_triangles[e][s]];
      for (int i = 0; i < 3; ++i) {
        if (tri[i] == t.edges[e][0] && tri[(i + 1) % 3] == t.edges[e][1]) dir[s] = 1;
        if (tri[i] == t.edges[e][1] && tri[(i + 1) % 3] == t.edges[e][0]) dir[s] = -1;
      }
    }
    if (dir[0] == dir[1]) {
      fail("inconsistent orientation across edge (" +
           std::to_string(t.edges[e][0]) + "," + std::to_string(t.edges[e][1]) +
           ") (folded or overlapping triangles)");
    }
  }

  // Self-check: all edges at an interior vertex are interior edges.
  for (int v : t.interior_vertices) {
    for (int e : t.vertex_edges[v]) {
      if (t.edge_on_boundary[e]) {
        fail("interior vertex " + std::to_string(v) +
             " touches boundary edge (" + std::to_string(t.edges[e][0]) + "," +
             std::to_string(t.edges[e][1]) + ")");
      }
    }
  }

  return report;
}

Triangulation parse_triangulation(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("mesh file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("triangles")) {
    throw MeshError("mesh file must be an object with \"vertices\" and \"triangles\"");
  }

  std::vector<Point2> vertices;
  for (const auto& entry : doc["vertices"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_string()) {
      throw MeshError("each vertex must be a pair of rational strings");
    }
    try {
      vertices.push_back(Point2{parse_rational(entry[0].get<std::string>()),
                                parse_rational(entry[1].get<std::string>())});
    } catch (const std::invalid_argument& e) {
      throw MeshError(e.what());
    }
  }

  std::vector<std::array<int, 3>> triangles;
  for (const auto& entry : doc["triangles"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer() || !entry[2].is_number_integer()) {
      throw MeshError("each triangle must be a triple of vertex indices");
    }
    triangles.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
  }

  Triangulation t = build_triangulation(std::move(vertices), std::move(triangles));
  ValidationReport report = validate_disk(t);
  if (!report.ok()) throw MeshError(report.summary());
  return t;
}

std::string write_mesh_json(
    const Triangulation& t,
    const std::vector<std::pair<std::string, std::vector<int>>>& extra) {
  nlohmann::ordered_json doc;
  auto& vs = doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& p : t.vertices) {
    vs.push_back({rational_to_string(p.x), rational_to_string(p.y)});
  }
  auto& ts = doc["triangles"] = nlohmann::ordered_json::array();
  for (const auto& tri : t.triangles) {
    ts.push_back({tri[0], tri[1], tri[2]});
  }
  for (const auto& [key, values] : extra) {
    doc[key] = values;
  }
  return doc.dump(2) + "\n";
}

EdgeForm edge_form(const Triangulation& t, int edge_id) {
  const auto& e = t.edges.at(edge_id);
  return edge_form_between(t.vertices[e[0]], t.vertices[e[1]]);
}

std::vector<SlopeKey> incident_slopes(const Triangulation& t, int vertex) {
  std::set<SlopeKey> keys;
  for (int e : t.vertex_edges.at(vertex)) {
    keys.insert(edge_form(t, e).slope_key());
  }
  return {keys.begin(), keys.end()};
}

int slope_count(const Triangulation& t, int vertex) {
  if (vertex < 0 || vertex >= t.f0()) {
    throw MeshError("vertex " + std::to_string(vertex) + " out of range");
  }
  if (t.vertex_on_boundary[vertex]) {
    throw MeshError("vertex " + std::to_string(vertex) + " is not interior");
  }
  return static_cast<int>(incident_slopes(t, vertex).size());
}

}  // namespace splinedim
