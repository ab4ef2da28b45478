#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinedim/mesh.hpp"
#include "splinedim/refine.hpp"
#include "support/meshgen.hpp"

using namespace splinedim;
namespace ts = splinedim::testsupport;

namespace {

Point2 pt(long x, long y) { return {Rat(x), Rat(y)}; }

}  // namespace

TEST_CASE("parse: single triangle f-vector") {
  const auto t = parse_triangulation(R"({
    "vertices": [["0","0"], ["1","0"], ["0","1"]],
    "triangles": [[0,1,2]]
  })");
  CHECK(t.f0() == 3);
  CHECK(t.f1() == 3);
  CHECK(t.f2() == 1);
  CHECK(t.f0_interior() == 0);
  CHECK(t.f1_interior() == 0);
  CHECK(t.f0_boundary() == 3);
  CHECK(t.f1_boundary() == 3);
}

TEST_CASE("parse: two triangles sharing an edge") {
  const auto t = parse_triangulation(R"({
    "vertices": [["0","0"], ["1","0"], ["0","1"], ["0","-1"]],
    "triangles": [[0,1,2], [0,1,3]]
  })");
  CHECK(t.f1_interior() == 1);
  CHECK(t.f0_interior() == 0);
  CHECK(t.edge_index(0, 1) >= 0);
  CHECK_FALSE(t.edge_on_boundary[t.edge_index(0, 1)]);
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_WITH_AS(
      parse_triangulation(R"({"vertices": [["0","0"],["1","0"],["0","1"],["1","1"]],
                              "triangles": [[0,1,5]]})"),
      doctest::Contains("index out of range"), MeshError);
  CHECK_THROWS_AS(
      parse_triangulation(R"({"vertices": [["0","0"],["1","0"],["0.5","1"]],
                              "triangles": [[0,1,2]]})"),
      MeshError);  // float literal rejected
  CHECK_THROWS_WITH_AS(
      parse_triangulation(R"({"vertices": [["0","0"],["1","0"],["0","1"],["0","1"]],
                              "triangles": [[0,1,2],[0,1,3]]})"),
      doctest::Contains("duplicate vertex"), MeshError);
  CHECK_THROWS_AS(parse_triangulation(R"({"vertices": [["1/0","0"],["1","0"],["0","1"]],
                                          "triangles": [[0,1,2]]})"),
                  MeshError);
  CHECK_THROWS_AS(parse_triangulation("not json"), MeshError);
}

TEST_CASE("rational literal grammar") {
  CHECK(parse_rational("3/6") == Rat(1, 2));
  CHECK(parse_rational("-4/2") == Rat(-2));
  CHECK(rational_to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0x10"), std::invalid_argument);
}

TEST_CASE("validate: twelve-split of one triangle is a disk with V-E+F = 1") {
  const auto record = ps12_split(ts::single_triangle(pt(0, 0), pt(6, 0), pt(3, 6)));
  const auto& child = record.child;
  CHECK(child.f0() == 10);
  CHECK(child.f1() == 21);
  CHECK(child.f2() == 12);
  CHECK(child.f0() - child.f1() + child.f2() == 1);
  CHECK(validate_disk(child).ok());
}

TEST_CASE("validate: pinch point is rejected") {
  const auto report = validate_disk(ts::pinch_pair());
  CHECK_FALSE(report.ok());
  bool mentions_boundary_or_disk = false;
  for (const auto& f : report.failures) {
    if (f.find("boundary") != std::string::npos ||
        f.find("disk") != std::string::npos) {
      mentions_boundary_or_disk = true;
    }
  }
  CHECK(mentions_boundary_or_disk);
}

TEST_CASE("validate: degenerate triangle is rejected") {
  const auto report = validate_disk(ts::degenerate_triangle());
  CHECK_FALSE(report.ok());
  CHECK(report.failures.front().find("degenerate") != std::string::npos);
}

TEST_CASE("validate: report documents the overlap-check scope") {
  CHECK(validate_disk(ts::single_triangle()).note.find("overlap") !=
        std::string::npos);
}

TEST_CASE("slope_count on the twelve-split interior vertices") {
  const auto record = ps12_split(ts::single_triangle(pt(0, 0), pt(6, 0), pt(3, 6)));
  const auto& child = record.child;
  CHECK(slope_count(child, record.interior_point_child[0]) == 3);  // centroid
  for (int n : record.medial_midpoint_child[0]) {
    CHECK(slope_count(child, n) == 2);  // medial-edge midpoints
  }
  CHECK(child.f0_interior() == 4);
}

TEST_CASE("slope_count: generic fan counts all spokes") {
  const auto t = ts::fan5_generic();
  CHECK(slope_count(t, 0) == 5);
  CHECK(t.vertex_edges[0].size() == 5);
  const auto t4 = ts::fan4();
  CHECK(slope_count(t4, 0) == 2);  // opposite spokes are collinear
  CHECK(t4.vertex_edges[0].size() == 4);
}

TEST_CASE("slope_count: only interior vertices qualify") {
  CHECK_THROWS_WITH_AS(slope_count(ts::single_triangle(), 0),
                       doctest::Contains("not interior"), MeshError);
}

TEST_CASE("edge_form canonical coefficients") {
  CHECK(edge_form_between(pt(0, 0), pt(1, 0)) == EdgeForm{0, 1, 0});
  CHECK(edge_form_between(pt(0, 0), pt(1, 1)) == EdgeForm{1, -1, 0});
  CHECK(edge_form_between(pt(1, 0), pt(0, 1)) == EdgeForm{1, 1, -1});
  // Rational endpoints reduce to coprime integers.
  const auto f = edge_form_between({Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 3)});
  CHECK(f.eval({Rat(1, 2), Rat(0)}) == 0);
  CHECK(f.eval({Rat(0), Rat(1, 3)}) == 0);
  CHECK(gcd(gcd(f.a, f.b), f.c) == 1);
}

TEST_CASE("edge_form vanishes exactly on the edge") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto t = ts::random_disk_mesh(seed);
    for (int e = 0; e < t.f1(); ++e) {
      const auto form = edge_form(t, e);
      CHECK(form.eval(t.vertices[t.edges[e][0]]) == 0);
      CHECK(form.eval(t.vertices[t.edges[e][1]]) == 0);
      CHECK((form.a != 0 || form.b != 0));
    }
    // A point off the edge line evaluates nonzero: use each triangle's
    // opposite corner.
    for (int ti = 0; ti < t.f2(); ++ti) {
      const auto& tri = t.triangles[ti];
      for (int c = 0; c < 3; ++c) {
        const int e = t.edge_index(tri[c], tri[(c + 1) % 3]);
        CHECK(edge_form(t, e).eval(t.vertices[tri[(c + 2) % 3]]) != 0);
      }
    }
  }
}

TEST_CASE("property: f-vector and slopes invariant under affine maps") {
  const std::array<Rat, 6> maps[] = {
      {Rat(2), Rat(1), Rat(0), Rat(1), Rat(3), Rat(-1)},
      {Rat(0), Rat(-1), Rat(1), Rat(0), Rat(1, 2), Rat(5)},
      {Rat(1, 3), Rat(0), Rat(2, 5), Rat(-3), Rat(0), Rat(0)},
  };
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    const auto t = ts::random_disk_mesh(seed);
    for (const auto& map : maps) {
      const auto image = ts::affine_image(t, map);
      CHECK(image.f0() == t.f0());
      CHECK(image.f1() == t.f1());
      CHECK(image.f2() == t.f2());
      CHECK(image.f0_interior() == t.f0_interior());
      CHECK(image.f1_interior() == t.f1_interior());
      CHECK(validate_disk(image).ok());
      for (int v : t.interior_vertices) {
        CHECK(slope_count(image, v) == slope_count(t, v));
      }
    }
  }
}

TEST_CASE("property: f-vector and slopes invariant under relabeling") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    const auto t = ts::random_disk_mesh(seed);
    const auto r = ts::relabeled(t, seed * 7 + 1);
    CHECK(r.f0() == t.f0());
    CHECK(r.f1() == t.f1());
    CHECK(r.f2() == t.f2());
    CHECK(r.f0_interior() == t.f0_interior());
    CHECK(r.f1_interior() == t.f1_interior());
    std::vector<int> t_slopes, r_slopes;
    for (int v : t.interior_vertices) t_slopes.push_back(slope_count(t, v));
    for (int v : r.interior_vertices) r_slopes.push_back(slope_count(r, v));
    std::sort(t_slopes.begin(), t_slopes.end());
    std::sort(r_slopes.begin(), r_slopes.end());
    CHECK(t_slopes == r_slopes);
  }
}

TEST_CASE("property: interior vertices have at least two slopes") {
  for (std::uint64_t seed = 31; seed <= 60; ++seed) {
    const auto t = ts::random_disk_mesh(seed);
    for (int v : t.interior_vertices) {
      CHECK(slope_count(t, v) >= 2);
    }
  }
}

TEST_CASE("mesh json round-trips") {
  const auto t = ts::random_disk_mesh(77);
  const auto again = parse_triangulation(write_mesh_json(t));
  CHECK(again.vertices == t.vertices);
  CHECK(again.triangles == t.triangles);
  CHECK(write_mesh_json(again) == write_mesh_json(t));
}

TEST_CASE("generator produces valid disks across seeds") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto t = ts::random_disk_mesh(seed);
    CHECK(validate_disk(t).ok());
    CHECK(t.f0_interior() <= 10);
  }
}
