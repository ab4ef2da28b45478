#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "splinedim/mesh.hpp"

namespace splinedim {

// An interior-vertex ordering plus, per position i, the edge set N~(g_i) of
// incident edges whose other endpoint is a boundary vertex or an earlier
// interior vertex, and the count t~_i of distinct slopes among them.
struct OrderedStats {
  std::vector<int> ordering;               // interior vertex ids by position
  std::vector<int> tilde_t;                // per position
  std::vector<std::vector<int>> tilde_edges;  // edge ids per position

  // t~ = 0 happens only when every neighbor of a vertex is a later interior
  // vertex; such orderings are flagged in reports.
  bool has_zero_tilde() const;
};

// Throws MeshError when `ordering` is not a permutation of the interior
// vertices of `t`.
OrderedStats tilde_slope_counts(const Triangulation& t,
                                const std::vector<int>& ordering);

// True iff every pair of consecutive listed vertices is contained in a common
// triangle (the numbering precondition of the classical upper bound).
bool is_schumaker_ordering(const Triangulation& t,
                           const std::vector<int>& ordering);

enum class SearchOutcome {
  Found,
  NoneExists,        // exhaustive search completed without a hit
  BudgetExhausted,   // absence is unknown, never reported as nonexistence
};

struct SchumakerSearchResult {
  SearchOutcome outcome = SearchOutcome::NoneExists;
  std::vector<int> ordering;  // meaningful only when outcome == Found
};

// Searches for an ordering where consecutive vertices share a triangle
// (a Hamiltonian path in the share-a-triangle graph). Exhaustive up to
// `exhaustive_limit` interior vertices; beyond that a budgeted search that
// can only answer Found or BudgetExhausted.
SchumakerSearchResult find_schumaker_ordering(const Triangulation& t,
                                              int exhaustive_limit = 12);

// Total order on the interior vertices in which every vertex has, at its
// position, at least two distinct-slope edges into the boundary-or-earlier
// set (t~_i >= 2 throughout). Built by greedy peeling with backtracking and
// verified post-hoc; failure on a valid disk is an internal inconsistency.
std::vector<int> lemma_order(const Triangulation& t);

struct MinimizeResult {
  std::vector<int> ordering;
  long long value = 0;   // upper bound attained by `ordering`
  bool exhaustive = false;  // true when all permutations were enumerated
};

enum class MinimizeStrategy { Auto, Exhaustive, Greedy };

// All t~ multisets achievable by some interior-vertex ordering, each with the
// lexicographically first ordering achieving it. Exhaustive over all
// permutations; throws std::invalid_argument beyond `limit` interior vertices.
std::map<std::vector<int>, std::vector<int>> tilde_multisets_exhaustive(
    const Triangulation& t, int limit = 9);

// Minimizes the homological upper bound over interior-vertex orderings.
// Exhaustive for up to 8 interior vertices (the achievable t~ multisets are
// enumerated once, so the permutation sweep is degree-independent); otherwise
// greedy construction (append the vertex maximizing the marginal vertex term)
// plus pairwise-swap hill climbing within `budget` bound evaluations. Ties
// always break to the lowest vertex index, so results are reproducible;
// `seed` adds optional random restarts on top of the deterministic start.
MinimizeResult minimize_upper_bound(const Triangulation& t, int r, int k,
                                    MinimizeStrategy strategy = MinimizeStrategy::Auto,
                                    long long budget = 200000,
                                    std::uint64_t seed = 0);

// True iff every interior vertex satisfies t~_i = t_i or t~_i >= r+2; then
// the upper bound meets the lower bound at every degree. The threshold is
// r+2, not r+1: at t~ = r+1 the socle invariants of the two counts differ
// (Omega jumps to r+2) and the bounds can strictly separate.
bool exactness_certificate(const Triangulation& t,
                           const std::vector<int>& ordering, int r);

// Searches for an ordering passing the certificate above (greedy with
// backtracking, lowest-index ties). Empty result means none was found within
// the search, not that none exists.
std::vector<int> find_certifying_ordering(const Triangulation& t, int r);

}  // namespace splinedim
