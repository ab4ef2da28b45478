#include "splinedim/ordering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "splinedim/bounds.hpp"

namespace splinedim {

namespace {

std::vector<SlopeKey> edge_slope_table(const Triangulation& t) {
  std::vector<SlopeKey> slopes;
  slopes.reserve(t.f1());
  for (int e = 0; e < t.f1(); ++e) slopes.push_back(edge_form(t, e).slope_key());
  return slopes;
}

void require_permutation(const Triangulation& t, const std::vector<int>& ordering) {
  if (ordering.size() != t.interior_vertices.size()) {
    throw MeshError("ordering is not a permutation of the interior vertices");
  }
  std::vector<int> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != t.interior_vertices) {
    throw MeshError("ordering is not a permutation of the interior vertices");
  }
}

// Incidence with slope classes renumbered to small ints, for the inner loops
// of the searches (no big-integer traffic there).
struct OrderingContext {
  const Triangulation& t;
  // per vertex: (neighbor vertex, slope class id), for interior vertices
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  explicit OrderingContext(const Triangulation& tri) : t(tri), adjacency(tri.f0()) {
    const auto slopes = edge_slope_table(tri);
    std::map<SlopeKey, int> ids;
    std::vector<int> edge_slope_id(tri.f1());
    for (int e = 0; e < tri.f1(); ++e) {
      auto [it, unused] = ids.emplace(slopes[e], static_cast<int>(ids.size()));
      edge_slope_id[e] = it->second;
    }
    for (int v : tri.interior_vertices) {
      for (int e : tri.vertex_edges[v]) {
        int w = tri.edges[e][0] == v ? tri.edges[e][1] : tri.edges[e][0];
        adjacency[v].emplace_back(w, edge_slope_id[e]);
      }
    }
  }

  // Distinct slopes among edges from v into settled vertices (boundary ones
  // count as settled).
  int tilde_count(const std::vector<char>& settled, int v) const {
    thread_local std::vector<int> ids;
    ids.clear();
    for (const auto& [w, slope] : adjacency[v]) {
      if (t.vertex_on_boundary[w] || settled[w]) {
        if (std::find(ids.begin(), ids.end(), slope) == ids.end()) {
          ids.push_back(slope);
        }
      }
    }
    return static_cast<int>(ids.size());
  }
};

}  // namespace

bool OrderedStats::has_zero_tilde() const {
  return std::any_of(tilde_t.begin(), tilde_t.end(), [](int t) { return t == 0; });
}

OrderedStats tilde_slope_counts(const Triangulation& t,
                                const std::vector<int>& ordering) {
  require_permutation(t, ordering);
  const auto slopes = edge_slope_table(t);

  OrderedStats stats;
  stats.ordering = ordering;
  stats.tilde_t.reserve(ordering.size());
  stats.tilde_edges.reserve(ordering.size());

  std::vector<char> earlier(t.f0(), 0);
  for (int v : ordering) {
    std::vector<int> edges;
    std::set<SlopeKey> keys;
    for (int e : t.vertex_edges[v]) {
      int w = t.edges[e][0] == v ? t.edges[e][1] : t.edges[e][0];
      if (t.vertex_on_boundary[w] || earlier[w]) {
        edges.push_back(e);
        keys.insert(slopes[e]);
      }
    }
    stats.tilde_edges.push_back(std::move(edges));
    stats.tilde_t.push_back(static_cast<int>(keys.size()));
    earlier[v] = 1;
  }
  return stats;
}

namespace {

std::vector<std::vector<char>> share_triangle_matrix(const Triangulation& t) {
  std::vector<std::vector<char>> share(t.f0(), std::vector<char>(t.f0(), 0));
  for (const auto& tri : t.triangles) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        share[tri[i]][tri[j]] = 1;
        share[tri[j]][tri[i]] = 1;
      }
    }
  }
  return share;
}

}  // namespace

bool is_schumaker_ordering(const Triangulation& t,
                           const std::vector<int>& ordering) {
  require_permutation(t, ordering);
  if (ordering.size() <= 1) return true;
  const auto share = share_triangle_matrix(t);
  for (size_t i = 0; i + 1 < ordering.size(); ++i) {
    if (!share[ordering[i]][ordering[i + 1]]) return false;
  }
  return true;
}

namespace {

// Hamiltonian path search over the share-a-triangle graph restricted to the
// interior vertices. Expands neighbors in ascending id order.
struct HamiltonianSearch {
  const std::vector<std::vector<int>>& adjacency;  // by dense local index
  int n;
  long long budget;
  bool exhausted = false;
  std::vector<int> path;
  std::vector<char> used;

  bool connected_through_unused(int from) const {
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    queue.push(from);
    seen[from] = 1;
    int reached = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int w : adjacency[v]) {
        if (!seen[w] && !used[w]) {
          seen[w] = 1;
          ++reached;
          queue.push(w);
        }
      }
    }
    int unused_total = 0;
    for (int v = 0; v < n; ++v) {
      if (!used[v]) ++unused_total;
    }
    return reached == unused_total;
  }

  bool extend() {
    if (static_cast<int>(path.size()) == n) return true;
    if (--budget < 0) {
      exhausted = true;
      return false;
    }
    int tail = path.back();
    if (!connected_through_unused(tail)) return false;
    for (int w : adjacency[tail]) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (extend()) return true;
      path.pop_back();
      used[w] = 0;
      if (exhausted) return false;
    }
    return false;
  }

  bool run() {
    for (int start = 0; start < n; ++start) {
      path.assign(1, start);
      used.assign(n, 0);
      used[start] = 1;
      if (extend()) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

SchumakerSearchResult find_schumaker_ordering(const Triangulation& t,
                                              int exhaustive_limit) {
  const auto& interior = t.interior_vertices;
  const int n = static_cast<int>(interior.size());
  SchumakerSearchResult result;
  if (n == 0) {
    result.outcome = SearchOutcome::Found;
    return result;
  }

  const auto share = share_triangle_matrix(t);
  std::vector<std::vector<int>> adjacency(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && share[interior[i]][interior[j]]) adjacency[i].push_back(j);
    }
  }

  HamiltonianSearch search{adjacency, n,
                           n <= exhaustive_limit ? 20'000'000LL : 200'000LL};
  if (search.run()) {
    result.outcome = SearchOutcome::Found;
    for (int idx : search.path) result.ordering.push_back(interior[idx]);
    return result;
  }
  result.outcome = (search.exhausted || n > exhaustive_limit)
                       ? SearchOutcome::BudgetExhausted
                       : SearchOutcome::NoneExists;
  return result;
}

namespace {

// Greedy peeling with backtracking: repeatedly append any interior vertex
// whose edges into the settled set satisfy `admit`, lowest index first.
bool peel(const Triangulation& t, const OrderingContext& context,
          const std::function<bool(int /*vertex*/, int /*tilde*/)>& admit,
          std::vector<char>& settled, std::vector<int>& out, long long& budget) {
  if (out.size() == t.interior_vertices.size()) return true;
  if (--budget < 0) return false;
  for (int v : t.interior_vertices) {
    if (settled[v]) continue;
    if (!admit(v, context.tilde_count(settled, v))) continue;
    settled[v] = 1;
    out.push_back(v);
    if (peel(t, context, admit, settled, out, budget)) return true;
    out.pop_back();
    settled[v] = 0;
  }
  return false;
}

std::vector<int> peel_order(const Triangulation& t,
                            const std::function<bool(int, int)>& admit,
                            long long budget) {
  const OrderingContext context(t);
  std::vector<char> settled(t.f0(), 0);
  std::vector<int> out;
  if (!peel(t, context, admit, settled, out, budget)) return {};
  return out;
}

}  // namespace

std::vector<int> lemma_order(const Triangulation& t) {
  if (t.interior_vertices.empty()) return {};
  auto order = peel_order(
      t, [](int, int tilde) { return tilde >= 2; }, 10'000'000LL);
  if (order.empty()) {
    throw InternalInconsistencyError(
        "no ordering with two distinct-slope edges into the settled set was "
        "found; such an order exists for every valid disk");
  }
  const auto stats = tilde_slope_counts(t, order);
  for (int tilde : stats.tilde_t) {
    if (tilde < 2) {
      throw InternalInconsistencyError("lemma_order produced t~ < 2");
    }
  }
  return order;
}

namespace {

// Per-vertex condition under which the upper-bound term equals the
// lower-bound one at every degree: equal counts, or both counts at least
// r+2 so that (Omega, a) = (r+1, r+1) on both sides and the difference
// (t - t~)*binom2(k+1-r) cancels against the b-multiplicity change. At
// t~ = r+1 the invariants jump (Omega = r+2) and the bounds can strictly
// separate, so r+1 does not qualify.
bool vertex_certifies(int t_full, int tilde, int r) {
  return tilde == t_full || tilde >= r + 2;
}

}  // namespace

std::vector<int> find_certifying_ordering(const Triangulation& t, int r) {
  std::vector<int> full_t(t.f0(), 0);
  for (int v : t.interior_vertices) full_t[v] = slope_count(t, v);
  return peel_order(
      t,
      [&](int v, int tilde) { return vertex_certifies(full_t[v], tilde, r); },
      1'000'000LL);
}

bool exactness_certificate(const Triangulation& t,
                           const std::vector<int>& ordering, int r) {
  const auto stats = tilde_slope_counts(t, ordering);
  for (size_t i = 0; i < stats.ordering.size(); ++i) {
    if (!vertex_certifies(slope_count(t, stats.ordering[i]), stats.tilde_t[i], r)) {
      return false;
    }
  }
  return true;
}

std::map<std::vector<int>, std::vector<int>> tilde_multisets_exhaustive(
    const Triangulation& t, int limit) {
  const int n = static_cast<int>(t.interior_vertices.size());
  if (n > limit) {
    throw std::invalid_argument("exhaustive ordering enumeration limited to " +
                                std::to_string(limit) + " interior vertices");
  }
  std::map<std::vector<int>, std::vector<int>> result;
  if (n == 0) {
    result.emplace(std::vector<int>{}, std::vector<int>{});
    return result;
  }

  const OrderingContext context(t);
  std::vector<int> perm = t.interior_vertices;  // ascending: lex-first start
  std::vector<char> settled(t.f0(), 0);
  std::vector<int> tilde(n);
  do {
    std::fill(settled.begin(), settled.end(), 0);
    for (int i = 0; i < n; ++i) {
      tilde[i] = context.tilde_count(settled, perm[i]);
      settled[perm[i]] = 1;
    }
    std::sort(tilde.begin(), tilde.end());
    // Lexicographic enumeration: the first permutation reaching a multiset is
    // the lexicographically smallest one doing so.
    result.try_emplace(tilde, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

namespace {

long long bound_of_tilde_multiset(const std::vector<int>& tilde, int r, int k,
                                  long long base) {
  long long sum = 0;
  for (int value : tilde) sum += vertex_term_hom(value, r, k);
  return base - sum;
}

long long bound_of_ordering(const OrderingContext& context,
                            const std::vector<int>& ordering, int r, int k,
                            long long base) {
  std::vector<char> settled(context.t.f0(), 0);
  long long sum = 0;
  for (int v : ordering) {
    sum += vertex_term_hom(context.tilde_count(settled, v), r, k);
    settled[v] = 1;
  }
  return base - sum;
}

}  // namespace

MinimizeResult minimize_upper_bound(const Triangulation& t, int r, int k,
                                    MinimizeStrategy strategy, long long budget,
                                    std::uint64_t seed) {
  MinimizeResult result;
  const long long base = binom2(k + 2) +
                         static_cast<long long>(t.f1_interior()) * binom2(k + 1 - r);
  const int n = static_cast<int>(t.interior_vertices.size());
  if (n == 0) {
    result.value = base;
    result.exhaustive = true;
    return result;
  }

  const bool exhaustive = strategy == MinimizeStrategy::Exhaustive ||
                          (strategy == MinimizeStrategy::Auto && n <= 8);
  if (exhaustive) {
    const auto multisets = tilde_multisets_exhaustive(t);
    bool first = true;
    for (const auto& [tilde, witness] : multisets) {
      const long long value = bound_of_tilde_multiset(tilde, r, k, base);
      if (first || value < result.value ||
          (value == result.value && witness < result.ordering)) {
        result.value = value;
        result.ordering = witness;
        first = false;
      }
    }
    result.exhaustive = true;
    return result;
  }

  const OrderingContext context(t);

  // Greedy start: append the vertex with the largest marginal term.
  std::vector<char> settled(t.f0(), 0);
  std::vector<int> ordering;
  ordering.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_term = -1;
    for (int v : t.interior_vertices) {
      if (settled[v]) continue;
      long long term = vertex_term_hom(context.tilde_count(settled, v), r, k);
      if (term > best_term) {
        best_term = term;
        best = v;
      }
    }
    settled[best] = 1;
    ordering.push_back(best);
  }

  long long evals = 0;
  auto hill_climb = [&](std::vector<int> ord, long long value) {
    bool improved = true;
    while (improved && evals < budget) {
      improved = false;
      for (int i = 0; i < n && evals < budget; ++i) {
        for (int j = i + 1; j < n && evals < budget; ++j) {
          std::swap(ord[i], ord[j]);
          ++evals;
          long long candidate = bound_of_ordering(context, ord, r, k, base);
          if (candidate < value) {
            value = candidate;
            improved = true;
          } else {
            std::swap(ord[i], ord[j]);
          }
        }
      }
    }
    return std::make_pair(ord, value);
  };

  auto [best_ord, best_value] =
      hill_climb(ordering, bound_of_ordering(context, ordering, r, k, base));

  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::vector<int> perm = t.interior_vertices;
    while (evals < budget) {
      std::shuffle(perm.begin(), perm.end(), rng);
      ++evals;
      auto [ord, value] =
          hill_climb(perm, bound_of_ordering(context, perm, r, k, base));
      if (value < best_value) {
        best_value = value;
        best_ord = ord;
      }
    }
  }

  result.ordering = std::move(best_ord);
  result.value = best_value;
  result.exhaustive = false;
  return result;
}

}  // namespace splinedim
