#pragma once

#include <random>
#include <vector>

#include "lpa/algebra.hpp"

namespace lpa::testing_support {

/// Random composable monomials (normal or not) with paths of length <= max_length.
inline std::vector<RawTerm> random_raw_terms(const Algebra& algebra, std::mt19937_64& rng, std::size_t count,
                                             std::size_t max_length = 3) {
  const Graph& g = algebra.graph();
  std::vector<std::vector<Path>> paths(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) paths[v] = g.paths_ending_at_up_to(v, max_length);
  std::uniform_int_distribution<VertexId> mid_dist(0, static_cast<VertexId>(g.vertex_count() - 1));
  std::uniform_int_distribution<int> coefficient(-3, 3);
  std::vector<RawTerm> out;
  while (out.size() < count) {
    VertexId mid = mid_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, paths[mid].size() - 1);
    int k = coefficient(rng);
    if (k == 0) continue;
    out.push_back({algebra.field().from_int(k), Monomial{paths[mid][pick(rng)].edges, paths[mid][pick(rng)].edges, mid}});
  }
  return out;
}

}  // namespace lpa::testing_support
