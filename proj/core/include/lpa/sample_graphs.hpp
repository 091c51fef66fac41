#pragma once

#include <cstddef>
#include <random>

#include "lpa/graph.hpp"

namespace lpa {

/// v1 -> v2 -> ... -> vn with edges e1 .. e(n-1).
Graph line_graph(std::size_t n);

/// One vertex v with a single loop c.
Graph loop_graph();

/// Shape limits for random graphs.
struct RandomGraphShape {
  std::size_t max_vertices = 5;
  std::size_t max_edges = 6;
  /// Flag at most this many vertices (only vertices that emit an edge).
  std::size_t max_flagged = 1;
};

/// A random acyclic graph: edges follow a random vertex order, parallel edges
/// allowed. Vertices are v0, v1, ..., edges e0, e1, ...
Graph random_acyclic_graph(std::mt19937_64& rng, const RandomGraphShape& shape = {});

/// A random graph containing at least one cycle of length 1..3 plus random
/// extra edges; no vertex is flagged.
Graph random_cyclic_graph(std::mt19937_64& rng, const RandomGraphShape& shape = {});

}  // namespace lpa
