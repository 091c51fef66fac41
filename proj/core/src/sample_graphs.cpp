#include "lpa/sample_graphs.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n, std::size_t first = 0) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(first + i));
  return out;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Graph line_graph(std::size_t n) {
  if (n == 0) throw PreconditionError("line graph needs at least one vertex");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1)});
  }
  return Graph::create(numbered("v", n, 1), std::move(edges));
}

Graph loop_graph() { return Graph::create({"v"}, {{"c", "v", "v"}}); }

Graph random_acyclic_graph(std::mt19937_64& rng, const RandomGraphShape& shape) {
  std::size_t n = uniform(rng, 1, shape.max_vertices);
  std::size_t m = n == 1 ? 0 : uniform(rng, 0, shape.max_edges);
  std::vector<std::string> names = numbered("v", n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<EdgeSpec> edges;
  std::vector<bool> emits(n, false);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t i = uniform(rng, 0, n - 2);
    std::size_t j = uniform(rng, i + 1, n - 1);
    edges.push_back({"e" + std::to_string(k), names[order[i]], names[order[j]]});
    emits[order[i]] = true;
  }

  std::vector<std::string> flagged;
  std::vector<std::size_t> emitters;
  for (std::size_t v = 0; v < n; ++v) {
    if (emits[v]) emitters.push_back(v);
  }
  std::shuffle(emitters.begin(), emitters.end(), rng);
  std::size_t flags = uniform(rng, 0, std::min(shape.max_flagged, emitters.size()));
  for (std::size_t i = 0; i < flags; ++i) flagged.push_back(names[emitters[i]]);
  return Graph::create(std::move(names), std::move(edges), std::move(flagged));
}

Graph random_cyclic_graph(std::mt19937_64& rng, const RandomGraphShape& shape) {
  std::size_t n = uniform(rng, 1, shape.max_vertices);
  std::size_t cycle_length = uniform(rng, 1, std::min<std::size_t>({n, 3, shape.max_edges}));
  std::size_t m = uniform(rng, cycle_length, shape.max_edges);
  std::vector<std::string> names = numbered("v", n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<EdgeSpec> edges;
  for (std::size_t k = 0; k < cycle_length; ++k) {
    edges.push_back({"e" + std::to_string(k), names[order[k]], names[order[(k + 1) % cycle_length]]});
  }
  for (std::size_t k = cycle_length; k < m; ++k) {
    edges.push_back({"e" + std::to_string(k), names[uniform(rng, 0, n - 1)], names[uniform(rng, 0, n - 1)]});
  }
  return Graph::create(std::move(names), std::move(edges));
}

}  // namespace lpa
