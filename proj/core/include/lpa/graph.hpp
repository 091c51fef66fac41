#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpa {

/// Index of a vertex; vertices are numbered in lexicographic order of their names.
using VertexId = std::uint32_t;
/// Index of an edge; edges are numbered in lexicographic order of their names.
using EdgeId = std::uint32_t;

enum class VertexKind { Sink, Regular, InfiniteEmitter };

std::string_view to_string(VertexKind kind);

/// A finite path. An empty edge sequence is the length-0 path at `base`;
/// otherwise `base` is the source of the first edge.
struct Path {
  VertexId base = 0;
  std::vector<EdgeId> edges;

  bool empty() const noexcept { return edges.empty(); }
  std::size_t length() const noexcept { return edges.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Orders by length, then lexicographically on edges, then by base vertex.
bool path_less(const Path& a, const Path& b);

struct EdgeSpec {
  std::string name;
  std::string source;
  std::string range;
};

/// An immutable finite directed graph with infinite-emitter flags.
class Graph {
 public:
  struct Edge {
    std::string name;
    VertexId source;
    VertexId range;
  };

  /// Validates and builds a graph. Throws PreconditionError on an empty vertex
  /// set, bad or duplicate identifiers, dangling endpoints, or a flagged vertex
  /// without listed edges.
  static Graph create(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                      std::vector<std::string> infinite_emitters = {});

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::string& edge_name(EdgeId e) const { return edges_.at(e).name; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  /// Throws UnknownIdentifier.
  VertexId vertex(std::string_view name) const;
  /// Throws UnknownIdentifier.
  EdgeId edge_id(std::string_view name) const;

  bool is_flagged(VertexId v) const { return flagged_.at(v); }
  /// Throws UnknownIdentifier for an out-of-range id.
  VertexKind kind(VertexId v) const;
  /// Outgoing edges in increasing id order.
  std::span<const EdgeId> out_edges(VertexId v) const { return out_edges_.at(v); }

  VertexId source(const Path& p) const { return p.base; }
  VertexId range(const Path& p) const { return p.empty() ? p.base : edges_[p.edges.back()].range; }
  /// Builds a path from edges, checking composability. Empty `edges` needs `base`.
  Path make_path(std::span<const EdgeId> edges, std::optional<VertexId> base = std::nullopt) const;
  /// Dot-separated edge names, or the vertex name for a length-0 path.
  std::string path_string(const Path& p) const;

  bool is_acyclic() const { return !find_cycle().has_value(); }
  /// A cycle (closed path visiting no vertex twice), found by three-colour DFS.
  std::optional<Path> find_cycle() const;
  /// Checks that `p` is a closed path that visits no vertex twice.
  bool is_cycle(const Path& p) const;

  /// All paths ending at `w` in (length, lexicographic) order, including the
  /// trivial path. Throws CyclicGraph if the graph has a cycle.
  std::vector<Path> paths_ending_at(VertexId w) const;
  /// Paths of length at most `max_length` ending at `w`; works for any graph.
  std::vector<Path> paths_ending_at_up_to(VertexId w, std::size_t max_length) const;

  /// Graph DSL text: vertices (sorted) then edges (sorted by id).
  std::string serialize() const;

  friend bool operator==(const Graph&, const Graph&);

 private:
  Graph() = default;

  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<bool> flagged_;
  std::vector<std::vector<EdgeId>> out_edges_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// True for identifiers matching [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view s);

/// Parses the graph DSL. Throws ParseError with line and column.
Graph parse_graph(std::string_view text);

}  // namespace lpa
