#include "lpa/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Sink:
      return "sink";
    case VertexKind::Regular:
      return "regular";
    case VertexKind::InfiniteEmitter:
      return "infinite-emitter";
  }
  return "?";
}

bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.base < b.base;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Graph Graph::create(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                    std::vector<std::string> infinite_emitters) {
  if (vertices.empty()) throw PreconditionError("graph must have at least one vertex");

  std::set<std::string> names;
  for (const auto& v : vertices) {
    if (!is_identifier(v)) throw PreconditionError("invalid vertex identifier '" + v + "'");
    if (!names.insert(v).second) throw PreconditionError("duplicate identifier '" + v + "'");
  }
  for (const auto& e : edges) {
    if (!is_identifier(e.name)) throw PreconditionError("invalid edge identifier '" + e.name + "'");
    if (!names.insert(e.name).second) throw PreconditionError("duplicate identifier '" + e.name + "'");
  }

  Graph g;
  g.vertex_names_ = std::move(vertices);
  std::sort(g.vertex_names_.begin(), g.vertex_names_.end());
  for (VertexId i = 0; i < g.vertex_names_.size(); ++i) g.vertex_index_.emplace(g.vertex_names_[i], i);

  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.name < b.name; });
  for (const auto& e : edges) {
    auto s = g.find_vertex(e.source);
    auto r = g.find_vertex(e.range);
    if (!s) throw PreconditionError("edge '" + e.name + "' has unknown source '" + e.source + "'");
    if (!r) throw PreconditionError("edge '" + e.name + "' has unknown range '" + e.range + "'");
    g.edge_index_.emplace(e.name, static_cast<EdgeId>(g.edges_.size()));
    g.edges_.push_back(Edge{e.name, *s, *r});
  }

  g.out_edges_.assign(g.vertex_count(), {});
  g.in_edges_.assign(g.vertex_count(), {});
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    g.out_edges_[g.edges_[e].source].push_back(e);
    g.in_edges_[g.edges_[e].range].push_back(e);
  }

  g.flagged_.assign(g.vertex_count(), false);
  for (const auto& name : infinite_emitters) {
    auto v = g.find_vertex(name);
    if (!v) throw PreconditionError("unknown infinite emitter '" + name + "'");
    if (g.out_edges_[*v].empty()) {
      throw PreconditionError("vertex '" + name + "' is flagged infinite but emits no listed edge");
    }
    g.flagged_[*v] = true;
  }
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw UnknownIdentifier("unknown vertex '" + std::string(name) + "'");
}

EdgeId Graph::edge_id(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw UnknownIdentifier("unknown edge '" + std::string(name) + "'");
}

VertexKind Graph::kind(VertexId v) const {
  if (v >= vertex_count()) throw UnknownIdentifier("unknown vertex index " + std::to_string(v));
  if (flagged_[v]) return VertexKind::InfiniteEmitter;
  return out_edges_[v].empty() ? VertexKind::Sink : VertexKind::Regular;
}

Path Graph::make_path(std::span<const EdgeId> edges, std::optional<VertexId> base) const {
  Path p;
  if (edges.empty()) {
    if (!base || *base >= vertex_count()) throw PreconditionError("empty path needs a valid base vertex");
    p.base = *base;
    return p;
  }
  for (EdgeId e : edges) {
    if (e >= edge_count()) throw UnknownIdentifier("unknown edge index " + std::to_string(e));
  }
  p.base = edges_[edges.front()].source;
  if (base && *base != p.base) throw PreconditionError("path base does not match its first edge");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges_[edges[i - 1]].range != edges_[edges[i]].source) {
      throw PreconditionError("edges '" + edges_[edges[i - 1]].name + "' and '" + edges_[edges[i]].name +
                              "' do not compose");
    }
  }
  p.edges.assign(edges.begin(), edges.end());
  return p;
}

std::string Graph::path_string(const Path& p) const {
  if (p.empty()) return vertex_names_.at(p.base);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i > 0) out += '.';
    out += edges_.at(p.edges[i]).name;
  }
  return out;
}

std::optional<Path> Graph::find_cycle() const {
  enum class Colour : std::uint8_t { White, Grey, Black };
  std::vector<Colour> colour(vertex_count(), Colour::White);

  struct Frame {
    VertexId vertex;
    std::size_t next_edge;
    EdgeId via;  // edge used to enter this vertex; unused for the root
  };

  for (VertexId root = 0; root < vertex_count(); ++root) {
    if (colour[root] != Colour::White) continue;
    std::vector<Frame> stack{{root, 0, 0}};
    colour[root] = Colour::Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& outs = out_edges_[top.vertex];
      if (top.next_edge == outs.size()) {
        colour[top.vertex] = Colour::Black;
        stack.pop_back();
        continue;
      }
      EdgeId e = outs[top.next_edge++];
      VertexId next = edges_[e].range;
      if (colour[next] == Colour::Grey) {
        // Back edge: the stack segment from `next` to the top, closed by e.
        auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.vertex == next; });
        Path cycle;
        cycle.base = next;
        for (auto f = std::next(it); f != stack.end(); ++f) cycle.edges.push_back(f->via);
        cycle.edges.push_back(e);
        return cycle;
      }
      if (colour[next] == Colour::White) {
        colour[next] = Colour::Grey;
        stack.push_back({next, 0, e});
      }
    }
  }
  return std::nullopt;
}

bool Graph::is_cycle(const Path& p) const {
  if (p.empty()) return false;
  for (EdgeId e : p.edges) {
    if (e >= edge_count()) return false;
  }
  if (edges_[p.edges.front()].source != p.base) return false;
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = edges_[p.edges[i]];
    if (!seen.insert(e.source).second) return false;
    VertexId expected = i + 1 < p.edges.size() ? edges_[p.edges[i + 1]].source : p.base;
    if (e.range != expected) return false;
  }
  return true;
}

std::vector<Path> Graph::paths_ending_at_up_to(VertexId w, std::size_t max_length) const {
  if (w >= vertex_count()) throw UnknownIdentifier("unknown vertex index " + std::to_string(w));
  std::vector<Path> result;
  std::vector<Path> frontier{Path{w, {}}};
  for (std::size_t len = 0;; ++len) {
    result.insert(result.end(), frontier.begin(), frontier.end());
    if (len == max_length) break;
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (EdgeId e : in_edges_[p.base]) {
        Path q;
        q.base = edges_[e].source;
        q.edges.reserve(p.edges.size() + 1);
        q.edges.push_back(e);
        q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
        next.push_back(std::move(q));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(result.begin(), result.end(), path_less);
  return result;
}

std::vector<Path> Graph::paths_ending_at(VertexId w) const {
  if (auto cycle = find_cycle()) {
    throw CyclicGraph("graph has the cycle " + path_string(*cycle) + "; infinitely many paths");
  }
  // Acyclic: no path is longer than the number of edges.
  return paths_ending_at_up_to(w, edge_count());
}

std::string Graph::serialize() const {
  std::ostringstream out;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    out << "vertex " << vertex_names_[v];
    if (flagged_[v]) out << " [infinite]";
    out << '\n';
  }
  for (const auto& e : edges_) {
    out << "edge " << e.name << ": " << vertex_names_[e.source] << " -> " << vertex_names_[e.range] << '\n';
  }
  return out.str();
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertex_names_ != b.vertex_names_ || a.flagged_ != b.flagged_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.name != y.name || x.source != y.source || x.range != y.range) return false;
  }
  return true;
}

}  // namespace lpa
