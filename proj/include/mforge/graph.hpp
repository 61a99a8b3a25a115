#pragma once

#include <string>
#include <vector>

#include "mforge/vspace.hpp"

namespace mforge {

using Vertex = std::string;

struct Edge {
  Label label;
  Vertex tail;
  Vertex head;
};

// Directed multigraph. Self-loops and parallel edges allowed; edge labels
// unique; vertex ids are opaque tokens.
class Graph {
 public:
  Graph() = default;
  static Graph make(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Labels edge_labels() const;
  const Edge& edge(const Label& l) const;
  bool has_edge(const Label& l) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

// Row space of the +1/-1/0 incidence matrix over the rationals
// (+1 where the edge leaves the vertex, -1 where it enters; self-loop
// columns are zero).
QSpace incidence_space(const Graph& g);

int component_count(const Graph& g);

// Remove the edges in T, then drop isolated vertices.
Graph delete_edges(const Graph& g, const Labels& T);

// Fuse the endpoints of each edge in T, remove those edges, drop isolated
// vertices. A fused vertex keeps the shortlex-least name of its class.
Graph contract_edges(const Graph& g, const Labels& T);

// Keep exactly the edges in T (delete the rest / contract the rest).
Graph graph_restrict(const Graph& g, const Labels& T);
Graph graph_contract(const Graph& g, const Labels& T);

// Identification of right-graph vertices with left-graph vertices, used when
// overlaying two graphs along a shared edge set.
using VertexMap = std::vector<std::pair<Vertex, Vertex>>;  // (right, left)

// Overlay the two graphs along their shared edge subgraph (which must match
// under the map, orientation included, and be connected), then delete the
// shared edges. The incidence space of the result is checked against the
// matched composition of the operand incidence spaces.
Graph overlay_compose(const Graph& g_sp, const Graph& g_pq, const VertexMap& vmap);

// Matched composition of the incidence spaces; no graph is reconstructed.
QSpace compose_space(const Graph& g_sp, const Graph& g_pq);

}  // namespace mforge
