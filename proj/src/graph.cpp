#include "mforge/graph.hpp"

#include <map>
#include <set>

namespace mforge {

namespace {

struct UnionFind {
  std::map<Vertex, Vertex> parent;

  void add(const Vertex& v) {
    if (!parent.count(v)) parent[v] = v;
  }
  Vertex find(const Vertex& v) {
    Vertex r = v;
    while (parent[r] != r) r = parent[r];
    // path compression
    Vertex c = v;
    while (parent[c] != r) {
      Vertex next = parent[c];
      parent[c] = r;
      c = next;
    }
    return r;
  }
  // The shortlex-least name wins as representative, keeping fused-vertex
  // naming deterministic.
  void unite(const Vertex& a, const Vertex& b) {
    Vertex ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (shortlex_less(rb, ra)) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

}  // namespace

Graph Graph::make(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  require_distinct(vertices, "graph vertices");
  Labels labels;
  for (const auto& e : edges) labels.push_back(e.label);
  require_distinct(labels, "edge labels");
  for (const auto& e : edges) {
    if (!contains_label(vertices, e.tail))
      throw PreconditionError("edge '" + e.label + "': unknown tail vertex '" + e.tail + "'");
    if (!contains_label(vertices, e.head))
      throw PreconditionError("edge '" + e.label + "': unknown head vertex '" + e.head + "'");
  }
  Graph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  return g;
}

Labels Graph::edge_labels() const {
  Labels r;
  r.reserve(edges_.size());
  for (const auto& e : edges_) r.push_back(e.label);
  return r;
}

bool Graph::has_edge(const Label& l) const {
  for (const auto& e : edges_)
    if (e.label == l) return true;
  return false;
}

const Edge& Graph::edge(const Label& l) const {
  for (const auto& e : edges_)
    if (e.label == l) return e;
  throw PreconditionError("unknown edge label '" + l + "'");
}

QSpace incidence_space(const Graph& g) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(g.vertices().size());
  for (const auto& v : g.vertices()) {
    std::vector<Rat> row(g.edges().size(), Rat(0));
    for (std::size_t j = 0; j < g.edges().size(); ++j) {
      const Edge& e = g.edges()[j];
      if (e.tail == e.head) continue;
      if (e.tail == v) row[j] = Rat(1);
      if (e.head == v) row[j] = Rat(-1);
    }
    rows.push_back(std::move(row));
  }
  return QSpace::make(rational_field(), g.edge_labels(), std::move(rows));
}

int component_count(const Graph& g) {
  UnionFind uf;
  for (const auto& v : g.vertices()) uf.add(v);
  for (const auto& e : g.edges()) uf.unite(e.tail, e.head);
  std::set<Vertex> roots;
  for (const auto& v : g.vertices()) roots.insert(uf.find(v));
  return static_cast<int>(roots.size());
}

namespace {

Graph drop_isolated(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  std::set<Vertex> touched;
  for (const auto& e : edges) {
    touched.insert(e.tail);
    touched.insert(e.head);
  }
  std::vector<Vertex> kept;
  for (const auto& v : vertices)
    if (touched.count(v)) kept.push_back(v);
  return Graph::make(std::move(kept), std::move(edges));
}

}  // namespace

Graph delete_edges(const Graph& g, const Labels& T) {
  for (const auto& l : T) g.edge(l);
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!contains_label(T, e.label)) edges.push_back(e);
  return drop_isolated(g.vertices(), std::move(edges));
}

Graph contract_edges(const Graph& g, const Labels& T) {
  for (const auto& l : T) g.edge(l);
  UnionFind uf;
  for (const auto& v : g.vertices()) uf.add(v);
  for (const auto& e : g.edges())
    if (contains_label(T, e.label)) uf.unite(e.tail, e.head);
  std::vector<Vertex> vertices;
  std::set<Vertex> seen;
  for (const auto& v : g.vertices()) {
    Vertex r = uf.find(v);
    if (seen.insert(r).second) vertices.push_back(r);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!contains_label(T, e.label))
      edges.push_back(Edge{e.label, uf.find(e.tail), uf.find(e.head)});
  return drop_isolated(std::move(vertices), std::move(edges));
}

Graph graph_restrict(const Graph& g, const Labels& T) {
  return delete_edges(g, minus(g.edge_labels(), T));
}

Graph graph_contract(const Graph& g, const Labels& T) {
  return contract_edges(g, minus(g.edge_labels(), T));
}

Graph overlay_compose(const Graph& g_sp, const Graph& g_pq, const VertexMap& vmap) {
  Labels P = intersection(g_sp.edge_labels(), g_pq.edge_labels());
  if (P.empty())
    throw PreconditionError("overlay: shared edge set is empty; use the space route");
  Graph gp_left = graph_restrict(g_sp, P);
  Graph gp_right = graph_restrict(g_pq, P);

  std::map<Vertex, Vertex> m;
  for (const auto& [r, l] : vmap) {
    if (!m.emplace(r, l).second)
      throw PreconditionError("overlay map: duplicate source vertex '" + r + "'");
  }
  if (m.size() != gp_right.vertices().size())
    throw PreconditionError("overlay map must cover exactly the shared subgraph's vertices");
  {
    std::set<Vertex> image;
    for (const auto& [r, l] : m) {
      if (!contains_label(gp_right.vertices(), r))
        throw PreconditionError("overlay map source '" + r + "' not a shared-subgraph vertex");
      if (!contains_label(gp_left.vertices(), l))
        throw PreconditionError("overlay map target '" + l + "' not a shared-subgraph vertex");
      if (!image.insert(l).second)
        throw PreconditionError("overlay map not injective at '" + l + "'");
    }
  }
  for (const auto& p : P) {
    const Edge& le = gp_left.edge(p);
    const Edge& re = gp_right.edge(p);
    if (m.at(re.tail) != le.tail || m.at(re.head) != le.head)
      throw PreconditionError("shared subgraphs differ at edge '" + p +
                              "' under the identification map");
  }
  if (component_count(gp_left) != 1)
    throw PreconditionError("shared subgraph is disconnected; use the space route");

  std::vector<Vertex> vertices = g_sp.vertices();
  for (const auto& v : g_pq.vertices()) {
    if (m.count(v)) continue;
    if (contains_label(vertices, v))
      throw PreconditionError("vertex id '" + v +
                              "' collides outside the identification map");
    vertices.push_back(v);
  }
  std::vector<Edge> edges;
  for (const auto& e : g_sp.edges())
    if (!contains_label(P, e.label)) edges.push_back(e);
  for (const auto& e : g_pq.edges()) {
    if (contains_label(P, e.label)) continue;
    Vertex t = m.count(e.tail) ? m.at(e.tail) : e.tail;
    Vertex h = m.count(e.head) ? m.at(e.head) : e.head;
    edges.push_back(Edge{e.label, t, h});
  }
  Graph result = drop_isolated(std::move(vertices), std::move(edges));

  if (incidence_space(result) != compose_space(g_sp, g_pq))
    throw InternalError("overlay result's incidence space deviates from the "
                        "matched composition of the operand spaces");
  return result;
}

QSpace compose_space(const Graph& g_sp, const Graph& g_pq) {
  return matched_compose(incidence_space(g_sp), incidence_space(g_pq));
}

}  // namespace mforge
