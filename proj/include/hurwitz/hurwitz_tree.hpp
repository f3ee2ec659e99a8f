#pragma once

// Hurwitz trees: data model, axioms H1-H7, differente, subtrees, equivalence.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/error.hpp"

namespace hurwitz::tree {

/// A directed edge record. Positive edges point away from the root.
struct Edge {
  std::string id;
  std::string from;
  std::string to;
  long eps = 0;
  long m = 0;
  long h = 0;  // in [0, p)
};

/// Edge a or its opposite, as seen from an origin vertex.
struct EdgeRef {
  size_t index;
  bool reversed;
};

enum class VertexType { Multiplicative, Additive, Etale };
std::string to_string(VertexType t);

struct Violation {
  std::string axiom;  // "H1".."H7" or "StructuralInvariant"
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& axiom) const;
  bool has(const std::string& axiom, const std::string& location) const;
};

class HurwitzTree {
 public:
  /// Edges may be given in either direction: a record pointing towards the
  /// root is kept as an explicit opposite of the positive edge and must agree
  /// with it under H1. Throws DuplicateId, DanglingEdge or MalformedTree.
  HurwitzTree(int p, long N, long d0, std::string root, std::vector<std::string> vertices, std::vector<Edge> edges);

  int p() const { return p_; }
  long N() const { return N_; }
  long d0() const { return d0_; }
  /// v_K(p) = N(p-1).
  long vKp() const { return N_ * (p_ - 1); }
  const std::string& root() const { return root_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  /// Positive edges.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Explicit opposite records, index into edges().
  const std::map<size_t, Edge>& reverse_records() const { return reverse_; }

  bool has_vertex(const std::string& v) const { return index_.count(v) > 0; }
  const Edge& edge(const std::string& id) const;
  size_t edge_index(const std::string& id) const;
  std::optional<size_t> parent_edge(const std::string& v) const;
  const std::vector<size_t>& children(const std::string& v) const;
  /// ar(s): outgoing positive edges and the opposite of the incoming one.
  std::vector<EdgeRef> arcs(const std::string& v) const;
  long valence(const std::string& v) const;
  bool is_maximal(const std::string& v) const { return children(v).empty(); }
  /// Positive edges on the chain from the root to v.
  std::vector<size_t> chain_to(const std::string& v) const;
  /// m and h of an arc, negated for opposites.
  long arc_m(const EdgeRef& r) const;
  long arc_h(const EdgeRef& r) const;
  /// Vertices in breadth-first order from the root.
  std::vector<std::string> bfs_order() const;

 private:
  size_t vidx(const std::string& v) const;

  int p_;
  long N_;
  long d0_;
  std::string root_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<size_t, Edge> reverse_;
  std::map<std::string, size_t> index_;
  std::map<std::string, size_t> edge_ids_;
  std::vector<std::optional<size_t>> parent_;
  std::vector<std::vector<size_t>> children_;
};

ValidationReport validate(const HurwitzTree& t);

/// d(s) = d0 + (p-1) sum m(a) eps(a) over the root chain. Throws UnknownVertex.
long differente(const HurwitzTree& t, const std::string& s);
VertexType classify_vertex(const HurwitzTree& t, const std::string& s);

/// Gamma[a] with root o(a) and d0 = d(o(a)). Throws UnknownEdge.
HurwitzTree subtree(const HurwitzTree& t, const std::string& edge_id);

bool is_leaf(const Edge& e);
/// Ids of the leaves (positive edges with eps = m = 0).
std::vector<std::string> leaves(const HurwitzTree& t);

/// Label-free encoding; equal iff the trees are equivalent.
std::string canonical_form(const HurwitzTree& t);
bool is_equivalent(const HurwitzTree& a, const HurwitzTree& b);

}  // namespace hurwitz::tree
