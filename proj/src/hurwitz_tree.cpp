#include "hurwitz/hurwitz_tree.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <deque>
#include <set>

namespace hurwitz::tree {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// keeps every d(s) computation inside __int128
constexpr long kMaxMagnitude = 1L << 48;

long mod_p(long h, long p) {
  long r = h % p;
  return r < 0 ? r + p : r;
}

}  // namespace

std::string to_string(VertexType t) {
  switch (t) {
    case VertexType::Multiplicative: return "multiplicative";
    case VertexType::Additive: return "additive";
    case VertexType::Etale: return "etale";
  }
  return "?";
}

bool ValidationReport::has(const std::string& axiom) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

bool ValidationReport::has(const std::string& axiom, const std::string& location) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.axiom == axiom && v.location == location; });
}

HurwitzTree::HurwitzTree(int p, long N, long d0, std::string root, std::vector<std::string> vertices,
                         std::vector<Edge> edges)
    : p_(p), N_(N), d0_(d0), root_(std::move(root)), vertices_(std::move(vertices)) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  if (N > (1L << 40)) throw Error(ErrorCode::OutOfRange, "N too large");
  if (p > (1 << 20)) throw Error(ErrorCode::OutOfRange, "p too large");
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) throw Error(ErrorCode::DuplicateId, "vertex '" + vertices_[i] + "'");
  }
  if (!has_vertex(root_)) throw Error(ErrorCode::MalformedTree, "root '" + root_ + "' is not a vertex");

  // group records by unordered vertex pair
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> pairs;
  std::set<std::string> ids;
  for (size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    if (!has_vertex(e.from)) throw Error(ErrorCode::DanglingEdge, "edge from unknown vertex '" + e.from + "'");
    if (!has_vertex(e.to)) throw Error(ErrorCode::DanglingEdge, "edge to unknown vertex '" + e.to + "'");
    if (e.from == e.to) throw Error(ErrorCode::MalformedTree, "loop at '" + e.from + "'");
    if (e.id.empty()) e.id = e.from + "->" + e.to;
    if (std::labs(e.m) > kMaxMagnitude || std::labs(e.eps) > kMaxMagnitude)
      throw Error(ErrorCode::OutOfRange, "edge '" + e.id + "': |m| and |eps| must not exceed 2^48");
    if (!ids.insert(e.id).second) throw Error(ErrorCode::DuplicateId, "edge '" + e.id + "'");
    e.h = mod_p(e.h, p);
    size_t a = vidx(e.from), b = vidx(e.to);
    pairs[{std::min(a, b), std::max(a, b)}].push_back(i);
  }
  const size_t nv = vertices_.size();
  if (pairs.size() + 1 != nv) {
    throw Error(ErrorCode::MalformedTree, std::to_string(nv) + " vertices but " + std::to_string(pairs.size()) +
                                              " edges; a tree needs exactly one less");
  }
  std::vector<std::vector<size_t>> adj(nv);
  for (const auto& [key, recs] : pairs) {
    if (recs.size() > 2 || (recs.size() == 2 && edges[recs[0]].from == edges[recs[1]].from)) {
      throw Error(ErrorCode::MalformedTree, "repeated edge between '" + vertices_[key.first] + "' and '" +
                                                vertices_[key.second] + "'");
    }
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  // orient from the root
  std::vector<long> parent_v(nv, -1);
  std::vector<bool> seen(nv, false);
  std::deque<size_t> queue{vidx(root_)};
  seen[vidx(root_)] = true;
  std::vector<std::pair<size_t, size_t>> tree_edges;
  while (!queue.empty()) {
    size_t v = queue.front();
    queue.pop_front();
    for (size_t w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent_v[w] = static_cast<long>(v);
      tree_edges.emplace_back(v, w);
      queue.push_back(w);
    }
  }
  for (size_t v = 0; v < nv; ++v)
    if (!seen[v]) throw Error(ErrorCode::MalformedTree, "vertex '" + vertices_[v] + "' is not connected to the root");

  // positive records in input order, opposites attached afterwards
  std::vector<long> positive_of(edges.size(), -1);
  for (size_t i = 0; i < edges.size(); ++i) {
    size_t a = vidx(edges[i].from), b = vidx(edges[i].to);
    if (parent_v[b] == static_cast<long>(a)) {
      positive_of[i] = static_cast<long>(edges_.size());
      edges_.push_back(edges[i]);
    }
  }
  parent_.assign(nv, std::nullopt);
  children_.assign(nv, {});
  for (size_t k = 0; k < edges_.size(); ++k) {
    size_t a = vidx(edges_[k].from), b = vidx(edges_[k].to);
    parent_[b] = k;
    children_[a].push_back(k);
    edge_ids_[edges_[k].id] = k;
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    if (positive_of[i] >= 0) continue;
    size_t a = vidx(edges[i].from);
    auto pk = parent_[a];
    if (!pk || edges_[*pk].from != edges[i].to) {
      throw Error(ErrorCode::MalformedTree, "edge '" + edges[i].id + "' points towards the root with no positive edge");
    }
    reverse_.emplace(*pk, edges[i]);
  }
}

size_t HurwitzTree::vidx(const std::string& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, "'" + v + "'");
  return it->second;
}

const Edge& HurwitzTree::edge(const std::string& id) const { return edges_[edge_index(id)]; }

size_t HurwitzTree::edge_index(const std::string& id) const {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end()) throw Error(ErrorCode::UnknownEdge, "'" + id + "'");
  return it->second;
}

std::optional<size_t> HurwitzTree::parent_edge(const std::string& v) const { return parent_[vidx(v)]; }

const std::vector<size_t>& HurwitzTree::children(const std::string& v) const { return children_[vidx(v)]; }

std::vector<EdgeRef> HurwitzTree::arcs(const std::string& v) const {
  std::vector<EdgeRef> out;
  if (auto pe = parent_edge(v)) out.push_back({*pe, true});
  for (size_t c : children(v)) out.push_back({c, false});
  return out;
}

long HurwitzTree::valence(const std::string& v) const {
  return static_cast<long>(children(v).size()) + (parent_edge(v) ? 1 : 0);
}

std::vector<size_t> HurwitzTree::chain_to(const std::string& v) const {
  std::vector<size_t> out;
  auto pe = parent_edge(v);
  while (pe) {
    out.push_back(*pe);
    pe = parent_[vidx(edges_[*pe].from)];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

long HurwitzTree::arc_m(const EdgeRef& r) const { return r.reversed ? -edges_[r.index].m : edges_[r.index].m; }

long HurwitzTree::arc_h(const EdgeRef& r) const {
  long h = edges_[r.index].h;
  return r.reversed ? mod_p(-h, p_) : h;
}

std::vector<std::string> HurwitzTree::bfs_order() const {
  std::vector<std::string> out{root_};
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t c : children(out[i])) out.push_back(edges_[c].to);
  return out;
}

namespace {

// d(s) without overflow; nullopt if it does not fit in a long.
std::optional<long> differente_checked(const HurwitzTree& t, const std::string& s) {
  __int128 d = t.d0();
  for (size_t k : t.chain_to(s)) {
    const Edge& e = t.edges()[k];
    d += static_cast<__int128>(t.p() - 1) * e.m * e.eps;
    if (d > (static_cast<__int128>(1) << 100) || d < -(static_cast<__int128>(1) << 100)) return std::nullopt;
  }
  if (d > LONG_MAX || d < LONG_MIN) return std::nullopt;
  return static_cast<long>(d);
}

}  // namespace

long differente(const HurwitzTree& t, const std::string& s) {
  if (!t.has_vertex(s)) throw Error(ErrorCode::UnknownVertex, "'" + s + "'");
  auto d = differente_checked(t, s);
  if (!d) throw Error(ErrorCode::OutOfRange, "differente at '" + s + "' overflows");
  return *d;
}

VertexType classify_vertex(const HurwitzTree& t, const std::string& s) {
  long d = differente(t, s);
  if (d < 0 || d > t.vKp()) {
    throw Error(ErrorCode::InvalidTree, "d('" + s + "') = " + std::to_string(d) + " outside [0, " +
                                            std::to_string(t.vKp()) + "]");
  }
  if (d == t.vKp()) return VertexType::Multiplicative;
  if (d == 0) return VertexType::Etale;
  return VertexType::Additive;
}

bool is_leaf(const Edge& e) { return e.eps == 0 && e.m == 0; }

std::vector<std::string> leaves(const HurwitzTree& t) {
  std::vector<std::string> out;
  for (const auto& e : t.edges())
    if (is_leaf(e)) out.push_back(e.id);
  return out;
}

ValidationReport validate(const HurwitzTree& t) {
  ValidationReport rep;
  auto add = [&](std::string axiom, std::string loc, std::string msg) {
    rep.violations.push_back({std::move(axiom), std::move(loc), std::move(msg)});
  };
  const long p = t.p();
  const long vKp = t.vKp();

  if (mod_p(t.d0(), p - 1) != 0) add("StructuralInvariant", t.root(), "d0 is not divisible by p-1");
  if (t.d0() < 0 || t.d0() > vKp) add("StructuralInvariant", t.root(), "d0 outside [0, N(p-1)]");
  for (const auto& e : t.edges())
    if (e.eps < 0) add("StructuralInvariant", e.id, "negative eps");

  // H1 on explicit opposite records
  for (const auto& [k, r] : t.reverse_records()) {
    const Edge& e = t.edges()[k];
    if (r.m != -e.m) add("H1", r.id, "m of the opposite edge is not -m(" + e.id + ")");
    if (mod_p(r.h + e.h, p) != 0) add("H1", r.id, "h of the opposite edge is not -h(" + e.id + ")");
    if (r.eps != e.eps) add("StructuralInvariant", r.id, "eps differs from eps(" + e.id + ")");
  }

  // H2
  for (const auto& e : t.edges()) {
    if ((e.m == 0) != (e.h != 0)) {
      add("H2", e.id, e.m == 0 ? "m = 0 but h = 0" : "m != 0 but h != 0");
    }
    if (e.m != 0 && e.m % p == 0) add("H2", e.id, "m is divisible by p");
  }

  std::map<std::string, std::optional<long>> d;
  for (const auto& s : t.vertices()) d[s] = differente_checked(t, s);

  for (const auto& s : t.vertices()) {
    auto arcs = t.arcs(s);
    // H3
    if (arcs.size() == 2) {
      add("H3", s, "valence 2");
    } else if (arcs.size() >= 3) {
      __int128 sm = 0;
      long sh = 0;
      for (const auto& a : arcs) {
        sm += static_cast<__int128>(t.arc_m(a)) + 1;
        sh = mod_p(sh + t.arc_h(a), p);
      }
      if (sm != 2) add("H3", s, "sum of m(a)+1 over outgoing arcs is not 2");
      if (sh != 0) add("H3", s, "sum of h(a) over outgoing arcs is not 0 mod p");
    }
    // H5
    const auto& ds = d[s];
    if (!ds || *ds < 0 || *ds > vKp) {
      add("H5", s, ds ? "d = " + std::to_string(*ds) + " outside [0, " + std::to_string(vKp) + "]" : "d overflows");
      continue;
    }
    // H7
    if (*ds < vKp) {
      for (const auto& a : arcs) {
        if (t.arc_h(a) != 0) {
          add("H7", s, "h(" + t.edges()[a.index].id + ") != 0 at a non-multiplicative vertex");
          break;
        }
      }
    }
  }

  for (const auto& e : t.edges()) {
    // H4
    if (e.eps == 0 && !t.is_maximal(e.to)) add("H4", e.id, "eps = 0 but the terminal vertex is not maximal");
    // H6
    if (is_leaf(e)) {
      const auto& ds = d[e.from];
      if (ds && *ds != vKp) add("H6", e.id, "leaf at a non-multiplicative vertex");
    }
  }
  return rep;
}

HurwitzTree subtree(const HurwitzTree& t, const std::string& edge_id) {
  const Edge& a = t.edge(edge_id);
  std::set<std::string> keep{a.from};
  std::vector<std::string> stack{a.to};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    keep.insert(v);
    for (size_t c : t.children(v)) stack.push_back(t.edges()[c].to);
  }
  std::vector<std::string> verts;
  for (const auto& v : t.vertices())
    if (keep.count(v)) verts.push_back(v);
  std::vector<Edge> es;
  for (size_t k = 0; k < t.edges().size(); ++k) {
    const Edge& e = t.edges()[k];
    bool inside = e.id == a.id || (keep.count(e.from) && keep.count(e.to) && e.from != a.from);
    if (!inside) continue;
    es.push_back(e);
    auto r = t.reverse_records().find(k);
    if (r != t.reverse_records().end()) es.push_back(r->second);
  }
  return HurwitzTree(t.p(), t.N(), differente(t, a.from), a.from, std::move(verts), std::move(es));
}

namespace {

std::string canon(const HurwitzTree& t, const std::string& v) {
  std::vector<std::string> parts;
  for (size_t c : t.children(v)) {
    const Edge& e = t.edges()[c];
    parts.push_back("[" + std::to_string(e.eps) + "," + std::to_string(e.m) + "," + std::to_string(e.h) + "]" +
                    canon(t, e.to));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& s : parts) out += s;
  return out + ")";
}

}  // namespace

std::string canonical_form(const HurwitzTree& t) {
  return std::to_string(t.p()) + ";" + std::to_string(t.N()) + ";" + std::to_string(t.d0()) + ";" + canon(t, t.root());
}

bool is_equivalent(const HurwitzTree& a, const HurwitzTree& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace hurwitz::tree
