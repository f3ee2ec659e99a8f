#pragma once

// Small hand-checked trees shared by the unit and acceptance tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/hurwitz_tree.hpp"
#include "hurwitz/tree_io.hpp"

#ifndef HURWITZ_FIXTURE_DIR
#define HURWITZ_FIXTURE_DIR "fixtures"
#endif

namespace samples {

using hurwitz::tree::Edge;
using hurwitz::tree::HurwitzTree;

struct Spec {
  int p;
  long N;
  long d0;
  std::string root;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  HurwitzTree build() const { return HurwitzTree(p, N, d0, root, vertices, edges); }
};

/// p=2: r0 -> s (eps 1, m 1) with two leaves of residue 1.
inline Spec p2_basic() {
  return {2, 1, 0, "r0", {"r0", "s", "f1", "f2"},
          {{"a", "r0", "s", 1, 1, 0}, {"l1", "s", "f1", 0, 0, 1}, {"l2", "s", "f2", 0, 0, 1}}};
}

/// p=3, N=1: r1 -> s1 -> s2 -> r2 with one leaf at each s_i.
inline Spec type_I(long delta = 1) {
  return {3, 1, 0, "r1", {"r1", "s1", "s2", "r2", "f1", "f2"},
          {{"a1", "r1", "s1", 1, 1, 0},
           {"b", "s1", "s2", delta, 0, 1},
           {"a2", "s2", "r2", 1, -1, 0},
           {"l1", "s1", "f1", 0, 0, 2},
           {"l2", "s2", "f2", 0, 0, 1}}};
}

/// p=3, N=1: r1 -> s -> r2, two leaves at s.
inline Spec type_II() {
  return {3, 1, 0, "r1", {"r1", "s", "r2", "f1", "f2"},
          {{"a1", "r1", "s", 1, 1, 0},
           {"a2", "s", "r2", 1, -1, 0},
           {"l1", "s", "f1", 0, 0, 1},
           {"l2", "s", "f2", 0, 0, 2}}};
}

/// p=3, N=2: r1 -> s -> r2 with an edge from the additive vertex s to a
/// multiplicative vertex carrying two leaves.
inline Spec type_III() {
  return {3, 2, 0, "r1", {"r1", "s", "r2", "t", "f1", "f2"},
          {{"a1", "r1", "s", 1, 1, 0},
           {"a2", "s", "r2", 1, -1, 0},
           {"a", "s", "t", 1, 1, 0},
           {"l1", "t", "f1", 0, 0, 1},
           {"l2", "t", "f2", 0, 0, 2}}};
}

inline std::string fixture(const std::string& name) { return std::string(HURWITZ_FIXTURE_DIR) + "/" + name; }

inline HurwitzTree p5_tree() { return hurwitz::io::to_tree(hurwitz::io::read_tree_file(fixture("p5_disk.tree"))); }

inline Edge& edge(Spec& s, const std::string& id) {
  for (auto& e : s.edges)
    if (e.id == id) return e;
  throw std::runtime_error("no edge " + id);
}

/// Random disk tree: etale root, additive interior vertices, every leaf at a
/// multiplicative vertex. Retries until the random choices fit.
inline Spec random_disk_tree(std::mt19937_64& rng, int p, long N, int max_depth = 3) {
  auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (;;) {
    Spec s{p, N, 0, "v0", {"v0"}, {}};
    bool ok = true;
    // grow(o, D, m): edge of conductor m from o, where d(o) = (p-1) D
    std::function<void(const std::string&, long, long, int)> grow = [&](const std::string& o, long D, long m,
                                                                        int depth) {
      if (!ok) return;
      long R = N - D;
      std::string t = "v" + std::to_string(s.vertices.size());
      s.vertices.push_back(t);
      bool can_mult = R % m == 0;
      bool can_add = m >= 3 && R > m && depth < max_depth;
      if (!can_mult && !can_add) {
        ok = false;
        return;
      }
      if (can_mult && (!can_add || uni(0, 1) == 0)) {
        s.edges.push_back({"e" + std::to_string(s.edges.size()), o, t, R / m, m, 0});
        long sum = 0;
        for (long j = 0; j <= m; ++j) {
          long h = j < m ? uni(1, p - 1) : (p - sum % p) % p;
          if (h == 0) {
            ok = false;
            return;
          }
          sum += h;
          std::string f = "v" + std::to_string(s.vertices.size());
          s.vertices.push_back(f);
          s.edges.push_back({"e" + std::to_string(s.edges.size()), t, f, 0, 0, h});
        }
        return;
      }
      long eps = uni(1, (R - 1) / m);
      s.edges.push_back({"e" + std::to_string(s.edges.size()), o, t, eps, m, 0});
      // split m+1 = sum (m_i + 1) into at least two parts, m_i >= 1
      long left = m + 1;
      std::vector<long> parts;
      while (left > 0) {
        long part = (left < 4 || (!parts.empty() && uni(0, 1) == 0)) ? left : uni(2, left - 2);
        parts.push_back(part);
        left -= part;
      }
      for (long q : parts) {
        if ((q - 1) % p == 0) {
          ok = false;
          return;
        }
        grow(t, D + m * eps, q - 1, depth + 1);
      }
    };
    long m0 = uni(1, 9);
    if (m0 % p == 0) continue;
    grow("v0", 0, m0, 0);
    if (ok) return s;
  }
}

/// Same tree under a random relabelling of vertices and edges, with the edge
/// list shuffled and explicit opposite records added for some edges.
inline Spec relabel(const Spec& s, std::mt19937_64& rng) {
  std::vector<size_t> perm(s.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> name;
  for (size_t i = 0; i < perm.size(); ++i) name[s.vertices[i]] = "x" + std::to_string(perm[i]);
  Spec out{s.p, s.N, s.d0, name.at(s.root), {}, {}};
  for (const auto& v : s.vertices) out.vertices.push_back(name.at(v));
  std::shuffle(out.vertices.begin(), out.vertices.end(), rng);
  for (size_t k = 0; k < s.edges.size(); ++k) {
    const auto& e = s.edges[k];
    out.edges.push_back({"y" + std::to_string(k), name.at(e.from), name.at(e.to), e.eps, e.m, e.h});
    if (rng() % 4 == 0)
      out.edges.push_back({"z" + std::to_string(k), name.at(e.to), name.at(e.from), e.eps, -e.m, (s.p - e.h) % s.p});
  }
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

}  // namespace samples
