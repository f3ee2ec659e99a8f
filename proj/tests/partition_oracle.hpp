#pragma once

// Brute-force references for adapted partitions and power-sum points.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hurwitz/finite_field.hpp"
#include "hurwitz/realizability.hpp"

namespace oracle {

using Blocks = std::vector<std::vector<size_t>>;

/// Calls f on every set partition of {0, ..., n-1} (restricted growth strings).
inline void for_each_partition(size_t n, const std::function<void(const Blocks&)>& f) {
  Blocks blocks;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      f(blocks);
      return;
    }
    for (size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

inline bool adapted(const Blocks& P, const std::vector<long>& e, int p) {
  for (const auto& b : P) {
    long s = 0;
    for (size_t i : b) s += e[i];
    if (((s % p) + p) % p != 0) return false;
  }
  return true;
}

/// Maximal iff no block can be split into two or more zero-sum parts,
/// decided by enumerating every partition of every block.
inline bool maximal_by_refinement(const Blocks& P, const std::vector<long>& e, int p) {
  for (const auto& b : P) {
    bool splits = false;
    for_each_partition(b.size(), [&](const Blocks& sub) {
      if (splits || sub.size() < 2) return;
      Blocks mapped;
      for (const auto& s : sub) {
        mapped.emplace_back();
        for (size_t k : s) mapped.back().push_back(b[k]);
      }
      if (adapted(mapped, e, p)) splits = true;
    });
    if (splits) return false;
  }
  return true;
}

/// Fewest blocks of a maximal adapted partition, by full enumeration.
inline std::optional<size_t> min_maximal_blocks(const std::vector<long>& e, int p) {
  std::optional<size_t> best;
  for_each_partition(e.size(), [&](const Blocks& P) {
    if (best && P.size() >= *best) return;
    if (adapted(P, e, p) && maximal_by_refinement(P, e, p)) best = P.size();
  });
  return best;
}

/// Index blocks for blocks given by their values.
inline hurwitz::real::Partition from_values(const hurwitz::real::ResidueVector& e,
                                            const std::vector<std::vector<long>>& value_blocks) {
  std::vector<char> used(e.size(), 0);
  hurwitz::real::Partition P;
  for (const auto& vb : value_blocks) {
    P.blocks.emplace_back();
    for (long v : vb) {
      long r = ((v % e.p()) + e.p()) % e.p();
      size_t i = 0;
      while (i < e.size() && (used[i] || e[i] != r)) ++i;
      if (i == e.size()) throw std::runtime_error("value not available in e");
      used[i] = 1;
      P.blocks.back().push_back(i);
    }
  }
  return P;
}

/// sum_i e_i t_i^nu by repeated multiplication.
inline hurwitz::charp::FqElt power_sum(const hurwitz::charp::FiniteField& F, const std::vector<long>& e,
                                       const std::vector<hurwitz::charp::FqElt>& t, long nu) {
  const long p = static_cast<long>(F.p());
  auto s = F.zero();
  for (size_t i = 0; i < t.size(); ++i) {
    auto base = nu < 0 ? F.inv(t[i]) : t[i];
    auto x = F.one();
    for (long k = 0; k < (nu < 0 ? -nu : nu); ++k) x = F.mul(x, base);
    for (long k = 0; k < ((e[i] % p) + p) % p; ++k) s = F.add(s, x);
  }
  return s;
}

/// Exponents 1..m1-1 and -1..-(m2-1), multiples of p included.
inline bool on_variety(const hurwitz::charp::FiniteField& F, const std::vector<long>& e,
                       const std::vector<hurwitz::charp::FqElt>& t, long m1, long m2) {
  for (long nu = 1; nu < m1; ++nu)
    if (power_sum(F, e, t, nu).code != 0) return false;
  for (long nu = 1; nu < m2; ++nu)
    if (power_sum(F, e, t, -nu).code != 0) return false;
  return true;
}

inline bool distinct(const std::vector<hurwitz::charp::FqElt>& t) {
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (t[i] == t[j]) return false;
  return true;
}

}  // namespace oracle
