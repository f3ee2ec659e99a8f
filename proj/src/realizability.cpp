#include "hurwitz/realizability.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hurwitz::real {

using charp::FieldPtr;
using charp::FiniteField;
using charp::FqElt;
using tree::EdgeRef;
using tree::HurwitzTree;

namespace {

long mod_p(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

}  // namespace

// ---- residue vectors and partitions ----

ResidueVector::ResidueVector(int p, std::vector<long> entries) : p_(p), e_(std::move(entries)) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "p must be prime");
  long sum = 0;
  for (size_t i = 0; i < e_.size(); ++i) {
    e_[i] = mod_p(e_[i], p);
    if (e_[i] == 0) throw Error(ErrorCode::InvalidArgument, "entry " + std::to_string(i) + " is 0 mod p");
    sum = (sum + e_[i]) % p;
  }
  if (sum != 0) throw Error(ErrorCode::InvalidArgument, "entries do not sum to 0 mod p");
}

std::string ResidueVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
  os << ")";
  return os.str();
}

std::string Partition::to_string(const ResidueVector& e) const {
  std::ostringstream os;
  os << "{";
  for (size_t b = 0; b < blocks.size(); ++b) {
    os << (b ? ", " : "") << "(";
    for (size_t k = 0; k < blocks[b].size(); ++k) os << (k ? "," : "") << e[blocks[b][k]];
    os << ")";
  }
  os << "}";
  return os.str();
}

bool has_proper_zero_sum(const std::vector<long>& values, int p) {
  // number of sub-multisets (including the empty one) by residue, capped at 3
  std::vector<int> count(static_cast<size_t>(p), 0);
  count[0] = 1;
  for (long v : values) {
    long x = mod_p(v, p);
    std::vector<int> next = count;
    for (long r = 0; r < p; ++r) {
      if (!count[static_cast<size_t>(r)]) continue;
      int& slot = next[static_cast<size_t>((r + x) % p)];
      slot = std::min(3, slot + count[static_cast<size_t>(r)]);
    }
    count = std::move(next);
  }
  long total = 0;
  for (long v : values) total += mod_p(v, p);
  // empty set, and the whole set when it sums to 0, are not proper
  int improper = 1 + (total % p == 0 && !values.empty() ? 1 : 0);
  return count[0] > improper;
}

namespace {

void check_partition(const Partition& P, size_t n) {
  std::vector<char> seen(n, 0);
  size_t covered = 0;
  for (const auto& b : P.blocks) {
    if (b.empty()) throw Error(ErrorCode::IndexMismatch, "empty block");
    for (size_t i : b) {
      if (i >= n) throw Error(ErrorCode::IndexMismatch, "index " + std::to_string(i) + " out of range");
      if (seen[i]) throw Error(ErrorCode::IndexMismatch, "index " + std::to_string(i) + " in two blocks");
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n) throw Error(ErrorCode::IndexMismatch, "partition does not cover every index");
}

}  // namespace

bool is_adapted(const Partition& P, const ResidueVector& e) {
  check_partition(P, e.size());
  for (const auto& b : P.blocks) {
    long s = 0;
    for (size_t i : b) s += e[i];
    if (s % e.p() != 0) return false;
  }
  return true;
}

bool is_maximal_adapted(const Partition& P, const ResidueVector& e) {
  if (!is_adapted(P, e)) throw Error(ErrorCode::NotAdapted, "partition is not adapted");
  for (const auto& b : P.blocks) {
    std::vector<long> vals;
    for (size_t i : b) vals.push_back(e[i]);
    if (has_proper_zero_sum(vals, e.p())) return false;
  }
  return true;
}

long disk_bound(long m, int p) { return m / p + 1; }
long annulus_bound(long m1, long m2, int p) { return m1 / p + m2 / p + 1; }

namespace {

// Minimal zero-sum multisets ("atoms"), as count vectors over 1..p-1.
class AtomSolver {
 public:
  explicit AtomSolver(int p) : p_(p) {}

  // Fewest atoms covering counts exactly, or -1 if impossible.
  long solve(const std::vector<int>& counts) {
    auto it = memo_.find(counts);
    if (it != memo_.end()) return it->second.first;
    size_t v0 = 0;
    while (v0 < counts.size() && counts[v0] == 0) ++v0;
    if (v0 == counts.size()) {
      memo_[counts] = {0, {}};
      return 0;
    }
    long best = -1;
    std::vector<int> best_atom;
    std::vector<int> atom(counts.size(), 0);
    std::vector<char> reach(static_cast<size_t>(p_), 0);
    atom[v0] = 1;
    long x0 = static_cast<long>(v0) + 1;
    reach[static_cast<size_t>(x0)] = 1;
    auto visit = [&](const std::vector<int>& a) {
      std::vector<int> rest = counts;
      for (size_t v = 0; v < rest.size(); ++v) rest[v] -= a[v];
      long r = solve(rest);
      if (r >= 0 && (best < 0 || r + 1 < best)) {
        best = r + 1;
        best_atom = a;
      }
    };
    extend(counts, atom, reach, x0, v0, visit);
    memo_[counts] = {best, best_atom};
    return best;
  }

  const std::vector<int>& choice(const std::vector<int>& counts) const { return memo_.at(counts).second; }

 private:
  // atom is zero-sum free with sum `sum`; reach holds its nonempty subsums.
  template <class Visit>
  void extend(const std::vector<int>& counts, std::vector<int>& atom, const std::vector<char>& reach, long sum,
              size_t from, Visit& visit) {
    for (size_t v = from; v < counts.size(); ++v) {
      if (atom[v] >= counts[v]) continue;
      long x = static_cast<long>(v) + 1;
      ++atom[v];
      if ((sum + x) % p_ == 0) {
        visit(atom);
      } else {
        std::vector<char> next = reach;
        bool zero = false;
        next[static_cast<size_t>(x)] = 1;
        for (long r = 1; r < p_; ++r) {
          if (!reach[static_cast<size_t>(r)]) continue;
          long s = (r + x) % p_;
          if (s == 0) zero = true;
          next[static_cast<size_t>(s)] = 1;
        }
        if (!zero) extend(counts, atom, next, (sum + x) % p_, v, visit);
      }
      --atom[v];
    }
  }

  int p_;
  std::map<std::vector<int>, std::pair<long, std::vector<int>>> memo_;
};

}  // namespace

std::optional<Partition> small_maximal_partition(const ResidueVector& e, long bound, const CriterionOptions& opt) {
  if (e.size() > opt.max_size) {
    throw Error(ErrorCode::BudgetExceeded, "|I| = " + std::to_string(e.size()) + " exceeds the limit " +
                                               std::to_string(opt.max_size));
  }
  const int p = e.p();
  std::vector<int> counts(static_cast<size_t>(p - 1), 0);
  std::vector<std::vector<size_t>> pools(static_cast<size_t>(p - 1));
  for (size_t i = 0; i < e.size(); ++i) {
    ++counts[static_cast<size_t>(e[i] - 1)];
    pools[static_cast<size_t>(e[i] - 1)].push_back(i);
  }
  AtomSolver solver(p);
  long best = solver.solve(counts);
  if (best < 0 || best > bound) return std::nullopt;
  Partition P;
  std::vector<size_t> next(pools.size(), 0);
  std::vector<int> cur = counts;
  while (std::any_of(cur.begin(), cur.end(), [](int c) { return c > 0; })) {
    const std::vector<int>& atom = solver.choice(cur);
    std::vector<size_t> block;
    for (size_t v = 0; v < atom.size(); ++v) {
      for (int k = 0; k < atom[v]; ++k) block.push_back(pools[v][next[v]++]);
      cur[v] -= atom[v];
    }
    std::sort(block.begin(), block.end());
    P.blocks.push_back(std::move(block));
  }
  return P;
}

bool criterion_small_partition(const ResidueVector& e, long bound, const CriterionOptions& opt) {
  return small_maximal_partition(e, bound, opt).has_value();
}

// ---- vertex problems ----

std::string to_string(Shape s) {
  switch (s) {
    case Shape::DiskMult: return "DiskMult";
    case Shape::DiskAdd: return "DiskAdd";
    case Shape::AnnMult: return "AnnMult";
    case Shape::AnnAdd: return "AnnAdd";
  }
  return "?";
}

std::string arc_name(const HurwitzTree& t, const EdgeRef& r) {
  return (r.reversed ? "~" : "") + t.edges()[r.index].id;
}

VertexProblem vertex_residue_vector(const HurwitzTree& t, const std::string& s) {
  if (!t.has_vertex(s)) throw Error(ErrorCode::UnknownVertex, "'" + s + "'");
  auto arcs = t.arcs(s);
  if (arcs.size() < 3) throw Error(ErrorCode::PreconditionFailed, "vertex '" + s + "' has valence < 3");
  auto type = tree::classify_vertex(t, s);
  if (type == tree::VertexType::Etale) throw Error(ErrorCode::UnsupportedShape, "vertex '" + s + "' is etale");
  const int p = t.p();
  std::vector<EdgeRef> neg, rest;
  for (const auto& a : arcs) (t.arc_m(a) < 0 ? neg : rest).push_back(a);
  if (neg.empty() || neg.size() > 2) {
    throw Error(ErrorCode::UnsupportedShape, "vertex '" + s + "' has " + std::to_string(neg.size()) +
                                                 " arcs with negative m; criteria cover 1 or 2");
  }
  const bool annulus = neg.size() == 2;
  const long m1 = -t.arc_m(neg[0]);
  const long m2 = annulus ? -t.arc_m(neg[1]) : 0;
  const long slots = annulus ? m1 + m2 : m1 + 1;
  std::vector<long> e;
  size_t padding = 0;
  Shape shape;
  if (type == tree::VertexType::Multiplicative) {
    shape = annulus ? Shape::AnnMult : Shape::DiskMult;
    for (const auto& a : rest) {
      if (t.arc_m(a) != 0) {
        throw Error(ErrorCode::UnsupportedShape, "multiplicative vertex '" + s + "' has a positive arc " +
                                                     arc_name(t, a) + " besides the negative ones");
      }
      e.push_back(t.arc_h(a));
    }
  } else {
    shape = annulus ? Shape::AnnAdd : Shape::DiskAdd;
    for (const auto& a : rest) {
      long m = t.arc_m(a);
      if (m <= 0) throw Error(ErrorCode::InvalidTree, "additive vertex '" + s + "' has arc " + arc_name(t, a) + " with m = 0");
      e.push_back(m);
    }
    if (slots - static_cast<long>(rest.size()) < 0) {
      throw Error(ErrorCode::InvalidTree, "more arcs than residue slots at '" + s + "'");
    }
    padding = static_cast<size_t>(slots - static_cast<long>(rest.size()));
    if (padding > 1'000'000) throw Error(ErrorCode::BudgetExceeded, "residue vector too long");
    e.insert(e.end(), padding, -1);
  }
  if (static_cast<long>(e.size()) != slots) {
    throw Error(ErrorCode::InvalidTree, "vertex '" + s + "' has " + std::to_string(e.size()) + " residues, expected " +
                                            std::to_string(slots));
  }
  std::optional<ResidueVector> rv;
  try {
    rv.emplace(p, e);
  } catch (const Error& err) {
    throw Error(ErrorCode::InvalidTree, "vertex '" + s + "': " + err.what());
  }
  long bound = annulus ? annulus_bound(m1, m2, p) : disk_bound(m1, p);
  return VertexProblem{*rv, bound, shape, m1, m2, neg, rest, padding};
}

// ---- point search ----

std::vector<long> constraint_exponents(long m1, long m2, int p) {
  std::vector<long> out;
  for (long nu = -(m2 - 1); nu <= m1 - 1; ++nu) {
    if (nu == 0 || nu % p == 0) continue;
    out.push_back(nu);
  }
  return out;
}

namespace {

FqElt power(const FiniteField& F, FqElt x, long nu) {
  if (nu >= 0) return F.pow(x, static_cast<std::uint64_t>(nu));
  return F.pow(F.inv(x), static_cast<std::uint64_t>(-nu));
}

}  // namespace

bool check_point(const ResidueVector& e, const std::vector<FqElt>& point, const FiniteField& F,
                 const std::vector<long>& exponents, bool nonzero) {
  if (point.size() != e.size()) return false;
  for (size_t i = 0; i < point.size(); ++i) {
    if (nonzero && point[i].code == 0) return false;
    for (size_t j = 0; j < i; ++j)
      if (point[i] == point[j]) return false;
  }
  for (long nu : exponents) {
    FqElt s = F.zero();
    for (size_t i = 0; i < point.size(); ++i) s = F.add(s, F.scale(power(F, point[i], nu), e[i]));
    if (s.code != 0) return false;
  }
  return true;
}

namespace {

class Searcher {
 public:
  Searcher(const ResidueVector& e, const FiniteField& F, const std::vector<long>& exps, bool annulus,
           std::uint64_t budget, std::uint64_t& tuples)
      : e_(e), F_(F), exps_(exps), annulus_(annulus), budget_(budget), tuples_(tuples) {}

  std::optional<std::vector<FqElt>> run() {
    const size_t n = e_.size();
    const std::uint64_t q = F_.order();
    const std::uint64_t avail = annulus_ ? q - 1 : q;
    if (avail < n) return std::nullopt;
    point_.assign(n, FqElt{0});
    if (n == 0) return point_;
    // indices grouped by residue; coordinates within a group increase
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) { return e_[a] < e_[b]; });
    // normalisation: disk fixes two coordinates (affine maps), annulus one (scalings)
    size_t fixed = std::min<size_t>(annulus_ ? 1 : 2, n);
    used_.assign(q, 0);
    sums_.assign(exps_.size(), F_.zero());
    std::vector<size_t> free_idx;
    for (size_t k = 0; k < n; ++k) {
      size_t i = order_[k];
      if (k < fixed) {
        FqElt v{annulus_ ? 1u : static_cast<std::uint64_t>(k)};
        assign(i, v, +1);
      } else {
        free_idx.push_back(i);
      }
    }
    free_ = free_idx;
    // the last free coordinate is solved from nu = 1 or nu = -1 when possible
    solve_nu_ = 0;
    if (!free_.empty()) {
      if (std::find(exps_.begin(), exps_.end(), 1L) != exps_.end()) solve_nu_ = 1;
      else if (std::find(exps_.begin(), exps_.end(), -1L) != exps_.end()) solve_nu_ = -1;
    }
    if (dfs(0)) return point_;
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  void assign(size_t i, FqElt v, int sign) {
    point_[i] = v;
    used_[v.code] = sign > 0;
    for (size_t k = 0; k < exps_.size(); ++k) {
      FqElt term = F_.scale(power(F_, v, exps_[k]), e_[i]);
      sums_[k] = sign > 0 ? F_.add(sums_[k], term) : F_.sub(sums_[k], term);
    }
  }

  // previous free index with the same residue, for the ordering constraint
  std::optional<size_t> group_prev(size_t k) const {
    if (k == 0) return std::nullopt;
    size_t i = free_[k], j = free_[k - 1];
    if (e_[i] == e_[j]) return j;
    return std::nullopt;
  }

  bool leaf() {
    if (++tuples_ > budget_) {
      exhausted_ = true;
      return false;
    }
    for (const auto& s : sums_)
      if (s.code != 0) return false;
    return true;
  }

  bool dfs(size_t k) {
    if (exhausted_) return false;
    if (k == free_.size()) return leaf();
    const size_t i = free_[k];
    auto prev = group_prev(k);
    std::uint64_t start = prev ? point_[*prev].code + 1 : (annulus_ ? 1 : 0);
    if (k + 1 == free_.size() && solve_nu_ != 0) {
      // sum e_j t_j^nu + e_i t_i^nu = 0
      size_t idx = static_cast<size_t>(std::find(exps_.begin(), exps_.end(), solve_nu_) - exps_.begin());
      FqElt target = F_.div(F_.neg(sums_[idx]), F_.from_int(e_[i]));
      if (solve_nu_ == -1) {
        if (target.code == 0) return false;
        target = F_.inv(target);
      }
      if (target.code < start || used_[target.code]) return false;
      if (annulus_ && target.code == 0) return false;
      assign(i, target, +1);
      bool ok = leaf();
      if (!ok) assign(i, target, -1);
      return ok;
    }
    for (std::uint64_t c = start; c < F_.order(); ++c) {
      if (used_[c]) continue;
      assign(i, FqElt{c}, +1);
      if (dfs(k + 1)) return true;
      assign(i, FqElt{c}, -1);
      if (exhausted_) return false;
    }
    return false;
  }

  const ResidueVector& e_;
  const FiniteField& F_;
  const std::vector<long>& exps_;
  bool annulus_;
  std::uint64_t budget_;
  std::uint64_t& tuples_;
  bool exhausted_ = false;
  long solve_nu_ = 0;
  std::vector<size_t> order_;
  std::vector<size_t> free_;
  std::vector<FqElt> point_;
  std::vector<char> used_;
  std::vector<FqElt> sums_;
};

}  // namespace

SearchResult search_point(const ResidueVector& e, const SearchOptions& opt) {
  SearchResult res;
  long m1 = opt.m1, m2 = opt.m2;
  if (!opt.annulus) {
    if (m1 == 0) m1 = static_cast<long>(e.size()) - 1;
    m2 = 0;
  }
  auto exps = constraint_exponents(m1, m2, e.p());
  for (unsigned n = 1; n <= opt.n_max; ++n) {
    auto F = FiniteField::get(static_cast<unsigned>(e.p()), n);
    res.field = F;
    if (F->order() > (std::uint64_t{1} << 26)) break;
    Searcher s(e, *F, exps, opt.annulus, opt.budget, res.tuples);
    auto pt = s.run();
    if (pt) {
      res.point = std::move(pt);
      return res;
    }
    if (s.exhausted()) {
      res.budget_exhausted = true;
      return res;
    }
  }
  return res;
}

// ---- certificates ----

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::ProvedByCriterion: return "ProvedByCriterion";
    case CertStatus::Certified: return "Certified";
    case CertStatus::Unknown: return "Unknown";
    case CertStatus::NotApplicable: return "NotApplicable";
  }
  return "?";
}

Certificate build_certificate(const HurwitzTree& t, const VertexProblem& prob, const FieldPtr& F,
                              const std::vector<FqElt>& point) {
  using charp::Point;
  using charp::Poly;
  using charp::RatFunc;
  Certificate c{F, point, RatFunc(F), {}, is_mult(prob.shape) ? charp::ReductionKind::Mult : charp::ReductionKind::Add};
  auto add_edge = [&](const EdgeRef& r, Point pt) {
    c.edges.push_back({arc_name(t, r), pt, t.arc_m(r), t.arc_h(r)});
  };
  add_edge(prob.negative[0], Point::infinity());
  if (prob.negative.size() > 1) add_edge(prob.negative[1], Point::at(F->zero()));
  for (size_t i = 0; i < prob.indexed.size(); ++i) add_edge(prob.indexed[i], Point::at(point[i]));

  Poly num = Poly::constant(F, F->one()), den = Poly::constant(F, F->one());
  for (size_t i = 0; i < point.size(); ++i) {
    Poly lin = Poly::linear(F, point[i]);
    if (is_mult(prob.shape)) {
      num = num * lin.pow(static_cast<unsigned long>(prob.e[i]));
    } else if (i < prob.indexed.size()) {
      den = den * lin.pow(static_cast<unsigned long>(t.arc_m(prob.indexed[i])));
    } else {
      num = num * lin;
    }
  }
  c.u = RatFunc(num, den);
  return c;
}

VertexCertification certify_vertex(const HurwitzTree& t, const std::string& s, unsigned n_max, std::uint64_t budget) {
  VertexCertification out;
  if (t.valence(s) < 3) return out;
  out.problem = vertex_residue_vector(t, s);
  const VertexProblem& prob = *out.problem;
  try {
    out.partition = small_maximal_partition(prob.e, prob.bound);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::BudgetExceeded) throw;
  }
  SearchOptions opt;
  opt.n_max = n_max;
  opt.budget = budget;
  opt.annulus = is_annulus(prob.shape);
  opt.m1 = prob.m1;
  opt.m2 = prob.m2;
  SearchResult sr = search_point(prob.e, opt);
  out.tuples = sr.tuples;
  out.budget_exhausted = sr.budget_exhausted;
  if (sr.point) {
    Certificate cert = build_certificate(t, prob, sr.field, *sr.point);
    if (charp::verify_certificate(cert.u, cert.edges, cert.kind)) {
      out.certificate = std::move(cert);
      out.status = CertStatus::Certified;
      return out;
    }
  }
  out.status = out.partition ? CertStatus::ProvedByCriterion : CertStatus::Unknown;
  return out;
}

}  // namespace hurwitz::real
