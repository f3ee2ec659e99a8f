#include "hurwitz/theorems.hpp"

#include <algorithm>
#include <set>

namespace hurwitz::thm {

using tree::HurwitzTree;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::RealizableProved: return "RealizableProved";
    case Verdict::ConditionsFailed: return "ConditionsFailed";
    case Verdict::ConditionsHoldRealizabilityUnknown: return "ConditionsHoldRealizabilityUnknown";
  }
  return "?";
}

std::string to_string(ConductorKind k) {
  switch (k) {
    case ConductorKind::I: return "I";
    case ConductorKind::II: return "II";
    case ConductorKind::III: return "III";
  }
  return "?";
}

namespace {

void require_valid(const HurwitzTree& t) {
  auto rep = tree::validate(t);
  if (rep.ok()) return;
  const auto& v = rep.violations.front();
  throw Error(ErrorCode::InvalidTree, v.axiom + " at " + v.location + ": " + v.message + " (" +
                                          std::to_string(rep.violations.size()) + " violation(s))");
}

std::vector<VertexStatus> certify_all(const HurwitzTree& t, const CertifyOptions& opt) {
  std::vector<VertexStatus> out;
  for (const auto& v : t.bfs_order()) {
    if (t.valence(v) < 3) continue;
    VertexStatus st;
    st.vertex = v;
    try {
      st.detail = real::certify_vertex(t, v, opt.n_max, opt.budget);
      st.status = st.detail->status;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedShape && e.code() != ErrorCode::BudgetExceeded) throw;
      st.status = real::CertStatus::Unknown;
      st.error = e.what();
    }
    out.push_back(std::move(st));
  }
  return out;
}

bool all_proved(const std::vector<VertexStatus>& s) {
  return std::all_of(s.begin(), s.end(), [](const VertexStatus& v) {
    return v.status == real::CertStatus::Certified || v.status == real::CertStatus::ProvedByCriterion ||
           v.status == real::CertStatus::NotApplicable;
  });
}

long leaf_children(const HurwitzTree& t, const std::string& v) {
  long n = 0;
  for (size_t k : t.children(v))
    if (tree::is_leaf(t.edges()[k])) ++n;
  return n;
}

std::vector<std::string> c3_offenders(const HurwitzTree& t, const std::string& except) {
  std::vector<std::string> out;
  for (const auto& v : t.vertices()) {
    if (v == except || v == t.root() || !t.is_maximal(v)) continue;
    auto pe = t.parent_edge(v);
    if (pe && !tree::is_leaf(t.edges()[*pe])) out.push_back(v);
  }
  return out;
}

struct Chain {
  std::vector<std::string> vertices;
  std::vector<size_t> edges;
};

Chain require_chain(const HurwitzTree& t) {
  if (t.valence(t.root()) != 1) throw Error(ErrorCode::PreconditionFailed, "root valence is not 1 (C1)");
  auto ch = fundamental_chain(t);
  if (!ch) throw Error(ErrorCode::PreconditionFailed, "no unique fundamental chain (C2)");
  return {*ch, t.chain_to(ch->back())};
}

}  // namespace

DiskReport check_disk(const HurwitzTree& t, const CertifyOptions& opt) {
  require_valid(t);
  DiskReport r;
  r.d1 = t.valence(t.root()) == 1;
  for (const auto& v : t.vertices()) {
    if (v == t.root() || !t.is_maximal(v)) continue;
    const auto& e = t.edges()[*t.parent_edge(v)];
    if (!tree::is_leaf(e)) r.d2_offending.push_back(e.id);
  }
  r.d2 = r.d2_offending.empty();
  r.d3 = certify_all(t, opt);
  if (!r.d1) r.failed.push_back("D1");
  if (!r.d2) r.failed.push_back("D2");
  if (!r.failed.empty())
    r.verdict = Verdict::ConditionsFailed;
  else
    r.verdict = all_proved(r.d3) ? Verdict::RealizableProved : Verdict::ConditionsHoldRealizabilityUnknown;
  return r;
}

bool disk_leaf_formula(const HurwitzTree& t, const std::string& edge_id) {
  const auto& e = t.edge(edge_id);
  HurwitzTree sub = tree::subtree(t, edge_id);
  return e.m + 1 == static_cast<long>(tree::leaves(sub).size());
}

std::optional<std::vector<std::string>> fundamental_chain(const HurwitzTree& t) {
  std::optional<std::string> end;
  for (const auto& v : t.vertices()) {
    if (v == t.root() || !t.is_maximal(v)) continue;
    if (t.edges()[*t.parent_edge(v)].eps == 0) continue;
    if (end) return std::nullopt;
    end = v;
  }
  if (!end) return std::nullopt;
  std::vector<std::string> chain{t.root()};
  for (size_t k : t.chain_to(*end)) chain.push_back(t.edges()[k].to);
  return chain;
}

AnnulusReport check_annulus(const HurwitzTree& t, const CertifyOptions& opt) {
  require_valid(t);
  AnnulusReport r;
  r.c1 = t.valence(t.root()) == 1;
  auto ch = fundamental_chain(t);
  r.c2 = ch.has_value();
  if (ch) {
    r.chain = *ch;
    long e = 0;
    for (size_t k : t.chain_to(ch->back())) e += t.edges()[k].eps;
    r.thickness = e;
  }
  r.c3_offending = c3_offenders(t, ch ? ch->back() : std::string());
  if (!ch) {
    // Without a distinguished end, eps != 0 maximal vertices are not C3 failures.
    std::erase_if(r.c3_offending, [&](const std::string& v) { return t.edges()[*t.parent_edge(v)].eps != 0; });
  }
  r.c3 = r.c3_offending.empty();
  r.c4 = certify_all(t, opt);
  if (!r.c1) r.failed.push_back("C1");
  if (!r.c2) r.failed.push_back("C2");
  if (!r.c3) r.failed.push_back("C3");
  if (!r.failed.empty())
    r.verdict = Verdict::ConditionsFailed;
  else
    r.verdict = all_proved(r.c4) ? Verdict::RealizableProved : Verdict::ConditionsHoldRealizabilityUnknown;
  return r;
}

bool StructureReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

StructureReport annulus_structure_checks(const HurwitzTree& t) {
  Chain ch = require_chain(t);
  StructureReport rep;
  std::set<std::string> fundamental(ch.vertices.begin(), ch.vertices.end());

  long m_eta = t.edges()[ch.edges.front()].m;
  long m_eta2 = -t.edges()[ch.edges.back()].m;
  long n_leaves = static_cast<long>(tree::leaves(t).size());
  rep.checks.push_back({"leaf-count", n_leaves == m_eta + m_eta2,
                        std::to_string(n_leaves) + " leaves, m(a_eta) + m(a_eta') = " + std::to_string(m_eta) + " + " +
                            std::to_string(m_eta2)});

  std::vector<size_t> mult;
  for (size_t i = 0; i < ch.vertices.size(); ++i)
    if (tree::classify_vertex(t, ch.vertices[i]) == tree::VertexType::Multiplicative) mult.push_back(i);
  bool mult_ok = mult.size() <= 2 && (mult.size() < 2 || mult[1] == mult[0] + 1);
  std::string names;
  for (size_t i : mult) names += (names.empty() ? "" : ", ") + ch.vertices[i];
  rep.checks.push_back({"multiplicative-fundamental", mult_ok,
                        std::to_string(mult.size()) + " multiplicative fundamental vertices" +
                            (names.empty() ? "" : " (" + names + ")")});

  // A leaf origin off the chain must have only leaves below it.
  std::vector<std::string> bad;
  for (const auto& e : t.edges()) {
    if (!tree::is_leaf(e) || fundamental.count(e.from)) continue;
    const auto& kids = t.children(e.from);
    bool maximal = std::all_of(kids.begin(), kids.end(), [&](size_t k) { return tree::is_leaf(t.edges()[k]); });
    if (!maximal && std::find(bad.begin(), bad.end(), e.from) == bad.end()) bad.push_back(e.from);
  }
  std::string bad_s;
  for (const auto& v : bad) bad_s += (bad_s.empty() ? "" : ", ") + v;
  rep.checks.push_back({"leaf-origins", bad.empty(), bad.empty() ? "all leaf origins fundamental or maximal"
                                                                 : "leaf origins neither fundamental nor maximal: " + bad_s});

  bool concave = true;
  std::string slopes;
  for (size_t i = 0; i < ch.edges.size(); ++i) {
    long m = t.edges()[ch.edges[i]].m;
    slopes += (i ? " " : "") + std::to_string(m * (t.p() - 1));
    if (i && m > t.edges()[ch.edges[i - 1]].m) concave = false;
  }
  rep.checks.push_back({"concavity", concave, "slopes " + slopes});
  return rep;
}

bool ConductorType::consistent() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ConductorType small_conductor_type(const HurwitzTree& t) {
  Chain ch = require_chain(t);
  if (!c3_offenders(t, ch.vertices.back()).empty())
    throw Error(ErrorCode::PreconditionFailed, "a maximal vertex off the chain is not behind a leaf (C3)");
  if (tree::differente(t, ch.vertices.front()) != 0 || tree::differente(t, ch.vertices.back()) != 0)
    throw Error(ErrorCode::PreconditionFailed, "boundary vertices are not etale");
  const auto& a1 = t.edges()[ch.edges.front()];
  const auto& a2 = t.edges()[ch.edges.back()];
  long m1 = a1.m, m2 = -a2.m;
  if (m1 <= 0 || m2 <= 0 || m1 >= t.p() || m2 >= t.p())
    throw Error(ErrorCode::PreconditionFailed,
                "boundary conductors m1 = " + std::to_string(m1) + ", m2 = " + std::to_string(m2) + " not in (0, p)");

  ConductorType out{};
  out.m1 = m1;
  out.m2 = m2;
  long e = 0;
  for (size_t k : ch.edges) e += t.edges()[k].eps;
  out.thickness = e;
  __int128 lhs = static_cast<__int128>(e) * m1 * m2;
  __int128 rhs = static_cast<__int128>(t.N()) * (m1 + m2);
  out.type = lhs > rhs ? ConductorKind::I : lhs == rhs ? ConductorKind::II : ConductorKind::III;

  const long N = t.N();
  std::vector<std::string> interior(ch.vertices.begin() + 1, ch.vertices.end() - 1);
  auto& c = out.checks;
  c.push_back({"interior-length", interior.size() <= 2, std::to_string(interior.size()) + " interior vertices"});
  auto type_of = [&](const std::string& v) { return tree::classify_vertex(t, v); };
  auto eps_check = [&](const char* name, const tree::Edge& a, long m, bool strict) {
    __int128 lhs = static_cast<__int128>(a.eps) * m;
    bool ok = strict ? lhs < N : lhs == N;
    c.push_back({name, ok,
                 "eps(" + a.id + ") * " + std::to_string(m) + " = " + std::to_string(static_cast<long>(lhs)) +
                     (strict ? ", must be < " : ", must equal ") + std::to_string(N)});
  };

  switch (out.type) {
    case ConductorKind::I: {
      bool two = interior.size() == 2 && type_of(interior[0]) == tree::VertexType::Multiplicative &&
                 type_of(interior[1]) == tree::VertexType::Multiplicative;
      c.push_back({"two-multiplicative", two, "interior must be two multiplicative vertices"});
      if (two) {
        long l1 = leaf_children(t, interior[0]), l2 = leaf_children(t, interior[1]);
        c.push_back({"leaves-s1", l1 == m1, std::to_string(l1) + " leaves at " + interior[0] + ", expected " +
                                                std::to_string(m1)});
        c.push_back({"leaves-s2", l2 == m2, std::to_string(l2) + " leaves at " + interior[1] + ", expected " +
                                                std::to_string(m2)});
      }
      eps_check("eps-a1", a1, m1, false);
      eps_check("eps-a2", a2, m2, false);
      break;
    }
    case ConductorKind::II: {
      bool one = interior.size() == 1 && type_of(interior[0]) == tree::VertexType::Multiplicative;
      c.push_back({"single-multiplicative", one, "interior must be one multiplicative vertex"});
      if (one) {
        long l = leaf_children(t, interior[0]);
        c.push_back({"leaves-s", l == m1 + m2, std::to_string(l) + " leaves at " + interior[0] + ", expected " +
                                                   std::to_string(m1 + m2)});
      }
      eps_check("eps-a1", a1, m1, false);
      eps_check("eps-a2", a2, m2, false);
      break;
    }
    case ConductorKind::III: {
      bool one = interior.size() == 1 && type_of(interior[0]) == tree::VertexType::Additive;
      c.push_back({"single-additive", one, "interior must be one additive vertex"});
      if (one) {
        long q = 0;
        for (size_t k : t.children(interior[0]))
          if (t.edges()[k].to != ch.vertices.back()) ++q;
        long bound = std::min(m1, m2);
        c.push_back({"non-fundamental-edges", q <= bound, std::to_string(q) + " non-fundamental edges at " +
                                                              interior[0] + ", bound " + std::to_string(bound)});
      }
      eps_check("eps-a1", a1, m1, true);
      eps_check("eps-a2", a2, m2, true);
      break;
    }
  }
  return out;
}

}  // namespace hurwitz::thm
