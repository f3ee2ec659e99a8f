// hurwitz: command-line front end for the tree, realizability and boundary
// checks.
//
// Exit codes: 0 pass or found, 1 fail, 2 unknown or exhausted, 3 input error.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hurwitz/theorems.hpp"
#include "hurwitz/tree_io.hpp"
#include "hurwitz/valued_field.hpp"
#include "json.hpp"

using namespace hurwitz;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

struct Output {
  bool json = false;
  Json doc;
  std::ostringstream text;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

tree::HurwitzTree load_tree(const std::string& path, Output& out) {
  auto doc = io::parse_tree_file(read_text(path));
  for (const auto& w : doc.warnings) {
    out.doc["warnings"].push_back(w);
    std::cerr << "warning: " << w << "\n";
  }
  return io::to_tree(doc);
}

std::string field_name(const charp::FiniteField& F) {
  return "F_" + std::to_string(F.order());
}

Json point_json(const charp::FiniteField& F, const std::vector<charp::FqElt>& pt) {
  Json a = Json::array();
  for (auto x : pt) a.push_back(F.to_string(x));
  return a;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

Json violations_json(const tree::ValidationReport& rep) {
  Json a = Json::array();
  for (const auto& v : rep.violations) a.push_back({{"axiom", v.axiom}, {"location", v.location}, {"message", v.message}});
  return a;
}

void print_violations(std::ostream& os, const tree::ValidationReport& rep) {
  for (const auto& v : rep.violations) os << "  " << v.axiom << " at " << v.location << ": " << v.message << "\n";
}

Json certification_json(const tree::HurwitzTree& t, const real::VertexCertification& c) {
  Json j;
  j["status"] = real::to_string(c.status);
  if (c.problem) {
    const auto& pr = *c.problem;
    j["problem"] = {{"e", pr.e.entries()}, {"bound", pr.bound}, {"shape", real::to_string(pr.shape)},
                    {"m1", pr.m1},         {"m2", pr.m2},       {"padding", pr.padding}};
    if (c.partition) j["partition"] = c.partition->to_string(pr.e);
  }
  if (c.certificate) {
    const auto& cert = *c.certificate;
    const auto& F = *cert.field;
    Json edges = Json::array();
    for (const auto& e : cert.edges)
      edges.push_back({{"arc", e.edge}, {"point", charp::to_string(e.point, F)}, {"m", e.m}, {"h", e.h}});
    j["certificate"] = {{"field", field_name(F)},
                        {"point", point_json(F, cert.point)},
                        {"u", cert.u.to_string()},
                        {"kind", cert.kind == charp::ReductionKind::Mult ? "Mult" : "Add"},
                        {"edges", edges},
                        {"verified", charp::verify_certificate(cert.u, cert.edges, cert.kind)}};
  }
  j["tuples"] = c.tuples;
  j["budget_exhausted"] = c.budget_exhausted;
  (void)t;
  return j;
}

Json statuses_json(const tree::HurwitzTree& t, const std::vector<thm::VertexStatus>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) {
    Json j = v.detail ? certification_json(t, *v.detail) : Json{{"status", real::to_string(v.status)}};
    j["vertex"] = v.vertex;
    if (!v.error.empty()) j["error"] = v.error;
    a.push_back(j);
  }
  return a;
}

void print_statuses(std::ostream& os, const std::vector<thm::VertexStatus>& vs) {
  for (const auto& v : vs) {
    os << "  " << v.vertex << ": " << real::to_string(v.status);
    if (v.detail && v.detail->partition && v.detail->problem)
      os << " " << v.detail->partition->to_string(v.detail->problem->e);
    if (v.detail && v.detail->certificate) os << " over " << field_name(*v.detail->certificate->field);
    if (!v.error.empty()) os << " (" << v.error << ")";
    os << "\n";
  }
}

int verdict_code(thm::Verdict v) {
  switch (v) {
    case thm::Verdict::RealizableProved: return kPass;
    case thm::Verdict::ConditionsFailed: return kFail;
    case thm::Verdict::ConditionsHoldRealizabilityUnknown: return kUnknown;
  }
  return kFail;
}

// Validation fails before the D/C conditions are meaningful.
bool report_invalid(const tree::HurwitzTree& t, Output& out) {
  auto rep = tree::validate(t);
  if (rep.ok()) return false;
  out.doc["valid"] = false;
  out.doc["violations"] = violations_json(rep);
  out.text << "invalid tree\n";
  print_violations(out.text, rep);
  return true;
}

// Partition-level documents: {"p", "vectors": [{"vertex", "e", "bound", "partition"}]}.
int validate_partitions(const Json& j, Output& out) {
  const int p = j.at("p").get<int>();
  bool all_ok = true;
  Json results = Json::array();
  for (const auto& v : j.at("vectors")) {
    real::ResidueVector e(p, v.at("e").get<std::vector<long>>());
    long bound = v.at("bound").get<long>();
    auto blocks = v.at("partition").get<std::vector<std::vector<long>>>();
    std::string name = v.value("vertex", std::string("?"));
    Json r{{"vertex", name}, {"e", e.entries()}, {"bound", bound}};

    std::vector<char> used(e.size(), 0);
    real::Partition P;
    bool covered = true;
    for (const auto& b : blocks) {
      P.blocks.emplace_back();
      for (long x : b) {
        long res = ((x % p) + p) % p;
        size_t i = 0;
        while (i < e.size() && (used[i] || e[i] != res)) ++i;
        if (i == e.size()) {
          covered = false;
          break;
        }
        used[i] = 1;
        P.blocks.back().push_back(i);
      }
    }
    covered = covered && std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
    bool adapted = covered && real::is_adapted(P, e);
    bool maximal = adapted && real::is_maximal_adapted(P, e);
    bool within = static_cast<long>(blocks.size()) <= bound;
    bool criterion = real::criterion_small_partition(e, bound);
    bool ok = adapted && maximal && within && criterion;
    all_ok = all_ok && ok;
    r["covers_e"] = covered;
    r["adapted"] = adapted;
    r["maximal"] = maximal;
    r["blocks"] = blocks.size();
    r["criterion"] = criterion;
    r["ok"] = ok;
    results.push_back(r);
    out.text << name << ": " << (ok ? "ok" : "FAIL") << " (" << blocks.size() << " blocks, bound " << bound
             << (covered ? "" : ", does not cover e") << (adapted ? "" : ", not adapted")
             << (maximal ? "" : ", not maximal") << (criterion ? "" : ", criterion fails") << ")\n";
  }
  out.doc["kind"] = "partitions";
  out.doc["vectors"] = results;
  out.doc["ok"] = all_ok;
  return all_ok ? kPass : kFail;
}

int cmd_validate(const std::string& path, Output& out) {
  auto text = read_text(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    io::parse_tree_file(text);  // rethrows with a position
  }
  if (j.is_object() && j.contains("vectors")) {
    try {
      return validate_partitions(j, out);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::SyntaxError, e.what());
    }
  }
  auto t = load_tree(path, out);
  auto rep = tree::validate(t);
  out.doc["kind"] = "tree";
  out.doc["valid"] = rep.ok();
  out.doc["violations"] = violations_json(rep);
  out.text << (rep.ok() ? "valid" : "invalid") << " (" << t.vertices().size() << " vertices, " << t.edges().size()
           << " edges, " << tree::leaves(t).size() << " leaves)\n";
  print_violations(out.text, rep);
  return rep.ok() ? kPass : kFail;
}

int cmd_differente(const std::string& path, const std::string& vertex, Output& out) {
  auto t = load_tree(path, out);
  std::vector<std::string> vs = vertex.empty() ? t.bfs_order() : std::vector<std::string>{vertex};
  Json d = Json::object();
  for (const auto& v : vs) {
    long x = tree::differente(t, v);
    d[v] = x;
    out.text << v << " " << x << "\n";
  }
  out.doc["vKp"] = t.vKp();
  out.doc["differente"] = d;
  return kPass;
}

int cmd_classify(const std::string& path, Output& out) {
  auto t = load_tree(path, out);
  Json c = Json::object();
  for (const auto& v : t.bfs_order()) {
    auto ty = tree::to_string(tree::classify_vertex(t, v));
    c[v] = ty;
    out.text << v << " " << ty << "\n";
  }
  out.doc["types"] = c;
  return kPass;
}

int cmd_check_disk(const std::string& path, const thm::CertifyOptions& opt, Output& out) {
  auto t = load_tree(path, out);
  if (report_invalid(t, out)) return kFail;
  auto r = thm::check_disk(t, opt);
  out.doc["D1"] = r.d1;
  out.doc["D2"] = r.d2;
  out.doc["D2_offending"] = r.d2_offending;
  out.doc["D3"] = statuses_json(t, r.d3);
  out.doc["failed"] = r.failed;
  out.doc["verdict"] = thm::to_string(r.verdict);
  out.text << "D1 " << (r.d1 ? "ok" : "FAIL") << "\n";
  out.text << "D2 " << (r.d2 ? "ok" : "FAIL: " + join(r.d2_offending)) << "\n";
  out.text << "D3\n";
  print_statuses(out.text, r.d3);
  out.text << thm::to_string(r.verdict) << "\n";
  return verdict_code(r.verdict);
}

int cmd_check_annulus(const std::string& path, const thm::CertifyOptions& opt, Output& out) {
  auto t = load_tree(path, out);
  if (report_invalid(t, out)) return kFail;
  auto r = thm::check_annulus(t, opt);
  out.doc["C1"] = r.c1;
  out.doc["C2"] = r.c2;
  out.doc["C3"] = r.c3;
  out.doc["C3_offending"] = r.c3_offending;
  out.doc["C4"] = statuses_json(t, r.c4);
  out.doc["chain"] = r.chain;
  out.doc["thickness"] = r.thickness ? Json(*r.thickness) : Json();
  out.doc["failed"] = r.failed;
  out.doc["verdict"] = thm::to_string(r.verdict);
  out.text << "C1 " << (r.c1 ? "ok" : "FAIL") << "\n";
  out.text << "C2 " << (r.c2 ? "ok: " + join(r.chain, " -> ") + ", thickness " + std::to_string(r.thickness.value_or(0)) : "FAIL")
           << "\n";
  out.text << "C3 " << (r.c3 ? "ok" : "FAIL: " + join(r.c3_offending)) << "\n";
  out.text << "C4\n";
  print_statuses(out.text, r.c4);
  out.text << thm::to_string(r.verdict) << "\n";
  return verdict_code(r.verdict);
}

Json checks_json(const std::vector<thm::Check>& cs, std::ostream& os) {
  Json a = Json::array();
  for (const auto& c : cs) {
    a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    os << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return a;
}

int cmd_structure(const std::string& path, Output& out) {
  auto t = load_tree(path, out);
  auto rep = thm::annulus_structure_checks(t);
  out.doc["checks"] = checks_json(rep.checks, out.text);
  out.doc["ok"] = rep.ok();
  return rep.ok() ? kPass : kFail;
}

int cmd_conductor_type(const std::string& path, Output& out) {
  auto t = load_tree(path, out);
  auto c = thm::small_conductor_type(t);
  out.text << "Type " << thm::to_string(c.type) << " (m1 = " << c.m1 << ", m2 = " << c.m2
           << ", thickness = " << c.thickness << ")\n";
  out.doc["type"] = thm::to_string(c.type);
  out.doc["m1"] = c.m1;
  out.doc["m2"] = c.m2;
  out.doc["thickness"] = c.thickness;
  out.doc["checks"] = checks_json(c.checks, out.text);
  out.doc["consistent"] = c.consistent();
  return c.consistent() ? kPass : kFail;
}

int cmd_certify_vertex(const std::string& path, const std::string& vertex, unsigned nmax, std::uint64_t budget,
                       Output& out) {
  auto t = load_tree(path, out);
  if (!t.has_vertex(vertex)) throw Error(ErrorCode::UnknownVertex, vertex);
  auto c = real::certify_vertex(t, vertex, nmax, budget);
  out.doc["vertex"] = vertex;
  out.doc.update(certification_json(t, c));
  out.text << vertex << ": " << real::to_string(c.status) << "\n";
  if (c.problem) {
    out.text << "  e = " << c.problem->e.to_string() << ", bound " << c.problem->bound << ", "
             << real::to_string(c.problem->shape) << "\n";
    if (c.partition) out.text << "  partition " << c.partition->to_string(c.problem->e) << "\n";
  }
  if (c.certificate) {
    const auto& F = *c.certificate->field;
    out.text << "  point over " << field_name(F) << ":";
    for (auto x : c.certificate->point) out.text << " " << F.to_string(x);
    out.text << "\n  u = " << c.certificate->u.to_string() << "\n";
  }
  if (c.status == real::CertStatus::Unknown) {
    out.text << "  searched " << c.tuples << " tuples" << (c.budget_exhausted ? ", budget exhausted" : "") << "\n";
    return kUnknown;
  }
  return kPass;
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stol(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "not an integer: '" + item + "'");
    }
  }
  return v;
}

int cmd_search_point(int p, const std::string& e_list, const real::SearchOptions& opt, Output& out) {
  real::ResidueVector e(p, parse_list(e_list));
  auto r = real::search_point(e, opt);
  out.doc["e"] = e.entries();
  out.doc["tuples"] = r.tuples;
  out.doc["budget_exhausted"] = r.budget_exhausted;
  if (r.field) out.doc["field"] = field_name(*r.field);
  if (r.point) {
    out.doc["found"] = true;
    out.doc["point"] = point_json(*r.field, *r.point);
    out.text << "point over " << field_name(*r.field) << ":";
    for (auto x : *r.point) out.text << " " << r.field->to_string(x);
    out.text << "\n";
    return kPass;
  }
  out.doc["found"] = false;
  out.text << "no point found up to " << (r.field ? field_name(*r.field) : "F_p") << " (" << r.tuples << " tuples"
           << (r.budget_exhausted ? ", budget exhausted" : "") << ")\n";
  return kUnknown;
}

field::BoundaryKind parse_kind(std::string s) {
  auto norm = [](std::string x) {
    std::string y;
    for (char c : x)
      if (c != '-' && c != '_') y += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return y;
  };
  for (auto k : {field::BoundaryKind::MultResidue, field::BoundaryKind::MultExact, field::BoundaryKind::Additive,
                 field::BoundaryKind::DiskNormalForm})
    if (norm(field::to_string(k)) == norm(s)) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown boundary kind '" + s + "'");
}

int cmd_boundary(int p, int N, const field::BoundaryParams& params, bool check_order, const std::string& profile,
                 Output& out) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw Error(ErrorCode::InvalidArgument, "p must be a small prime");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  auto sigma = field::boundary_automorphism(p, N, params);
  long d = field::boundary_differente(sigma);
  out.doc["kind"] = field::to_string(params.kind);
  out.doc["p"] = p;
  out.doc["N"] = N;
  out.doc["m"] = params.m;
  out.doc["n"] = params.n;
  out.doc["h"] = params.h;
  out.doc["vKp"] = static_cast<long>(N) * (p - 1);
  out.doc["differente"] = d;
  out.doc["window"] = {sigma.decide_lo(), sigma.decide_hi()};
  out.text << field::to_string(params.kind) << " p=" << p << " N=" << N << ": differente " << d << " (v_K(p) = "
           << N * (p - 1) << ")\n";
  int code = kPass;
  if (check_order) {
    bool ok = field::iterate_check_order_p(sigma);
    out.doc["order_p"] = ok;
    out.text << "sigma^p = id on exponents [" << sigma.decide_lo() << ", " << sigma.decide_hi()
             << "]: " << (ok ? "yes" : "NO") << "\n";
    if (!ok) code = kFail;
  }
  if (!profile.empty()) {
    std::vector<mpq_class> rhos;
    std::stringstream ss(profile);
    std::string item;
    while (std::getline(ss, item, ',')) {
      mpq_class q;
      if (q.set_str(item, 10) != 0 || q < 0) throw Error(ErrorCode::InvalidArgument, "bad rho '" + item + "'");
      q.canonicalize();
      rhos.push_back(q);
    }
    auto prof = field::differente_profile(sigma, rhos);
    Json a = Json::array();
    out.text << "profile:";
    for (size_t i = 0; i < rhos.size(); ++i) {
      a.push_back({{"rho", rhos[i].get_str()}, {"differente", prof[i].get_str()}});
      out.text << " " << rhos[i].get_str() << "->" << prof[i].get_str();
    }
    out.text << "\n";
    out.doc["profile"] = a;
  }
  return code;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::PrecisionExhausted:
      return kUnknown;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz tree checks"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print the full report as JSON");

  std::string file, vertex;
  thm::CertifyOptions copt;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Tree file")->required()->check(CLI::ExistingFile); };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--nmax", copt.n_max, "Largest extension degree searched")->capture_default_str();
    sub->add_option("--budget", copt.budget, "Search budget in tuples")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Check the H axioms, or a partition document");
  add_file(validate);
  auto* differente = app.add_subcommand("differente", "Differente at each vertex");
  add_file(differente);
  differente->add_option("--vertex", vertex, "Single vertex");
  auto* classify = app.add_subcommand("classify", "Reduction type of each vertex");
  add_file(classify);
  auto* check_disk = app.add_subcommand("check-disk", "Disk conditions D1-D3");
  add_file(check_disk);
  add_search(check_disk);
  auto* check_annulus = app.add_subcommand("check-annulus", "Annulus conditions C1-C4");
  add_file(check_annulus);
  add_search(check_annulus);
  auto* structure = app.add_subcommand("structure", "Structure of a tree satisfying C1 and C2");
  add_file(structure);
  auto* conductor = app.add_subcommand("conductor-type", "Type I/II/III for small conductors");
  add_file(conductor);
  auto* certify = app.add_subcommand("certify-vertex", "Criterion or certificate at one vertex");
  add_file(certify);
  certify->add_option("--vertex", vertex, "Vertex")->required();
  add_search(certify);
  auto* dot = app.add_subcommand("dot", "Graphviz export");
  add_file(dot);

  int p = 0, N = 1;
  std::string e_list;
  real::SearchOptions sopt;
  auto* search = app.add_subcommand("search-point", "Search for a point of X*_e");
  search->add_option("--p", p, "Prime")->required();
  search->add_option("--e", e_list, "Comma-separated residues")->required();
  search->add_option("--nmax", sopt.n_max, "Largest extension degree")->capture_default_str();
  search->add_option("--budget", sopt.budget, "Budget in tuples")->capture_default_str();
  search->add_flag("--annulus", sopt.annulus, "Annulus problem (needs --m1, --m2)");
  search->add_option("--m1", sopt.m1, "First conductor");
  search->add_option("--m2", sopt.m2, "Second conductor");

  field::BoundaryParams bparams;
  std::string kind = "MultResidue", profile;
  bool check_order = false;
  auto* boundary = app.add_subcommand("boundary", "Boundary automorphism normal forms");
  boundary->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  boundary->add_option("--kind", kind, "MultResidue, MultExact, Additive or DiskNormalForm")->capture_default_str();
  boundary->add_option("--p", p, "Prime")->required();
  boundary->add_option("--N", N, "Ramification index over Q_p(zeta)")->capture_default_str();
  boundary->add_option("--m", bparams.m, "Conductor")->capture_default_str();
  boundary->add_option("--n", bparams.n, "Level")->capture_default_str();
  boundary->add_option("--h", bparams.h, "Residue (MultResidue)")->capture_default_str();
  boundary->add_flag("--check-order", check_order, "Verify sigma^p = id");
  boundary->add_option("--profile", profile, "Comma-separated rho values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  Output out;
  out.json = json;
  CLI::App* cmd = app.get_subcommands().front();
  out.doc["schema"] = 1;
  out.doc["command"] = cmd->get_name();
  int rc = kInputError;
  try {
    if (cmd == validate) rc = cmd_validate(file, out);
    else if (cmd == differente) rc = cmd_differente(file, vertex, out);
    else if (cmd == classify) rc = cmd_classify(file, out);
    else if (cmd == check_disk) rc = cmd_check_disk(file, copt, out);
    else if (cmd == check_annulus) rc = cmd_check_annulus(file, copt, out);
    else if (cmd == structure) rc = cmd_structure(file, out);
    else if (cmd == conductor) rc = cmd_conductor_type(file, out);
    else if (cmd == certify) rc = cmd_certify_vertex(file, vertex, copt.n_max, copt.budget, out);
    else if (cmd == search) rc = cmd_search_point(p, e_list, sopt, out);
    else if (cmd == boundary) {
      bparams.kind = parse_kind(kind);
      rc = cmd_boundary(p, N, bparams, check_order, profile, out);
    } else if (cmd == dot) {
      Output scratch;
      out.text << io::to_dot(load_tree(file, scratch));
      out.doc["dot"] = out.text.str();
      rc = kPass;
    }
  } catch (const Error& e) {
    rc = exit_code_for(e.code());
    out.doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    out.text << "error: " << e.what() << "\n";
  }
  out.doc["exit_code"] = rc;

  if (json)
    std::cout << out.doc.dump(2) << "\n";
  else
    (rc == kInputError ? std::cerr : std::cout) << out.text.str();
  return rc;
}
