#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hurwitz/theorems.hpp"
#include "hurwitz/tree_io.hpp"
#include "hurwitz/valued_field.hpp"

namespace py = pybind11;
using namespace hurwitz;
using namespace pybind11::literals;

namespace {

tree::HurwitzTree make_tree(int p, long N, long d0, const std::string& root, const std::vector<std::string>& vertices,
                            const std::vector<py::dict>& edges) {
  std::vector<tree::Edge> es;
  for (const auto& d : edges) {
    tree::Edge e;
    e.id = d.contains("id") ? d["id"].cast<std::string>() : "";
    e.from = d["from"].cast<std::string>();
    e.to = d["to"].cast<std::string>();
    e.eps = d["eps"].cast<long>();
    e.m = d["m"].cast<long>();
    e.h = d["h"].cast<long>();
    if (e.id.empty()) e.id = e.from + "->" + e.to;
    es.push_back(std::move(e));
  }
  return tree::HurwitzTree(p, N, d0, root, vertices, es);
}

py::list edges_of(const tree::HurwitzTree& t) {
  py::list out;
  for (const auto& e : t.edges())
    out.append(py::dict("id"_a = e.id, "from"_a = e.from, "to"_a = e.to, "eps"_a = e.eps, "m"_a = e.m, "h"_a = e.h));
  return out;
}

py::list violations(const tree::HurwitzTree& t) {
  py::list out;
  for (const auto& v : tree::validate(t).violations)
    out.append(py::dict("axiom"_a = v.axiom, "location"_a = v.location, "message"_a = v.message));
  return out;
}

py::list point_strings(const charp::FiniteField& F, const std::vector<charp::FqElt>& pt) {
  py::list out;
  for (auto x : pt) out.append(F.to_string(x));
  return out;
}

py::dict certification(const real::VertexCertification& c) {
  py::dict d("status"_a = real::to_string(c.status), "tuples"_a = c.tuples, "budget_exhausted"_a = c.budget_exhausted);
  if (c.problem) {
    d["e"] = c.problem->e.entries();
    d["bound"] = c.problem->bound;
    d["shape"] = real::to_string(c.problem->shape);
    if (c.partition) d["partition"] = c.partition->blocks;
  }
  if (c.certificate) {
    const auto& F = *c.certificate->field;
    d["field_order"] = F.order();
    d["point"] = point_strings(F, c.certificate->point);
    d["u"] = c.certificate->u.to_string();
    d["verified"] = charp::verify_certificate(c.certificate->u, c.certificate->edges, c.certificate->kind);
  }
  return d;
}

py::list statuses(const std::vector<thm::VertexStatus>& vs) {
  py::list out;
  for (const auto& v : vs) {
    py::dict d = v.detail ? certification(*v.detail) : py::dict("status"_a = real::to_string(v.status));
    d["vertex"] = v.vertex;
    if (!v.error.empty()) d["error"] = v.error;
    out.append(d);
  }
  return out;
}

py::list checks(const std::vector<thm::Check>& cs) {
  py::list out;
  for (const auto& c : cs) out.append(py::dict("name"_a = c.name, "passed"_a = c.passed, "detail"_a = c.detail));
  return out;
}

field::BoundaryKind kind_of(const std::string& s) {
  for (auto k : {field::BoundaryKind::MultResidue, field::BoundaryKind::MultExact, field::BoundaryKind::Additive,
                 field::BoundaryKind::DiskNormalForm})
    if (field::to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown boundary kind '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hurwitz tree checks";
  static py::exception<Error> exc(m, "HurwitzError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  py::class_<tree::HurwitzTree>(m, "Tree")
      .def(py::init(&make_tree), "p"_a, "N"_a, "d0"_a, "root"_a, "vertices"_a, "edges"_a)
      .def_static("from_json", [](const std::string& text) { return io::to_tree(io::parse_tree_file(text)); })
      .def_static("load", [](const std::string& path) { return io::to_tree(io::read_tree_file(path)); })
      .def("to_json", [](const tree::HurwitzTree& t) { return io::serialize(io::from_tree(t)); })
      .def("to_dot", &io::to_dot)
      .def_property_readonly("p", &tree::HurwitzTree::p)
      .def_property_readonly("N", &tree::HurwitzTree::N)
      .def_property_readonly("d0", &tree::HurwitzTree::d0)
      .def_property_readonly("root", &tree::HurwitzTree::root)
      .def_property_readonly("vertices", &tree::HurwitzTree::vertices)
      .def_property_readonly("edges", &edges_of)
      .def("validate", &violations)
      .def("is_valid", [](const tree::HurwitzTree& t) { return tree::validate(t).ok(); })
      .def("differente", &tree::differente, "vertex"_a)
      .def("classify", [](const tree::HurwitzTree& t, const std::string& v) {
        return tree::to_string(tree::classify_vertex(t, v));
      }, "vertex"_a)
      .def("leaves", &tree::leaves)
      .def("subtree", &tree::subtree, "edge_id"_a)
      .def("canonical_form", &tree::canonical_form)
      .def("is_equivalent", &tree::is_equivalent, "other"_a)
      .def("certify_vertex", [](const tree::HurwitzTree& t, const std::string& v, unsigned n_max, std::uint64_t budget) {
        return certification(real::certify_vertex(t, v, n_max, budget));
      }, "vertex"_a, "n_max"_a = 3, "budget"_a = 10'000'000)
      .def("check_disk", [](const tree::HurwitzTree& t, unsigned n_max, std::uint64_t budget) {
        auto r = thm::check_disk(t, {n_max, budget});
        return py::dict("D1"_a = r.d1, "D2"_a = r.d2, "D2_offending"_a = r.d2_offending, "D3"_a = statuses(r.d3),
                        "failed"_a = r.failed, "verdict"_a = thm::to_string(r.verdict));
      }, "n_max"_a = 3, "budget"_a = 10'000'000)
      .def("check_annulus", [](const tree::HurwitzTree& t, unsigned n_max, std::uint64_t budget) {
        auto r = thm::check_annulus(t, {n_max, budget});
        return py::dict("C1"_a = r.c1, "C2"_a = r.c2, "C3"_a = r.c3, "C3_offending"_a = r.c3_offending,
                        "C4"_a = statuses(r.c4), "chain"_a = r.chain, "thickness"_a = r.thickness,
                        "failed"_a = r.failed, "verdict"_a = thm::to_string(r.verdict));
      }, "n_max"_a = 3, "budget"_a = 10'000'000)
      .def("structure_checks", [](const tree::HurwitzTree& t) {
        auto r = thm::annulus_structure_checks(t);
        return py::dict("checks"_a = checks(r.checks), "ok"_a = r.ok());
      })
      .def("conductor_type", [](const tree::HurwitzTree& t) {
        auto c = thm::small_conductor_type(t);
        return py::dict("type"_a = thm::to_string(c.type), "m1"_a = c.m1, "m2"_a = c.m2, "thickness"_a = c.thickness,
                        "checks"_a = checks(c.checks), "consistent"_a = c.consistent());
      })
      .def("__repr__", [](const tree::HurwitzTree& t) {
        return "<Tree p=" + std::to_string(t.p()) + " N=" + std::to_string(t.N()) + " with " +
               std::to_string(t.vertices().size()) + " vertices>";
      });

  m.def("disk_bound", &real::disk_bound, "m"_a, "p"_a);
  m.def("criterion_small_partition", [](int p, std::vector<long> e, long bound) {
    return real::criterion_small_partition(real::ResidueVector(p, std::move(e)), bound);
  }, "p"_a, "e"_a, "bound"_a);
  m.def("small_maximal_partition", [](int p, std::vector<long> e, long bound) -> py::object {
    auto P = real::small_maximal_partition(real::ResidueVector(p, std::move(e)), bound);
    if (!P) return py::none();
    return py::cast(P->blocks);
  }, "p"_a, "e"_a, "bound"_a, "Index blocks of a maximal adapted partition with the fewest blocks, or None.");
  m.def("search_point", [](int p, std::vector<long> e, unsigned n_max, std::uint64_t budget) {
    real::SearchOptions opt;
    opt.n_max = n_max;
    opt.budget = budget;
    auto r = real::search_point(real::ResidueVector(p, std::move(e)), opt);
    py::dict d("found"_a = r.point.has_value(), "tuples"_a = r.tuples, "budget_exhausted"_a = r.budget_exhausted);
    if (r.field) d["field_order"] = r.field->order();
    if (r.point) d["point"] = point_strings(*r.field, *r.point);
    return d;
  }, "p"_a, "e"_a, "n_max"_a = 3, "budget"_a = 10'000'000);
  m.def("boundary", [](const std::string& kind, int p, int N, long m_, long n, long h, std::vector<std::string> rhos) {
    auto sigma = field::boundary_automorphism(p, N, {kind_of(kind), h, m_, n});
    std::vector<mpq_class> qs;
    for (const auto& s : rhos) qs.emplace_back(s);
    py::list prof;
    for (const auto& x : field::differente_profile(sigma, qs)) prof.append(x.get_str());
    return py::dict("differente"_a = field::boundary_differente(sigma), "order_p"_a = field::iterate_check_order_p(sigma),
                    "profile"_a = prof);
  }, "kind"_a, "p"_a, "N"_a, "m"_a = 1, "n"_a = 1, "h"_a = 1, "rhos"_a = std::vector<std::string>{},
     "Differente, order check and differente profile (rho given as strings such as '1/2').");
}
