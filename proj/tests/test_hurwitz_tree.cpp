#include <random>

#include "doctest.h"
#include "hurwitz/hurwitz_tree.hpp"
#include "sample_trees.hpp"

using namespace hurwitz;
using namespace hurwitz::tree;

namespace {

// d(s) by walking parent pointers in the raw record list.
long naive_d(const samples::Spec& s, const std::string& v) {
  long d = s.d0;
  std::string cur = v;
  while (cur != s.root) {
    for (const auto& e : s.edges) {
      if (e.to == cur) {
        d += (s.p - 1) * e.m * e.eps;
        cur = e.from;
        break;
      }
    }
  }
  return d;
}

size_t count_violations(const ValidationReport& r, const std::string& axiom) {
  size_t n = 0;
  for (const auto& v : r.violations)
    if (v.axiom == axiom) ++n;
  return n;
}

}  // namespace

TEST_CASE("basic p=2 tree validates") {
  auto t = samples::p2_basic().build();
  auto rep = validate(t);
  CHECK(rep.ok());
  CHECK(differente(t, "s") == 1);
  CHECK(classify_vertex(t, "s") == VertexType::Multiplicative);
  CHECK(classify_vertex(t, "r0") == VertexType::Etale);
  CHECK(leaves(t).size() == 2);
  CHECK(t.valence("s") == 3);
  CHECK(t.valence("r0") == 1);
}

TEST_CASE("sample annulus trees validate") {
  for (auto s : {samples::type_I(), samples::type_I(5), samples::type_II(), samples::type_III()}) {
    auto rep = validate(s.build());
    for (const auto& v : rep.violations) MESSAGE(v.axiom << " " << v.location << " " << v.message);
    CHECK(rep.ok());
  }
  auto t3 = samples::type_III().build();
  CHECK(classify_vertex(t3, "s") == VertexType::Additive);
  CHECK(differente(t3, "s") == 2);
  CHECK(classify_vertex(t3, "t") == VertexType::Multiplicative);
  CHECK(classify_vertex(t3, "r2") == VertexType::Etale);
}

TEST_CASE("differente examples") {
  auto t = samples::p5_tree();
  CHECK(differente(t, t.root()) == 0);
  CHECK(differente(t, "s1") == 4224);
  CHECK(t.N() == 4224);
  CHECK(differente(t, "s5") == 8448);
  CHECK(classify_vertex(t, "s1") == VertexType::Additive);
  CHECK_THROWS_AS(differente(t, "nope"), Error);

  samples::Spec s{3, 3, 0, "r", {"r", "s"}, {{"a", "r", "s", 1, 1, 0}}};
  CHECK(classify_vertex(s.build(), "s") == VertexType::Additive);
}

TEST_CASE("p=5 fixture is a Hurwitz tree with 33 leaves") {
  auto t = samples::p5_tree();
  auto rep = validate(t);
  for (const auto& v : rep.violations) MESSAGE(v.axiom << " " << v.location << " " << v.message);
  CHECK(rep.ok());
  CHECK(leaves(t).size() == 33);
  const long eps[] = {33, 792, 96, 96, 1056, 2112, 528, 528, 1056, 704, 528};
  for (int i = 0; i <= 10; ++i) CHECK(t.edge("a" + std::to_string(i)).eps == eps[i]);
}

TEST_CASE("differente telescopes on random trees") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    int p = std::array<int, 3>{2, 3, 5}[iter % 3];
    auto s = samples::random_disk_tree(rng, p, 720);
    auto t = s.build();
    auto rep = validate(t);
    for (const auto& v : rep.violations) MESSAGE(v.axiom << " " << v.location << " " << v.message);
    REQUIRE(rep.ok());
    for (const auto& v : t.vertices()) CHECK(differente(t, v) == naive_d(s, v));
    for (const auto& e : t.edges())
      CHECK(differente(t, e.to) == differente(t, e.from) + (p - 1) * e.m * e.eps);
  }
}

TEST_CASE("subtree of a valid tree is valid") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    auto t = samples::random_disk_tree(rng, iter % 2 ? 3 : 2, 360).build();
    for (const auto& e : t.edges()) {
      auto sub = subtree(t, e.id);
      CHECK(sub.root() == e.from);
      CHECK(sub.d0() == differente(t, e.from));
      CHECK(sub.valence(sub.root()) == 1);
      CHECK(validate(sub).ok());
      for (const auto& v : sub.vertices()) CHECK(differente(sub, v) == differente(t, v));
    }
  }
  auto b = samples::p2_basic().build();
  CHECK(canonical_form(subtree(b, "a")) == canonical_form(b));
  CHECK(subtree(b, "l1").vertices().size() == 2);
  CHECK_THROWS_AS(subtree(b, "zz"), Error);

  auto p5 = samples::p5_tree();
  auto s2 = subtree(p5, "a2");
  CHECK(s2.root() == "s1");
  CHECK(s2.d0() == 4224);
  CHECK(leaves(s2).size() == 12);
}

TEST_CASE("equivalence is invariant under relabelling and sibling order") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    auto s = samples::random_disk_tree(rng, 3, 720);
    auto t = s.build();
    auto r = samples::relabel(s, rng).build();
    CHECK(validate(r).ok());
    CHECK(is_equivalent(t, r));
    CHECK(is_equivalent(r, t));
    CHECK(is_equivalent(t, t));
    auto mutated = s;
    mutated.edges[0].eps += 1;
    CHECK_FALSE(is_equivalent(t, mutated.build()));
  }
  auto a = samples::type_II();
  auto b = a;
  samples::edge(b, "l1").h = 2;
  samples::edge(b, "l2").h = 1;
  CHECK(is_equivalent(a.build(), b.build()));
  auto c = a;
  c.d0 = 2;
  CHECK_FALSE(is_equivalent(a.build(), c.build()));
}

TEST_CASE("mutations are reported at the violated axiom") {
  SUBCASE("H1: opposite record with wrong m or h") {
    auto s = samples::p2_basic();
    s.edges.push_back({"ra", "s", "r0", 1, 1, 0});
    auto rep = validate(s.build());
    CHECK(rep.has("H1", "ra"));
    auto s2 = samples::type_II();
    s2.edges.push_back({"rl", "f1", "s", 0, 0, 1});
    CHECK(validate(s2.build()).has("H1", "rl"));
    auto ok = samples::type_II();
    ok.edges.push_back({"rl", "f1", "s", 0, 0, 2});
    CHECK(validate(ok.build()).ok());
  }
  SUBCASE("H2 and H3: leaf residue set to 0") {
    auto s = samples::p2_basic();
    samples::edge(s, "l2").h = 0;
    auto rep = validate(s.build());
    CHECK(rep.has("H2", "l2"));
    CHECK(rep.has("H3", "s"));
  }
  SUBCASE("H2: m divisible by p") {
    samples::Spec s{3, 3, 0, "r", {"r", "s", "f1", "f2", "f3", "f4"}, {{"a", "r", "s", 1, 3, 0}}};
    for (int i = 1; i <= 4; ++i) s.edges.push_back({"l" + std::to_string(i), "s", "f" + std::to_string(i), 0, 0, 1});
    auto rep = validate(s.build());
    CHECK(rep.has("H2", "a"));
  }
  SUBCASE("H3: valence 2") {
    auto s = samples::p2_basic();
    s.vertices.push_back("x");
    s.edges.push_back({"b", "f1", "x", 1, 0, 1});
    auto rep = validate(s.build());
    CHECK(rep.has("H3", "f1"));
  }
  SUBCASE("H3: conductor sum") {
    auto s = samples::type_II();
    s.vertices.push_back("f3");
    s.edges.push_back({"l3", "s", "f3", 0, 0, 0});
    samples::edge(s, "l3").h = 1;
    samples::edge(s, "l1").h = 1;
    samples::edge(s, "l2").h = 1;
    auto rep = validate(s.build());
    CHECK(rep.has("H3", "s"));
    CHECK(count_violations(rep, "H3") == 1);
  }
  SUBCASE("H4: eps = 0 before a non-maximal vertex") {
    auto s = samples::type_III();
    samples::edge(s, "a").eps = 0;
    auto rep = validate(s.build());
    CHECK(rep.has("H4", "a"));
  }
  SUBCASE("H5: differente out of range") {
    auto s = samples::p2_basic();
    samples::edge(s, "a").eps = 2;
    auto rep = validate(s.build());
    CHECK(rep.has("H5", "s"));
  }
  SUBCASE("H6: leaf at an etale vertex") {
    auto s = samples::type_II();
    s.vertices.push_back("f3");
    s.vertices.push_back("f4");
    s.edges.push_back({"x1", "r2", "f3", 0, 0, 1});
    s.edges.push_back({"x2", "r2", "f4", 0, 0, 2});
    auto rep = validate(s.build());
    CHECK(rep.has("H6", "x1"));
    CHECK(rep.has("H6", "x2"));
  }
  SUBCASE("H7: nonzero h at an additive vertex") {
    auto s = samples::type_III();
    samples::edge(s, "a2").h = 1;
    auto rep = validate(s.build());
    CHECK(rep.has("H7", "s"));
  }
  SUBCASE("structural invariants") {
    auto s = samples::p2_basic();
    s.d0 = 3;
    CHECK(validate(s.build()).has("StructuralInvariant", "r0"));
    auto s3 = samples::type_II();
    s3.d0 = 1;
    CHECK(validate(s3.build()).has("StructuralInvariant", "r1"));
  }
}

TEST_CASE("malformed inputs") {
  using V = std::vector<std::string>;
  CHECK_THROWS_AS(HurwitzTree(2, 1, 0, "a", V{"a", "b", "c"}, {{"", "a", "b", 1, 1, 0}}), Error);
  CHECK_THROWS_AS(HurwitzTree(2, 1, 0, "a", V{"a", "b"}, {{"", "a", "x", 1, 1, 0}}), Error);
  CHECK_THROWS_AS(HurwitzTree(2, 1, 0, "a", V{"a", "a"}, {}), Error);
  CHECK_THROWS_AS(
      HurwitzTree(2, 1, 0, "a", V{"a", "b", "c"}, {{"", "a", "b", 1, 1, 0}, {"", "b", "c", 1, 1, 0}, {"", "c", "a", 1, 1, 0}}),
      Error);
  CHECK_THROWS_AS(HurwitzTree(4, 1, 0, "a", V{"a"}, {}), Error);
  try {
    HurwitzTree(2, 1, 0, "a", V{"a", "b", "c", "d"}, {{"", "a", "b", 1, 1, 0}, {"", "c", "d", 1, 1, 0}, {"", "d", "c", 1, 1, 0}});
    FAIL("expected MalformedTree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedTree);
  }
}
