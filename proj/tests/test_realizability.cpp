#include <random>

#include "doctest.h"
#include "hurwitz/realizability.hpp"
#include "partition_oracle.hpp"
#include "sample_trees.hpp"

using namespace hurwitz;
using namespace hurwitz::real;
using charp::FiniteField;
using charp::FqElt;

namespace {

std::vector<long> minus_ones(size_t k) { return std::vector<long>(k, -1); }

std::vector<long> cat(std::vector<long> a, const std::vector<long>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Nondecreasing vectors over [1, p) of length n summing to 0 mod p.
std::vector<std::vector<long>> zero_sum_multisets(int p, size_t n) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long lo) {
    if (cur.size() == n) {
      long s = 0;
      for (long v : cur) s += v;
      if (s % p == 0) out.push_back(cur);
      return;
    }
    for (long v = lo; v < p; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

// Every tuple of pairwise distinct coordinates in F (nonzero if asked).
bool brute_force_exists(const ResidueVector& e, const FiniteField& F, long m1, long m2, bool nonzero) {
  const size_t n = e.size();
  std::vector<FqElt> t(n);
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == n) return oracle::distinct(t) && oracle::on_variety(F, e.entries(), t, m1, m2);
    for (std::uint64_t c = nonzero ? 1 : 0; c < F.order(); ++c) {
      t[i] = FqElt{c};
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("residue vectors") {
  ResidueVector e(5, cat({4, 4, 1}, minus_ones(9)));
  CHECK(e.size() == 12);
  CHECK(e[3] == 4);
  CHECK(e.to_string() == "(4,4,1,4,4,4,4,4,4,4,4,4)");
  CHECK_THROWS_AS(ResidueVector(5, {1, 2}), Error);
  CHECK_THROWS_AS(ResidueVector(5, {5, 1, 4}), Error);
}

TEST_CASE("adapted and maximal partitions of the p=5 example") {
  ResidueVector e(5, cat({4, 4, 1}, minus_ones(9)));
  auto P = oracle::from_values(e, {cat({4}, minus_ones(4)), cat({4}, minus_ones(4)), {1, -1}});
  CHECK(is_adapted(P, e));
  CHECK(is_maximal_adapted(P, e));
  CHECK(P.blocks.size() == 3);
  CHECK(disk_bound(11, 5) == 3);

  ResidueVector e2(5, cat({2, 3, 4}, minus_ones(9)));
  auto P2 = oracle::from_values(e2, {cat({4}, minus_ones(4)), cat({3}, minus_ones(3)), {2, -1, -1}});
  CHECK(is_maximal_adapted(P2, e2));

  Partition whole;
  whole.blocks.emplace_back();
  for (size_t i = 0; i < e.size(); ++i) whole.blocks[0].push_back(i);
  CHECK(is_adapted(whole, e));
  CHECK_FALSE(is_maximal_adapted(whole, e));

  Partition singletons;
  for (size_t i = 0; i < e.size(); ++i) singletons.blocks.push_back({i});
  CHECK_FALSE(is_adapted(singletons, e));
  CHECK_THROWS_AS(is_maximal_adapted(singletons, e), Error);

  Partition broken{{{0, 1}, {1, 2}}};
  try {
    is_adapted(broken, ResidueVector(3, {1, 1, 1}));
    FAIL("expected IndexMismatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::IndexMismatch);
  }

  ResidueVector ones(2, {1, 1, 1, 1});
  Partition pairs{{{0, 1}, {2, 3}}};
  CHECK(is_maximal_adapted(pairs, ones));
}

TEST_CASE("criterion on the quoted vectors") {
  CHECK(criterion_small_partition(ResidueVector(5, cat({4, 4, 1}, minus_ones(9))), 3));
  CHECK(criterion_small_partition(ResidueVector(5, cat({2, 3, 4}, minus_ones(9))), 3));
  ResidueVector big(5, cat({1, 1, 3, 4}, minus_ones(29)));
  auto P = small_maximal_partition(big, disk_bound(32, 5));
  REQUIRE(P);
  CHECK(P->blocks.size() == 7);
  CHECK(is_maximal_adapted(*P, big));
  CHECK_FALSE(small_maximal_partition(big, 6));
  CHECK_THROWS_AS(small_maximal_partition(ResidueVector(2, std::vector<long>(42, 1)), 100), Error);
}

TEST_CASE("zero-sum subset test agrees with enumeration") {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 3000; ++iter) {
    int p = std::array<int, 4>{2, 3, 5, 7}[iter % 4];
    size_t n = 1 + rng() % 8;
    std::vector<long> v(n);
    for (auto& x : v) x = 1 + static_cast<long>(rng() % static_cast<unsigned>(p - 1));
    bool found = false;
    for (unsigned mask = 1; mask + 1 < (1u << n) && !found; ++mask) {
      long s = 0;
      for (size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s += v[i];
      if (s % p == 0) found = true;
    }
    CHECK(has_proper_zero_sum(v, p) == found);
  }
}

TEST_CASE("maximality by subset sums equals maximality by refinement") {
  for (int p : {2, 3, 5}) {
    for (size_t n = 2; n <= 7; ++n) {
      for (const auto& v : zero_sum_multisets(p, n)) {
        ResidueVector e(p, v);
        oracle::for_each_partition(n, [&](const oracle::Blocks& blocks) {
          Partition P{blocks};
          bool adapted = oracle::adapted(blocks, v, p);
          CHECK(is_adapted(P, e) == adapted);
          if (adapted) CHECK(is_maximal_adapted(P, e) == oracle::maximal_by_refinement(blocks, v, p));
        });
      }
    }
  }
}

TEST_CASE("fewest blocks agrees with full enumeration") {
  for (int p : {2, 3, 5, 7}) {
    for (size_t n = 2; n <= 8; ++n) {
      if (p == 7 && n > 7) continue;
      for (const auto& v : zero_sum_multisets(p, n)) {
        ResidueVector e(p, v);
        auto expect = oracle::min_maximal_blocks(v, p);
        REQUIRE(expect);
        auto P = small_maximal_partition(e, 1000);
        REQUIRE(P);
        CHECK(P->blocks.size() == *expect);
        CHECK(is_maximal_adapted(*P, e));
        CHECK(criterion_small_partition(e, static_cast<long>(*expect)));
        CHECK_FALSE(criterion_small_partition(e, static_cast<long>(*expect) - 1));
      }
    }
  }
}

TEST_CASE("constraint exponents") {
  CHECK(constraint_exponents(4, 0, 2) == std::vector<long>{1, 3});
  CHECK(constraint_exponents(3, 3, 5) == std::vector<long>{-2, -1, 1, 2});
  CHECK(constraint_exponents(1, 1, 3).empty());
}

TEST_CASE("search examples") {
  SearchOptions opt;
  auto r = search_point(ResidueVector(2, {1, 1, 1, 1}), opt);
  REQUIRE(r.point);
  CHECK(r.field->order() == 4);
  CHECK(oracle::distinct(*r.point));
  CHECK(oracle::on_variety(*r.field, {1, 1, 1, 1}, *r.point, 3, 0));

  auto r2 = search_point(ResidueVector(3, {1, -1}), opt);
  REQUIRE(r2.point);
  CHECK(r2.field->order() == 3);
  CHECK((*r2.point)[0].code == 0);
  CHECK((*r2.point)[1].code == 1);

  auto r3 = search_point(ResidueVector(5, {1, 4}), opt);
  REQUIRE(r3.point);
  CHECK(r3.field->order() == 5);

  SearchOptions tiny;
  tiny.budget = 0;
  auto r4 = search_point(ResidueVector(2, std::vector<long>(8, 1)), tiny);
  CHECK_FALSE(r4.point);
  CHECK(r4.budget_exhausted);
}

TEST_CASE("search is sound and complete on small fields") {
  for (int p : {2, 3, 5}) {
    for (size_t n = 2; n <= 5; ++n) {
      for (const auto& v : zero_sum_multisets(p, n)) {
        ResidueVector e(p, v);
        for (bool annulus : {false, true}) {
          long m1 = annulus ? static_cast<long>(n) / 2 : static_cast<long>(n) - 1;
          long m2 = annulus ? static_cast<long>(n) - m1 : 0;
          SearchOptions opt;
          opt.n_max = p == 5 ? 1 : 2;
          opt.annulus = annulus;
          opt.m1 = m1;
          opt.m2 = m2;
          auto r = search_point(e, opt);
          CHECK_FALSE(r.budget_exhausted);
          bool expect = false;
          for (unsigned deg = 1; deg <= opt.n_max && !expect; ++deg)
            expect = brute_force_exists(e, *FiniteField::get(static_cast<unsigned>(p), deg), m1, m2, annulus);
          CHECK(r.point.has_value() == expect);
          if (r.point) {
            CHECK(oracle::distinct(*r.point));
            CHECK(oracle::on_variety(*r.field, v, *r.point, m1, m2));
            CHECK(check_point(e, *r.point, *r.field, constraint_exponents(m1, m2, p), annulus));
            if (annulus)
              for (auto x : *r.point) CHECK(x.code != 0);
          }
        }
      }
    }
  }
}

TEST_CASE("coincidence partitions of points of X_e are adapted") {
  std::mt19937_64 rng(9);
  for (int p : {2, 3, 5}) {
    for (unsigned deg : {1u, 2u}) {
      auto F = FiniteField::get(static_cast<unsigned>(p), deg);
      for (size_t n = 2; n <= 6; ++n) {
        if (std::pow(static_cast<double>(F->order()), static_cast<double>(n)) > 70000) continue;
        auto vs = zero_sum_multisets(p, n);
        for (int pick = 0; pick < 4 && !vs.empty(); ++pick) {
          const auto v = vs[rng() % vs.size()];
          std::vector<FqElt> t(n);
          long strata = 0;
          std::function<void(size_t)> rec = [&](size_t i) {
            if (i < n) {
              for (std::uint64_t c = 0; c < F->order(); ++c) {
                t[i] = FqElt{c};
                rec(i + 1);
              }
              return;
            }
            if (oracle::distinct(t) || !oracle::on_variety(*F, v, t, static_cast<long>(n) - 1, 0)) return;
            ++strata;
            oracle::Blocks blocks;
            std::vector<int> seen(n, -1);
            for (size_t a = 0; a < n; ++a) {
              if (seen[a] >= 0) continue;
              blocks.emplace_back();
              for (size_t b = a; b < n; ++b) {
                if (t[b] == t[a]) {
                  seen[b] = static_cast<int>(blocks.size() - 1);
                  blocks.back().push_back(b);
                }
              }
            }
            CHECK(oracle::adapted(blocks, v, p));
          };
          rec(0);
          CHECK(strata > 0);  // the diagonal always lies on X_e
        }
      }
    }
  }
}

TEST_CASE("p=2 all-ones vectors") {
  for (size_t n = 4; n <= 10; n += 2) {
    ResidueVector e(2, std::vector<long>(n, 1));
    CHECK(criterion_small_partition(e, disk_bound(static_cast<long>(n) - 1, 2)));
    SearchOptions opt;
    opt.n_max = 4;
    auto r = search_point(e, opt);
    if (n < 10) {
      REQUIRE(r.point);
      CHECK(r.field->degree() <= 4);
      CHECK(oracle::on_variety(*r.field, e.entries(), *r.point, static_cast<long>(n) - 1, 0));
    } else {
      // Ten distinct roots would make T^16 - T = f h with f' constant and
      // deg h = 6, which the derivative of f h rules out.
      CHECK_FALSE(r.point);
      CHECK_FALSE(r.budget_exhausted);
      auto F = FiniteField::get(2, 4);
      std::vector<int> pick(16, 0);
      std::fill(pick.begin(), pick.begin() + 10, 1);
      bool any = false;
      do {
        std::vector<FqElt> t;
        for (std::uint64_t c = 0; c < 16; ++c)
          if (pick[c]) t.push_back(FqElt{c});
        if (oracle::on_variety(*F, e.entries(), t, 9, 0)) any = true;
      } while (std::prev_permutation(pick.begin(), pick.end()));
      CHECK_FALSE(any);
    }
  }
}

TEST_CASE("vertex residue vectors") {
  auto t = samples::p5_tree();
  auto s5 = vertex_residue_vector(t, "s5");
  CHECK(s5.shape == Shape::DiskAdd);
  CHECK(s5.bound == 3);
  CHECK(s5.padding == 9);
  CHECK(s5.e.entries() == cat({1, 4, 4}, std::vector<long>(9, 4)));
  auto s8 = vertex_residue_vector(t, "s8");
  CHECK(s8.e.entries() == cat({2, 3, 4}, std::vector<long>(9, 4)));
  auto s1 = vertex_residue_vector(t, "s1");
  CHECK(s1.e.size() == 33);
  CHECK(s1.bound == 7);
  CHECK(s1.padding == 29);
  auto t1 = vertex_residue_vector(t, "t1");
  CHECK(t1.shape == Shape::DiskMult);
  CHECK(t1.e.entries() == std::vector<long>(5, 1));
  CHECK(t1.bound == 1);

  auto t3 = samples::type_III().build();
  auto s = vertex_residue_vector(t3, "s");
  CHECK(s.shape == Shape::AnnAdd);
  CHECK(s.e.entries() == std::vector<long>{1, 2});
  CHECK(s.bound == 1);
  CHECK(s.m1 == 1);
  CHECK(s.m2 == 1);

  auto t2 = samples::type_II().build();
  CHECK(vertex_residue_vector(t2, "s").shape == Shape::AnnMult);
  CHECK_THROWS_AS(vertex_residue_vector(t2, "r1"), Error);

  samples::Spec three{3, 10, 0, "r", {"r", "s", "x", "y", "z"},
                      {{"a", "r", "s", 1, 5, 0}, {"b", "s", "x", 1, -1, 0}, {"c", "s", "y", 1, -1, 0}, {"d", "s", "z", 1, 5, 0}}};
  try {
    vertex_residue_vector(three.build(), "s");
    FAIL("expected UnsupportedShape");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::UnsupportedShape);
  }
}

TEST_CASE("vertex certificates") {
  samples::Spec two{5, 1, 0, "r", {"r", "s", "f1", "f2"},
                    {{"a", "r", "s", 1, 1, 0}, {"l1", "s", "f1", 0, 0, 1}, {"l2", "s", "f2", 0, 0, 4}}};
  auto c = certify_vertex(two.build(), "s");
  CHECK(c.status == CertStatus::Certified);
  REQUIRE(c.certificate);
  CHECK(c.certificate->field->order() == 5);
  CHECK(c.certificate->u.to_string() == charp::RatFunc(charp::Poly::linear(c.certificate->field, FqElt{0}) *
                                                       charp::Poly::linear(c.certificate->field, FqElt{1}).pow(4))
                                            .to_string());
  CHECK(c.partition);

  samples::Spec four{2, 3, 0, "r", {"r", "s", "f1", "f2", "f3", "f4"}, {{"a", "r", "s", 1, 3, 0}}};
  for (int i = 1; i <= 4; ++i) four.edges.push_back({"l" + std::to_string(i), "s", "f" + std::to_string(i), 0, 0, 1});
  auto c4 = certify_vertex(four.build(), "s");
  CHECK(c4.status == CertStatus::Certified);
  REQUIRE(c4.certificate);
  CHECK(c4.certificate->field->order() == 4);
  CHECK(charp::verify_certificate(c4.certificate->u, c4.certificate->edges, c4.certificate->kind));

  CHECK(certify_vertex(four.build(), "r").status == CertStatus::NotApplicable);
  CHECK(certify_vertex(four.build(), "f1").status == CertStatus::NotApplicable);

  for (auto spec : {samples::type_I(), samples::type_II(), samples::type_III()}) {
    auto t = spec.build();
    for (const auto& v : t.vertices()) {
      if (t.valence(v) < 3) continue;
      auto cv = certify_vertex(t, v);
      CHECK(cv.status == CertStatus::Certified);
      if (cv.certificate) {
        auto chk = charp::check_certificate(cv.certificate->u, cv.certificate->edges, cv.certificate->kind);
        CHECK(chk.ok);
        CHECK(chk.actual.degree() == -2);
      }
    }
  }
}

TEST_CASE("p=5 fixture vertices are proved") {
  auto t = samples::p5_tree();
  for (const auto& v : t.vertices()) {
    if (t.valence(v) < 3) continue;
    auto c = certify_vertex(t, v, 1, 200000);
    CHECK(c.partition.has_value());
    CHECK((c.status == CertStatus::ProvedByCriterion || c.status == CertStatus::Certified));
  }
}
