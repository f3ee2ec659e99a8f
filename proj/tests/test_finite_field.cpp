#include <algorithm>
#include <random>

#include "doctest.h"
#include "hurwitz/finite_field.hpp"

using namespace hurwitz;
using namespace hurwitz::charp;

namespace {

// Schoolbook product of coordinate vectors reduced by the modulus.
FqElt oracle_mul(const FiniteField& F, FqElt a, FqElt b) {
  const unsigned p = F.p(), n = F.degree();
  auto da = F.digits(a), db = F.digits(b);
  std::vector<long> r(2 * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) r[i + j] += static_cast<long>(da[i]) * db[j];
  const auto& mod = F.modulus();
  for (unsigned k = 2 * n - 1; k >= n; --k) {
    long c = r[k] % p;
    r[k] = 0;
    for (unsigned i = 0; i < n; ++i) r[k - n + i] -= c * mod[i];
  }
  std::vector<unsigned> d(n);
  for (unsigned i = 0; i < n; ++i) d[i] = static_cast<unsigned>(((r[i] % p) + p) % p);
  return F.from_digits(d);
}

FqElt random_elt(const FiniteField& F, std::mt19937_64& rng) {
  return FqElt{std::uniform_int_distribution<std::uint64_t>(0, F.order() - 1)(rng)};
}

Poly random_poly(const FieldPtr& F, long deg, std::mt19937_64& rng) {
  std::vector<FqElt> c;
  for (long i = 0; i <= deg; ++i) c.push_back(random_elt(*F, rng));
  if (c.back().code == 0) c.back() = F->one();
  return Poly(F, c);
}

}  // namespace

TEST_CASE("lexicographically first moduli") {
  CHECK(first_irreducible(2, 2) == std::vector<unsigned>{1, 1, 1});
  CHECK(first_irreducible(3, 2) == std::vector<unsigned>{1, 0, 1});
  CHECK(first_irreducible(5, 2) == std::vector<unsigned>{2, 0, 1});
  CHECK(first_irreducible(2, 3) == std::vector<unsigned>{1, 1, 0, 1});
  CHECK(first_irreducible(7, 1) == std::vector<unsigned>{0, 1});
}

TEST_CASE("field arithmetic agrees with schoolbook reduction") {
  std::mt19937_64 rng(11);
  // (2,21) and (5,9) exceed the table limit and use generic multiplication
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {5, 1}, {2, 2}, {3, 2}, {5, 2}, {2, 8}, {3, 5}, {2, 21}, {5, 9}}) {
    auto F = FiniteField::get(p, n);
    for (int k = 0; k < 300; ++k) {
      FqElt a = random_elt(*F, rng), b = random_elt(*F, rng), c = random_elt(*F, rng);
      CHECK(F->mul(a, b) == oracle_mul(*F, a, b));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->add(F->sub(a, b), b) == a);
      CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
      CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
      CHECK(F->frobenius(F->pth_root(a)) == a);
      if (a.code != 0) {
        CHECK(F->mul(a, F->inv(a)) == F->one());
        CHECK(F->pow(a, F->order() - 1) == F->one());
      }
    }
  }
  auto F = FiniteField::get(3, 2);
  CHECK_THROWS_AS(F->inv(F->zero()), Error);
  CHECK(F->from_int(-1) == FqElt{2});
  CHECK(FiniteField::get(3, 2) == F);
}

TEST_CASE("polynomial division") {
  std::mt19937_64 rng(3);
  auto F = FiniteField::get(5, 2);
  for (int k = 0; k < 200; ++k) {
    Poly a = random_poly(F, k % 7, rng), b = random_poly(F, k % 4, rng);
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    Poly g = gcd(a, b);
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
    FqElt c = random_elt(*F, rng), x = random_elt(*F, rng);
    CHECK(a.taylor_shift(c).eval(x) == a.eval(F->add(x, c)));
  }
  CHECK_THROWS_AS(Poly::x(F).divmod(Poly(F)), Error);
}

TEST_CASE("roots agree with exhaustive evaluation") {
  std::mt19937_64 rng(5);
  // 5^6 and 3^8 are above the scan threshold, so splitting is exercised
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{5, 6}, {3, 8}, {2, 13}}) {
    auto F = FiniteField::get(p, n);
    for (int k = 0; k < 6; ++k) {
      std::vector<FqElt> want;
      Poly f = Poly::constant(F, F->one());
      for (int i = 0; i < 5; ++i) {
        FqElt r = random_elt(*F, rng);
        want.push_back(r);
        f = f * Poly::linear(F, r);
      }
      f = f * random_poly(F, 2, rng);
      std::vector<FqElt> brute;
      for (std::uint64_t c = 0; c < F->order(); ++c)
        if (f.eval(FqElt{c}).code == 0) brute.push_back(FqElt{c});
      CHECK(roots_in_field(f) == brute);
    }
  }
}

TEST_CASE("multiplicities and unsplit factors") {
  auto F = FiniteField::get(5, 1);
  Poly f = Poly::linear(F, F->from_int(1)) * Poly::linear(F, F->from_int(2)).pow(4);
  auto rm = roots_with_multiplicity(f);
  REQUIRE(rm.size() == 2);
  CHECK(rm[0].root == F->from_int(1));
  CHECK(rm[0].multiplicity == 1);
  CHECK(rm[1].multiplicity == 4);

  // t^2 - 2 is irreducible over F_5, t^3 + t + 1 as well
  Poly q2(F, {F->from_int(-2), F->zero(), F->one()});
  Poly q3(F, {F->one(), F->one(), F->zero(), F->one()});
  CHECK(roots_in_field(q3).empty());
  auto degs = irreducible_factor_degrees(q2 * q3 * q3 * Poly::x(F));
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<unsigned>{1, 2, 3, 3});
  try {
    roots_with_multiplicity(q2 * q3 * Poly::x(F));
    FAIL("expected UnsplitFactor");
  } catch (const UnsplitFactorError& e) {
    CHECK(e.code() == ErrorCode::UnsplitFactor);
    CHECK(e.degree() == 6);
  }
  // t^5 - 2 = (t - 2)^5 has zero derivative
  Poly fr(F, {F->from_int(-2), F->zero(), F->zero(), F->zero(), F->zero(), F->one()});
  CHECK(irreducible_factor_degrees(fr) == std::vector<unsigned>{1, 1, 1, 1, 1});
  CHECK_THROWS_AS(roots_in_field(Poly(F)), Error);
}

TEST_CASE("embeddings are ring homomorphisms") {
  std::mt19937_64 rng(9);
  for (auto [p, a, b] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{2, 2, 4}, {3, 2, 6}, {5, 1, 3}, {2, 3, 6}}) {
    FieldEmbedding e(FiniteField::get(p, a), FiniteField::get(p, b));
    const auto& S = *e.from();
    const auto& T = *e.to();
    for (int k = 0; k < 200; ++k) {
      FqElt x = random_elt(S, rng), y = random_elt(S, rng);
      CHECK(e(S.add(x, y)) == T.add(e(x), e(y)));
      CHECK(e(S.mul(x, y)) == T.mul(e(x), e(y)));
    }
    CHECK(e(S.one()) == T.one());
  }
  CHECK_THROWS_AS(FieldEmbedding(FiniteField::get(2, 2), FiniteField::get(2, 3)), Error);
  CHECK_THROWS_AS(FieldEmbedding(FiniteField::get(2, 2), FiniteField::get(3, 2)), Error);
}
