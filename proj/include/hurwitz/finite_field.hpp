#pragma once

// Finite fields F_{p^n} and univariate polynomials over them.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/error.hpp"

namespace hurwitz::charp {

/// Element of F_{p^n}: base-p packing of its coordinates in the basis
/// 1, x, ..., x^{n-1} of F_p[x]/(modulus), lowest coordinate least significant.
struct FqElt {
  std::uint64_t code = 0;
  auto operator<=>(const FqElt&) const = default;
};

class FiniteField {
 public:
  /// Shared instance for F_{p^n}; the modulus is the monic irreducible of
  /// degree n with the smallest code.
  static std::shared_ptr<const FiniteField> get(unsigned p, unsigned n);

  unsigned p() const { return p_; }
  unsigned degree() const { return n_; }
  std::uint64_t order() const { return q_; }
  /// Modulus coefficients, lowest degree first, monic.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  FqElt zero() const { return {0}; }
  FqElt one() const { return {1}; }
  FqElt from_int(long v) const;
  /// The class of x.
  FqElt generator() const;
  bool in_prime_field(FqElt a) const { return a.code < p_; }

  FqElt add(FqElt a, FqElt b) const;
  FqElt sub(FqElt a, FqElt b) const;
  FqElt neg(FqElt a) const;
  FqElt mul(FqElt a, FqElt b) const;
  FqElt inv(FqElt a) const;
  FqElt div(FqElt a, FqElt b) const { return mul(a, inv(b)); }
  FqElt pow(FqElt a, std::uint64_t e) const;
  FqElt frobenius(FqElt a) const { return pow(a, p_); }
  /// The unique b with b^p = a.
  FqElt pth_root(FqElt a) const;
  /// Multiplication by an integer.
  FqElt scale(FqElt a, long k) const { return mul(a, from_int(k)); }

  std::vector<unsigned> digits(FqElt a) const;
  FqElt from_digits(const std::vector<unsigned>& d) const;
  std::string to_string(FqElt a) const;

 private:
  FiniteField(unsigned p, unsigned n);
  FqElt mul_generic(FqElt a, FqElt b) const;

  unsigned p_;
  unsigned n_;
  std::uint64_t q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint64_t> pow_p_;
  // log/exp tables when q is small
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Monic irreducible over F_p of degree n with the smallest code.
std::vector<unsigned> first_irreducible(unsigned p, unsigned n);

/// Polynomial over F_q, coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  explicit Poly(FieldPtr field) : F_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<FqElt> coeffs);

  static Poly constant(FieldPtr field, FqElt c);
  static Poly x(FieldPtr field);
  /// t - c
  static Poly linear(FieldPtr field, FqElt c);

  const FieldPtr& field() const { return F_; }
  const std::vector<FqElt>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  FqElt lead() const { return c_.empty() ? FqElt{0} : c_.back(); }
  FqElt coeff(long i) const;
  FqElt eval(FqElt x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(FqElt c) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  Poly derivative() const;
  Poly monic() const;
  Poly pow(unsigned long e) const;
  /// p(t + c)
  Poly taylor_shift(FqElt c) const;
  /// t^deg p(1/t)
  Poly reversed() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  FieldPtr F_;
  std::vector<FqElt> c_;
};

Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

struct RootMultiplicity {
  FqElt root;
  unsigned multiplicity;
};

/// Roots in F_q with multiplicities, sorted by code. Throws UnsplitFactorError
/// carrying the extension degree needed when f does not split.
std::vector<RootMultiplicity> roots_with_multiplicity(const Poly& f);

/// Distinct roots in F_q (no splitting requirement), sorted by code.
std::vector<FqElt> roots_in_field(const Poly& f);

/// Degrees of the irreducible factors of f (with repetition, unordered).
std::vector<unsigned> irreducible_factor_degrees(const Poly& f);

/// Embedding F_{p^a} -> F_{p^b} for a | b, sending the generator to the root
/// of the modulus with the smallest code.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to);
  FqElt operator()(FqElt a) const;
  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }

 private:
  FieldPtr from_;
  FieldPtr to_;
  FqElt gen_image_;
};

}  // namespace hurwitz::charp
