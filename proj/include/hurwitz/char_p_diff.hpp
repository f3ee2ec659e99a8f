#pragma once

// Rational functions, differential forms and divisors on P^1 over F_{p^n}.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "hurwitz/finite_field.hpp"

namespace hurwitz::charp {

/// Reduced fraction num/den with den monic.
class RatFunc {
 public:
  explicit RatFunc(FieldPtr field);
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  static RatFunc constant(FieldPtr field, FqElt c);
  static RatFunc t(FieldPtr field);

  const FieldPtr& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFunc derivative() const;
  RatFunc pow(long e) const;
  std::string to_string(const std::string& var = "t") const;

 private:
  Poly num_;
  Poly den_;
};

/// A point of P^1 over the working field.
struct Point {
  bool inf = false;
  FqElt value{};

  static Point infinity() { return {true, {}}; }
  static Point at(FqElt v) { return {false, v}; }
  auto operator<=>(const Point&) const = default;
};

std::string to_string(const Point& pt, const FiniteField& F);

/// The form f dt.
class DiffForm {
 public:
  explicit DiffForm(RatFunc f) : f_(std::move(f)) {}
  const RatFunc& coefficient() const { return f_; }
  bool is_zero() const { return f_.is_zero(); }
  DiffForm operator+(const DiffForm& o) const { return DiffForm(f_ + o.f_); }
  bool operator==(const DiffForm& o) const { return f_ == o.f_; }
  std::string to_string() const;

 private:
  RatFunc f_;
};

/// Finite formal sum of points; zero coefficients are never stored.
class Divisor {
 public:
  void add(const Point& pt, long k);
  long operator[](const Point& pt) const;
  long degree() const;
  const std::map<Point, long>& terms() const { return terms_; }
  bool operator==(const Divisor& o) const { return terms_ == o.terms_; }
  std::string to_string(const FiniteField& F) const;

 private:
  std::map<Point, long> terms_;
};

/// u'/u dt.
DiffForm dlog(const RatFunc& u);
/// u' dt.
DiffForm dexact(const RatFunc& u);

/// Zeros and poles of a nonzero form. Throws UnsplitFactorError when some
/// zero or pole is not rational over the working field.
Divisor divisor(const DiffForm& w);

/// Coefficient of (t - c)^{-1}, or of x^{-1} in the chart x = 1/t at infinity.
FqElt residue(const DiffForm& w, const Point& pt);

/// Transport along a field embedding.
Poly embed(const Poly& f, const FieldEmbedding& e);
RatFunc embed(const RatFunc& u, const FieldEmbedding& e);

enum class ReductionKind { Mult, Add };

struct CertificateEdge {
  std::string edge;
  Point point;
  long m = 0;
  long h = 0;
};

struct CertificateCheck {
  bool ok = false;
  Divisor expected;
  Divisor actual;
  std::vector<std::string> failures;
};

/// Checks u against the prescribed divisor -sum (m(a)+1)[j(a)] and, for Mult,
/// the residues h(a). Throws PreconditionFailed if two edges share a point.
CertificateCheck check_certificate(const RatFunc& u, const std::vector<CertificateEdge>& edges, ReductionKind kind);
bool verify_certificate(const RatFunc& u, const std::vector<CertificateEdge>& edges, ReductionKind kind);

}  // namespace hurwitz::charp
