#include "hurwitz/char_p_diff.hpp"

#include <climits>
#include <set>
#include <sstream>

namespace hurwitz::charp {

// ---- RatFunc ----

RatFunc::RatFunc(FieldPtr field) : num_(field), den_(Poly::constant(field, FqElt{1})) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), FqElt{1})) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::ZeroInput, "zero denominator");
  if (num_.field() != den_.field()) throw Error(ErrorCode::FieldMismatch, "numerator and denominator fields differ");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), FqElt{1});
    return;
  }
  Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqElt c = field()->inv(den_.lead());
  num_ = num_ * c;
  den_ = den_ * c;
}

RatFunc RatFunc::constant(FieldPtr field, FqElt c) { return RatFunc(Poly::constant(std::move(field), c)); }

RatFunc RatFunc::t(FieldPtr field) { return RatFunc(Poly::x(std::move(field))); }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (field() != o.field()) throw Error(ErrorCode::FieldMismatch, "rational functions over different fields");
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (field() != o.field()) throw Error(ErrorCode::FieldMismatch, "rational functions over different fields");
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw Error(ErrorCode::ZeroInput, "division by the zero function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(long e) const {
  if (e >= 0) return RatFunc(num_.pow(static_cast<unsigned long>(e)), den_.pow(static_cast<unsigned long>(e)));
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "negative power of zero");
  unsigned long k = static_cast<unsigned long>(-(e + 1)) + 1;
  return RatFunc(den_.pow(k), num_.pow(k));
}

std::string RatFunc::to_string(const std::string& var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::string to_string(const Point& pt, const FiniteField& F) { return pt.inf ? "inf" : F.to_string(pt.value); }

std::string DiffForm::to_string() const { return "(" + f_.to_string() + ") dt"; }

// ---- Divisor ----

void Divisor::add(const Point& pt, long k) {
  if (k == 0) return;
  long& slot = terms_[pt];
  if (__builtin_add_overflow(slot, k, &slot)) throw Error(ErrorCode::OutOfRange, "divisor coefficient overflow");
  if (slot == 0) terms_.erase(pt);
}

long Divisor::operator[](const Point& pt) const {
  auto it = terms_.find(pt);
  return it == terms_.end() ? 0 : it->second;
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [pt, k] : terms_) d += k;
  return d;
}

std::string Divisor::to_string(const FiniteField& F) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [pt, k] : terms_) {
    if (!first) os << (k > 0 ? " + " : " - ");
    else if (k < 0) os << "-";
    first = false;
    long a = k < 0 ? -k : k;
    if (a != 1) os << a;
    os << "[" << charp::to_string(pt, F) << "]";
  }
  return os.str();
}

// ---- forms ----

DiffForm dlog(const RatFunc& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroInput, "dlog of zero");
  return DiffForm(u.derivative() / u);
}

DiffForm dexact(const RatFunc& u) { return DiffForm(u.derivative()); }

Divisor divisor(const DiffForm& w) {
  if (w.is_zero()) throw Error(ErrorCode::ZeroInput, "divisor of the zero form");
  const RatFunc& f = w.coefficient();
  Divisor d;
  for (const auto& rm : roots_with_multiplicity(f.num())) d.add(Point::at(rm.root), static_cast<long>(rm.multiplicity));
  for (const auto& rm : roots_with_multiplicity(f.den())) d.add(Point::at(rm.root), -static_cast<long>(rm.multiplicity));
  d.add(Point::infinity(), f.den().degree() - f.num().degree() - 2);
  return d;
}

namespace {

// Coefficient of t^{-1} of g at t = 0.
FqElt residue_at_zero(const RatFunc& g) {
  const auto& F = *g.field();
  const Poly& A = g.num();
  const Poly& B = g.den();
  long k = 0;
  while (B.coeff(k).code == 0) ++k;
  if (k == 0 || A.is_zero()) return FqElt{0};
  // A / B1 as a power series up to t^{k-1}, with B = t^k B1
  FqElt inv0 = F.inv(B.coeff(k));
  std::vector<FqElt> s(static_cast<size_t>(k));
  for (long i = 0; i < k; ++i) {
    FqElt acc = A.coeff(i);
    for (long j = 1; j <= i; ++j) acc = F.sub(acc, F.mul(B.coeff(k + j), s[static_cast<size_t>(i - j)]));
    s[static_cast<size_t>(i)] = F.mul(acc, inv0);
  }
  return s.back();
}

}  // namespace

FqElt residue(const DiffForm& w, const Point& pt) {
  const RatFunc& f = w.coefficient();
  if (f.is_zero()) return FqElt{0};
  if (!pt.inf) return residue_at_zero(RatFunc(f.num().taylor_shift(pt.value), f.den().taylor_shift(pt.value)));
  // f(t) dt = -x^{deg B - deg A - 2} Arev(x)/Brev(x) dx
  const FieldPtr& K = f.field();
  long e = f.den().degree() - f.num().degree() - 2;
  Poly num = -f.num().reversed();
  Poly den = f.den().reversed();
  Poly xe = Poly::x(K).pow(static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) num = num * xe;
  else den = den * xe;
  return residue_at_zero(RatFunc(num, den));
}

Poly embed(const Poly& f, const FieldEmbedding& e) {
  std::vector<FqElt> c;
  c.reserve(f.coeffs().size());
  for (FqElt a : f.coeffs()) c.push_back(e(a));
  return Poly(e.to(), std::move(c));
}

RatFunc embed(const RatFunc& u, const FieldEmbedding& e) { return RatFunc(embed(u.num(), e), embed(u.den(), e)); }

// ---- certificates ----

CertificateCheck check_certificate(const RatFunc& u, const std::vector<CertificateEdge>& edges, ReductionKind kind) {
  const FiniteField& F = *u.field();
  std::set<Point> seen;
  CertificateCheck out;
  for (const auto& a : edges) {
    if (!seen.insert(a.point).second)
      throw Error(ErrorCode::PreconditionFailed, "edges assigned to the same point " + to_string(a.point, F));
    if (a.m == LONG_MIN) throw Error(ErrorCode::OutOfRange, "m out of range");
    long k;
    if (__builtin_add_overflow(a.m, 1L, &k)) throw Error(ErrorCode::OutOfRange, "m out of range");
    out.expected.add(a.point, -k);
  }
  if (u.is_zero()) {
    out.failures.push_back("u is zero");
    return out;
  }
  DiffForm w = kind == ReductionKind::Mult ? dlog(u) : dexact(u);
  if (w.is_zero()) {
    out.failures.push_back("the form vanishes identically");
    return out;
  }
  out.actual = divisor(w);
  if (!(out.actual == out.expected)) {
    out.failures.push_back("divisor " + out.actual.to_string(F) + " differs from " + out.expected.to_string(F));
  }
  if (kind == ReductionKind::Mult) {
    for (const auto& a : edges) {
      FqElt r = residue(w, a.point);
      FqElt want = F.from_int(a.h);
      if (r != want) {
        out.failures.push_back("residue at " + to_string(a.point, F) + " for edge " + a.edge + " is " +
                               F.to_string(r) + ", expected " + F.to_string(want));
      }
    }
  }
  out.ok = out.failures.empty();
  return out;
}

bool verify_certificate(const RatFunc& u, const std::vector<CertificateEdge>& edges, ReductionKind kind) {
  return check_certificate(u, edges, kind).ok;
}

}  // namespace hurwitz::charp
