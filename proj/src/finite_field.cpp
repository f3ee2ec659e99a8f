#include "hurwitz/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace hurwitz::charp {

namespace {

// ---- dense polynomials over F_p, used only to find moduli ----

using FpPoly = std::vector<unsigned>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned fp_inv(unsigned a, unsigned p) {
  unsigned long r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, unsigned p) {
  fp_trim(a);
  const size_t dm = m.size() - 1;
  unsigned inv_lead = fp_inv(m.back(), p);
  while (a.size() > dm) {
    unsigned long c = static_cast<unsigned long>(a.back()) * inv_lead % p;
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] = static_cast<unsigned>((a[shift + i] + (p - c) * m[i]) % p);
    fp_trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, unsigned p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<unsigned>((r[i + j] + 1UL * a[i] * b[j]) % p);
  return fp_mod(std::move(r), m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, unsigned p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= deg/2.
bool fp_irreducible(const FpPoly& f, unsigned p) {
  const size_t n = f.size() - 1;
  FpPoly h{0, 1};
  for (size_t i = 1; i <= n / 2; ++i) {
    FpPoly base = h;
    FpPoly acc{1};
    unsigned long e = p;
    while (e) {
      if (e & 1) acc = fp_mulmod(acc, base, f, p);
      base = fp_mulmod(base, base, f, p);
      e >>= 1;
    }
    h = acc;
    FpPoly d = h;
    d.resize(std::max<size_t>(d.size(), 2));
    d[1] = (d[1] + p - 1) % p;
    fp_trim(d);
    if (fp_gcd(f, d, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr std::uint64_t kTableLimit = 1u << 20;
constexpr std::uint64_t kScanLimit = 4096;

}  // namespace

std::vector<unsigned> first_irreducible(unsigned p, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    FpPoly f(n + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<unsigned>(c % p);
      c /= p;
    }
    f[n] = 1;
    if (n > 1 && f[0] == 0) continue;
    if (fp_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

// ---- FiniteField ----

std::shared_ptr<const FiniteField> FiniteField::get(unsigned p, unsigned n) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FiniteField> f(new FiniteField(p, n));
  cache.emplace(key, f);
  return f;
}

FiniteField::FiniteField(unsigned p, unsigned n) : p_(p), n_(n), q_(1) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "p must be prime");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorCode::InvalidArgument, "p must be prime");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
  pow_p_.push_back(1);
  for (unsigned i = 0; i < n; ++i) {
    if (q_ > (std::uint64_t{1} << 62) / p) throw Error(ErrorCode::InvalidArgument, "field too large");
    q_ *= p;
    pow_p_.push_back(q_);
  }
  modulus_ = first_irreducible(p, n);
  if (q_ <= kTableLimit && q_ > 2) {
    // find a primitive element
    auto factors = prime_factors(q_ - 1);
    FqElt g{0};
    for (std::uint64_t c = 1; c < q_; ++c) {
      FqElt cand{c};
      bool ok = true;
      for (auto r : factors) {
        FqElt t{1}, b = cand;
        std::uint64_t e = (q_ - 1) / r;
        while (e) {
          if (e & 1) t = mul_generic(t, b);
          b = mul_generic(b, b);
          e >>= 1;
        }
        if (t.code == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    FqElt cur{1};
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = static_cast<std::uint32_t>(cur.code);
      log_[cur.code] = static_cast<std::uint32_t>(i);
      cur = mul_generic(cur, g);
    }
    for (std::uint64_t i = q_ - 1; i < 2 * (q_ - 1); ++i) exp_[i] = exp_[i - (q_ - 1)];
  }
}

FqElt FiniteField::from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r)};
}

FqElt FiniteField::generator() const {
  if (n_ == 1) {
    // x is zero modulo the modulus x
    return {0};
  }
  return {p_};
}

FqElt FiniteField::add(FqElt a, FqElt b) const {
  if (p_ == 2) return {a.code ^ b.code};
  std::uint64_t r = 0, x = a.code, y = b.code;
  for (unsigned i = 0; i < n_ && (x || y); ++i) {
    std::uint64_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    r += d * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return {r};
}

FqElt FiniteField::neg(FqElt a) const {
  if (p_ == 2) return a;
  std::uint64_t r = 0, x = a.code;
  for (unsigned i = 0; i < n_ && x; ++i) {
    std::uint64_t d = x % p_;
    if (d) r += (p_ - d) * pow_p_[i];
    x /= p_;
  }
  return {r};
}

FqElt FiniteField::sub(FqElt a, FqElt b) const { return add(a, neg(b)); }

FqElt FiniteField::mul(FqElt a, FqElt b) const {
  if (a.code == 0 || b.code == 0) return {0};
  if (!exp_.empty()) return {exp_[log_[a.code] + log_[b.code]]};
  if (q_ == 2) return {1};
  return mul_generic(a, b);
}

FqElt FiniteField::mul_generic(FqElt a, FqElt b) const {
  auto da = digits(a), db = digits(b);
  std::vector<unsigned long> r(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < n_; ++j) r[i + j] = (r[i + j] + 1UL * da[i] * db[j]) % p_;
  }
  for (size_t k = r.size(); k-- > n_;) {
    unsigned long c = r[k];
    if (!c) continue;
    for (unsigned i = 0; i <= n_; ++i) r[k - n_ + i] = (r[k - n_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  std::uint64_t code = 0;
  for (unsigned i = n_; i-- > 0;) code = code * p_ + r[i];
  return {code};
}

FqElt FiniteField::inv(FqElt a) const {
  if (a.code == 0) throw Error(ErrorCode::ZeroInput, "inverse of zero in F_q");
  if (!exp_.empty()) return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
  return pow(a, q_ - 2);
}

FqElt FiniteField::pow(FqElt a, std::uint64_t e) const {
  if (e == 0) return {1};
  if (a.code == 0) return {0};
  if (!exp_.empty()) {
    unsigned __int128 l = static_cast<unsigned __int128>(log_[a.code]) * (e % (q_ - 1));
    return {exp_[static_cast<std::uint64_t>(l % (q_ - 1))]};
  }
  FqElt r{1}, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FqElt FiniteField::pth_root(FqElt a) const { return pow(a, q_ / p_); }

std::vector<unsigned> FiniteField::digits(FqElt a) const {
  std::vector<unsigned> d(n_);
  std::uint64_t x = a.code;
  for (unsigned i = 0; i < n_; ++i) {
    d[i] = static_cast<unsigned>(x % p_);
    x /= p_;
  }
  return d;
}

FqElt FiniteField::from_digits(const std::vector<unsigned>& d) const {
  std::uint64_t code = 0;
  for (size_t i = std::min<size_t>(d.size(), n_); i-- > 0;) code = code * p_ + d[i] % p_;
  return {code};
}

std::string FiniteField::to_string(FqElt a) const {
  if (n_ == 1) return std::to_string(a.code);
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (unsigned i = n_; i-- > 0;) {
    if (!d[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i > 0) os << (i == 1 ? "w" : "w^" + std::to_string(i));
  }
  if (first) os << "0";
  return os.str();
}

// ---- Poly ----

Poly::Poly(FieldPtr field, std::vector<FqElt> coeffs) : F_(std::move(field)), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, FqElt c) { return Poly(std::move(field), {c}); }

Poly Poly::x(FieldPtr field) { return Poly(std::move(field), {FqElt{0}, FqElt{1}}); }

Poly Poly::linear(FieldPtr field, FqElt c) {
  FqElt nc = field->neg(c);
  return Poly(std::move(field), {nc, FqElt{1}});
}

FqElt Poly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return {0};
  return c_[static_cast<size_t>(i)];
}

FqElt Poly::eval(FqElt x) const {
  FqElt r{0};
  for (size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FqElt> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_->add(coeff(static_cast<long>(i)), o.coeff(static_cast<long>(i)));
  return Poly(F_, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<FqElt> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(c_[i]);
  return Poly(F_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(F_);
  std::vector<FqElt> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].code == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F_->add(r[i + j], F_->mul(c_[i], o.c_[j]));
  }
  return Poly(F_, std::move(r));
}

Poly Poly::operator*(FqElt c) const {
  std::vector<FqElt> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_->mul(c_[i], c);
  return Poly(F_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::ZeroInput, "polynomial division by zero");
  if (degree() < d.degree()) return {Poly(F_), *this};
  std::vector<FqElt> rem = c_;
  std::vector<FqElt> quo(c_.size() - d.c_.size() + 1);
  FqElt inv_lead = F_->inv(d.lead());
  const size_t dd = d.c_.size() - 1;
  for (size_t k = rem.size(); k-- > dd;) {
    FqElt c = F_->mul(rem[k], inv_lead);
    if (c.code == 0) continue;
    quo[k - dd] = c;
    for (size_t i = 0; i <= dd; ++i) rem[k - dd + i] = F_->sub(rem[k - dd + i], F_->mul(c, d.c_[i]));
  }
  rem.resize(dd);
  return {Poly(F_, std::move(quo)), Poly(F_, std::move(rem))};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(F_);
  std::vector<FqElt> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = F_->scale(c_[i], static_cast<long>(i % F_->p()));
  return Poly(F_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * F_->inv(lead());
}

Poly Poly::pow(unsigned long e) const {
  Poly r = constant(F_, F_->one()), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::taylor_shift(FqElt c) const {
  // Horner in (t + c)
  Poly r(F_);
  Poly lin(F_, {c, FqElt{1}});
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + constant(F_, c_[i]);
  return r;
}

Poly Poly::reversed() const {
  std::vector<FqElt> r(c_.rbegin(), c_.rend());
  return Poly(F_, std::move(r));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].code == 0) continue;
    if (!first) os << " + ";
    first = false;
    std::string c = F_->to_string(c_[i]);
    bool paren = c.find('+') != std::string::npos;
    if (i == 0 || c != "1") os << (paren ? "(" + c + ")" : c);
    if (i > 0) os << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly r = Poly::constant(base.field(), base.field()->one()) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

namespace {

// Splits a product of distinct linear factors.
void split_linear(const Poly& g, std::mt19937_64& rng, std::vector<FqElt>& out) {
  const auto& F = *g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(F.div(g.coeff(0), g.coeff(1))));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    FqElt a{pick(rng)};
    Poly h(g.field());
    if (F.p() == 2) {
      // trace of a t
      Poly w = Poly(g.field(), {FqElt{0}, a}) % g;
      Poly acc = w;
      for (unsigned i = 1; i < F.degree(); ++i) {
        w = (w * w) % g;
        acc = acc + w;
      }
      h = gcd(g, acc);
    } else {
      Poly lin(g.field(), {a, F.one()});
      Poly w = powmod(lin, (F.order() - 1) / 2, g) - Poly::constant(g.field(), F.one());
      h = gcd(g, w);
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(g / h, rng, out);
      return;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "root splitting did not converge");
}

}  // namespace

std::vector<FqElt> roots_in_field(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "roots of the zero polynomial");
  std::vector<FqElt> out;
  if (f.degree() <= 0) return out;
  const auto& F = *f.field();
  if (F.order() <= kScanLimit) {
    for (std::uint64_t c = 0; c < F.order(); ++c)
      if (f.eval(FqElt{c}).code == 0) out.push_back(FqElt{c});
    return out;
  }
  Poly fm = f.monic();
  Poly xq = powmod(Poly::x(f.field()), F.order(), fm);
  Poly g = gcd(fm, xq - Poly::x(f.field()));
  std::mt19937_64 rng(0x5eed);
  split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned> irreducible_factor_degrees(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "factor degrees of zero");
  std::vector<unsigned> out;
  if (f.degree() <= 0) return out;
  const auto& F = *f.field();
  Poly d = f.derivative();
  if (d.is_zero()) {
    // f = g(t)^p with coefficients of g the p-th roots
    std::vector<FqElt> g;
    for (long i = 0; i <= f.degree(); i += F.p()) g.push_back(F.pth_root(f.coeff(i)));
    std::vector<unsigned> once = irreducible_factor_degrees(Poly(f.field(), std::move(g)));
    for (unsigned d : once) out.insert(out.end(), F.p(), d);
    return out;
  }
  Poly g = gcd(f, d);
  Poly h = (f / g).monic();
  if (g.degree() > 0) out = irreducible_factor_degrees(g);
  Poly xp = Poly::x(f.field()) % h;
  for (unsigned k = 1; h.degree() >= 2 * static_cast<long>(k); ++k) {
    xp = powmod(xp, F.order(), h);
    Poly common = gcd(h, xp - Poly::x(f.field()));
    if (common.degree() > 0) {
      for (long i = 0; i < common.degree() / static_cast<long>(k); ++i) out.push_back(k);
      h = h / common;
      xp = xp % h;
    }
  }
  if (h.degree() > 0) out.push_back(static_cast<unsigned>(h.degree()));
  return out;
}

std::vector<RootMultiplicity> roots_with_multiplicity(const Poly& f) {
  auto roots = roots_in_field(f);
  std::vector<RootMultiplicity> out;
  Poly rest = f;
  for (FqElt r : roots) {
    Poly lin = Poly::linear(f.field(), r);
    unsigned mult = 0;
    for (;;) {
      auto [q, rem] = rest.divmod(lin);
      if (!rem.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    out.push_back({r, mult});
  }
  if (rest.degree() > 0) {
    unsigned l = 1;
    for (unsigned d : irreducible_factor_degrees(rest)) l = std::lcm(l, d);
    throw UnsplitFactorError(l, "polynomial does not split over F_" + std::to_string(f.field()->order()) +
                                    "; needs an extension of degree " + std::to_string(l));
  }
  return out;
}

// ---- FieldEmbedding ----

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->p() != to_->p() || to_->degree() % from_->degree() != 0) {
    throw Error(ErrorCode::FieldMismatch, "no embedding F_" + std::to_string(from_->order()) + " -> F_" +
                                              std::to_string(to_->order()));
  }
  std::vector<FqElt> coeffs;
  for (unsigned c : from_->modulus()) coeffs.push_back(FqElt{c});
  auto roots = roots_in_field(Poly(to_, coeffs));
  if (roots.empty()) throw Error(ErrorCode::FieldMismatch, "modulus has no root in the target field");
  gen_image_ = roots.front();
}

FqElt FieldEmbedding::operator()(FqElt a) const {
  auto d = from_->digits(a);
  FqElt r{0};
  for (size_t i = d.size(); i-- > 0;) r = to_->add(to_->mul(r, gen_image_), FqElt{d[i]});
  return r;
}

}  // namespace hurwitz::charp
