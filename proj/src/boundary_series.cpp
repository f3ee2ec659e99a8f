#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "series_internal.hpp"

namespace hurwitz::field {

namespace {

// Smallest integer >= x.
long ceil_q(const mpq_class& x) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r.get_si();
}

long floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r.get_si();
}

[[noreturn]] void exhausted(const std::string& what) { throw Error(ErrorCode::PrecisionExhausted, what); }

void check_same_ring(const BoundarySeries& a, const BoundarySeries& b) {
  if (a.p() != b.p() || a.N() != b.N()) throw Error(ErrorCode::InvalidArgument, "series over different rings");
}

}  // namespace

BoundarySeries::BoundarySeries(int p, int N, SeriesBounds bounds) : p_(p), N_(N), b_(std::move(bounds)) {
  if (b_.V < 1) throw Error(ErrorCode::InvalidArgument, "valuation cutoff must be positive");
  normalize();
}

BoundarySeries BoundarySeries::monomial(const RamifiedElt& c, long exponent, long lo, long hi, long V) {
  SeriesBounds b;
  b.lo = lo;
  b.hi = hi;
  b.V = V;
  b.support_min = exponent;
  b.support_max = exponent;
  b.below_negligible = true;
  b.above_negligible = true;
  BoundarySeries s(c.p(), c.N(), b);
  if (exponent >= s.b_.lo && exponent <= s.b_.hi) s.add_term(exponent, c);
  return s;
}

BoundarySeries BoundarySeries::constant(const RamifiedElt& c, long lo, long hi, long V) {
  return monomial(c, 0, lo, hi, V);
}

RamifiedElt BoundarySeries::coeff(long i) const {
  auto it = terms_.find(i);
  if (it != terms_.end()) return it->second;
  return RamifiedElt(p_, N_);
}

void BoundarySeries::add_term(long i, const RamifiedElt& c) {
  if (i < b_.lo || i > b_.hi) throw Error(ErrorCode::InvalidArgument, "exponent outside window");
  auto it = terms_.find(i);
  RamifiedElt sum = it == terms_.end() ? c : it->second + c;
  terms_.erase(i);
  auto lb = sum.valuation_lower_bound();
  if (!lb || *lb >= b_.V) return;
  auto v = valuation(sum);
  if (!v || *v >= b_.V) return;
  terms_.emplace(i, sum.pruned(b_.V));
}

void BoundarySeries::normalize() {
  SeriesBounds& b = b_;
  if (b.support_min && *b.support_min >= b.lo) {
    b.lo = *b.support_min;
    b.below_negligible = true;
  }
  if (b.support_max && *b.support_max <= b.hi) {
    b.hi = *b.support_max;
    b.above_negligible = true;
  }
  if (b.decay_neg > 0) {
    // v(c_i) >= V for every i <= -ceil(V / decay).
    long edge = -(ceil_q(mpq_class(b.V) / b.decay_neg) - 1);
    if (b.lo <= edge) {
      b.lo = edge;
      b.below_negligible = true;
    }
  }
  if (b.decay_pos > 0) {
    long edge = ceil_q(mpq_class(b.V) / b.decay_pos) - 1;
    if (b.hi >= edge) {
      b.hi = edge;
      b.above_negligible = true;
    }
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first < b.lo || it->first > b.hi) {
      it = terms_.erase(it);
      continue;
    }
    auto lb = it->second.valuation_lower_bound();
    if (!lb || *lb >= b.V) {
      it = terms_.erase(it);
      continue;
    }
    auto v = valuation(it->second);
    if (!v || *v >= b.V) {
      it = terms_.erase(it);
      continue;
    }
    it->second = it->second.pruned(b.V);
    ++it;
  }
}

BoundarySeries BoundarySeries::truncated(long lo, long hi) const {
  BoundarySeries r(*this);
  if (lo > r.b_.lo) {
    r.b_.lo = lo;
    if (!(r.b_.support_min && *r.b_.support_min >= lo)) {
      r.b_.below_negligible = false;
      r.b_.support_min.reset();
      r.b_.decay_neg = 0;
    }
  }
  if (hi < r.b_.hi) {
    r.b_.hi = hi;
    if (!(r.b_.support_max && *r.b_.support_max <= hi)) {
      r.b_.above_negligible = false;
      r.b_.support_max.reset();
      r.b_.decay_pos = 0;
    }
  }
  r.normalize();
  return r;
}

BoundarySeries BoundarySeries::with_support_claims(bool keep_min, bool keep_max) const {
  BoundarySeries r(*this);
  if (!keep_min) r.b_.support_min.reset();
  if (!keep_max) r.b_.support_max.reset();
  return r;
}

BoundarySeries BoundarySeries::operator+(const BoundarySeries& o) const {
  check_same_ring(*this, o);
  const SeriesBounds& f = b_;
  const SeriesBounds& g = o.b_;
  SeriesBounds b;
  b.V = std::min(f.V, g.V);
  if (f.below_negligible && g.below_negligible) {
    b.lo = std::min(f.lo, g.lo);
  } else if (f.below_negligible) {
    b.lo = g.lo;
  } else if (g.below_negligible) {
    b.lo = f.lo;
  } else {
    b.lo = std::max(f.lo, g.lo);
  }
  if (f.above_negligible && g.above_negligible) {
    b.hi = std::max(f.hi, g.hi);
  } else if (f.above_negligible) {
    b.hi = g.hi;
  } else if (g.above_negligible) {
    b.hi = f.hi;
  } else {
    b.hi = std::min(f.hi, g.hi);
  }
  b.below_negligible = f.below_negligible && g.below_negligible;
  b.above_negligible = f.above_negligible && g.above_negligible;
  if (f.support_min && g.support_min) b.support_min = std::min(*f.support_min, *g.support_min);
  if (f.support_max && g.support_max) b.support_max = std::max(*f.support_max, *g.support_max);
  b.decay_neg = std::min(f.decay_neg, g.decay_neg);
  b.decay_pos = std::min(f.decay_pos, g.decay_pos);

  BoundarySeries r(p_, N_, b);
  r.terms_ = terms_;
  for (auto it = r.terms_.begin(); it != r.terms_.end();) {
    it = (it->first < r.b_.lo || it->first > r.b_.hi) ? r.terms_.erase(it) : std::next(it);
  }
  for (const auto& [i, c] : o.terms_) {
    if (i < r.b_.lo || i > r.b_.hi) continue;
    auto it = r.terms_.find(i);
    if (it == r.terms_.end()) {
      r.terms_.emplace(i, c);
    } else {
      it->second += c;
    }
  }
  r.normalize();
  return r;
}

BoundarySeries BoundarySeries::operator-() const {
  BoundarySeries r(*this);
  for (auto& [i, c] : r.terms_) c = -c;
  return r;
}

BoundarySeries BoundarySeries::operator-(const BoundarySeries& o) const { return *this + (-o); }

BoundarySeries BoundarySeries::operator*(const BoundarySeries& o) const {
  check_same_ring(*this, o);
  const SeriesBounds& f = b_;
  const SeriesBounds& g = o.b_;
  SeriesBounds b;
  b.V = std::min(f.V, g.V);
  b.lo = f.lo + g.lo;
  b.hi = f.hi + g.hi;
  // Unknown tails of one factor spoil the product beyond the other's window.
  if (!f.above_negligible) {
    if (!g.below_negligible) exhausted("product of two series with unknown opposite tails");
    b.hi = std::min(b.hi, f.hi + g.lo);
  }
  if (!g.above_negligible) {
    if (!f.below_negligible) exhausted("product of two series with unknown opposite tails");
    b.hi = std::min(b.hi, g.hi + f.lo);
  }
  if (!f.below_negligible) {
    if (!g.above_negligible) exhausted("product of two series with unknown opposite tails");
    b.lo = std::max(b.lo, f.lo + g.hi);
  }
  if (!g.below_negligible) {
    if (!f.above_negligible) exhausted("product of two series with unknown opposite tails");
    b.lo = std::max(b.lo, g.lo + f.hi);
  }
  b.below_negligible = f.below_negligible && g.below_negligible;
  b.above_negligible = f.above_negligible && g.above_negligible;
  if (f.support_min && g.support_min) b.support_min = *f.support_min + *g.support_min;
  if (f.support_max && g.support_max) b.support_max = *f.support_max + *g.support_max;
  b.decay_neg = std::min(f.decay_neg, g.decay_neg);
  b.decay_pos = std::min(f.decay_pos, g.decay_pos);

  struct Term {
    long exp;
    long lb;
    const RamifiedElt* c;
  };
  auto collect = [](const std::map<long, RamifiedElt>& m) {
    std::vector<Term> out;
    out.reserve(m.size());
    for (const auto& [i, c] : m) out.push_back({i, c.valuation_lower_bound().value_or(0), &c});
    return out;
  };
  std::vector<Term> ft = collect(terms_), gt = collect(o.terms_);

  std::map<long, RamifiedElt> acc;
  for (const auto& a : ft) {
    for (const auto& c : gt) {
      long k = a.exp + c.exp;
      if (k < b.lo || k > b.hi || a.lb + c.lb >= b.V) continue;
      RamifiedElt prod = *a.c * *c.c;
      auto it = acc.find(k);
      if (it == acc.end()) {
        acc.emplace(k, std::move(prod));
      } else {
        it->second += prod;
      }
    }
  }
  BoundarySeries r(p_, N_, b);
  r.terms_ = std::move(acc);
  r.normalize();
  return r;
}

BoundarySeries BoundarySeries::operator*(const RamifiedElt& c) const {
  auto lb = c.valuation_lower_bound();
  if (lb && *lb < 0) {
    auto v = valuation(c);
    if (v && *v < 0) throw Error(ErrorCode::InvalidArgument, "scalar must be integral");
  }
  BoundarySeries r(*this);
  for (auto& [i, t] : r.terms_) t = t * c;
  r.normalize();
  return r;
}

BoundarySeries BoundarySeries::operator*(const mpq_class& c) const {
  return *this * RamifiedElt::from_rational(p_, N_, c);
}

BoundarySeries BoundarySeries::shifted(long k) const {
  SeriesBounds b = b_;
  b.lo += k;
  b.hi += k;
  if (b.support_min) *b.support_min += k;
  if (b.support_max) *b.support_max += k;
  if (k > 0) b.decay_pos = 0;
  if (k < 0) b.decay_neg = 0;
  BoundarySeries r(p_, N_, b);
  for (const auto& [i, c] : terms_) r.terms_.emplace(i + k, c);
  r.normalize();
  return r;
}

namespace {

// sum_k coef(k) r^k. `gauss0` is a known lower bound for v_eta(r) (0 when r is
// only Z-adically small).
BoundarySeries power_series_in(const BoundarySeries& r, const mpq_class& gauss0,
                               const std::function<mpq_class(long)>& coef) {
  const long V = r.val_cutoff();
  const bool cap_lo = !r.negligible_below();
  const bool cap_hi = !r.negligible_above();
  auto clip = [&](const BoundarySeries& s) {
    long lo = cap_lo ? std::max(s.lo(), r.lo()) : s.lo();
    long hi = cap_hi ? std::min(s.hi(), r.hi()) : s.hi();
    return (lo == s.lo() && hi == s.hi()) ? s : s.truncated(lo, hi);
  };

  RamifiedElt one = RamifiedElt::from_rational(r.p(), r.N(), 1);
  SeriesBounds ub;
  ub.lo = std::min(r.lo(), 0L);
  ub.hi = std::max(r.hi(), 0L);
  ub.V = V;
  ub.support_min = 0;
  ub.support_max = 0;
  ub.below_negligible = true;
  ub.above_negligible = true;
  ub.decay_neg = r.bounds().decay_neg;
  ub.decay_pos = r.bounds().decay_pos;
  BoundarySeries unit(r.p(), r.N(), ub);
  if (ub.lo <= 0 && ub.hi >= 0) unit.add_term(0, one);

  // The omitted powers are negligible, but they do extend the support.
  const auto& rb = r.bounds();
  const bool keep_min = rb.support_min && *rb.support_min >= 0;
  const bool keep_max = rb.support_max && *rb.support_max <= 0;
  auto finish = [&](const BoundarySeries& s) { return s.with_support_claims(keep_min, keep_max); };

  BoundarySeries sum = unit * coef(0);
  BoundarySeries power = unit;
  constexpr long kMaxTerms = 1000000;
  for (long k = 1; k <= kMaxTerms; ++k) {
    if (gauss0 > 0 && gauss0 * k >= V) return finish(sum);
    power = clip(power * r);
    bool dead = power.lo() > power.hi() || (power.negligible_below() && power.negligible_above());
    if (power.empty() && dead) return finish(sum);
    mpq_class c = coef(k);
    if (c != 0) sum = sum + power * c;
  }
  exhausted("power series did not terminate");
}

// Checks that r is small enough for power series in r to converge: either
// v_eta(r) > 0, or r is supported in positive exponents up to error >= V. In
// the second case the constant coefficient is dropped from the support claim.
BoundarySeries check_small(const BoundarySeries& r, mpq_class& gauss0) {
  gauss0 = 0;
  const auto& rb = r.bounds();
  if (r.empty() && r.negligible_below() && r.negligible_above()) return r;
  bool positive = rb.support_min && *rb.support_min >= 0 && r.negligible_below() &&
                  (r.empty() || r.terms().begin()->first >= 1);
  if (positive) {
    if (*rb.support_min >= 1) return r;
    SeriesBounds b = rb;
    b.support_min = 1;
    b.lo = std::max(b.lo, 1L);
    BoundarySeries out(r.p(), r.N(), b);
    for (const auto& [i, c] : r.terms()) out.add_term(i, c);
    return out;
  }
  mpq_class gv = r.empty() ? mpq_class(r.val_cutoff()) : gauss_valuation(r, 0);
  if (gv <= 0) throw Error(ErrorCode::NotPrincipalUnit, "f - 1 has Gauss valuation <= 0");
  gauss0 = gv;
  return r;
}

BoundarySeries unit_like(const BoundarySeries& f) {
  return BoundarySeries::constant(RamifiedElt::from_rational(f.p(), f.N(), 1), f.lo(), f.hi(), f.val_cutoff());
}

}  // namespace

BoundarySeries BoundarySeries::inverse() const {
  if (b_.lo > 0 || b_.hi < 0) exhausted("constant term outside the window");
  RamifiedElt c0 = coeff(0);
  auto v0 = valuation(c0);
  if (!v0 || *v0 != 0) throw Error(ErrorCode::NotPrincipalUnit, "constant term is not a unit");
  mpq_class g0;
  BoundarySeries r = check_small(*this * c0.inverse() - unit_like(*this), g0);
  BoundarySeries s = power_series_in(r, g0, [](long k) { return mpq_class(k % 2 == 0 ? 1 : -1); });
  return s * c0.inverse();
}

BoundarySeries BoundarySeries::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  BoundarySeries base = *this;
  std::optional<BoundarySeries> acc;
  while (k > 0) {
    if (k & 1) acc = acc ? *acc * base : base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  if (acc) return *acc;
  return constant(RamifiedElt::from_rational(p_, N_, 1), b_.lo, b_.hi, b_.V);
}

BoundarySeries binomial_root_series(const BoundarySeries& f, long m) {
  if (m == 0) throw Error(ErrorCode::BadConductor, "root of order 0");
  if (m % f.p() == 0) throw Error(ErrorCode::BadConductor, "root order divisible by p");
  if (f.lo() > 0 || f.hi() < 0) exhausted("constant term outside the window");
  mpq_class g0;
  BoundarySeries r = check_small(f - unit_like(f), g0);
  if (m == 1) return f;
  const mpq_class a = mpq_class(1, 1) / m;
  // binom(a, k) computed incrementally
  std::vector<mpq_class> binom{1};
  return power_series_in(r, g0, [&](long k) {
    while (static_cast<long>(binom.size()) <= k) {
      long j = static_cast<long>(binom.size());
      binom.push_back(binom.back() * (a - (j - 1)) / j);
    }
    return binom[static_cast<size_t>(k)];
  });
}

namespace detail {

BoundarySeries compose_cached(const BoundarySeries& f, const BoundarySeries& g, PowerCache& cache) {
  const auto& gb = g.bounds();
  const bool g_nonneg = gb.support_min && *gb.support_min >= 0;
  const bool g_nonpos = gb.support_max && *gb.support_max <= 0;
  if (!g_nonneg && !g_nonpos) throw Error(ErrorCode::InvalidArgument, "ratio series must be one-sided");

  std::optional<BoundarySeries> acc;
  for (const auto& [i, c] : f.terms()) {
    BoundarySeries term = cache.get(i).shifted(i) * c;
    acc = acc ? *acc + term : term;
  }
  SeriesBounds b;
  if (acc) {
    b = acc->bounds();
  } else {
    b = f.bounds();
  }
  b.V = std::min(f.val_cutoff(), g.val_cutoff());
  const auto& fb = f.bounds();
  if (!fb.above_negligible) {
    if (!g_nonneg) exhausted("composition with an unknown upper tail");
    b.hi = std::min(b.hi, fb.hi);
    b.above_negligible = false;
  }
  if (!fb.below_negligible) {
    if (!g_nonpos) exhausted("composition with an unknown lower tail");
    b.lo = std::max(b.lo, fb.lo);
    b.below_negligible = false;
  }
  b.decay_neg = std::min(fb.decay_neg, gb.decay_neg);
  b.decay_pos = std::min(fb.decay_pos, gb.decay_pos);
  b.support_min.reset();
  b.support_max.reset();
  if (g_nonneg && g_nonpos) {
    b.support_min = fb.support_min;
    b.support_max = fb.support_max;
  } else if (g_nonpos) {
    b.support_max = fb.support_max;
  } else {
    b.support_min = fb.support_min;
  }
  BoundarySeries r(f.p(), f.N(), b);
  if (acc) {
    for (const auto& [i, c] : acc->terms()) {
      if (i >= r.lo() && i <= r.hi()) r.add_term(i, c);
    }
  }
  return r;
}

}  // namespace detail

BoundarySeries BoundarySeries::compose(const BoundarySeries& g) const {
  check_same_ring(*this, g);
  detail::PowerCache cache(g);
  return detail::compose_cached(*this, g, cache);
}

std::string BoundarySeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*Z^" << i;
  }
  if (first) os << "0";
  os << "  [window " << b_.lo << ".." << b_.hi << ", V=" << b_.V << "]";
  return os.str();
}

mpq_class gauss_valuation(const BoundarySeries& f, const mpq_class& rho) {
  if (rho < 0) throw Error(ErrorCode::InvalidArgument, "rho must be nonnegative");
  if (f.empty()) throw Error(ErrorCode::AllTermsTruncated, "no coefficient of valuation below the cutoff");
  const auto& b = f.bounds();
  std::optional<mpq_class> best;
  for (const auto& [i, c] : f.terms()) {
    mpq_class w = mpq_class(*valuation(c)) + rho * i;
    if (!best || w < *best) best = w;
  }
  const mpq_class V = b.V;
  // Unstored exponents inside the window.
  if (*best > V + rho * b.lo) exhausted("minimum may sit in a truncated coefficient");

  const mpq_class floor_v = 0;
  // Exponents below the window: v(c_i) >= max(F, a * max(-i, 0)).
  if (!(b.support_min && *b.support_min >= b.lo)) {
    const mpq_class F = b.below_negligible ? V : floor_v;
    const mpq_class& a = b.decay_neg;
    std::optional<long> left;
    if (b.support_min) left = *b.support_min;
    auto phi = [&](long i) { return mpq_class(std::max(F, mpq_class(a * std::max(-i, 0L))) + rho * i); };
    const long right = b.lo - 1;
    std::vector<long> cand{right};
    if (left) cand.push_back(*left);
    cand.push_back(0);
    if (a > 0) {
      cand.push_back(-floor_q(F / a));
      cand.push_back(-ceil_q(F / a));
    }
    mpq_class bound = std::numeric_limits<long>::max();
    for (long i : cand) {
      if (i > right || (left && i < *left)) continue;
      bound = std::min(bound, phi(i));
    }
    if (!left) {
      if (rho > a) exhausted("rho beyond the radius where the lower tail is controlled");
      if (rho == a) bound = std::min(bound, a > 0 ? mpq_class(0) : F);
    }
    if (*best > bound) exhausted("minimum may sit below the window");
  }
  if (!(b.support_max && *b.support_max <= b.hi)) {
    const mpq_class F = b.above_negligible ? V : floor_v;
    long i = b.hi + 1;
    mpq_class bound = std::max(F, mpq_class(b.decay_pos * std::max(i, 0L))) + rho * i;
    if (*best > bound) exhausted("minimum may sit above the window");
  }
  return *best;
}

}  // namespace hurwitz::field
