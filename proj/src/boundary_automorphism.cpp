#include <algorithm>

#include "series_internal.hpp"

namespace hurwitz::field {

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::MultResidue: return "MultResidue";
    case BoundaryKind::MultExact: return "MultExact";
    case BoundaryKind::Additive: return "Additive";
    case BoundaryKind::DiskNormalForm: return "DiskNormalForm";
  }
  return "?";
}

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

void check_conductor(long m, int p) {
  if (m <= 0) throw Error(ErrorCode::BadConductor, "conductor must be positive");
  if (m % p == 0) throw Error(ErrorCode::BadConductor, "conductor divisible by p");
}

RamifiedElt one(int p, int N) { return RamifiedElt::from_rational(p, N, 1); }

// (1 + c Z^{-m})^{1/m} times zeta^{1/m}; supported in exponents <= 0.
BoundarySeries negative_type_ratio(int p, int N, long m, const RamifiedElt& c, long V) {
  auto vc = valuation(c);
  SeriesBounds b;
  b.lo = -m;
  b.hi = 0;
  b.V = V;
  b.support_min = -m;
  b.support_max = 0;
  b.below_negligible = true;
  b.above_negligible = true;
  b.decay_neg = mpq_class(vc.value_or(V), m);
  BoundarySeries u(p, N, b);
  u.add_term(0, one(p, N));
  u.add_term(-m, c);
  return binomial_root_series(u, m) * RamifiedElt::zeta_power(p, N, inverse_mod(m, p));
}

}  // namespace

BoundaryAutomorphism boundary_automorphism(int p, int N, const BoundaryParams& params, const Precision& precision) {
  if (p < 2 || N < 1) throw Error(ErrorCode::InvalidArgument, "need prime p and N >= 1");
  const long V = precision.V > 0 ? precision.V : 4L * N * (p - 1);
  const long width = std::max(precision.min_width, 2L);
  switch (params.kind) {
    case BoundaryKind::MultResidue: {
      long h = ((params.h % p) + p) % p;
      if (h == 0) throw Error(ErrorCode::BadConductor, "h must be nonzero mod p");
      auto g = BoundarySeries::constant(RamifiedElt::zeta_power(p, N, inverse_mod(h, p)), 0, 0, V);
      long lo = precision.lo.value_or(2 - width);
      long hi = precision.hi.value_or(1);
      return BoundaryAutomorphism(p, N, params, g, lo, hi);
    }
    case BoundaryKind::MultExact:
    case BoundaryKind::Additive: {
      check_conductor(params.m, p);
      RamifiedElt c = RamifiedElt::zeta_power(p, N, -1);
      if (params.kind == BoundaryKind::MultExact) {
        c = c * RamifiedElt::lambda(p, N);
      } else {
        if (params.n <= 0 || params.n > N) throw Error(ErrorCode::BadLevel, "level outside (0, N]");
        c = c * RamifiedElt::pi_power(p, N, N - params.n);
      }
      BoundarySeries g = negative_type_ratio(p, N, params.m, c, V);
      if (precision.lo) g = g.truncated(*precision.lo - 1, g.hi());
      long lo = precision.lo.value_or(std::min(2 - width, g.lo() + 1));
      long hi = precision.hi.value_or(1);
      return BoundaryAutomorphism(p, N, params, g, lo, hi);
    }
    case BoundaryKind::DiskNormalForm: {
      check_conductor(params.m, p);
      if (params.n <= 0 || params.n > N) throw Error(ErrorCode::BadLevel, "level outside (0, N]");
      const long m = params.m;
      const long q = N - params.n;
      long H;
      if (precision.hi) {
        H = *precision.hi - 1;
      } else {
        H = width - 1;
        if (q > 0) H = std::max(H, ceil_div(V * m, q) - 1);
      }
      H = std::max(H, 0L);
      SeriesBounds b;
      b.lo = 0;
      b.hi = H;
      b.V = V;
      b.support_min = 0;
      b.below_negligible = true;
      b.decay_pos = mpq_class(q, m);
      BoundarySeries u(p, N, b);
      u.add_term(0, one(p, N));
      if (m <= H) u.add_term(m, RamifiedElt::pi_power(p, N, q));
      BoundarySeries g = binomial_root_series(u, -m) * RamifiedElt::zeta_power(p, N, -inverse_mod(m, p));
      long hi = precision.hi.value_or(g.hi() + 1);
      return BoundaryAutomorphism(p, N, params, g, 1, hi);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown boundary kind");
}

BoundarySeries BoundaryAutomorphism::displacement() const {
  return ratio_ - BoundarySeries::constant(one(p_, N_), ratio_.lo(), ratio_.hi(), ratio_.val_cutoff());
}

bool iterate_check_order_p(const BoundaryAutomorphism& sigma) {
  const BoundarySeries& g = sigma.ratio();
  detail::PowerCache cache(g);
  BoundarySeries s = g.shifted(1);
  for (int k = 2; k <= sigma.p(); ++k) s = detail::compose_cached(s, g, cache);
  BoundarySeries z = BoundarySeries::monomial(one(sigma.p(), sigma.N()), 1, 1, 1, g.val_cutoff());
  BoundarySeries d = s - z;
  if (!d.empty()) return false;
  bool low_ok = d.negligible_below() || d.lo() <= sigma.decide_lo();
  bool high_ok = d.negligible_above() || d.hi() >= sigma.decide_hi();
  if (!low_ok || !high_ok) {
    throw Error(ErrorCode::PrecisionExhausted, "p-th iterate is known only on [" + std::to_string(d.lo()) + ", " +
                                                   std::to_string(d.hi()) + "]");
  }
  return true;
}

long boundary_differente(const BoundaryAutomorphism& sigma) {
  mpq_class g = gauss_valuation(sigma.displacement(), 0);
  if (g.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "non-integral Gauss valuation at rho = 0");
  return (sigma.p() - 1) * g.get_num().get_si();
}

std::vector<mpq_class> differente_profile(const BoundaryAutomorphism& sigma, const std::vector<mpq_class>& rhos) {
  BoundarySeries d = sigma.displacement();
  std::vector<mpq_class> out;
  out.reserve(rhos.size());
  for (const auto& rho : rhos) out.push_back(gauss_valuation(d, rho) * (sigma.p() - 1));
  return out;
}

}  // namespace hurwitz::field
