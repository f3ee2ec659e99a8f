#pragma once

// Exact arithmetic in K = Q(zeta_p)(pi), pi^N = zeta - 1, and truncated Laurent
// series over its valuation ring.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/error.hpp"

namespace hurwitz::field {

/// v_K value; nullopt stands for +infinity.
using Valuation = std::optional<long>;

/// v_p of a nonzero rational.
long padic_valuation(const mpq_class& x, unsigned long p);

/// Element of Q(zeta_p) in the basis 1, zeta, ..., zeta^{p-2}.
class CyclotomicElt {
 public:
  explicit CyclotomicElt(int p);
  CyclotomicElt(int p, std::vector<mpq_class> coeffs);

  static CyclotomicElt zeta_power(int p, long k);
  static CyclotomicElt from_rational(int p, const mpq_class& c);

  int p() const { return p_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;

  CyclotomicElt operator+(const CyclotomicElt& o) const;
  CyclotomicElt operator-(const CyclotomicElt& o) const;
  CyclotomicElt operator-() const;
  CyclotomicElt operator*(const CyclotomicElt& o) const;
  CyclotomicElt operator*(const mpq_class& c) const;
  bool operator==(const CyclotomicElt& o) const { return p_ == o.p_ && c_ == o.c_; }

  /// Determinant of multiplication by this element over Q.
  mpq_class norm() const;
  /// v_lambda(x) = v_p(norm); nullopt for zero.
  Valuation lambda_valuation() const;
  /// Cheap lower bound for v_lambda: (p-1) * min v_p(coeff).
  Valuation lambda_valuation_lower_bound() const;

  std::string to_string() const;

 private:
  int p_;
  std::vector<mpq_class> c_;
};

/// Element of Q(zeta_p)[pi]/(pi^N - (zeta - 1)), stored as sum_j a_j pi^j with
/// a_j in Q(zeta_p), which is the (p-1) x N coordinate matrix in the basis
/// zeta^i pi^j.
class RamifiedElt {
 public:
  RamifiedElt(int p, int N);
  RamifiedElt(int p, int N, std::vector<CyclotomicElt> parts);

  static RamifiedElt from_rational(int p, int N, const mpq_class& c);
  static RamifiedElt from_cyclotomic(int N, const CyclotomicElt& a);
  static RamifiedElt zeta_power(int p, int N, long k);
  static RamifiedElt pi_power(int p, int N, long k);
  static RamifiedElt lambda(int p, int N);

  int p() const { return p_; }
  int N() const { return N_; }
  const std::vector<CyclotomicElt>& parts() const { return a_; }
  /// Coordinate of zeta^i pi^j.
  const mpq_class& coeff(int i, int j) const { return a_[j].coeffs()[i]; }
  bool is_zero() const;

  RamifiedElt operator+(const RamifiedElt& o) const;
  RamifiedElt operator-(const RamifiedElt& o) const;
  RamifiedElt operator-() const;
  RamifiedElt operator*(const RamifiedElt& o) const;
  RamifiedElt operator*(const mpq_class& c) const;
  RamifiedElt& operator+=(const RamifiedElt& o);
  bool operator==(const RamifiedElt& o) const;

  /// Multiplicative inverse; throws ZeroInput on zero.
  RamifiedElt inverse() const;

  /// Drops coordinates whose own valuation is at least V. The result differs
  /// from *this by an element of valuation >= V.
  RamifiedElt pruned(long V) const;

  /// Lower bound min_{i,j} N(p-1) v_p(coeff(i,j)) + j.
  Valuation valuation_lower_bound() const;

  std::string to_string() const;

 private:
  void check_compatible(const RamifiedElt& o) const;

  int p_;
  int N_;
  std::vector<CyclotomicElt> a_;
};

/// v_K with v_K(pi) = 1.
Valuation valuation(const RamifiedElt& x);

/// Truncation and decay data of a Laurent series in Z.
///
/// Coefficients are exact for exponents in [lo, hi] up to error of valuation
/// >= V. Outside the window nothing is stored; the tail there is controlled by
/// the support bounds (exact) or the decay slopes, which are global claims:
/// v(c_i) >= decay_neg * |i| for i < 0 and v(c_i) >= decay_pos * i for i > 0.
struct SeriesBounds {
  long lo = 0;
  long hi = 0;
  long V = 1;
  std::optional<long> support_min;
  std::optional<long> support_max;
  // Unknown coefficients beyond the window have valuation >= V.
  bool below_negligible = false;
  bool above_negligible = false;
  mpq_class decay_neg = 0;
  mpq_class decay_pos = 0;
};

/// Element of R[[Z]]{Z^-1} known to finite precision.
class BoundarySeries {
 public:
  BoundarySeries(int p, int N, SeriesBounds bounds);

  /// The exact Laurent polynomial sum c_i Z^i.
  static BoundarySeries monomial(const RamifiedElt& c, long exponent, long lo, long hi, long V);
  static BoundarySeries constant(const RamifiedElt& c, long lo, long hi, long V);

  int p() const { return p_; }
  int N() const { return N_; }
  const std::map<long, RamifiedElt>& terms() const { return terms_; }
  const SeriesBounds& bounds() const { return b_; }
  long lo() const { return b_.lo; }
  long hi() const { return b_.hi; }
  long val_cutoff() const { return b_.V; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient at exponent i (zero if not stored); i must lie in the window.
  RamifiedElt coeff(long i) const;
  /// Adds c to the coefficient at i (i inside the window), pruning to V.
  void add_term(long i, const RamifiedElt& c);

  /// Terms below lo contribute only valuation >= V (or do not exist).
  bool negligible_below() const { return b_.below_negligible; }
  bool negligible_above() const { return b_.above_negligible; }

  /// Copy with the exact-support claims optionally dropped; the window and
  /// negligibility flags are kept.
  BoundarySeries with_support_claims(bool keep_min, bool keep_max) const;

  /// Forgets everything outside [lo, hi].
  BoundarySeries truncated(long lo, long hi) const;

  BoundarySeries operator+(const BoundarySeries& o) const;
  BoundarySeries operator-(const BoundarySeries& o) const;
  BoundarySeries operator-() const;
  BoundarySeries operator*(const BoundarySeries& o) const;
  BoundarySeries operator*(const RamifiedElt& c) const;
  BoundarySeries operator*(const mpq_class& c) const;
  /// Multiplication by Z^k.
  BoundarySeries shifted(long k) const;

  /// Inverse of a series c0 (1 + r) with c0 a constant unit and r of positive
  /// Gauss valuation or supported in positive exponents.
  BoundarySeries inverse() const;
  BoundarySeries pow(long k) const;

  /// f(Z g) for a unit series g supported on one side of 0.
  BoundarySeries compose(const BoundarySeries& g) const;

  std::string to_string() const;

 private:
  void normalize();

  int p_;
  int N_;
  SeriesBounds b_;
  std::map<long, RamifiedElt> terms_;
};

/// min_i v(c_i) + i*rho over stored terms, after checking that the dropped
/// tails cannot go lower; PrecisionExhausted otherwise.
mpq_class gauss_valuation(const BoundarySeries& f, const mpq_class& rho);

/// h with h^m = f, for f = 1 + g principal.
BoundarySeries binomial_root_series(const BoundarySeries& f, long m);

enum class BoundaryKind { MultResidue, MultExact, Additive, DiskNormalForm };

std::string to_string(BoundaryKind kind);

struct BoundaryParams {
  BoundaryKind kind = BoundaryKind::MultResidue;
  long h = 1;  // MultResidue
  long m = 1;  // conductor
  long n = 1;  // level
};

/// Requested precision; a window bound of nullopt is sized automatically.
struct Precision {
  long V = 0;  // 0 means 4 N (p-1)
  std::optional<long> lo;
  std::optional<long> hi;
  long min_width = 20;
};

/// An order-p automorphism of a boundary, as the image of Z.
class BoundaryAutomorphism {
 public:
  BoundaryAutomorphism(int p, int N, BoundaryParams params, BoundarySeries ratio, long decide_lo,
                       long decide_hi)
      : p_(p), N_(N), params_(params), ratio_(std::move(ratio)), decide_lo_(decide_lo), decide_hi_(decide_hi) {}

  int p() const { return p_; }
  int N() const { return N_; }
  const BoundaryParams& params() const { return params_; }
  /// sigma Z / Z.
  const BoundarySeries& ratio() const { return ratio_; }
  /// sigma Z.
  BoundarySeries image() const { return ratio_.shifted(1); }
  /// Exponent range on which equalities are decided.
  long decide_lo() const { return decide_lo_; }
  long decide_hi() const { return decide_hi_; }

  /// f(sigma Z).
  BoundarySeries apply(const BoundarySeries& f) const { return f.compose(ratio_); }
  /// sigma Z / Z - 1.
  BoundarySeries displacement() const;

 private:
  int p_;
  int N_;
  BoundaryParams params_;
  BoundarySeries ratio_;
  long decide_lo_;
  long decide_hi_;
};

BoundaryAutomorphism boundary_automorphism(int p, int N, const BoundaryParams& params,
                                           const Precision& precision = {});

/// True iff sigma^p Z = Z on the window up to the valuation cutoff.
bool iterate_check_order_p(const BoundaryAutomorphism& sigma);

/// (p-1) v_eta(sigma Z / Z - 1).
long boundary_differente(const BoundaryAutomorphism& sigma);

std::vector<mpq_class> differente_profile(const BoundaryAutomorphism& sigma,
                                          const std::vector<mpq_class>& rhos);

/// m^{-1} mod p.
long inverse_mod(long m, long p);

}  // namespace hurwitz::field
