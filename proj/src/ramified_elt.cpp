#include <algorithm>
#include <utility>
#include <sstream>

#include "hurwitz/valued_field.hpp"

namespace hurwitz::field {

long padic_valuation(const mpq_class& x, unsigned long p) {
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class prime = p;
  long v = 0;
  if (num != 0) v += static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t()));
  return v;
}

long inverse_mod(long m, long p) {
  long a = ((m % p) + p) % p;
  if (a == 0) throw Error(ErrorCode::BadConductor, "m = " + std::to_string(m) + " is divisible by p");
  long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return ((t % p) + p) % p;
}

namespace {

// Determinant over Q by Gaussian elimination.
mpq_class determinant(std::vector<std::vector<mpq_class>> a) {
  const size_t n = a.size();
  mpq_class det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

// Solves a x = b; a must be invertible.
std::vector<mpq_class> solve(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::ZeroInput, "singular multiplication matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::optional<long> min_coeff_valuation(const std::vector<mpq_class>& c, int p) {
  std::optional<long> best;
  for (const auto& x : c) {
    if (x == 0) continue;
    long v = padic_valuation(x, static_cast<unsigned long>(p));
    if (!best || v < *best) best = v;
  }
  return best;
}

}  // namespace

// ---- CyclotomicElt ----

CyclotomicElt::CyclotomicElt(int p) : p_(p), c_(static_cast<size_t>(p - 1)) {}

CyclotomicElt::CyclotomicElt(int p, std::vector<mpq_class> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<size_t>(p - 1)) throw Error(ErrorCode::InvalidArgument, "cyclotomic coefficient count");
}

CyclotomicElt CyclotomicElt::zeta_power(int p, long k) {
  CyclotomicElt r(p);
  long e = ((k % p) + p) % p;
  if (e == p - 1) {
    for (auto& x : r.c_) x = -1;
  } else {
    r.c_[static_cast<size_t>(e)] = 1;
  }
  return r;
}

CyclotomicElt CyclotomicElt::from_rational(int p, const mpq_class& c) {
  CyclotomicElt r(p);
  r.c_[0] = c;
  return r;
}

bool CyclotomicElt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

CyclotomicElt CyclotomicElt::operator+(const CyclotomicElt& o) const {
  CyclotomicElt r(*this);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CyclotomicElt CyclotomicElt::operator-(const CyclotomicElt& o) const {
  CyclotomicElt r(*this);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicElt CyclotomicElt::operator-() const {
  CyclotomicElt r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicElt CyclotomicElt::operator*(const CyclotomicElt& o) const {
  const size_t d = c_.size();
  // Fold into Z[x]/(x^p - 1), then eliminate zeta^{p-1}.
  std::vector<mpq_class> full(static_cast<size_t>(p_));
  for (size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      full[(i + j) % static_cast<size_t>(p_)] += c_[i] * o.c_[j];
    }
  }
  CyclotomicElt r(p_);
  const mpq_class& top = full[d];
  for (size_t i = 0; i < d; ++i) r.c_[i] = full[i] - top;
  return r;
}

CyclotomicElt CyclotomicElt::operator*(const mpq_class& c) const {
  CyclotomicElt r(*this);
  for (auto& x : r.c_) x *= c;
  return r;
}

mpq_class CyclotomicElt::norm() const {
  const size_t d = c_.size();
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d));
  for (size_t j = 0; j < d; ++j) {
    CyclotomicElt col = *this * zeta_power(p_, static_cast<long>(j));
    for (size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
  }
  return determinant(std::move(m));
}

Valuation CyclotomicElt::lambda_valuation() const {
  if (is_zero()) return std::nullopt;
  return padic_valuation(norm(), static_cast<unsigned long>(p_));
}

Valuation CyclotomicElt::lambda_valuation_lower_bound() const {
  auto v = min_coeff_valuation(c_, p_);
  if (!v) return std::nullopt;
  return *v * (p_ - 1);
}

std::string CyclotomicElt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i > 0) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// ---- RamifiedElt ----

RamifiedElt::RamifiedElt(int p, int N) : p_(p), N_(N), a_(static_cast<size_t>(N), CyclotomicElt(p)) {
  if (p < 2 || N < 1) throw Error(ErrorCode::InvalidArgument, "need p >= 2 and N >= 1");
}

RamifiedElt::RamifiedElt(int p, int N, std::vector<CyclotomicElt> parts) : p_(p), N_(N), a_(std::move(parts)) {
  if (a_.size() != static_cast<size_t>(N)) throw Error(ErrorCode::InvalidArgument, "ramified part count");
}

RamifiedElt RamifiedElt::from_rational(int p, int N, const mpq_class& c) {
  RamifiedElt r(p, N);
  r.a_[0] = CyclotomicElt::from_rational(p, c);
  return r;
}

RamifiedElt RamifiedElt::from_cyclotomic(int N, const CyclotomicElt& a) {
  RamifiedElt r(a.p(), N);
  r.a_[0] = a;
  return r;
}

RamifiedElt RamifiedElt::zeta_power(int p, int N, long k) {
  return from_cyclotomic(N, CyclotomicElt::zeta_power(p, k));
}

RamifiedElt RamifiedElt::lambda(int p, int N) {
  return from_cyclotomic(N, CyclotomicElt::zeta_power(p, 1) - CyclotomicElt::from_rational(p, 1));
}

RamifiedElt RamifiedElt::pi_power(int p, int N, long k) {
  if (k < 0) return pi_power(p, N, -k).inverse();
  // pi^k = lambda^{k / N} pi^{k mod N}
  CyclotomicElt lam = CyclotomicElt::zeta_power(p, 1) - CyclotomicElt::from_rational(p, 1);
  CyclotomicElt acc = CyclotomicElt::from_rational(p, 1);
  for (long i = 0; i < k / N; ++i) acc = acc * lam;
  RamifiedElt r(p, N);
  r.a_[static_cast<size_t>(k % N)] = acc;
  return r;
}

bool RamifiedElt::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const CyclotomicElt& x) { return x.is_zero(); });
}

void RamifiedElt::check_compatible(const RamifiedElt& o) const {
  if (p_ != o.p_ || N_ != o.N_) throw Error(ErrorCode::InvalidArgument, "elements of different fields");
}

RamifiedElt RamifiedElt::operator+(const RamifiedElt& o) const {
  RamifiedElt r(*this);
  r += o;
  return r;
}

RamifiedElt& RamifiedElt::operator+=(const RamifiedElt& o) {
  check_compatible(o);
  for (size_t j = 0; j < a_.size(); ++j) a_[j] = a_[j] + o.a_[j];
  return *this;
}

RamifiedElt RamifiedElt::operator-(const RamifiedElt& o) const {
  check_compatible(o);
  RamifiedElt r(*this);
  for (size_t j = 0; j < a_.size(); ++j) r.a_[j] = r.a_[j] - o.a_[j];
  return r;
}

RamifiedElt RamifiedElt::operator-() const {
  RamifiedElt r(*this);
  for (auto& x : r.a_) x = -x;
  return r;
}

RamifiedElt RamifiedElt::operator*(const RamifiedElt& o) const {
  check_compatible(o);
  const size_t n = a_.size();
  std::vector<CyclotomicElt> low(n, CyclotomicElt(p_)), high(n, CyclotomicElt(p_));
  bool any_high = false;
  for (size_t j = 0; j < n; ++j) {
    if (a_[j].is_zero()) continue;
    for (size_t k = 0; k < n; ++k) {
      if (o.a_[k].is_zero()) continue;
      CyclotomicElt prod = a_[j] * o.a_[k];
      if (j + k < n) {
        low[j + k] = low[j + k] + prod;
      } else {
        high[j + k - n] = high[j + k - n] + prod;
        any_high = true;
      }
    }
  }
  if (any_high) {
    CyclotomicElt lam = CyclotomicElt::zeta_power(p_, 1) - CyclotomicElt::from_rational(p_, 1);
    for (size_t l = 0; l < n; ++l) {
      if (!high[l].is_zero()) low[l] = low[l] + high[l] * lam;
    }
  }
  return RamifiedElt(p_, N_, std::move(low));
}

RamifiedElt RamifiedElt::operator*(const mpq_class& c) const {
  RamifiedElt r(*this);
  for (auto& x : r.a_) x = x * c;
  return r;
}

bool RamifiedElt::operator==(const RamifiedElt& o) const {
  return p_ == o.p_ && N_ == o.N_ && a_ == o.a_;
}

RamifiedElt RamifiedElt::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of zero");
  const size_t d = static_cast<size_t>(p_ - 1);
  const size_t dim = d * static_cast<size_t>(N_);
  std::vector<std::vector<mpq_class>> m(dim, std::vector<mpq_class>(dim));
  for (size_t j = 0; j < static_cast<size_t>(N_); ++j) {
    for (size_t i = 0; i < d; ++i) {
      RamifiedElt basis(p_, N_);
      basis.a_[j] = CyclotomicElt::zeta_power(p_, static_cast<long>(i));
      RamifiedElt col = *this * basis;
      for (size_t jj = 0; jj < static_cast<size_t>(N_); ++jj)
        for (size_t ii = 0; ii < d; ++ii) m[ii + d * jj][i + d * j] = col.a_[jj].coeffs()[ii];
    }
  }
  std::vector<mpq_class> rhs(dim);
  rhs[0] = 1;
  auto sol = solve(std::move(m), std::move(rhs));
  RamifiedElt r(p_, N_);
  for (size_t j = 0; j < static_cast<size_t>(N_); ++j) {
    std::vector<mpq_class> c(sol.begin() + static_cast<long>(d * j), sol.begin() + static_cast<long>(d * (j + 1)));
    r.a_[j] = CyclotomicElt(p_, std::move(c));
  }
  return r;
}

RamifiedElt RamifiedElt::pruned(long V) const {
  RamifiedElt r(*this);
  const long unit = static_cast<long>(N_) * (p_ - 1);
  for (size_t j = 0; j < a_.size(); ++j) {
    std::vector<mpq_class> c = a_[j].coeffs();
    bool changed = false;
    for (auto& x : c) {
      if (x == 0) continue;
      if (unit * padic_valuation(x, static_cast<unsigned long>(p_)) + static_cast<long>(j) >= V) {
        x = 0;
        changed = true;
      }
    }
    if (changed) r.a_[j] = CyclotomicElt(p_, std::move(c));
  }
  return r;
}

Valuation RamifiedElt::valuation_lower_bound() const {
  Valuation best;
  for (size_t j = 0; j < a_.size(); ++j) {
    auto v = a_[j].lambda_valuation_lower_bound();
    if (!v) continue;
    long w = static_cast<long>(N_) * *v + static_cast<long>(j);
    if (!best || w < *best) best = w;
  }
  return best;
}

std::string RamifiedElt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < a_.size(); ++j) {
    if (a_[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << a_[j].to_string() << "]";
    if (j > 0) os << "*pi^" << j;
  }
  if (first) os << "0";
  return os.str();
}

Valuation valuation(const RamifiedElt& x) {
  Valuation best;
  for (size_t j = 0; j < x.parts().size(); ++j) {
    auto v = x.parts()[j].lambda_valuation();
    if (!v) continue;
    long w = static_cast<long>(x.N()) * *v + static_cast<long>(j);
    if (!best || w < *best) best = w;
  }
  return best;
}

}  // namespace hurwitz::field
