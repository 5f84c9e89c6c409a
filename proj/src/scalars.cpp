#include "cherednik/scalars.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>

#include "cherednik/errors.hpp"

namespace cherednik {

namespace {

std::atomic<int> g_max_order{120};

void check_order(long n) {
  if (n < 1) throw InvalidInput("cyclotomic order must be positive, got " + std::to_string(n));
  if (n > g_max_order.load()) {
    throw InvalidInput("cyclotomic order " + std::to_string(n) + " exceeds the configured limit " +
                       std::to_string(g_max_order.load()));
  }
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

int max_cyclotomic_order() { return g_max_order.load(); }
void set_max_cyclotomic_order(int limit) { g_max_order.store(limit); }

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

long lcm_order(long a, long b) { return std::lcm(a, b); }

const std::vector<Integer>& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Integer>> cache;
  check_order(n);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact over Z.
  std::vector<Integer> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    const int dn = static_cast<int>(num.size()) - 1;
    const int dd = static_cast<int>(den.size()) - 1;
    std::vector<Integer> quot(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
      Integer c = num[i];  // den is monic
      quot[i - dd] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(num)).first->second;
}

namespace rational_poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void divide(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  Poly bb = b;
  trim(bb);
  if (bb.empty()) throw InvalidInput("polynomial division by zero");
  remainder = a;
  trim(remainder);
  quotient.assign(remainder.size() >= bb.size() ? remainder.size() - bb.size() + 1 : 0, 0);
  const Rational lead = bb.back();
  while (!remainder.empty() && remainder.size() >= bb.size()) {
    const std::size_t shift = remainder.size() - bb.size();
    Rational c = remainder.back() / lead;
    quotient[shift] = c;
    for (std::size_t j = 0; j < bb.size(); ++j) remainder[shift + j] -= c * bb[j];
    remainder.pop_back();
    trim(remainder);
  }
  trim(quotient);
}

}  // namespace rational_poly

Cyclo::Cyclo() : order_(1), coeffs_(1, 0) {}

Cyclo::Cyclo(long value) : order_(1), coeffs_(1, Rational(value)) {}

Cyclo::Cyclo(const Rational& value, int order) : order_(order) {
  check_order(order);
  coeffs_.assign(euler_phi(order), 0);
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

Cyclo Cyclo::from_coefficients(int order, std::vector<Rational> coeffs) {
  check_order(order);
  Cyclo out;
  out.order_ = order;
  out.coeffs_ = std::move(coeffs);
  out.reduce();
  return out;
}

Cyclo Cyclo::root(int order, long k) {
  check_order(order);
  long e = k % order;
  if (e < 0) e += order;
  std::vector<Rational> coeffs(e + 1, 0);
  coeffs[e] = 1;
  return from_coefficients(order, std::move(coeffs));
}

void Cyclo::reduce() {
  const auto& phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  for (auto& c : coeffs_) c.canonicalize();
  for (std::size_t i = coeffs_.size(); i-- > deg;) {
    if (coeffs_[i] == 0) continue;
    const Rational c = coeffs_[i];
    for (std::size_t j = 0; j <= deg; ++j) coeffs_[i - deg + j] -= c * Rational(phi[j]);
  }
  coeffs_.resize(deg, 0);
}

bool Cyclo::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Cyclo::rational_value() const {
  if (!is_rational()) throw InvalidInput("value " + to_string() + " is not rational");
  return coeffs_[0];
}

Cyclo Cyclo::embed(int target_order) const {
  check_order(target_order);
  if (target_order % order_ != 0) {
    throw InvalidInput("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                       std::to_string(target_order) + ")");
  }
  if (target_order == order_) return *this;
  const long step = target_order / order_;
  // zeta_N = zeta_M^{M/N}
  std::vector<Rational> out(static_cast<std::size_t>(step) * (coeffs_.size() - 1) + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * step] = coeffs_[i];
  return from_coefficients(target_order, std::move(out));
}

int Cyclo::common_order(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.order_;
  if (a.order_ == 1) return b.order_;
  if (b.order_ == 1) return a.order_;
  throw InvalidInput("mixed cyclotomic orders " + std::to_string(a.order_) + " and " +
                     std::to_string(b.order_) + " require an explicit embed");
}

Cyclo Cyclo::operator-() const {
  Cyclo out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclo& Cyclo::operator+=(const Cyclo& rhs) {
  const int n = common_order(*this, rhs);
  if (order_ != n) *this = embed(n);
  if (rhs.order_ != n) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& rhs) {
  const int n = common_order(*this, rhs);
  if (order_ != n) *this = embed(n);
  if (rhs.order_ != n) {
    coeffs_[0] -= rhs.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& rhs) {
  const int n = common_order(*this, rhs);
  if (rhs.order_ != n || rhs.coeffs_.size() == 1) {
    const Rational s = rhs.coeffs_[0];
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  if (order_ != n || coeffs_.size() == 1) {
    const Rational s = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  std::vector<Rational> prod(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(prod);
  reduce();
  return *this;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw InvalidInput("division by zero");
  if (coeffs_.size() == 1) return Cyclo::from_coefficients(order_, {Rational(1) / coeffs_[0]});
  // Extended Euclid on (a, Phi_N): s*a + t*Phi = 1, so s = a^{-1} mod Phi.
  using rational_poly::Poly;
  const auto& phi_int = cyclotomic_polynomial(order_);
  Poly phi(phi_int.begin(), phi_int.end());
  Poly r0 = phi, r1 = coeffs_;
  rational_poly::trim(r1);
  Poly s0 = {}, s1 = {Rational(1)};
  while (!(r1.size() == 1)) {
    Poly q, r;
    rational_poly::divide(r0, r1, q, r);
    Poly qs = rational_poly::multiply(q, s1);
    Poly s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    rational_poly::trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw InternalInconsistency("cyclotomic inverse: gcd is not constant");
  }
  const Rational scale = Rational(1) / r1[0];
  for (auto& c : s1) c *= scale;
  return from_coefficients(order_, std::move(s1));
}

Cyclo& Cyclo::operator/=(const Cyclo& rhs) {
  common_order(*this, rhs);
  return *this *= rhs.inverse();
}

Cyclo Cyclo::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Cyclo result = Cyclo(Rational(1), order_);
  Cyclo base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
  const int n = static_cast<int>(lcm_order(a.order_, b.order_));
  if (n > max_cyclotomic_order()) return false;
  return a.embed(n).coeffs_ == b.embed(n).coeffs_;
}

bool lexicographic_less(const Cyclo& a, const Cyclo& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.coefficients() < b.coefficients();
}

std::string Cyclo::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string term;
    if (i == 0) {
      term = cherednik::to_string(mag);
    } else {
      std::string base = "z" + std::to_string(order_);
      if (i > 1) base += "^" + std::to_string(i);
      term = mag == 1 ? base : cherednik::to_string(mag) + "*" + base;
    }
    if (first) {
      out = negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return first ? "0" : out;
}

}  // namespace cherednik
