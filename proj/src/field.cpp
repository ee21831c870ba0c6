#include "ekrlab/field.hpp"

#include <algorithm>
#include <sstream>

namespace ekrlab {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors, low degree first, used only
// during construction (modulus selection and irreducibility checking).
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f mod g, g monic.
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dg; ++i) {
        std::uint64_t cur = f[shift + i];
        std::uint64_t s = (std::uint64_t)lead * g[i] % p;
        f[shift + i] = (std::uint32_t)((cur + p - s) % p);
      }
    }
    f.pop_back();
    trim(f);
    if (f.size() <= dg) break;
  }
  return f;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t t = m;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = (std::uint32_t)(t % p);
        t /= p;
      }
      Poly r = poly_rem(f, g, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field Field::make(std::uint32_t p, std::uint32_t k,
                  std::optional<std::vector<std::uint32_t>> modulus,
                  std::uint64_t q_bound) {
  if (!is_prime(p)) throw Error(Errc::NonPrime, "p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw Error(Errc::DomainError, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > q_bound)
      throw Error(Errc::BoundExceeded,
                  "field order exceeds bound " + std::to_string(q_bound));
  }

  Field f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = (std::uint32_t)q;

  if (modulus) {
    Poly m = *modulus;
    if (m.size() != k + 1)
      throw Error(Errc::DomainError, "modulus must have exactly k+1 coefficients");
    for (auto c : m)
      if (c >= p) throw Error(Errc::DomainError, "modulus coefficient out of range");
    if (m.back() != 1) throw Error(Errc::DomainError, "modulus must be monic");
    if (!is_irreducible(m, p))
      throw Error(Errc::ReduciblePolynomial, "modulus is reducible over GF(" + std::to_string(p) + ")");
    f.modulus_ = std::move(m);
  } else if (k == 1) {
    f.modulus_ = {0, 1};
  } else {
    // Scan monic degree-k polynomials in ascending lexicographic order of
    // (c_0, ..., c_{k-1}) and take the first irreducible one.
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= p;
    bool found = false;
    for (std::uint64_t m = 0; m < total && !found; ++m) {
      Poly cand(k + 1, 0);
      cand[k] = 1;
      std::uint64_t t = m;
      for (std::uint32_t i = 0; i < k; ++i) {
        cand[k - 1 - i] = (std::uint32_t)(t % p);
        t /= p;
      }
      if (is_irreducible(cand, p)) {
        f.modulus_ = std::move(cand);
        found = true;
      }
    }
    if (!found)
      throw Error(Errc::ReduciblePolynomial, "no irreducible polynomial found");  // unreachable
  }

  if (f.q_ <= 256) {
    f.add_table_.resize((std::size_t)f.q_ * f.q_);
    f.mul_table_.resize((std::size_t)f.q_ * f.q_);
    f.inv_table_.assign(f.q_, 0);
    for (std::uint32_t a = 0; a < f.q_; ++a)
      for (std::uint32_t b = 0; b < f.q_; ++b) {
        f.add_table_[(std::size_t)a * f.q_ + b] = (std::uint16_t)f.add_slow(a, b);
        std::uint32_t m = f.mul_slow(a, b);
        f.mul_table_[(std::size_t)a * f.q_ + b] = (std::uint16_t)m;
        if (m == 1) f.inv_table_[a] = (std::uint16_t)b;
      }
  }
  return f;
}

Field Field::from_order(std::uint32_t q, std::uint64_t q_bound) {
  if (q < 2) throw Error(Errc::NonPrime, std::to_string(q) + " is not a prime power");
  std::uint32_t p = q;
  for (std::uint32_t d = 2; (std::uint64_t)d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t k = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1)
    throw Error(Errc::NonPrime, std::to_string(q) + " is not a prime power");
  return make(p, k, std::nullopt, q_bound);
}

Fe Field::element(std::uint32_t idx) const {
  if (idx >= q_) throw Error(Errc::DomainError, "element index out of range");
  return Fe{idx};
}

std::uint32_t Field::add_slow(std::uint32_t a, std::uint32_t b) const {
  // Digitwise sum mod p of the base-p encodings.
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    out += ((da + db) % p_) * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return (std::uint32_t)((std::uint64_t)a * b % p_);
  std::uint32_t da[32], db[32];
  std::uint64_t prod[63] = {0};
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i)
    if (da[i])
      for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] += (std::uint64_t)da[i] * db[j];
  // Reduce mod the monic modulus.
  for (int i = 2 * (int)k_ - 2; i >= (int)k_; --i) {
    std::uint64_t c = prod[i] % p_;
    if (c == 0) continue;
    // prod -= c * x^(i-k) * modulus ; add (p - coeff) to stay nonnegative
    for (std::uint32_t j = 0; j <= k_; ++j)
      prod[i - k_ + j] += c * (p_ - modulus_[j] % p_);
  }
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += (std::uint32_t)(prod[i] % p_) * mult;
    mult *= p_;
  }
  return out;
}

Fe Field::add(Fe a, Fe b) const {
  if (!add_table_.empty()) return Fe{add_table_[(std::size_t)a.idx * q_ + b.idx]};
  return Fe{add_slow(a.idx, b.idx)};
}

Fe Field::neg(Fe a) const {
  std::uint32_t out = 0, mult = 1, v = a.idx;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = v % p_;
    out += ((p_ - d) % p_) * mult;
    v /= p_;
    mult *= p_;
  }
  return Fe{out};
}

Fe Field::mul(Fe a, Fe b) const {
  if (!mul_table_.empty()) return Fe{mul_table_[(std::size_t)a.idx * q_ + b.idx]};
  return Fe{mul_slow(a.idx, b.idx)};
}

Fe Field::inv(Fe a) const {
  if (a.idx == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (!inv_table_.empty()) return Fe{inv_table_[a.idx]};
  return pow(a, (long long)q_ - 2);
}

Fe Field::pow(Fe a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Fe acc = one();
  Fe base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

std::vector<Fe> Field::elements() const {
  std::vector<Fe> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Fe{i};
  return out;
}

std::vector<Fe> Field::units() const {
  std::vector<Fe> out(q_ - 1);
  for (std::uint32_t i = 1; i < q_; ++i) out[i - 1] = Fe{i};
  return out;
}

Fe Field::poly_eval(const std::vector<Fe>& coeffs, Fe x) const {
  Fe acc = zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

std::vector<Fe> Field::poly_roots(const std::vector<Fe>& coeffs) const {
  std::vector<Fe> f = coeffs;
  while (!f.empty() && f.back().idx == 0) f.pop_back();
  if (f.empty()) throw Error(Errc::ZeroPolynomial, "zero polynomial has every element as a root");

  std::vector<Fe> roots;
  for (std::uint32_t i = 0; i < q_ && f.size() > 1; ++i) {
    Fe r{i};
    while (f.size() > 1 && poly_eval(f, r).idx == 0) {
      // Synthetic division by (x - r): quotient coefficients top down.
      std::vector<Fe> g(f.size() - 1);
      Fe carry = f.back();
      for (std::size_t j = f.size() - 1; j-- > 0;) {
        g[j] = carry;
        carry = add(f[j], mul(carry, r));
      }
      f = std::move(g);
      roots.push_back(r);
    }
  }
  return roots;
}

std::string Field::to_string() const {
  std::ostringstream os;
  if (k_ == 1) {
    os << "GF(" << p_ << ")";
  } else {
    os << "GF(" << p_ << "^" << k_ << ";";
    for (std::uint32_t i = 0; i <= k_; ++i) {
      if (i) os << ",";
      os << modulus_[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace ekrlab
