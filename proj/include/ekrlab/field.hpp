#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekrlab/error.hpp"

namespace ekrlab {

// Element of GF(p^k), identified by the base-p digit encoding of its residue
// polynomial: idx = sum of c_i * p^i where the residue is c_0 + c_1 x + ...
// Index 0 is the additive identity and index 1 the multiplicative identity.
// An Fe is only meaningful together with the Field that produced it.
struct Fe {
  std::uint32_t idx = 0;
  friend constexpr bool operator==(Fe a, Fe b) { return a.idx == b.idx; }
  friend constexpr bool operator<(Fe a, Fe b) { return a.idx < b.idx; }
};

// Arithmetic context for GF(p^k). Construction is deterministic: when no
// modulus is supplied, the lexicographically smallest monic irreducible of
// degree k is selected, comparing coefficient tuples (c_0, ..., c_{k-1})
// low degree first. GF(4) therefore always uses x^2 + x + 1.
// For k = 1 the modulus is the placeholder x (coefficients {0, 1}) and the
// arithmetic is plain mod-p.
class Field {
 public:
  static constexpr std::uint64_t kDefaultQBound = 1u << 16;

  static Field make(std::uint32_t p, std::uint32_t k,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                    std::uint64_t q_bound = kDefaultQBound);

  // Factors q = p^k. Throws NonPrime when q is not a prime power.
  static Field from_order(std::uint32_t q, std::uint64_t q_bound = kDefaultQBound);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Monic modulus, k+1 coefficients, low degree first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }
  Fe element(std::uint32_t idx) const;

  Fe add(Fe a, Fe b) const;
  Fe neg(Fe a) const;
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const;
  Fe inv(Fe a) const;  // DivisionByZero on 0
  Fe pow(Fe a, long long n) const;

  std::vector<Fe> elements() const;  // ascending idx, q entries
  std::vector<Fe> units() const;     // ascending idx, q-1 entries

  Fe poly_eval(const std::vector<Fe>& coeffs, Fe x) const;
  // Roots in GF(q) with multiplicity, ascending idx. Multiplicities are
  // obtained by repeated synthetic division. Throws ZeroPolynomial when all
  // coefficients vanish (or the list is empty).
  std::vector<Fe> poly_roots(const std::vector<Fe>& coeffs) const;

  // "GF(p)" for prime fields, "GF(p^k;c0,c1,...,ck)" otherwise.
  std::string to_string() const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

  // A default-constructed Field (q = 0) is an empty placeholder to assign
  // over; every usable instance comes from make() or from_order().
  Field() = default;

 private:
  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  // Dense op tables, built when q <= 256. Arithmetic behaves identically
  // without them; they only change the constant factor.
  std::vector<std::uint16_t> mul_table_, add_table_;
  std::vector<std::uint16_t> inv_table_;

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
};

}  // namespace ekrlab
