#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ekrlab/field.hpp"

namespace ekrlab {

// Column vector with n in {2, 3}.
struct Vec {
  int n = 2;
  std::array<Fe, 3> c{};

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (!(a.c[i] == b.c[i])) return false;
    return true;
  }
  // Lexicographic by coordinate index; this is the canonical point order.
  friend bool operator<(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.n; ++i) {
      if (a.c[i].idx != b.c[i].idx) return a.c[i].idx < b.c[i].idx;
    }
    return false;
  }
  bool is_zero() const {
    for (int i = 0; i < n; ++i)
      if (c[i].idx != 0) return false;
    return true;
  }
};

// Row-major square matrix with n in {2, 3}.
struct Mat {
  int n = 2;
  std::array<Fe, 9> e{};

  Fe& at(int i, int j) { return e[(std::size_t)(i * n + j)]; }
  Fe at(int i, int j) const { return e[(std::size_t)(i * n + j)]; }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n * a.n; ++i)
      if (!(a.e[(std::size_t)i] == b.e[(std::size_t)i])) return false;
    return true;
  }
  // Row-major lexicographic by entry index; group elements are enumerated in
  // this order, so it doubles as the id order.
  friend bool operator<(const Mat& a, const Mat& b) {
    for (int i = 0; i < a.n * a.n; ++i) {
      auto x = a.e[(std::size_t)i].idx, y = b.e[(std::size_t)i].idx;
      if (x != y) return x < y;
    }
    return false;
  }
};

// Group element: matrix plus its canonical enumeration id.
struct GlElem {
  Mat mat;
  std::uint32_t id = 0;
};

Mat mat_identity(const Field& F, int n);
Mat mat_mul(const Field& F, const Mat& a, const Mat& b);
Vec mat_vec(const Field& F, const Mat& a, const Vec& v);
Fe mat_det(const Field& F, const Mat& a);
Fe mat_trace(const Field& F, const Mat& a);
Mat mat_inv(const Field& F, const Mat& a);  // SingularMatrix when det = 0
// Coefficients of det(xI - A), low degree first, n+1 entries, monic.
std::vector<Fe> char_poly(const Field& F, const Mat& a);
bool has_eigenvalue_one(const Field& F, const Mat& a);
// All nonzero v with Av = v, in canonical point order.
std::vector<Vec> fixed_points(const Field& F, const Mat& a);
// True iff A is scalar or has n distinct eigenvalues in GF(q). Only n = 2.
bool is_diagonalizable(const Field& F, const Mat& a);
bool is_scalar(const Mat& a);
Mat conjugate(const Field& F, const Mat& a, const Mat& p);  // P^-1 A P

// Nonzero vectors of GF(q)^n in canonical order, and the rank of a vector in
// that order. These define the point set the group acts on.
std::vector<Vec> nonzero_vectors(const Field& F, int n);
std::uint32_t vec_encode(const Field& F, const Vec& v);  // base-q digits, c[0] most significant
Vec vec_decode(const Field& F, int n, std::uint32_t code);

}  // namespace ekrlab
