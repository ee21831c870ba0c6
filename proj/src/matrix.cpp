#include "ekrlab/matrix.hpp"

namespace ekrlab {

Mat mat_identity(const Field& F, int n) {
  Mat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.at(i, i) = F.one();
  return m;
}

Mat mat_mul(const Field& F, const Mat& a, const Mat& b) {
  Mat out;
  out.n = a.n;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      Fe s = F.zero();
      for (int l = 0; l < a.n; ++l) s = F.add(s, F.mul(a.at(i, l), b.at(l, j)));
      out.at(i, j) = s;
    }
  return out;
}

Vec mat_vec(const Field& F, const Mat& a, const Vec& v) {
  Vec out;
  out.n = a.n;
  for (int i = 0; i < a.n; ++i) {
    Fe s = F.zero();
    for (int l = 0; l < a.n; ++l) s = F.add(s, F.mul(a.at(i, l), v.c[(std::size_t)l]));
    out.c[(std::size_t)i] = s;
  }
  return out;
}

Fe mat_det(const Field& F, const Mat& a) {
  if (a.n == 2)
    return F.sub(F.mul(a.at(0, 0), a.at(1, 1)), F.mul(a.at(0, 1), a.at(1, 0)));
  // 3x3 cofactor expansion along the first row.
  Fe m00 = F.sub(F.mul(a.at(1, 1), a.at(2, 2)), F.mul(a.at(1, 2), a.at(2, 1)));
  Fe m01 = F.sub(F.mul(a.at(1, 0), a.at(2, 2)), F.mul(a.at(1, 2), a.at(2, 0)));
  Fe m02 = F.sub(F.mul(a.at(1, 0), a.at(2, 1)), F.mul(a.at(1, 1), a.at(2, 0)));
  Fe d = F.mul(a.at(0, 0), m00);
  d = F.sub(d, F.mul(a.at(0, 1), m01));
  return F.add(d, F.mul(a.at(0, 2), m02));
}

Fe mat_trace(const Field& F, const Mat& a) {
  Fe t = F.zero();
  for (int i = 0; i < a.n; ++i) t = F.add(t, a.at(i, i));
  return t;
}

Mat mat_inv(const Field& F, const Mat& a) {
  Fe d = mat_det(F, a);
  if (d.idx == 0) throw Error(Errc::SingularMatrix, "matrix is singular");
  Fe di = F.inv(d);
  Mat out;
  out.n = a.n;
  if (a.n == 2) {
    out.at(0, 0) = F.mul(di, a.at(1, 1));
    out.at(0, 1) = F.mul(di, F.neg(a.at(0, 1)));
    out.at(1, 0) = F.mul(di, F.neg(a.at(1, 0)));
    out.at(1, 1) = F.mul(di, a.at(0, 0));
    return out;
  }
  // Adjugate: transposed cofactors.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // Cofactor with the sign folded in by the cyclic index choice.
      Fe cof = F.sub(F.mul(a.at(r0, c0), a.at(r1, c1)), F.mul(a.at(r0, c1), a.at(r1, c0)));
      out.at(j, i) = F.mul(di, cof);
    }
  return out;
}

std::vector<Fe> char_poly(const Field& F, const Mat& a) {
  Fe det = mat_det(F, a);
  Fe tr = mat_trace(F, a);
  if (a.n == 2) return {det, F.neg(tr), F.one()};
  // det(xI - A) = x^3 - tr x^2 + m x - det, m = sum of principal 2x2 minors.
  Fe m = F.zero();
  for (int i = 0; i < 3; ++i) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    m = F.add(m, F.sub(F.mul(a.at(r0, r0), a.at(r1, r1)), F.mul(a.at(r0, r1), a.at(r1, r0))));
  }
  return {F.neg(det), m, F.neg(tr), F.one()};
}

bool has_eigenvalue_one(const Field& F, const Mat& a) {
  return F.poly_eval(char_poly(F, a), F.one()).idx == 0;
}

std::vector<Vec> fixed_points(const Field& F, const Mat& a) {
  std::vector<Vec> out;
  for (const Vec& v : nonzero_vectors(F, a.n))
    if (mat_vec(F, a, v) == v) out.push_back(v);
  return out;
}

bool is_scalar(const Mat& a) {
  Fe d = a.at(0, 0);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      if (i == j ? !(a.at(i, j) == d) : a.at(i, j).idx != 0) return false;
    }
  return true;
}

bool is_diagonalizable(const Field& F, const Mat& a) {
  if (a.n != 2) throw Error(Errc::DomainError, "diagonalizability test implemented for n = 2 only");
  if (is_scalar(a)) return true;
  std::vector<Fe> roots = F.poly_roots(char_poly(F, a));
  return roots.size() == 2 && !(roots[0] == roots[1]);
}

Mat conjugate(const Field& F, const Mat& a, const Mat& p) {
  return mat_mul(F, mat_mul(F, mat_inv(F, p), a), p);
}

std::vector<Vec> nonzero_vectors(const Field& F, int n) {
  std::uint32_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  std::vector<Vec> out;
  out.reserve(total - 1);
  for (std::uint32_t code = 1; code < total; ++code) out.push_back(vec_decode(F, n, code));
  return out;
}

std::uint32_t vec_encode(const Field& F, const Vec& v) {
  std::uint32_t code = 0;
  for (int i = 0; i < v.n; ++i) code = code * F.q() + v.c[(std::size_t)i].idx;
  return code;
}

Vec vec_decode(const Field& F, int n, std::uint32_t code) {
  Vec v;
  v.n = n;
  for (int i = n - 1; i >= 0; --i) {
    v.c[(std::size_t)i] = Fe{code % F.q()};
    code /= F.q();
  }
  return v;
}

}  // namespace ekrlab
