#include "ekrlab/geometry.hpp"

#include <algorithm>

#include "ekrlab/group.hpp"

namespace ekrlab {
namespace {

Vec normalize_dir(const Field& F, const Vec& dir) {
  if (dir.is_zero()) throw Error(Errc::ZeroDirection, "line direction must be nonzero");
  Vec out = dir;
  for (int i = 0; i < dir.n; ++i) {
    if (out.c[(std::size_t)i].idx != 0) {
      Fe s = F.inv(out.c[(std::size_t)i]);
      for (int j = 0; j < dir.n; ++j) out.c[(std::size_t)j] = F.mul(s, out.c[(std::size_t)j]);
      return out;
    }
  }
  return out;
}

}  // namespace

Plane::Plane(const Field& F) : F_(F) {
  const std::uint32_t q = F.q();
  if (q > 256)
    throw Error(Errc::BoundExceeded, "line index cache is capped at q <= 256");
  o1_.reserve(q + 1);
  for (std::uint32_t m = 0; m < q; ++m) {
    ProjLine l;
    l.dir = Vec{2, {F.one(), Fe{m}}};
    l.index = m;
    o1_.push_back(l);
  }
  o1_.push_back(ProjLine{Vec{2, {F.zero(), F.one()}}, q});

  o2_.reserve((std::size_t)(q - 1) * (q + 1));
  for (const ProjLine& d : o1_) {
    // Nonzero cosets of span(dir). Canonical offsets come out in
    // lexicographic order by construction: (0,c) for slope lines, (c,0) for
    // the vertical one, c ascending.
    for (std::uint32_t c = 1; c < q; ++c) {
      AffLine l;
      l.dir = d;
      l.offset = d.dir.c[0].idx != 0 ? Vec{2, {F.zero(), Fe{c}}} : Vec{2, {Fe{c}, F.zero()}};
      l.index = d.index * (q - 1) + (c - 1);
      o2_.push_back(l);
    }
  }
}

ProjLine Plane::proj_line_of(const Vec& dir) const {
  Vec nd = normalize_dir(F_, dir);
  if (nd.c[0].idx == 1) return o1_[nd.c[1].idx];
  return o1_[F_.q()];  // normalized [0,1]
}

AffLine Plane::aff_line_through(const Vec& dir, const Vec& point) const {
  ProjLine d = proj_line_of(dir);
  const std::uint32_t q = F_.q();
  // Invariant of the coset point + span(dir): for slope lines y - m*x, for
  // the vertical line x. Zero means the line passes through the origin.
  Fe c;
  if (d.index < q) {
    Fe m = d.dir.c[1];
    c = F_.sub(point.c[1], F_.mul(m, point.c[0]));
  } else {
    c = point.c[0];
  }
  if (c.idx == 0)
    throw Error(Errc::DomainError, "line passes through the origin; not an origin-avoiding line");
  return o2_[(std::size_t)d.index * (q - 1) + (c.idx - 1)];
}

ProjLine Plane::line_image(const Mat& a, const ProjLine& l) const {
  return proj_line_of(mat_vec(F_, a, l.dir));
}

AffLine Plane::line_image(const Mat& a, const AffLine& l) const {
  Vec dir = mat_vec(F_, a, l.dir.dir);
  Vec pt = mat_vec(F_, a, l.offset);
  return aff_line_through(dir, pt);
}

std::vector<Vec> Plane::points_of(const ProjLine& l) const {
  std::vector<Vec> out;
  out.reserve(F_.q());
  for (Fe t : F_.elements())
    out.push_back(Vec{2, {F_.mul(t, l.dir.c[0]), F_.mul(t, l.dir.c[1])}});
  return out;
}

std::vector<Vec> Plane::points_of(const AffLine& l) const {
  std::vector<Vec> out;
  out.reserve(F_.q());
  for (Fe t : F_.elements())
    out.push_back(Vec{2,
                      {F_.add(l.offset.c[0], F_.mul(t, l.dir.dir.c[0])),
                       F_.add(l.offset.c[1], F_.mul(t, l.dir.dir.c[1]))}});
  return out;
}

Plane::ParallelClass Plane::parallel_class(const ProjLine& l) const {
  ParallelClass out;
  out.through_origin = l;
  const std::uint32_t q = F_.q();
  out.parallels.reserve(q - 1);
  for (std::uint32_t c = 1; c < q; ++c)
    out.parallels.push_back(o2_[(std::size_t)l.index * (q - 1) + (c - 1)]);
  return out;
}

std::vector<EigenLine> eigen_lines(const Field& F, const Plane& plane, const Mat& a) {
  if (a.n != 2) throw Error(Errc::DomainError, "eigenline computation implemented for n = 2 only");
  std::vector<EigenLine> out;
  std::vector<Fe> roots = F.poly_roots(char_poly(F, a));
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (Fe lam : roots) {
    EigenLine el;
    el.value = lam;
    // Kernel of (A - lam I). For a singular nonzero 2x2 matrix [[a,b],[c,d]]
    // the kernel is spanned by (b,-a), or (d,-c) if the first row vanishes.
    Fe a00 = F.sub(a.at(0, 0), lam), a01 = a.at(0, 1);
    Fe a10 = a.at(1, 0), a11 = F.sub(a.at(1, 1), lam);
    if (a00.idx == 0 && a01.idx == 0 && a10.idx == 0 && a11.idx == 0) {
      el.whole_space = true;
    } else if (a00.idx != 0 || a01.idx != 0) {
      el.line = plane.proj_line_of(Vec{2, {a01, F.neg(a00)}});
    } else {
      el.line = plane.proj_line_of(Vec{2, {a11, F.neg(a10)}});
    }
    out.push_back(el);
  }
  return out;
}

std::vector<GlElem> line_stabilizer(const GroupTable& G, const AffLine& l) {
  std::vector<GlElem> out;
  const Plane& plane = G.plane();
  for (std::uint32_t id = 0; id < G.size(); ++id) {
    const Mat& m = G.element(id);
    if (plane.line_image(m, l) == l) out.push_back(GlElem{m, id});
  }
  return out;
}

}  // namespace ekrlab
