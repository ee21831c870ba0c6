#include "ekrlab/ekr.hpp"

#include <algorithm>
#include <string>

namespace ekrlab {

bool is_derangement(const Field& F, const Mat& g) { return !has_eigenvalue_one(F, g); }

bool intersects(const Field& F, const Mat& g, const Mat& h) {
  return has_eigenvalue_one(F, mat_mul(F, mat_inv(F, g), h));
}

IntersectingSet make_intersecting(const GroupTable& G, std::vector<std::uint32_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      std::uint32_t p = G.product_id(G.inverse_id(ids[i]), ids[j]);
      if (G.is_derangement_id(p))
        throw Error(Errc::NotIntersecting,
                    "elements with ids " + std::to_string(ids[i]) + " and " +
                        std::to_string(ids[j]) + " agree nowhere");
    }
  IntersectingSet S;
  S.normalized = std::binary_search(ids.begin(), ids.end(), G.identity_id());
  S.members = std::move(ids);
  return S;
}

IntersectingSet normalize(const GroupTable& G, const IntersectingSet& S) {
  if (S.members.empty()) throw Error(Errc::DomainError, "cannot normalize an empty set");
  std::uint32_t shift = G.inverse_id(*std::min_element(S.members.begin(), S.members.end()));
  IntersectingSet out;
  out.members.reserve(S.members.size());
  for (std::uint32_t m : S.members) out.members.push_back(G.product_id(shift, m));
  std::sort(out.members.begin(), out.members.end());
  out.normalized = true;
  return out;
}

Classification classify(const GroupTable& G, const std::vector<std::uint32_t>& members) {
  if (members.empty()) throw Error(Errc::DomainError, "cannot classify an empty set");
  Classification out;
  const std::uint32_t s0 = members.front();

  for (std::uint32_t w = 0; w < G.point_count(); ++w) {
    std::uint32_t w2 = G.apply(s0, w);
    bool ok = true;
    for (std::uint32_t m : members)
      if (G.apply(m, w) != w2) {
        ok = false;
        break;
      }
    if (ok) out.point_witnesses.emplace_back(w, w2);
  }

  const std::uint32_t n_o2 = (std::uint32_t)G.plane().o2().size();
  for (std::uint32_t l = 0; l < n_o2; ++l) {
    std::uint32_t l2 = G.o2_apply(s0, l);
    bool ok = true;
    for (std::uint32_t m : members)
      if (G.o2_apply(m, l) != l2) {
        ok = false;
        break;
      }
    if (ok) {
      out.line_witnesses.emplace_back(l, l2);
      if (l == l2) out.line_stabilizer_witness = true;
    }
  }

  out.verdict = !out.point_witnesses.empty()  ? Family::PointCoset
                : !out.line_witnesses.empty() ? Family::LineCoset
                                              : Family::Neither;
  return out;
}

Classification classify_mats(const Field& F, const Plane& plane, const std::vector<Mat>& S) {
  if (S.empty()) throw Error(Errc::DomainError, "cannot classify an empty set");
  Classification out;

  for (const Vec& w : nonzero_vectors(F, 2)) {
    Vec w2 = mat_vec(F, S.front(), w);
    bool ok = true;
    for (const Mat& m : S)
      if (!(mat_vec(F, m, w) == w2)) {
        ok = false;
        break;
      }
    if (ok) out.point_witnesses.emplace_back(vec_encode(F, w) - 1, vec_encode(F, w2) - 1);
  }

  for (const AffLine& l : plane.o2()) {
    AffLine l2 = plane.line_image(S.front(), l);
    bool ok = true;
    for (const Mat& m : S)
      if (!(plane.line_image(m, l) == l2)) {
        ok = false;
        break;
      }
    if (ok) {
      out.line_witnesses.emplace_back(l.index, l2.index);
      if (l.index == l2.index) out.line_stabilizer_witness = true;
    }
  }

  out.verdict = !out.point_witnesses.empty()  ? Family::PointCoset
                : !out.line_witnesses.empty() ? Family::LineCoset
                                              : Family::Neither;
  return out;
}

std::vector<ProjLine> base_common_lines(const Field& F, const Plane& plane, const Mat& a1,
                                        const Mat& a2) {
  std::vector<ProjLine> out;
  for (const ProjLine& l : plane.o1())
    if (plane.line_image(a1, l) == l && plane.line_image(a2, l) == l) out.push_back(l);
  return out;
}

std::vector<BaseCertificate> find_bases(const GroupTable& G, const IntersectingSet& S) {
  if (!std::binary_search(S.members.begin(), S.members.end(), G.identity_id()))
    throw Error(Errc::NotNormalized, "base search requires a set containing the identity");
  const std::size_t w = G.fix_words();
  std::vector<BaseCertificate> out;
  for (std::size_t i = 0; i < S.members.size(); ++i) {
    if (S.members[i] == G.identity_id()) continue;
    for (std::size_t j = i + 1; j < S.members.size(); ++j) {
      if (S.members[j] == G.identity_id()) continue;
      const std::uint64_t* fi = G.fix_mask(S.members[i]);
      const std::uint64_t* fj = G.fix_mask(S.members[j]);
      bool disjoint = true;
      for (std::size_t t = 0; t < w; ++t)
        if (fi[t] & fj[t]) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      BaseCertificate cert;
      cert.a1 = S.members[i];
      cert.a2 = S.members[j];
      cert.common_lines = base_common_lines(G.field(), G.plane(), G.element(cert.a1),
                                            G.element(cert.a2));
      out.push_back(std::move(cert));
    }
  }
  return out;
}

KneserProjection kneser_project(const GroupTable& G, const IntersectingSet& S) {
  if (!std::binary_search(S.members.begin(), S.members.end(), G.identity_id()))
    throw Error(Errc::NotNormalized, "projection requires a set containing the identity");
  const Field& F = G.field();
  const Plane& plane = G.plane();
  KneserProjection out;

  for (std::uint32_t m : S.members) {
    if (m == G.identity_id()) continue;
    const Mat& mat = G.element(m);
    std::vector<EigenLine> els = eigen_lines(F, plane, mat);
    bool shape_ok = els.size() == 2 && !els[0].whole_space && !els[1].whole_space &&
                    (els[0].value.idx == 1 || els[1].value.idx == 1);
    if (!shape_ok)
      throw Error(Errc::NotDiagonalizable,
                  "member id " + std::to_string(m) +
                      " does not split into two eigenlines with eigenvalue 1 present");
    KneserVertex v;
    v.l1 = els[0].line->index;
    v.l2 = els[1].line->index;
    if (v.l2 < v.l1) std::swap(v.l1, v.l2);
    out.member_vertices.emplace_back(m, v);
    out.distinct.push_back(v);
  }

  std::sort(out.distinct.begin(), out.distinct.end());
  out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()), out.distinct.end());

  out.coclique = true;
  for (std::size_t i = 0; i < out.distinct.size() && out.coclique; ++i)
    for (std::size_t j = i + 1; j < out.distinct.size(); ++j) {
      const KneserVertex &a = out.distinct[i], &b = out.distinct[j];
      if (a.l1 != b.l1 && a.l1 != b.l2 && a.l2 != b.l1 && a.l2 != b.l2) {
        out.coclique = false;
        break;
      }
    }

  if (out.distinct.size() >= 4) {
    out.common_line_forced = true;
    // Candidate common lines: the first vertex's two entries, filtered
    // through the rest.
    for (std::uint32_t cand : {out.distinct[0].l1, out.distinct[0].l2}) {
      bool everywhere = true;
      for (const KneserVertex& v : out.distinct)
        if (v.l1 != cand && v.l2 != cand) {
          everywhere = false;
          break;
        }
      if (everywhere) {
        out.common_line = plane.o1()[cand];
        break;
      }
    }
  }
  return out;
}

std::uint64_t hm_bound(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || n < 2 * k)
    throw Error(Errc::DomainError, "bound needs n >= 2k and k >= 1");
  auto binom = [](std::uint64_t nn, std::uint64_t kk) -> std::uint64_t {
    if (kk > nn) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
    return r;
  };
  return 1 + binom(n - 1, k - 1) - binom(n - k - 1, k - 1);
}

namespace {

DerangementGraph build_graph(const GroupTable& G, std::vector<std::uint32_t> verts,
                             std::uint32_t cap) {
  if (verts.size() > cap)
    throw Error(Errc::BoundExceeded, "derangement graph capped at " + std::to_string(cap) +
                                         " vertices, got " + std::to_string(verts.size()));
  DerangementGraph g;
  g.group = &G;
  g.vertices = std::move(verts);
  const std::uint32_t n = g.vertex_count();
  g.words = (n + 63) / 64;
  g.adj.assign((std::size_t)n * g.words, 0);

  std::vector<std::uint32_t> inv(n);
  for (std::uint32_t u = 0; u < n; ++u) inv[u] = G.inverse_id(g.vertices[u]);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      std::uint32_t p = G.product_id(inv[u], g.vertices[v]);
      if (G.is_derangement_id(p)) {
        g.adj[(std::size_t)u * g.words + v / 64] |= 1ull << (v % 64);
        g.adj[(std::size_t)v * g.words + u / 64] |= 1ull << (u % 64);
      }
    }
  }
  return g;
}

}  // namespace

DerangementGraph derangement_graph(const GroupTable& G, std::uint32_t cap) {
  std::vector<std::uint32_t> verts(G.size());
  for (std::uint32_t i = 0; i < G.size(); ++i) verts[i] = i;
  return build_graph(G, std::move(verts), cap);
}

DerangementGraph derangement_graph(const GroupTable& G, std::vector<std::uint32_t> members,
                                   std::uint32_t cap) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return build_graph(G, std::move(members), cap);
}

CliqueCocliqueResult clique_coclique_check(const DerangementGraph& g,
                                           const std::vector<std::uint32_t>& clique,
                                           const std::vector<std::uint32_t>& coclique) {
  auto rank_of = [&](std::uint32_t id, Errc err) -> std::uint32_t {
    auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), id);
    if (it == g.vertices.end() || *it != id)
      throw Error(err, "element id " + std::to_string(id) + " is not a graph vertex");
    return (std::uint32_t)(it - g.vertices.begin());
  };

  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (!g.adjacent(rank_of(clique[i], Errc::InvalidClique),
                      rank_of(clique[j], Errc::InvalidClique)))
        throw Error(Errc::InvalidClique, "ids " + std::to_string(clique[i]) + " and " +
                                             std::to_string(clique[j]) + " intersect");
  for (std::size_t i = 0; i < coclique.size(); ++i)
    for (std::size_t j = i + 1; j < coclique.size(); ++j)
      if (g.adjacent(rank_of(coclique[i], Errc::InvalidCoclique),
                     rank_of(coclique[j], Errc::InvalidCoclique)))
        throw Error(Errc::InvalidCoclique, "ids " + std::to_string(coclique[i]) + " and " +
                                               std::to_string(coclique[j]) + " agree nowhere");

  CliqueCocliqueResult r;
  r.product = (std::uint64_t)clique.size() * coclique.size();
  r.holds = r.product <= g.vertex_count();
  r.tight = r.product == g.vertex_count();
  return r;
}

}  // namespace ekrlab
