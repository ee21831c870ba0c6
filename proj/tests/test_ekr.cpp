#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "ekrlab/ekr.hpp"
#include "ekrlab/error.hpp"
#include "ekrlab/field.hpp"
#include "ekrlab/group.hpp"
#include "ekrlab/matrix.hpp"

using namespace ekrlab;

namespace {

Mat m2(const Field& F, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  Mat m;
  m.at(0, 0) = F.element(a);
  m.at(0, 1) = F.element(b);
  m.at(1, 0) = F.element(c);
  m.at(1, 1) = F.element(d);
  return m;
}

Vec v2(const Field& F, std::uint32_t x, std::uint32_t y) {
  Vec v;
  v.c[0] = F.element(x);
  v.c[1] = F.element(y);
  return v;
}

// The running four-element family over GF(5): the identity plus three
// upper-triangular maps fixing pairwise different lines.
std::vector<std::uint32_t> running_example(const GroupTable& G) {
  const Field& F = G.field();
  return {G.id_of(mat_identity(F, 2)), G.id_of(m2(F, 2, 1, 0, 1)), G.id_of(m2(F, 1, 1, 0, 1)),
          G.id_of(m2(F, 3, 1, 0, 1))};
}

}  // namespace

TEST_CASE("derangements and the pairwise intersection predicate") {
  Field F = Field::from_order(3);
  CHECK(is_derangement(F, m2(F, 0, 1, 1, 2)));
  CHECK(!is_derangement(F, m2(F, 1, 1, 0, 1)));
  CHECK(!is_derangement(F, mat_identity(F, 2)));

  // g and h agree at a point exactly when g^-1 h fixes it.
  CHECK(intersects(F, m2(F, 1, 1, 0, 1), m2(F, 1, 2, 0, 1)));
  CHECK(!intersects(F, mat_identity(F, 2), m2(F, 0, 1, 1, 2)));
  CHECK(intersects(F, m2(F, 0, 1, 1, 2), m2(F, 0, 1, 1, 2)));
}

TEST_CASE("make_intersecting validates and sorts") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  std::vector<std::uint32_t> ids = running_example(G);
  std::reverse(ids.begin(), ids.end());
  IntersectingSet S = make_intersecting(G, ids);
  CHECK(std::is_sorted(S.members.begin(), S.members.end()));
  CHECK(S.members.size() == 4);
  CHECK(S.normalized);  // contains the identity

  GlElem s = singer_cycle(G);
  try {
    make_intersecting(G, {G.identity_id(), s.id});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotIntersecting);
  }
}

TEST_CASE("normalize left-shifts onto the identity") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  // Shift the running example away from the identity, then normalize back.
  Mat t = m2(F, 2, 0, 0, 1);
  std::vector<std::uint32_t> shifted;
  for (auto id : running_example(G)) shifted.push_back(G.id_of(mat_mul(F, t, G.element(id))));
  IntersectingSet S = make_intersecting(G, shifted);
  CHECK(!S.normalized);
  IntersectingSet N = normalize(G, S);
  CHECK(N.normalized);
  CHECK(N.members.size() == 4);
  CHECK(std::binary_search(N.members.begin(), N.members.end(), G.identity_id()));
  // Normalizing twice is idempotent once the identity is the smallest member.
  CHECK(normalize(G, N).members == N.members);
}

TEST_CASE("the running example classifies as a line-coset family") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  const Plane& P = G.plane();
  Classification c = classify(G, running_example(G));

  CHECK(c.verdict == Family::LineCoset);
  CHECK(c.point_witnesses.empty());
  REQUIRE(c.line_witnesses.size() == 4);
  CHECK(c.line_stabilizer_witness);
  for (auto [l, lp] : c.line_witnesses) {
    CHECK(l == lp);  // every witness is a stabilizer, not a proper coset
    CHECK(P.o2()[l].dir.dir == v2(F, 1, 0));  // horizontal lines only
  }
  // First witness: the horizontal line through (0,1).
  CHECK(P.o2()[c.line_witnesses[0].first].offset == v2(F, 0, 1));
}

TEST_CASE("a vector coset classifies as a point family with the right witness") {
  Field F = Field::from_order(3);
  GroupTable G = GroupTable::gl2(F);
  std::vector<std::uint32_t> cs = coset_v(G, v2(F, 1, 0), v2(F, 0, 1));
  Classification c = classify(G, cs);
  CHECK(c.verdict == Family::PointCoset);
  REQUIRE(!c.point_witnesses.empty());
  auto [w, wp] = c.point_witnesses[0];
  CHECK(G.point(w) == v2(F, 1, 0));
  CHECK(G.point(wp) == v2(F, 0, 1));
  // classify_mats agrees with the id-based path.
  std::vector<Mat> mats;
  for (auto id : cs) mats.push_back(G.element(id));
  Classification cm = classify_mats(F, G.plane(), mats);
  CHECK(cm.verdict == Family::PointCoset);
  CHECK(cm.point_witnesses == c.point_witnesses);
}

TEST_CASE("a mixed set classifies as neither family") {
  Field F = Field::from_order(3);
  GroupTable G = GroupTable::gl2(F);
  // {I, transvection} extended by an element agreeing with both at different
  // points than they share: small sets can still be canonical, so build one
  // known to escape: identity with two elements with disjoint supports whose
  // agreements pin four distinct point pairs and no line pair.
  std::vector<std::uint32_t> ids{G.identity_id(), G.id_of(m2(F, 1, 1, 0, 1)),
                                 G.id_of(m2(F, 1, 0, 1, 1))};
  Classification c = classify(G, ids);
  CHECK(c.verdict == Family::Neither);
  CHECK(c.point_witnesses.empty());
  CHECK(c.line_witnesses.empty());
}

TEST_CASE("the running example owns exactly three bases with a common line") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  IntersectingSet S = make_intersecting(G, running_example(G));
  std::vector<BaseCertificate> bases = find_bases(G, S);
  REQUIRE(bases.size() == 3);

  const std::uint32_t a1 = G.id_of(m2(F, 2, 1, 0, 1));
  const std::uint32_t a2 = G.id_of(m2(F, 1, 1, 0, 1));
  const std::uint32_t a3 = G.id_of(m2(F, 3, 1, 0, 1));
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const BaseCertificate& b : bases) {
    CHECK(b.a1 < b.a2);
    pairs.insert({b.a1, b.a2});
    // Every base of this family fixes the horizontal axis setwise.
    REQUIRE(b.common_lines.size() == 1);
    CHECK(b.common_lines[0].dir == v2(F, 1, 0));
  }
  CHECK(pairs.count({std::min(a1, a2), std::max(a1, a2)}) == 1);
  CHECK(pairs.count({std::min(a1, a3), std::max(a1, a3)}) == 1);
  CHECK(pairs.count({std::min(a2, a3), std::max(a2, a3)}) == 1);

  // base_common_lines agrees with the certificates.
  std::vector<ProjLine> direct = base_common_lines(F, G.plane(), m2(F, 2, 1, 0, 1),
                                                   m2(F, 1, 1, 0, 1));
  REQUIRE(direct.size() == 1);
  CHECK(direct[0].dir == v2(F, 1, 0));
}

TEST_CASE("a stabilizer-contained set has no base") {
  Field F = Field::from_order(3);
  GroupTable G = GroupTable::gl2(F);
  Subgroup st = point_stabilizer(G, v2(F, 1, 0));
  IntersectingSet S = make_intersecting(G, st.members);
  CHECK(find_bases(G, S).empty());
}

TEST_CASE("eigenline pair projection of the running example") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  const Plane& P = G.plane();

  // Drop the non-diagonalizable transvection first.
  std::vector<std::uint32_t> ids{G.identity_id(), G.id_of(m2(F, 2, 1, 0, 1)),
                                 G.id_of(m2(F, 3, 1, 0, 1))};
  KneserProjection pr = kneser_project(G, make_intersecting(G, ids));
  REQUIRE(pr.member_vertices.size() == 2);
  CHECK(pr.distinct.size() == 2);
  CHECK(pr.coclique);
  CHECK(!pr.common_line_forced);

  // [[2,1],[0,1]] projects to the pair {axis, <[1,4]>}.
  const std::uint32_t axis = P.proj_line_of(v2(F, 1, 0)).index;
  const std::uint32_t l14 = P.proj_line_of(v2(F, 1, 4)).index;
  KneserVertex kv = pr.member_vertices[0].second;
  CHECK(kv.l1 == std::min(axis, l14));
  CHECK(kv.l2 == std::max(axis, l14));
  CHECK(!kv.singleton());

  // The transvection is rejected, and so is a set without the identity.
  std::vector<std::uint32_t> bad{G.identity_id(), G.id_of(m2(F, 1, 1, 0, 1))};
  CHECK_THROWS_AS(kneser_project(G, make_intersecting(G, bad)), Error);
  IntersectingSet off;
  off.members = {G.id_of(m2(F, 2, 1, 0, 1))};
  off.normalized = false;
  CHECK_THROWS_AS(kneser_project(G, off), Error);
}

TEST_CASE("four distinct vertices force the common line") {
  Field F = Field::from_order(5);
  GroupTable G = GroupTable::gl2(F);
  const Plane& P = G.plane();

  // {I} with [[2,b],[0,1]] for every b: each member fixes the horizontal
  // axis and one further line that sweeps through five different directions.
  std::vector<std::uint32_t> ids{G.identity_id()};
  for (std::uint32_t b = 0; b < 5; ++b) ids.push_back(G.id_of(m2(F, 2, b, 0, 1)));
  KneserProjection pr = kneser_project(G, make_intersecting(G, ids));
  CHECK(pr.distinct.size() == 5);
  CHECK(pr.coclique);
  CHECK(pr.common_line_forced);
  REQUIRE(pr.common_line.has_value());
  CHECK(pr.common_line->index == P.proj_line_of(v2(F, 1, 0)).index);
}

TEST_CASE("pair bound arithmetic and its guard rails") {
  CHECK(hm_bound(4, 2) == 3);
  CHECK(hm_bound(6, 2) == 3);
  CHECK(hm_bound(17, 2) == 3);
  CHECK(hm_bound(6, 3) == 10);
  CHECK(hm_bound(8, 3) == 16);
  CHECK(hm_bound(10, 1) == 1);
  CHECK_THROWS_AS(hm_bound(3, 2), Error);
  CHECK_THROWS_AS(hm_bound(5, 0), Error);
}

TEST_CASE("the derangement graph at q = 3") {
  Field F = Field::from_order(3);
  GroupTable G = GroupTable::gl2(F);
  DerangementGraph g = derangement_graph(G);
  CHECK(g.vertex_count() == 48);

  // 27-regular: row degrees equal the derangement count.
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
    std::uint32_t deg = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) deg += g.adjacent(u, v);
    CHECK(deg == 27);
    CHECK(!g.adjacent(u, u));
  }
  // Symmetry and the defining condition on a sample.
  for (std::uint32_t u = 0; u < g.vertex_count(); u += 5)
    for (std::uint32_t v = 0; v < g.vertex_count(); v += 3) {
      CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      if (u != v)
        CHECK(g.adjacent(u, v) ==
              G.is_derangement_id(G.product_id(G.inverse_id(u), v)));
    }

  // Vertex subset variant relabels into local ranks.
  GlElem s = singer_cycle(G);
  Subgroup H = subgroup_closure(G, {s.id});
  DerangementGraph h = derangement_graph(G, H.members);
  CHECK(h.vertex_count() == 8);
  std::uint32_t edges = 0;
  for (std::uint32_t u = 0; u < 8; ++u)
    for (std::uint32_t v = u + 1; v < 8; ++v) edges += h.adjacent(u, v);
  CHECK(edges == 28);  // the cyclic group is a clique

  try {
    derangement_graph(G, /*cap=*/10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundExceeded);
  }
}

TEST_CASE("the clique-coclique product is tight for the cyclic clique") {
  Field F = Field::from_order(3);
  GroupTable G = GroupTable::gl2(F);
  DerangementGraph g = derangement_graph(G);
  GlElem s = singer_cycle(G);
  Subgroup C = subgroup_closure(G, {s.id});
  Subgroup st = point_stabilizer(G, v2(F, 1, 0));

  CliqueCocliqueResult r = clique_coclique_check(g, C.members, st.members);
  CHECK(r.product == 48);
  CHECK(r.holds);
  CHECK(r.tight);

  // A non-clique and a non-coclique are both rejected.
  std::vector<std::uint32_t> notclique{G.identity_id(), G.id_of(m2(F, 1, 1, 0, 1))};
  try {
    clique_coclique_check(g, notclique, st.members);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidClique);
  }
  std::vector<std::uint32_t> notco{G.identity_id(), s.id};
  try {
    clique_coclique_check(g, C.members, notco);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidCoclique);
  }
}
