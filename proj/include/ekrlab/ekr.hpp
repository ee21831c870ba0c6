#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ekrlab/group.hpp"

namespace ekrlab {

// g is a derangement when it moves every nonzero vector, i.e. it has no
// eigenvalue 1. Two elements intersect when they agree somewhere, i.e. when
// g^-1 h is not a derangement.
bool is_derangement(const Field& F, const Mat& g);
bool intersects(const Field& F, const Mat& g, const Mat& h);

// Pairwise intersecting family of group elements, by canonical id.
// `normalized` records that the identity is a member.
struct IntersectingSet {
  std::vector<std::uint32_t> members;  // sorted ascending
  bool normalized = false;
};

// Validates the intersecting property; NotIntersecting names the first
// offending pair in id order.
IntersectingSet make_intersecting(const GroupTable& G, std::vector<std::uint32_t> ids);
// Left-shift by the inverse of the smallest-id member; the result contains
// the identity and is intersecting iff the input was.
IntersectingSet normalize(const GroupTable& G, const IntersectingSet& S);

enum class Family { PointCoset, LineCoset, Neither };

// Containment of S in the two canonical coset families:
//  - point cosets {g : g w = w'} over ordered pairs of nonzero vectors,
//  - line cosets {g : g l = l'} over ordered pairs of origin-avoiding lines.
// Scans run in canonical order and report every satisfying witness; the
// verdict is the first family with a witness (points scanned first). The two
// families can overlap on small sets, which is why all witnesses matter.
struct Classification {
  Family verdict = Family::Neither;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> point_witnesses;  // point ranks
  std::vector<std::pair<std::uint32_t, std::uint32_t>> line_witnesses;   // o2 indices
  // True when some line witness has l = l', i.e. S sits inside a line
  // stabilizer itself rather than a proper coset of one.
  bool line_stabilizer_witness = false;
};
Classification classify(const GroupTable& G, const std::vector<std::uint32_t>& members);
Classification classify_mats(const Field& F, const Plane& plane, const std::vector<Mat>& S);

// A base is a pair of non-identity members whose nonzero fixed points are
// disjoint: no single point is fixed by the whole pair. For an intersecting
// set containing the identity, bases exist exactly when the set has no
// global fixed point.
struct BaseCertificate {
  std::uint32_t a1 = 0, a2 = 0;            // member ids, a1 < a2
  std::vector<ProjLine> common_lines;      // lines through 0 fixed setwise by both
};
std::vector<BaseCertificate> find_bases(const GroupTable& G, const IntersectingSet& S);
std::vector<ProjLine> base_common_lines(const Field& F, const Plane& plane, const Mat& a1,
                                        const Mat& a2);

// Unordered pair of lines through the origin, by index; the eigenline pair of
// a diagonalizable element. l1 == l2 marks the degenerate singleton case.
struct KneserVertex {
  std::uint32_t l1 = 0, l2 = 0;  // l1 <= l2
  bool singleton() const { return l1 == l2; }
  friend bool operator==(const KneserVertex& a, const KneserVertex& b) {
    return a.l1 == b.l1 && a.l2 == b.l2;
  }
  friend bool operator<(const KneserVertex& a, const KneserVertex& b) {
    return a.l1 != b.l1 ? a.l1 < b.l1 : a.l2 < b.l2;
  }
};

// Projection of a normalized intersecting set onto eigenline pairs. Every
// non-identity member must be diagonalizable with eigenvalue set {1, x != 1}
// (NotDiagonalizable otherwise). Pairwise-intersecting members map to
// pairwise-overlapping vertices; four or more distinct vertices force a
// single line common to all of them.
struct KneserProjection {
  std::vector<std::pair<std::uint32_t, KneserVertex>> member_vertices;  // id -> vertex
  std::vector<KneserVertex> distinct;                                   // sorted, dedup
  bool coclique = false;             // vertices pairwise overlap
  bool common_line_forced = false;   // >= 4 distinct vertices
  std::optional<ProjLine> common_line;
};
KneserProjection kneser_project(const GroupTable& G, const IntersectingSet& S);

// 1 + C(n-1, k-1) - C(n-k-1, k-1); requires n >= 2k, k >= 1.
std::uint64_t hm_bound(std::uint32_t n, std::uint32_t k);

// Derangement graph on a vertex set of group elements: u ~ v iff u^-1 v is a
// derangement. Intersecting sets are exactly its independent sets. Row-major
// bit adjacency.
struct DerangementGraph {
  const GroupTable* group = nullptr;
  std::vector<std::uint32_t> vertices;  // element ids, ascending
  std::size_t words = 0;
  std::vector<std::uint64_t> adj;

  std::uint32_t vertex_count() const { return (std::uint32_t)vertices.size(); }
  const std::uint64_t* row(std::uint32_t u) const { return adj.data() + (std::size_t)u * words; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const {
    return (row(u)[v / 64] >> (v % 64)) & 1;
  }
};

inline constexpr std::uint32_t kDefaultVertexCap = 6000;
DerangementGraph derangement_graph(const GroupTable& G, std::uint32_t cap = kDefaultVertexCap);
DerangementGraph derangement_graph(const GroupTable& G, std::vector<std::uint32_t> members,
                                   std::uint32_t cap = kDefaultVertexCap);

// Validates that `clique` is a clique and `coclique` independent in the
// derangement graph (InvalidClique / InvalidCoclique name the first offending
// pair), then reports the vertex-transitive bound |C| * |S| <= |V|.
struct CliqueCocliqueResult {
  std::uint64_t product = 0;
  bool holds = false;
  bool tight = false;
};
CliqueCocliqueResult clique_coclique_check(const DerangementGraph& g,
                                           const std::vector<std::uint32_t>& clique,
                                           const std::vector<std::uint32_t>& coclique);

}  // namespace ekrlab
