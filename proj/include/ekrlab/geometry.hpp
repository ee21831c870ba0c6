#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ekrlab/matrix.hpp"

namespace ekrlab {

struct GroupTable;

// Line through the origin of GF(q)^2, named by its normalized direction
// (first nonzero coordinate scaled to 1). Canonical order: [1,0], [1,1], ...,
// [1,q-1], then [0,1]; index in [0, q+1).
struct ProjLine {
  Vec dir;
  std::uint32_t index = 0;
  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.index == b.index; }
  friend bool operator<(const ProjLine& a, const ProjLine& b) { return a.index < b.index; }
};

// Line of GF(q)^2 avoiding the origin: offset + span(dir). The stored offset
// is the lexicographically smallest point on the line. Indexing is
// direction-major, offset-minor; index in [0, (q-1)(q+1)).
struct AffLine {
  ProjLine dir;
  Vec offset;
  std::uint32_t index = 0;
  friend bool operator==(const AffLine& a, const AffLine& b) { return a.index == b.index; }
  friend bool operator<(const AffLine& a, const AffLine& b) { return a.index < b.index; }
};

// Per-field cache of both line orbits; indices are assigned once here and
// everything downstream speaks in them.
class Plane {
 public:
  explicit Plane(const Field& F);

  const Field& field() const { return F_; }
  std::uint32_t q() const { return F_.q(); }
  const std::vector<ProjLine>& o1() const { return o1_; }
  const std::vector<AffLine>& o2() const { return o2_; }

  ProjLine proj_line_of(const Vec& dir) const;        // ZeroDirection on 0
  AffLine aff_line_through(const Vec& dir, const Vec& point) const;

  ProjLine line_image(const Mat& a, const ProjLine& l) const;
  AffLine line_image(const Mat& a, const AffLine& l) const;

  std::vector<Vec> points_of(const ProjLine& l) const;  // q points incl. origin
  std::vector<Vec> points_of(const AffLine& l) const;   // q points

  // The q lines with direction l: l itself plus its q-1 origin-avoiding
  // parallels, in index order. Together they partition GF(q)^2.
  struct ParallelClass {
    ProjLine through_origin;
    std::vector<AffLine> parallels;
  };
  ParallelClass parallel_class(const ProjLine& l) const;

 private:
  Field F_;  // own copy; a Plane stays valid independently of its source Field
  std::vector<ProjLine> o1_;
  std::vector<AffLine> o2_;
};

// Eigenvalue together with its eigenline. A scalar matrix fixes every line,
// flagged instead of picking one.
struct EigenLine {
  Fe value;
  bool whole_space = false;
  std::optional<ProjLine> line;
};

// One entry per distinct eigenvalue of A in GF(q), ascending by value index.
// n = 2 only.
std::vector<EigenLine> eigen_lines(const Field& F, const Plane& plane, const Mat& a);

// All group elements mapping l to itself setwise. Size q(q-1).
std::vector<GlElem> line_stabilizer(const GroupTable& G, const AffLine& l);

}  // namespace ekrlab
