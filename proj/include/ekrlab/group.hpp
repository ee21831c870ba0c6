#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ekrlab/geometry.hpp"
#include "ekrlab/matrix.hpp"

namespace ekrlab {

// Fully enumerated matrix group GL(n, q) for n = 2 (any supported q) or the
// n = 3, q = 2 instance. Elements are stored in row-major lexicographic order
// of their entry indices; positions in that order are the canonical ids used
// throughout. Immutable after construction.
struct GroupTable {
  static constexpr std::uint64_t kDefaultOrderCap = 100000;
  // Product id tables are only affordable for small groups.
  static constexpr std::uint32_t kProductTableCap = 2048;

  static GroupTable gl2(const Field& F, std::uint64_t order_cap = kDefaultOrderCap);
  static GroupTable gl3_f2();

  std::uint32_t size() const { return (std::uint32_t)elements_.size(); }
  const Mat& element(std::uint32_t id) const { return elements_[id]; }
  const std::vector<Mat>& elements() const { return elements_; }
  std::uint32_t identity_id() const { return identity_id_; }
  std::uint32_t inverse_id(std::uint32_t id) const { return inverse_ids_[id]; }
  std::uint32_t product_id(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t id_of(const Mat& m) const;  // SingularMatrix when m is not a member

  const Field& field() const { return field_; }
  int dim() const { return n_; }
  const Plane& plane() const;  // n = 2 only

  // Action on the nonzero vectors, canonical point order.
  std::uint32_t point_count() const { return point_count_; }
  std::uint32_t apply(std::uint32_t id, std::uint32_t point_rank) const;
  std::uint32_t point_rank(const Vec& v) const { return vec_encode(field_, v) - 1; }
  Vec point(std::uint32_t rank) const { return vec_decode(field_, n_, rank + 1); }
  // Induced action on the origin-avoiding lines, by line index (n = 2).
  std::uint32_t o2_apply(std::uint32_t id, std::uint32_t line_index) const;

  // Nonzero fixed points of element id, as a bitmask over point ranks
  // (words-per-row = fix_words()).
  const std::uint64_t* fix_mask(std::uint32_t id) const {
    return fix_masks_.data() + (std::size_t)id * fix_words_;
  }
  std::size_t fix_words() const { return fix_words_; }
  bool is_derangement_id(std::uint32_t id) const { return derangement_[id] != 0; }

  Field field_;
  int n_ = 2;
  std::vector<Mat> elements_;
  std::vector<std::uint32_t> inverse_ids_;
  std::vector<std::int32_t> lookup_;  // entry-encoding -> id, -1 for non-members
  std::vector<std::uint32_t> product_table_;
  std::vector<std::uint16_t> action_;     // id * point_count + rank -> image rank
  std::vector<std::uint16_t> o2_action_;  // id * |O2| + line -> image line
  std::vector<std::uint64_t> fix_masks_;
  std::vector<std::uint8_t> derangement_;
  std::size_t fix_words_ = 0;
  std::uint32_t point_count_ = 0;
  std::uint32_t identity_id_ = 0;
  std::shared_ptr<Plane> plane_;

 private:
  void finish();  // builds lookup-derived tables; elements_ already sorted
};

// Subgroup of a GroupTable: sorted member ids plus the generators it was
// built from (empty for subgroups constructed by direct filtering).
struct Subgroup {
  const GroupTable* parent = nullptr;
  std::vector<std::uint32_t> members;
  std::vector<std::uint32_t> gens;

  std::size_t order() const { return members.size(); }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

// All g with g u = u. ZeroVector when u = 0.
Subgroup point_stabilizer(const GroupTable& G, const Vec& u);
// The coset {g : g u = w}. ZeroVector when u or w is 0.
std::vector<std::uint32_t> coset_v(const GroupTable& G, const Vec& u, const Vec& w);

// Companion matrix of the lexicographically smallest primitive quadratic
// (c0, c1 tuple order, low degree first); its order is q^2 - 1 and the cyclic
// group it generates acts regularly on the nonzero vectors.
Mat singer_matrix(const Field& F);
GlElem singer_cycle(const GroupTable& G);

std::uint32_t element_order(const Field& F, const Mat& m);
std::uint32_t element_order(const GroupTable& G, std::uint32_t id);

Subgroup subgroup_closure(const GroupTable& G, const std::vector<std::uint32_t>& gen_ids);

enum class ActionDomain { Points, LinesThroughOrigin, LinesOffOrigin };
bool is_transitive(const Subgroup& H, ActionDomain domain);

// Every subgroup, found by closing under single-element extensions starting
// from the trivial subgroup. Deterministic order: by (order, member ids).
// Guarded by a cap since the lattice is only needed at desk scale.
std::vector<Subgroup> all_subgroups(const GroupTable& G, std::uint32_t order_cap = 1000);

}  // namespace ekrlab
