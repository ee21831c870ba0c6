#include "ekrlab/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ekrlab {
namespace {

std::uint32_t mat_encode(const Field& F, const Mat& m) {
  std::uint32_t code = 0;
  for (int i = 0; i < m.n * m.n; ++i) code = code * F.q() + m.e[(std::size_t)i].idx;
  return code;
}

Mat mat_decode(const Field& F, int n, std::uint32_t code) {
  Mat m;
  m.n = n;
  for (int i = n * n - 1; i >= 0; --i) {
    m.e[(std::size_t)i] = Fe{code % F.q()};
    code /= F.q();
  }
  return m;
}

// Action and fixed-point tables pay for themselves only while the whole group
// fits comfortably in memory; larger instances are arithmetic-only anyway.
constexpr std::uint32_t kActionTableCap = 20000;

}  // namespace

GroupTable GroupTable::gl2(const Field& F, std::uint64_t order_cap) {
  const std::uint64_t q = F.q();
  const std::uint64_t order = (q * q - 1) * (q * q - q);
  if (order > order_cap)
    throw Error(Errc::BoundExceeded, "group order " + std::to_string(order) +
                                         " exceeds cap " + std::to_string(order_cap));
  GroupTable G;
  G.field_ = F;
  G.n_ = 2;
  G.point_count_ = (std::uint32_t)(q * q - 1);
  std::uint64_t total = q * q * q * q;
  G.lookup_.assign(total, -1);
  G.elements_.reserve(order);
  for (std::uint32_t code = 0; code < total; ++code) {
    Mat m = mat_decode(F, 2, code);
    if (mat_det(F, m).idx == 0) continue;
    G.lookup_[code] = (std::int32_t)G.elements_.size();
    G.elements_.push_back(m);
  }
  G.plane_ = std::make_shared<Plane>(G.field_);
  G.finish();
  return G;
}

GroupTable GroupTable::gl3_f2() {
  GroupTable G;
  G.field_ = Field::make(2, 1);
  G.n_ = 3;
  G.point_count_ = 7;
  G.lookup_.assign(512, -1);
  for (std::uint32_t code = 0; code < 512; ++code) {
    Mat m = mat_decode(G.field_, 3, code);
    if (mat_det(G.field_, m).idx == 0) continue;
    G.lookup_[code] = (std::int32_t)G.elements_.size();
    G.elements_.push_back(m);
  }
  G.finish();
  return G;
}

void GroupTable::finish() {
  const std::uint32_t n_elems = size();
  identity_id_ = (std::uint32_t)lookup_[mat_encode(field_, mat_identity(field_, n_))];

  inverse_ids_.resize(n_elems);
  derangement_.resize(n_elems);
  for (std::uint32_t id = 0; id < n_elems; ++id) {
    inverse_ids_[id] = (std::uint32_t)lookup_[mat_encode(field_, mat_inv(field_, elements_[id]))];
    derangement_[id] = has_eigenvalue_one(field_, elements_[id]) ? 0 : 1;
  }

  if (n_elems <= kActionTableCap) {
    fix_words_ = (point_count_ + 63) / 64;
    action_.resize((std::size_t)n_elems * point_count_);
    fix_masks_.assign((std::size_t)n_elems * fix_words_, 0);
    std::vector<Vec> pts = nonzero_vectors(field_, n_);
    for (std::uint32_t id = 0; id < n_elems; ++id) {
      const Mat& m = elements_[id];
      for (std::uint32_t r = 0; r < point_count_; ++r) {
        std::uint32_t img = vec_encode(field_, mat_vec(field_, m, pts[r])) - 1;
        action_[(std::size_t)id * point_count_ + r] = (std::uint16_t)img;
        if (img == r) fix_masks_[(std::size_t)id * fix_words_ + r / 64] |= 1ull << (r % 64);
      }
    }
  }

  if (n_elems <= kActionTableCap && plane_) {
    const auto& o2 = plane_->o2();
    o2_action_.resize((std::size_t)n_elems * o2.size());
    for (std::uint32_t id = 0; id < n_elems; ++id)
      for (std::size_t li = 0; li < o2.size(); ++li)
        o2_action_[(std::size_t)id * o2.size() + li] =
            (std::uint16_t)plane_->line_image(elements_[id], o2[li]).index;
  }

  if (n_elems <= kProductTableCap) {
    product_table_.resize((std::size_t)n_elems * n_elems);
    for (std::uint32_t a = 0; a < n_elems; ++a)
      for (std::uint32_t b = 0; b < n_elems; ++b)
        product_table_[(std::size_t)a * n_elems + b] =
            (std::uint32_t)lookup_[mat_encode(field_, mat_mul(field_, elements_[a], elements_[b]))];
  }
}

std::uint32_t GroupTable::product_id(std::uint32_t a, std::uint32_t b) const {
  if (!product_table_.empty()) return product_table_[(std::size_t)a * size() + b];
  return (std::uint32_t)lookup_[mat_encode(field_, mat_mul(field_, elements_[a], elements_[b]))];
}

std::uint32_t GroupTable::id_of(const Mat& m) const {
  if (m.n != n_) throw Error(Errc::DomainError, "dimension mismatch");
  std::uint32_t code = mat_encode(field_, m);
  std::int32_t id = code < lookup_.size() ? lookup_[code] : -1;
  if (id < 0) throw Error(Errc::SingularMatrix, "matrix is not a group member");
  return (std::uint32_t)id;
}

const Plane& GroupTable::plane() const {
  if (!plane_) throw Error(Errc::DomainError, "plane geometry is defined for n = 2 only");
  return *plane_;
}

std::uint32_t GroupTable::apply(std::uint32_t id, std::uint32_t rank) const {
  if (!action_.empty()) return action_[(std::size_t)id * point_count_ + rank];
  Vec v = point(rank);
  return vec_encode(field_, mat_vec(field_, elements_[id], v)) - 1;
}

std::uint32_t GroupTable::o2_apply(std::uint32_t id, std::uint32_t line_index) const {
  const Plane& pl = plane();
  if (!o2_action_.empty()) return o2_action_[(std::size_t)id * pl.o2().size() + line_index];
  return pl.line_image(elements_[id], pl.o2()[line_index]).index;
}

Subgroup point_stabilizer(const GroupTable& G, const Vec& u) {
  if (u.is_zero()) throw Error(Errc::ZeroVector, "stabilized vector must be nonzero");
  Subgroup H;
  H.parent = &G;
  std::uint32_t r = G.point_rank(u);
  for (std::uint32_t id = 0; id < G.size(); ++id)
    if (G.apply(id, r) == r) H.members.push_back(id);
  return H;
}

std::vector<std::uint32_t> coset_v(const GroupTable& G, const Vec& u, const Vec& w) {
  if (u.is_zero() || w.is_zero()) throw Error(Errc::ZeroVector, "coset endpoints must be nonzero");
  std::vector<std::uint32_t> out;
  std::uint32_t ru = G.point_rank(u), rw = G.point_rank(w);
  for (std::uint32_t id = 0; id < G.size(); ++id)
    if (G.apply(id, ru) == rw) out.push_back(id);
  return out;
}

std::uint32_t element_order(const Field& F, const Mat& m) {
  Mat id = mat_identity(F, m.n);
  Mat acc = m;
  std::uint32_t ord = 1;
  const std::uint32_t cap = F.q() * F.q() * F.q() * F.q();
  while (!(acc == id)) {
    acc = mat_mul(F, acc, m);
    if (++ord > cap) throw Error(Errc::DomainError, "element order exceeds group bound");
  }
  return ord;
}

std::uint32_t element_order(const GroupTable& G, std::uint32_t id) {
  std::uint32_t acc = id, ord = 1;
  while (acc != G.identity_id()) {
    acc = G.product_id(acc, id);
    ++ord;
  }
  return ord;
}

Mat singer_matrix(const Field& F) {
  const std::uint32_t q = F.q();
  // x^2 + c1 x + c0, coefficient tuples in ascending lexicographic order.
  for (std::uint32_t c0 = 0; c0 < q; ++c0)
    for (std::uint32_t c1 = 0; c1 < q; ++c1) {
      if (c0 == 0) continue;  // divisible by x
      bool has_root = false;
      for (std::uint32_t x = 0; x < q && !has_root; ++x) {
        Fe v = F.poly_eval({Fe{c0}, Fe{c1}, F.one()}, Fe{x});
        has_root = v.idx == 0;
      }
      if (has_root) continue;
      Mat m;
      m.n = 2;
      m.at(0, 0) = F.zero();
      m.at(0, 1) = F.neg(Fe{c0});
      m.at(1, 0) = F.one();
      m.at(1, 1) = F.neg(Fe{c1});
      if (element_order(F, m) == q * q - 1) return m;
    }
  throw Error(Errc::DomainError, "no primitive quadratic found");  // unreachable for q >= 2
}

GlElem singer_cycle(const GroupTable& G) {
  Mat m = singer_matrix(G.field());
  return GlElem{m, G.id_of(m)};
}

Subgroup subgroup_closure(const GroupTable& G, const std::vector<std::uint32_t>& gen_ids) {
  Subgroup H;
  H.parent = &G;
  H.gens = gen_ids;
  std::sort(H.gens.begin(), H.gens.end());
  H.gens.erase(std::unique(H.gens.begin(), H.gens.end()), H.gens.end());

  std::vector<std::uint8_t> in(G.size(), 0);
  std::vector<std::uint32_t> frontier{G.identity_id()};
  in[G.identity_id()] = 1;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t x : frontier)
      for (std::uint32_t g : H.gens) {
        std::uint32_t y = G.product_id(x, g);
        if (!in[y]) {
          in[y] = 1;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  for (std::uint32_t id = 0; id < G.size(); ++id)
    if (in[id]) H.members.push_back(id);
  return H;
}

bool is_transitive(const Subgroup& H, ActionDomain domain) {
  const GroupTable& G = *H.parent;
  if (domain == ActionDomain::Points) {
    std::vector<std::uint8_t> seen(G.point_count(), 0);
    std::vector<std::uint32_t> frontier{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t r : frontier)
        for (std::uint32_t id : H.members) {
          std::uint32_t s = G.apply(id, r);
          if (!seen[s]) {
            seen[s] = 1;
            ++count;
            next.push_back(s);
          }
        }
      frontier = std::move(next);
    }
    return count == G.point_count();
  }

  const Plane& plane = G.plane();
  const bool o1 = domain == ActionDomain::LinesThroughOrigin;
  const std::size_t total = o1 ? plane.o1().size() : plane.o2().size();
  std::vector<std::uint8_t> seen(total, 0);
  std::vector<std::uint32_t> frontier{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t li : frontier)
      for (std::uint32_t id : H.members) {
        const Mat& m = G.element(id);
        std::uint32_t s = o1 ? plane.line_image(m, plane.o1()[li]).index
                             : plane.line_image(m, plane.o2()[li]).index;
        if (!seen[s]) {
          seen[s] = 1;
          ++count;
          next.push_back(s);
        }
      }
    frontier = std::move(next);
  }
  return count == total;
}

std::vector<Subgroup> all_subgroups(const GroupTable& G, std::uint32_t order_cap) {
  if (G.size() > order_cap)
    throw Error(Errc::BoundExceeded, "subgroup lattice enumeration capped at group order " +
                                         std::to_string(order_cap));
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<Subgroup> found;
  std::vector<std::size_t> queue;

  Subgroup trivial;
  trivial.parent = &G;
  trivial.members = {G.identity_id()};
  seen.insert(trivial.members);
  found.push_back(trivial);
  queue.push_back(0);

  while (!queue.empty()) {
    std::size_t hi = queue.back();
    queue.pop_back();
    // Copy out: found may reallocate while we extend.
    std::vector<std::uint32_t> gens = found[hi].gens;
    std::vector<std::uint8_t> in(G.size(), 0);
    for (std::uint32_t m : found[hi].members) in[m] = 1;
    for (std::uint32_t g = 0; g < G.size(); ++g) {
      if (in[g]) continue;
      std::vector<std::uint32_t> ext = gens;
      ext.push_back(g);
      Subgroup K = subgroup_closure(G, ext);
      if (seen.insert(K.members).second) {
        found.push_back(K);
        queue.push_back(found.size() - 1);
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return found;
}

}  // namespace ekrlab
