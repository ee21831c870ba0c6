#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekrlab/ekr.hpp"

namespace ekrlab {

struct SearchLimits {
  std::chrono::milliseconds budget{std::chrono::milliseconds(600000)};
};

// Maximal intersecting sets of the graph's vertex set, each sorted by id,
// listed in lexicographic order. `complete` is false when the time budget
// expired; whatever was found so far is still returned.
struct EnumerationResult {
  std::vector<std::vector<std::uint32_t>> sets;
  bool complete = true;
};

// Pivoting enumerator (used everywhere) and a deliberately plain no-pivot
// reference enumerator kept for cross-checking it.
EnumerationResult enumerate_maximal_intersecting(const DerangementGraph& g,
                                                 const SearchLimits& lim = {});
EnumerationResult enumerate_maximal_intersecting_naive(const DerangementGraph& g);

// Exact size of a maximum intersecting set: branch and bound with a greedy
// coloring bound on the complement of the derangement graph. Throws Timeout
// when the budget expires (a partial bound would certify nothing).
struct MaxCliqueResult {
  std::uint32_t size = 0;
  std::vector<std::uint32_t> witness;  // element ids
};
MaxCliqueResult max_intersecting(const DerangementGraph& g, const SearchLimits& lim = {});

// Full enumeration campaign over one group: every maximal intersecting set,
// classified, with the family counts cross-checked against independently
// constructed coset families.
struct CliqueCampaign {
  std::uint32_t q = 0;
  std::uint32_t group_order = 0;
  std::uint32_t total = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> size_histogram;  // (size, count)
  std::uint32_t point_coset_count = 0;
  std::uint32_t line_coset_count = 0;
  std::uint32_t neither_count = 0;
  std::vector<std::vector<std::uint32_t>> neither_witnesses;
  std::vector<std::vector<std::uint32_t>> wrong_size_witnesses;
  // Independent double count: distinct point cosets / line cosets that are
  // maximal intersecting sets, built directly from the action.
  std::uint32_t expected_point_cosets = 0;
  std::uint32_t expected_line_cosets = 0;
  bool family_counts_match = false;
  bool sizes_ok = false;        // every maximal set has size q(q-1)
  bool holds = false;           // sizes_ok && neither_count == 0 && counts match
  bool complete = true;
  std::uint64_t output_hash = 0;
  std::uint64_t wall_ms = 0;  // reporting only; never serialized to JSON
  std::vector<std::vector<std::uint32_t>> sets;  // all maximal sets, lex order
  std::vector<Family> set_families;              // parallel to sets
};
CliqueCampaign verify_main_theorem(const GroupTable& G, const SearchLimits& lim = {});

// Maximum-size verification with the regular-cyclic-subgroup certificate.
struct EkrBoundResult {
  std::uint32_t q = 0;
  std::uint32_t group_order = 0;
  std::uint32_t max_size = 0;
  std::uint32_t expected = 0;  // q(q-1)
  std::vector<std::uint32_t> witness;
  std::uint32_t singer_order = 0;
  bool singer_clique_valid = false;
  std::uint64_t cc_product = 0;  // (q^2 - 1) * max_size
  bool cc_tight = false;
  bool holds = false;
  std::uint64_t wall_ms = 0;
};
EkrBoundResult verify_ekr_bound(const GroupTable& G, const SearchLimits& lim = {});

// Per-subgroup EKR verdict for the transitive-subgroup campaign.
struct SubgroupCheck {
  std::string label;
  std::uint32_t order = 0;
  bool transitive_points = false;
  bool transitive_o1 = false;
  bool transitive_o2 = false;
  bool skipped = false;  // not transitive on points; nothing asserted
  std::uint64_t bound = 0;  // |H| / (q^2 - 1)
  std::uint32_t total_maximal = 0;
  std::uint32_t max_size = 0;
  std::uint32_t neither_count = 0;
  bool bound_attained = false;
  bool all_within_bound = false;
  bool all_classified = false;
  bool ekr_holds = false;
};
struct Main2Campaign {
  std::uint32_t q = 0;
  bool full_lattice = false;
  std::uint32_t subgroups_examined = 0;
  std::uint32_t transitive_count = 0;
  std::vector<SubgroupCheck> checks;
  bool holds = false;
  std::uint64_t wall_ms = 0;
};
// auto_lattice: enumerate the full subgroup lattice (supported at q = 3).
// Otherwise the built-in constructions (special linear subgroup, normalizer
// of the regular cyclic subgroup, full group) are checked. `user_subgroups`
// are appended in both modes.
Main2Campaign verify_main2(const GroupTable& G, bool auto_lattice,
                           const std::vector<Subgroup>& user_subgroups,
                           const SearchLimits& lim = {});

// Named built-in subgroups for the main2 campaign.
Subgroup special_linear_subgroup(const GroupTable& G);
Subgroup singer_normalizer(const GroupTable& G);

// Lemma-level checks for one group: fixed-point counts, base machinery over
// the maximal non-canonical sets, eigenline projections, conjugation
// invariance, common-fixed-line propagation, and the pair-counting bound.
struct LemmasCampaign {
  std::uint32_t q = 0;
  bool fixed_point_counts_ok = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fix_count_histogram;
  std::uint32_t noncanonical_sets = 0;
  bool bases_nonempty_ok = false;
  bool bases_common_line_ok = false;
  bool minimal_cover_pairs_ok = false;  // no minimal covering triple
  bool kneser_ok = false;
  bool conjugation_ok = false;
  bool fix_line_line_ok = false;
  std::uint64_t fix_line_line_cases = 0;
  // A set that fixes a line through 0 setwise yet fixes no origin-avoiding
  // line. Such sets exist but always have a global fixed point; the first
  // one found is kept as the recorded counterexample to the broader reading.
  std::vector<std::uint32_t> setwise_counterexample;
  bool hm_arith_ok = false;
  bool kneser_scan_ok = false;
  bool holds = false;
  std::uint64_t wall_ms = 0;
};
LemmasCampaign verify_lemmas(const GroupTable& G, const SearchLimits& lim = {});

// Brute-force scan of the pair-Kneser graph on n points: maximum independent
// set is n-1; maximum maximal independent set contained in no star is 3.
struct KneserScan {
  std::uint32_t n = 0;
  std::uint32_t max_coclique = 0;
  std::uint32_t max_noncanonical_maximal = 0;
  bool ok = false;
};
KneserScan kneser_pair_scan(std::uint32_t n);

// GL(3,2) probe: enumerate the maximal intersecting sets and classify them
// against point cosets and hyperplane-stabilizer cosets; the interesting
// output is any maximal set lying in neither family.
struct Gl3Probe {
  std::uint32_t group_order = 0;
  std::uint32_t total_maximal = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> size_histogram;
  std::uint32_t point_family = 0;
  std::uint32_t hyperplane_family = 0;
  std::uint32_t outside_both = 0;
  std::uint32_t max_size = 0;
  std::optional<std::vector<std::uint32_t>> first_outside_witness;
  bool witness_found = false;
  bool complete = true;
  std::uint64_t output_hash = 0;
  std::uint64_t wall_ms = 0;
};
Gl3Probe gl3_probe(const GroupTable& G3, const SearchLimits& lim = {});

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ekrlab
