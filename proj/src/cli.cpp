#include "ekrlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ekrlab/ekr.hpp"
#include "ekrlab/error.hpp"
#include "ekrlab/field.hpp"
#include "ekrlab/geometry.hpp"
#include "ekrlab/group.hpp"
#include "ekrlab/report.hpp"
#include "ekrlab/search.hpp"
#include "ekrlab/textio.hpp"

namespace ekrlab {
namespace {

struct Options {
  std::uint32_t q = 0;
  std::string field_spec;
  std::string which = "all";
  std::string format = "text";
  std::string out_path;
  std::string gens;
  std::string emit_witnesses;
  std::string input_file;
  std::uint64_t timeout_secs = 600;
  std::uint32_t cap_vertices = kDefaultVertexCap;
  bool long_run = false;
};

Field field_from(const Options& o) {
  if (!o.field_spec.empty()) return parse_field(o.field_spec);
  if (o.q == 0) throw Error(Errc::Usage, "one of --q or --field is required");
  return Field::from_order(o.q);
}

SearchLimits limits_from(const Options& o) {
  SearchLimits lim;
  lim.budget = std::chrono::milliseconds(o.timeout_secs * 1000);
  return lim;
}

void require_vertex_cap(const GroupTable& G, const Options& o) {
  if (G.size() > o.cap_vertices) {
    std::ostringstream msg;
    msg << "group order " << G.size() << " exceeds the search vertex cap " << o.cap_vertices
        << " (raise --cap-vertices or EKRLAB_CAP_VERTICES)";
    throw Error(Errc::BoundExceeded, msg.str());
  }
}

void require_long_run(const Options& o, std::uint32_t q) {
  if (q >= 7 && !o.long_run) {
    std::ostringstream msg;
    msg << "campaigns at q = " << q << " are expensive and report-only; pass --long-run";
    throw Error(Errc::Usage, msg.str());
  }
}

std::string mats_string(const GroupTable& G, const std::vector<std::uint32_t>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out << ";";
    out << format_mat(G.field(), G.element(ids[i]));
  }
  return out.str();
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

CheckStatus verdict(bool ok, bool assertive) {
  if (!assertive) return CheckStatus::Info;
  return ok ? CheckStatus::Pass : CheckStatus::Fail;
}

void add_size_histogram(Report& r, const std::string& name,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& hist) {
  HistogramTable t;
  t.name = name;
  for (const auto& [k, v] : hist) t.rows.emplace_back(std::to_string(k), v);
  r.histograms.push_back(std::move(t));
}

// ---- verify sub-reports ----------------------------------------------------

void append_ekr_checks(Report& r, const GroupTable& G, const Options& o, bool assertive) {
  EkrBoundResult e = verify_ekr_bound(G, limits_from(o));
  {
    std::ostringstream d;
    d << "maximum intersecting size " << e.max_size << ", expected q(q-1) = " << e.expected;
    Check c{"thm:EKR-GL", "maximum intersecting size equals q(q-1)", CheckStatus::Info, d.str(), {}};
    c.status = verdict(e.max_size == e.expected, assertive);
    c.witnesses.push_back("maximum set: " + mats_string(G, e.witness));
    r.add_check(std::move(c));
  }
  {
    std::ostringstream d;
    d << "cyclic order " << e.singer_order << ", clique valid " << yesno(e.singer_clique_valid)
      << ", product " << e.cc_product << " of group order " << e.group_order << " (tight "
      << yesno(e.cc_tight) << ")";
    Check c{"cert:singer", "regular cyclic subgroup certifies the bound", CheckStatus::Info,
            d.str(), {}};
    c.status = verdict(e.singer_order == e.q * e.q - 1 && e.singer_clique_valid && e.cc_tight,
                       assertive);
    r.add_check(std::move(c));
  }
  r.counts.emplace_back("max_intersecting_size", e.max_size);
  r.counts.emplace_back("singer_order", e.singer_order);
  r.timings_ms.emplace_back("ekr", e.wall_ms);
}

void append_main_checks(Report& r, const GroupTable& G, const Options& o, bool assertive) {
  CliqueCampaign c = verify_main_theorem(G, limits_from(o));
  {
    std::ostringstream d;
    d << c.total << " maximal intersecting sets, all sizes q(q-1) " << yesno(c.sizes_ok)
      << ", enumeration complete " << yesno(c.complete);
    Check chk{"cor:maximal-maximum", "every maximal intersecting set is maximum",
              CheckStatus::Info, d.str(), {}};
    chk.status = verdict(c.sizes_ok && c.complete, assertive);
    for (const auto& w : c.wrong_size_witnesses) chk.witnesses.push_back(mats_string(G, w));
    r.add_check(std::move(chk));
  }
  {
    std::ostringstream d;
    d << "point-coset " << c.point_coset_count << ", line-coset " << c.line_coset_count
      << ", neither " << c.neither_count;
    Check chk{"thm:main", "every maximal intersecting set lies in a canonical family",
              CheckStatus::Info, d.str(), {}};
    chk.status = verdict(c.neither_count == 0 && c.complete, assertive);
    for (const auto& w : c.neither_witnesses) chk.witnesses.push_back(mats_string(G, w));
    r.add_check(std::move(chk));
  }
  {
    std::ostringstream d;
    d << "direct construction counts " << c.expected_point_cosets << " point cosets and "
      << c.expected_line_cosets << " line cosets; classified counts match "
      << yesno(c.family_counts_match);
    Check chk{"thm:main", "family counts match the direct coset construction", CheckStatus::Info,
              d.str(), {}};
    chk.status = verdict(c.family_counts_match, assertive);
    r.add_check(std::move(chk));
  }
  add_size_histogram(r, "maximal_set_sizes", c.size_histogram);
  r.counts.emplace_back("total_maximal_sets", c.total);
  r.counts.emplace_back("point_coset_sets", c.point_coset_count);
  r.counts.emplace_back("line_coset_sets", c.line_coset_count);
  r.counts.emplace_back("neither_sets", c.neither_count);
  r.counts.emplace_back("enumeration_hash", c.output_hash);
  r.timings_ms.emplace_back("main", c.wall_ms);
}

void append_main2_checks(Report& r, const GroupTable& G, const Options& o, bool assertive) {
  std::vector<Subgroup> user;
  if (!o.gens.empty()) {
    std::vector<std::uint32_t> ids;
    for (const Mat& m : parse_mat_list(G.field(), o.gens)) ids.push_back(G.id_of(m));
    user.push_back(subgroup_closure(G, ids));
  }
  const bool auto_lattice = G.field().q() == 3;
  Main2Campaign m = verify_main2(G, auto_lattice, user, limits_from(o));
  std::ostringstream d;
  d << m.subgroups_examined << " subgroups examined ("
    << (m.full_lattice ? "full lattice" : "built-in constructions") << "), "
    << m.transitive_count << " transitive, all with the EKR property " << yesno(m.holds);
  Check chk{"thm:main2", "every transitive subgroup has the EKR property", CheckStatus::Info,
            d.str(), {}};
  chk.status = verdict(m.holds, assertive);
  HistogramTable orders;
  orders.name = "transitive_subgroup_orders";
  std::map<std::uint32_t, std::uint64_t> tally;
  for (const auto& s : m.checks) {
    if (s.skipped) continue;
    ++tally[s.order];
    std::ostringstream w;
    w << s.label << ": bound " << s.bound << ", max " << s.max_size << ", maximal sets "
      << s.total_maximal << ", neither " << s.neither_count << ", transitive on lines off 0 "
      << yesno(s.transitive_o2) << (s.ekr_holds ? "" : "  <-- FAILS");
    chk.witnesses.push_back(w.str());
  }
  for (const auto& [k, v] : tally) orders.rows.emplace_back(std::to_string(k), v);
  r.add_check(std::move(chk));
  r.histograms.push_back(std::move(orders));
  r.counts.emplace_back("subgroups_examined", m.subgroups_examined);
  r.counts.emplace_back("transitive_subgroups", m.transitive_count);
  r.timings_ms.emplace_back("main2", m.wall_ms);
}

void append_lemma_checks(Report& r, const GroupTable& G, const Options& o, bool assertive) {
  LemmasCampaign l = verify_lemmas(G, limits_from(o));
  auto add = [&](const char* anchor, const char* name, bool ok, std::string details) {
    Check c{anchor, name, verdict(ok, assertive), std::move(details), {}};
    r.add_check(std::move(c));
  };
  {
    std::ostringstream d;
    d << "counts over all elements:";
    for (const auto& [k, v] : l.fix_count_histogram) d << " " << k << ":" << v;
    add("prop:fixed-points", "non-identity elements fix 0 or q-1 points",
        l.fixed_point_counts_ok, d.str());
  }
  {
    std::ostringstream d;
    d << l.noncanonical_sets << " maximal sets with no global fixed point";
    add("lem:base", "non-canonical maximal sets own a base", l.bases_nonempty_ok, d.str());
  }
  add("thm:bases", "every base fixes a common line through the origin", l.bases_common_line_ok,
      "checked over all bases of all non-canonical maximal sets");
  add("lem:base-of-size-2", "no minimal covering subset has size three",
      l.minimal_cover_pairs_ok, "triple sweep over non-canonical maximal sets");
  add("thm:main", "eigenline pairs of a normalized set overlap pairwise", l.kneser_ok,
      "projection of the diagonalizable members of each non-canonical maximal set");
  add("lem:change-of-basis", "conjugation preserves intersection and transports fixed points",
      l.conjugation_ok, "sampled conjugators against point- and line-family sets");
  {
    std::ostringstream d;
    d << l.fix_line_line_cases << " intersecting sets fixing a line through 0 setwise ("
      << (G.field().q() == 3 ? "exhaustive over the setwise stabilizer" : "pair/triple sweep")
      << ")";
    add("lem:fix-line-line", "no global fixed point forces a fixed line off the origin",
        l.fix_line_line_ok, d.str());
  }
  {
    Check c{"lem:fix-line-line", "broader setwise reading counterexample", CheckStatus::Info, "",
            {}};
    if (!l.setwise_counterexample.empty()) {
      c.details =
          "set fixes a line through 0 setwise, fixes no line off the origin, and has a global "
          "fixed point";
      c.witnesses.push_back(mats_string(G, l.setwise_counterexample));
    } else {
      c.details = "none found";
    }
    r.add_check(std::move(c));
  }
  add("eq:HM", "pair bound arithmetic equals 3", l.hm_arith_ok,
      "hm_bound(n,2) = 3 for n in 4..16");
  add("eq:HM", "pair-family brute force matches the bound", l.kneser_scan_ok,
      "exhaustive pair-family scan for n in {4,5,6}");
  HistogramTable fix;
  fix.name = "fixed_point_counts";
  for (const auto& [k, v] : l.fix_count_histogram) fix.rows.emplace_back(std::to_string(k), v);
  r.histograms.push_back(std::move(fix));
  r.counts.emplace_back("noncanonical_maximal_sets", l.noncanonical_sets);
  r.counts.emplace_back("setwise_fixing_sets_checked", l.fix_line_line_cases);
  r.timings_ms.emplace_back("lemmas", l.wall_ms);
}

// ---- commands --------------------------------------------------------------

Report cmd_verify(const Options& o) {
  Field F = field_from(o);
  const std::uint32_t q = F.q();
  require_long_run(o, q);
  GroupTable G = GroupTable::gl2(F);
  require_vertex_cap(G, o);
  // Larger q: report-only. At q = 2 the two canonical families coincide
  // (every line coset is also a point coset), so the strict cross-checks
  // are reported without being asserted.
  const bool assertive = q >= 3 && q <= 5;

  Report r;
  r.command = "verify";
  r.inputs.emplace_back("field", format_field(F));
  r.inputs.emplace_back("q", std::to_string(q));
  r.inputs.emplace_back("which", o.which);
  r.inputs.emplace_back("long_run", yesno(o.long_run));

  const bool all = o.which == "all";
  if (all || o.which == "ekr") append_ekr_checks(r, G, o, assertive);
  if (all || o.which == "main") append_main_checks(r, G, o, assertive);
  if (all || o.which == "main2") append_main2_checks(r, G, o, assertive);
  if (all || o.which == "lemmas") append_lemma_checks(r, G, o, assertive);

  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.status == CheckStatus::Fail;
  std::ostringstream s;
  if (failed)
    s << failed << " of " << r.checks.size() << " checks failed";
  else
    s << "all " << r.checks.size() << " checks "
      << (assertive ? "passed" : "completed (informational at this q)");
  if (q == 2) s << "; q = 2 is a degenerate edge case";
  r.summary = s.str();
  return r;
}

Report cmd_classify(const Options& o) {
  Field F = field_from(o);
  std::vector<Mat> mats;
  std::string source;
  if (!o.gens.empty()) {
    mats = parse_mat_list(F, o.gens);
    source = "gens";
  } else if (!o.input_file.empty()) {
    std::ifstream in(o.input_file);
    if (!in) throw Error(Errc::Usage, "cannot open input file " + o.input_file);
    mats = parse_mat_stream(F, in);
    source = "file:" + o.input_file;
  } else {
    throw Error(Errc::Usage, "classify needs a matrix file argument or --gens");
  }
  if (mats.empty()) throw Error(Errc::Usage, "no matrices in input");

  GroupTable G = GroupTable::gl2(F);
  std::vector<std::uint32_t> ids;
  for (const Mat& m : mats) ids.push_back(G.id_of(m));
  IntersectingSet S = make_intersecting(G, ids);  // NotIntersecting -> exit 1
  IntersectingSet N = normalize(G, S);
  const std::uint32_t shift = *std::min_element(S.members.begin(), S.members.end());

  Report r;
  r.command = "classify";
  r.inputs.emplace_back("field", format_field(F));
  r.inputs.emplace_back("q", std::to_string(F.q()));
  r.inputs.emplace_back("source", source);

  {
    std::ostringstream d;
    d << "yes; " << S.members.size() << " members, normalization shift "
      << format_mat(F, G.element(shift))
      << (S.normalized ? " (already contains the identity)" : "");
    r.add_check({"thm:main", "input set is intersecting", CheckStatus::Info, d.str(), {}});
  }
  Classification cls = classify(G, S.members);
  {
    std::ostringstream d;
    const char* v = cls.verdict == Family::PointCoset  ? "point-coset family"
                    : cls.verdict == Family::LineCoset ? "line-coset family"
                                                       : "neither family";
    d << v << "; point witnesses " << cls.point_witnesses.size() << ", line witnesses "
      << cls.line_witnesses.size() << ", line-stabilizer witness "
      << yesno(cls.line_stabilizer_witness);
    Check c{"thm:main", "classification against the canonical families", CheckStatus::Info,
            d.str(), {}};
    const Plane& plane = G.plane();
    for (const auto& [w1, w2] : cls.point_witnesses)
      c.witnesses.push_back("point pair " + format_vec(F, G.point(w1)) + " -> " +
                            format_vec(F, G.point(w2)));
    for (const auto& [l1, l2] : cls.line_witnesses)
      c.witnesses.push_back("line pair " + format_aff_line(F, plane.o2()[l1]) + " -> " +
                            format_aff_line(F, plane.o2()[l2]));
    r.add_check(std::move(c));
  }
  {
    auto bases = find_bases(G, N);
    std::ostringstream d;
    d << bases.size() << " bases (pairs with disjoint fixed-point sets)";
    Check c{"lem:base", "bases of the normalized set", CheckStatus::Info, d.str(), {}};
    for (const auto& b : bases) {
      std::ostringstream w;
      w << "{" << format_mat(F, G.element(b.a1)) << ", " << format_mat(F, G.element(b.a2))
        << "} common lines:";
      for (const auto& l : b.common_lines) w << " " << format_proj_line(F, l);
      c.witnesses.push_back(w.str());
    }
    r.add_check(std::move(c));
    r.counts.emplace_back("bases", bases.size());
  }
  {
    std::vector<std::uint32_t> diag{G.identity_id()};
    std::size_t skipped = 0;
    for (auto id : N.members) {
      if (id == G.identity_id()) continue;
      if (is_diagonalizable(F, G.element(id)))
        diag.push_back(id);
      else
        ++skipped;
    }
    std::sort(diag.begin(), diag.end());
    if (diag.size() >= 2) {
      KneserProjection proj = kneser_project(G, make_intersecting(G, diag));
      std::ostringstream d;
      d << proj.distinct.size() << " distinct eigenline pairs, pairwise overlapping "
        << yesno(proj.coclique);
      if (skipped) d << "; " << skipped << " non-diagonalizable members excluded";
      if (proj.common_line)
        d << "; forced common line " << format_proj_line(F, *proj.common_line);
      Check c{"thm:main", "eigenline pair projection", CheckStatus::Info, d.str(), {}};
      const Plane& plane = G.plane();
      for (const auto& [id, v] : proj.member_vertices)
        c.witnesses.push_back(format_mat(F, G.element(id)) + " -> {" +
                              format_proj_line(F, plane.o1()[v.l1]) + ", " +
                              format_proj_line(F, plane.o1()[v.l2]) + "}");
      r.add_check(std::move(c));
    } else {
      r.add_check({"thm:main", "eigenline pair projection", CheckStatus::Skip,
                   "no diagonalizable non-identity members", {}});
    }
  }
  r.counts.emplace_back("members", S.members.size());
  r.summary = "classification report";
  return r;
}

Report cmd_enumerate(const Options& o) {
  Field F = field_from(o);
  require_long_run(o, F.q());
  GroupTable G = GroupTable::gl2(F);
  require_vertex_cap(G, o);
  CliqueCampaign c = verify_main_theorem(G, limits_from(o));

  Report r;
  r.command = "enumerate";
  r.inputs.emplace_back("field", format_field(F));
  r.inputs.emplace_back("q", std::to_string(F.q()));
  r.counts.emplace_back("enumeration_hash", c.output_hash);
  {
    std::ostringstream d;
    d << c.total << " maximal intersecting sets; point-coset " << c.point_coset_count
      << ", line-coset " << c.line_coset_count << ", neither " << c.neither_count
      << "; complete " << yesno(c.complete);
    r.add_check({"cor:maximal-maximum", "maximal intersecting set enumeration",
                 CheckStatus::Info, d.str(), {}});
  }
  add_size_histogram(r, "maximal_set_sizes", c.size_histogram);
  r.counts.emplace_back("total_maximal_sets", c.total);
  r.timings_ms.emplace_back("enumerate", c.wall_ms);

  if (!o.emit_witnesses.empty()) {
    std::filesystem::create_directories(o.emit_witnesses);
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
      std::ostringstream name;
      name << "set_" << std::setw(4) << std::setfill('0') << (i + 1) << ".txt";
      std::ofstream out(std::filesystem::path(o.emit_witnesses) / name.str());
      for (auto id : c.sets[i]) out << format_mat(F, G.element(id)) << "\n";
    }
    r.counts.emplace_back("witness_files", c.sets.size());
  }
  std::ostringstream s;
  s << c.total << " maximal sets enumerated";
  r.summary = s.str();
  return r;
}

Report cmd_singer(const Options& o) {
  Field F = field_from(o);
  const std::uint32_t q = F.q();
  Mat m = singer_matrix(F);
  const std::uint32_t ord = element_order(F, m);
  const std::uint32_t expected = q * q - 1;

  // Regularity on the nonzero vectors: the orbit of [1,0] under powers hits
  // every point exactly once.
  std::vector<char> seen((std::size_t)q * q, 0);
  Vec v = vec_decode(F, 2, q);  // [1,0]
  std::uint32_t distinct = 0;
  Mat power = mat_identity(F, 2);
  for (std::uint32_t i = 0; i < ord; ++i) {
    Vec image = mat_vec(F, power, v);
    std::uint32_t code = vec_encode(F, image);
    if (!seen[code]) {
      seen[code] = 1;
      ++distinct;
    }
    power = mat_mul(F, power, m);
  }
  const bool regular = distinct == expected && ord == expected;

  // The cyclic subgroup is a clique of the derangement graph: every
  // non-identity power is fixed-point-free.
  bool clique = true;
  power = m;
  for (std::uint32_t i = 1; i < ord; ++i) {
    if (has_eigenvalue_one(F, power)) clique = false;
    power = mat_mul(F, power, m);
  }
  const std::uint64_t group_order = (std::uint64_t)expected * (expected - q + 1);
  const std::uint64_t product = (std::uint64_t)ord * q * (q - 1);

  Report r;
  r.command = "singer";
  r.inputs.emplace_back("field", format_field(F));
  r.inputs.emplace_back("q", std::to_string(q));
  {
    std::ostringstream d;
    d << "generator " << format_mat(F, m) << ", order " << ord << ", regular on the " << expected
      << " nonzero vectors " << yesno(regular);
    Check c{"cert:singer", "regular cyclic subgroup", CheckStatus::Info, d.str(), {}};
    c.status = regular ? CheckStatus::Pass : CheckStatus::Fail;
    c.witnesses.push_back(format_mat(F, m));
    r.add_check(std::move(c));
  }
  {
    std::ostringstream d;
    d << "non-identity powers fixed-point-free " << yesno(clique) << "; clique size " << ord
      << " times bound q(q-1) = " << product << ", group order " << group_order;
    Check c{"thm:EKR-GL", "cyclic clique certifies the intersecting bound", CheckStatus::Info,
            d.str(), {}};
    c.status = (clique && product == group_order) ? CheckStatus::Pass : CheckStatus::Fail;
    r.add_check(std::move(c));
  }
  r.counts.emplace_back("singer_order", ord);
  r.summary = "regular cyclic subgroup certificate";
  return r;
}

Report cmd_probe_gl32(const Options& o) {
  GroupTable G3 = GroupTable::gl3_f2();
  require_vertex_cap(G3, o);
  Gl3Probe p = gl3_probe(G3, limits_from(o));

  Report r;
  r.command = "probe-gl32";
  r.inputs.emplace_back("group", "invertible 3x3 matrices over GF(2)");
  {
    std::ostringstream d;
    d << p.total_maximal << " maximal intersecting sets; point-family " << p.point_family
      << ", hyperplane-family " << p.hyperplane_family << ", outside both " << p.outside_both
      << "; complete " << yesno(p.complete);
    Check c{"probe:gl32", "maximal set outside both coset families exists", CheckStatus::Info,
            d.str(), {}};
    c.status = p.witness_found ? CheckStatus::Pass : CheckStatus::Fail;
    if (p.first_outside_witness) c.witnesses.push_back(mats_string(G3, *p.first_outside_witness));
    r.add_check(std::move(c));
  }
  add_size_histogram(r, "maximal_set_sizes", p.size_histogram);
  r.counts.emplace_back("total_maximal_sets", p.total_maximal);
  r.counts.emplace_back("outside_both_families", p.outside_both);
  r.counts.emplace_back("enumeration_hash", p.output_hash);
  r.timings_ms.emplace_back("probe", p.wall_ms);
  r.summary = p.witness_found ? "negative answer reproduced: witness found"
                              : "no witness found (unexpected)";
  return r;
}

Report cmd_subgroups(const Options& o) {
  Field F = field_from(o);
  GroupTable G = GroupTable::gl2(F);
  Report r;
  r.command = "subgroups";
  r.inputs.emplace_back("field", format_field(F));
  r.inputs.emplace_back("q", std::to_string(F.q()));

  std::vector<Subgroup> subs;
  if (!o.gens.empty()) {
    std::vector<std::uint32_t> ids;
    for (const Mat& m : parse_mat_list(F, o.gens)) ids.push_back(G.id_of(m));
    subs.push_back(subgroup_closure(G, ids));
    r.inputs.emplace_back("source", "gens");
  } else {
    if (F.q() > 3)
      throw Error(Errc::Usage, "the full subgroup lattice is supported at q <= 3; pass --gens");
    subs = all_subgroups(G);
    r.inputs.emplace_back("source", "lattice");
  }

  std::map<std::uint32_t, std::uint64_t> orders;
  std::uint32_t transitive = 0;
  Check c{"thm:main2", "subgroup survey", CheckStatus::Info, "", {}};
  for (const auto& h : subs) {
    ++orders[(std::uint32_t)h.order()];
    const bool tp = is_transitive(h, ActionDomain::Points);
    transitive += tp;
    std::ostringstream w;
    w << "order " << h.order() << ", transitive on points " << yesno(tp);
    if (tp) {
      w << ", on lines through 0 " << yesno(is_transitive(h, ActionDomain::LinesThroughOrigin))
        << ", on lines off 0 " << yesno(is_transitive(h, ActionDomain::LinesOffOrigin));
    }
    if (!h.gens.empty()) w << ", gens " << mats_string(G, h.gens);
    c.witnesses.push_back(w.str());
  }
  std::ostringstream d;
  d << subs.size() << " subgroups, " << transitive << " transitive on the nonzero vectors";
  c.details = d.str();
  r.add_check(std::move(c));
  HistogramTable t;
  t.name = "subgroup_orders";
  for (const auto& [k, v] : orders) t.rows.emplace_back(std::to_string(k), v);
  r.histograms.push_back(std::move(t));
  r.counts.emplace_back("subgroups", subs.size());
  r.counts.emplace_back("transitive_subgroups", transitive);
  r.summary = "subgroup survey";
  return r;
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  std::string rendered;
  if (o.format == "json")
    rendered = r.to_json_text();
  else if (o.format == "csv")
    rendered = r.to_csv();
  else
    rendered = r.to_text();
  out << rendered;
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Error(Errc::Usage, "cannot write " + o.out_path);
    f << rendered;
  }
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::Timeout:
    case Errc::BoundExceeded: return 3;
    default: return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"verification toolkit for intersecting sets of invertible 2x2 matrices",
               "ekrlab"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("EKRLAB_CAP_VERTICES")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      o.cap_vertices = (std::uint32_t)std::min<unsigned long>(v, 0xffffffffUL);
  }

  auto add_common = [&](CLI::App* c) {
    c->add_option("--q", o.q, "field order (prime power)");
    c->add_option("--field", o.field_spec, "field spec, e.g. GF(3^2;1,0,1)");
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", o.out_path, "also write the report to this file");
    c->add_option("--timeout-secs", o.timeout_secs, "search budget in seconds");
    c->add_option("--cap-vertices", o.cap_vertices, "search graph vertex cap");
    c->add_flag("--long-run", o.long_run, "allow expensive report-only campaigns (q >= 7)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run verification campaigns");
  add_common(verify);
  verify->add_option("--which", o.which, "campaign selection")
      ->check(CLI::IsMember({"ekr", "main", "main2", "lemmas", "all"}));
  verify->add_option("--gens", o.gens, "extra subgroup generators for main2");

  CLI::App* classify = app.add_subcommand("classify", "classify one intersecting set");
  add_common(classify);
  classify->add_option("file", o.input_file, "file with one matrix per line");
  classify->add_option("--gens", o.gens, "inline ';'-separated matrix list");

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate maximal intersecting sets");
  add_common(enumerate);
  enumerate->add_option("--emit-witnesses", o.emit_witnesses,
                        "directory for one file per maximal set");

  CLI::App* singer = app.add_subcommand("singer", "regular cyclic subgroup certificate");
  add_common(singer);

  CLI::App* probe = app.add_subcommand("probe-gl32", "3x3 over GF(2) negative-case probe");
  add_common(probe);

  CLI::App* subgroups = app.add_subcommand("subgroups", "survey subgroups");
  add_common(subgroups);
  subgroups->add_option("--gens", o.gens, "inline ';'-separated matrix list");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    Report r;
    if (app.got_subcommand(verify))
      r = cmd_verify(o);
    else if (app.got_subcommand(classify))
      r = cmd_classify(o);
    else if (app.got_subcommand(enumerate))
      r = cmd_enumerate(o);
    else if (app.got_subcommand(singer))
      r = cmd_singer(o);
    else if (app.got_subcommand(probe))
      r = cmd_probe_gl32(o);
    else
      r = cmd_subgroups(o);
    emit(r, o, out);
    return r.any_failed() ? 2 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ekrlab
