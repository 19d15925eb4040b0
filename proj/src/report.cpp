#include "btu/report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "btu/abb.hpp"
#include "btu/parallel.hpp"
#include "btu/stabilizer.hpp"
#include "btu/unital.hpp"

namespace btu {

std::string to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::pass:
      return "pass";
    case SuiteStatus::fail:
      return "fail";
    case SuiteStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

Json hex_triple(const Triple& t) { return Json::array({to_hex(t[0]), to_hex(t[1]), to_hex(t[2])}); }

namespace {

Json hex_point(const ProjPoint& p) { return hex_triple(p.c); }
Json hex_line(const ProjLine& l) { return hex_triple(l.c); }

template <typename K, typename V>
Json histogram_json(const std::map<K, V>& h) {
  Json out = Json::object();
  for (const auto& [k, v] : h) out[std::to_string(k)] = v;
  return out;
}

Json witness_json(const Witness& w) {
  Json pts = Json::array();
  for (const auto& p : w.intersection) pts.push_back(hex_point(p));
  return Json{{"name", w.name},
              {"point", hex_point(w.point)},
              {"line", hex_line(w.line)},
              {"expected", w.expected},
              {"count", w.intersection.size()},
              {"holds", w.holds()},
              {"on_special_pencil", w.on_special_pencil},
              {"intersection", pts}};
}

SuiteStatus status_of(bool ok) { return ok ? SuiteStatus::pass : SuiteStatus::fail; }

struct Context {
  const RunOptions& opt;
  FieldCtx f;
  std::optional<UnitalSet> unital;
  VerificationReport& report;

  const UnitalSet& u() {
    if (!unital) unital.emplace(build_bt_unital(f));
    return *unital;
  }
};

using SuiteFn = std::function<void(Context&, SuiteResult&)>;

void suite_field_context(Context& c, SuiteResult& r) {
  const FieldCtx& f = c.f;
  const auto ex = f.exponent_inverse_check();
  const auto sq = f.sigma_square_check();
  Json sub = Json::array();
  for (const Felt x : f.subfield()) sub.push_back(to_hex(x));
  Json pairs = Json::array();
  for (const auto& p : ex.pairs)
    pairs.push_back({{"name", p.name}, {"exponent", p.exponent}, {"inverse", p.inverse}, {"bijective", p.bijective},
                     {"inverse_holds", p.inverse_holds}});
  const Felt eps = f.epsilon();
  const bool eps_ok = f.conj(eps) == eps + FieldCtx::one();
  const bool delta_ok = f.delta() == f.sqr(eps) + eps && f.in_subfield(f.delta()) && f.trace_abs(f.delta(), false) == 1;
  r.payload = {{"degree", f.degree()},
               {"sigma", f.sigma_exp()},
               {"delta_inverse", to_hex(f.inv(f.delta()))},
               {"subfield", sub},
               {"epsilon_conjugate_ok", eps_ok},
               {"delta_ok", delta_ok},
               {"exponent_pairs", pairs},
               {"exponent_violations", ex.violations},
               {"sigma_square",
                {{"subfield_violations", sq.subfield_violations}, {"big_field_violations", sq.big_field_violations}}}};
  r.note = "sigma is applied on F_q only; big_field_violations records the reading over F_{q^2}";
  r.status = status_of(eps_ok && delta_ok && ex.ok() && sq.subfield_violations == 0);
}

void suite_unital_build(Context& c, SuiteResult& r) {
  const UnitalSet& u = c.u();
  const std::uint64_t q = c.f.q();
  r.payload = {{"points", u.size()},
               {"expected", q * q * q + 1},
               {"contains_p_infinity", u.contains(p_infinity())}};
  r.status = status_of(u.size() == q * q * q + 1 && u.contains(p_infinity()));
}

void suite_unital_axiom(Context& c, SuiteResult& r) {
  const std::uint64_t q = c.f.q();
  const UnitalReport rep = verify_unital(c.u().points(), c.opt.threads);
  Json bad = Json::array();
  for (const auto& l : rep.violations) bad.push_back(hex_line(l));
  r.payload = {{"lines", rep.lines},
               {"histogram", histogram_json(rep.histogram)},
               {"tangents", rep.tangents},
               {"secants", rep.secants},
               {"violations", rep.violation_count},
               {"violating_lines", bad}};
  r.status = status_of(rep.ok() && rep.tangents == q * q * q + 1 && rep.secants == q * q * q * q - q * q * q + q * q);
}

void suite_subline_property(Context& c, SuiteResult& r) {
  const UnitalSet& u = c.u();
  const auto pts = u.points().points();
  // Exhaustive at e = 1; a fixed stride sample of affine points otherwise.
  const std::size_t stride = c.f.e() == 1 ? 1 : std::max<std::size_t>(1, pts.size() / 64);
  std::vector<std::size_t> chosen{0};
  for (std::size_t i = 1; i < pts.size(); i += stride) chosen.push_back(i);
  std::vector<char> has(chosen.size(), 0);
  u.incidence();
  parallel_for(chosen.size(), c.opt.threads,
               [&](std::size_t i, unsigned) { has[i] = has_subline_property(u, pts[chosen[i]]) ? 1 : 0; });
  std::uint64_t with = 0;
  bool p_inf_has = false;
  Json holders = Json::array();
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!has[i]) continue;
    ++with;
    if (pts[chosen[i]] == p_infinity()) p_inf_has = true;
    if (holders.size() < 16) holders.push_back(hex_point(pts[chosen[i]]));
  }
  r.payload = {{"points_checked", chosen.size()},
               {"exhaustive", stride == 1},
               {"points_with_property", with},
               {"p_infinity_has_property", p_inf_has},
               {"holders", holders}};
  r.status = status_of(with == 1 && p_inf_has);
}

void suite_abb_equality(Context& c, SuiteResult& r) {
  const FieldCtx& f = c.f;
  const Spread sp = build_spread(f);
  const SpreadCheck sc = check_spread(f, sp);
  const TitsOvoid ov = build_tits_ovoid(f);
  const bool cap = is_cap(f, ov.points);
  const OvoidalCone cone = build_cone(f, ov);
  const AbbComparison cmp = compare_with_unital(f, sp, cone);
  const std::uint64_t q = f.q();
  r.payload = {{"spread_elements", sp.elements.size()},
               {"spread_disjoint", sc.disjoint},
               {"spread_covers", sc.covers},
               {"ovoid_points", ov.points.size()},
               {"ovoid_is_cap", cap},
               {"cone_points", cone.points.size()},
               {"image_points", cmp.image_size},
               {"only_in_image", cmp.only_in_image.size()},
               {"only_in_unital", cmp.only_in_unital.size()},
               {"equal", cmp.equal}};
  r.status = status_of(sc.disjoint && sc.covers && cap && ov.points.size() == q * q + 1 && cmp.equal);
}

void suite_counting_identities(Context&, SuiteResult& r) {
  Json per_q = Json::array();
  bool ok = true;
  for (const std::uint64_t q : {8u, 32u, 128u}) {
    const IdentityReport rep = counting_identities(q);
    Json ids = Json::array();
    for (const auto& i : rep.identities) {
      ids.push_back({{"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds}});
      if (!i.holds) ok = false;
    }
    per_q.push_back({{"q", q}, {"identities", ids}});
  }
  r.payload = {{"fields", per_q}};
  r.note = "ovoids_tangent_to_plane_pg4_divisor divides by the hyperplane count of PG(4,q); "
           "ovoids_tangent_to_plane uses the plane count of PG(3,q)";
  r.status = status_of(ok);
}

void suite_group_law(Context& c, SuiteResult& r) {
  const GroupCensus g = group_census(c.f);
  r.payload = {{"order", g.order},
               {"order_histogram", histogram_json(g.order_histogram)},
               {"law_violations", g.law_violations},
               {"square_violations", g.square_violations},
               {"commutative", g.commutative},
               {"closed_with_inverses", g.closed_with_inverses},
               {"exponent", g.exponent},
               {"c4_factors", g.c4_factors},
               {"c2_factors", g.c2_factors},
               {"invariant_type", g.invariant_type}};
  r.status = status_of(g.ok(c.f));
  c.report.census = g;
}

void suite_psi(Context& c, SuiteResult& r) {
  const PsiReport p = psi_suite(c.f, c.u());
  const Collineation psi = build_psi(c.f);
  Json m = Json::array();
  for (const Felt x : psi.matrix) m.push_back(to_hex(x));
  r.payload = {{"matrix", m},
               {"frobenius", psi.frob},
               {"stabilises", p.stabilises},
               {"order", p.order},
               {"all_powers_stabilise", p.all_powers_stabilise},
               {"pencil_failures", p.pencil_failures},
               {"linear_power_order", p.linear_power_order},
               {"linear_power_in_g", p.linear_power_in_g},
               {"intersection_with_g", p.intersection_with_g},
               {"product_size", p.product_size},
               {"mu", to_hex(p.trace.mu)},
               {"trace_mu", p.trace.trace_mu},
               {"power_image", hex_point(p.trace.image)},
               {"power_image_expected", hex_point(p.trace.expected)},
               {"trace_identity_holds", p.trace.identity_holds}};
  r.status = status_of(p.ok(c.f));
}

void suite_orbit_representatives(Context& c, SuiteResult& r) {
  const OrbitReport o = orbit_check(c.f, c.u());
  r.payload = {{"representatives", o.representatives},
               {"admissible_points", o.admissible_points},
               {"covered", o.covered},
               {"all_orbits_full", o.all_orbits_full},
               {"pairwise_disjoint", o.pairwise_disjoint},
               {"reduction_consistent", o.reduction_consistent}};
  r.status = status_of(o.ok() && o.representatives == static_cast<std::size_t>(c.f.q()) * (c.f.q() - 1));
}

void suite_stabilizer(Context& c, SuiteResult& r, bool rethrow) {
  StabilizerOptions so;
  so.semilinear = c.opt.semilinear;
  so.threads = c.opt.threads;
  so.budget = c.opt.budget;
  so.force = c.opt.force;
  so.checkpoint_path = c.opt.checkpoint;
  so.shard_limit = c.opt.shard_limit;
  StabilizerReport s;
  try {
    s = exhaustive_flag_stabilizer(c.f, c.u(), so);
  } catch (const BudgetExceeded& ex) {
    if (rethrow) throw;
    r.status = SuiteStatus::skipped;
    r.note = ex.what();
    return;
  }
  const std::uint64_t q = c.f.q();
  const std::uint64_t expected = q * q * (c.opt.semilinear ? static_cast<std::uint64_t>(c.f.degree()) : 1);
  const std::uint64_t orbit = q * q * q * q * (q * q - 1) * (q * q - 1);
  Json probes = Json::array();
  for (const auto& p : s.probes) probes.push_back(hex_point(p));
  Json stab = Json::array();
  for (const auto& g : s.stabilisers) {
    Json m = Json::array();
    for (const Felt x : g.matrix) m.push_back(to_hex(x));
    stab.push_back({{"matrix", m}, {"frobenius", g.frob}});
  }
  r.payload = {{"semilinear", s.semilinear},
               {"candidate_space", s.candidate_space},
               {"candidates_scanned", s.candidates_scanned},
               {"shard_count", s.shard_count},
               {"shards_done", s.shards_done},
               {"shards_resumed", s.shards_resumed},
               {"complete", s.complete},
               {"rejected_by_probe", s.rejected_by_probe},
               {"full_checks", s.full_checks},
               {"stabilisers", s.stabilisers.size()},
               {"expected_stabilisers", expected},
               {"all_linear_in_g", s.all_linear_in_g},
               {"matches_expected_group", s.matches_expected_group},
               {"flag_group_order", s.flag_group_order},
               {"orbit_size", s.orbit_size},
               {"expected_orbit_size", orbit},
               {"elements", stab}};
  c.report.reproducibility["stabilizer"] = {{"probes", probes}, {"shard_count", s.shard_count},
                                            {"shard_order", "frobenius, x22, x33"}};
  if (!s.complete) {
    r.status = SuiteStatus::skipped;
    r.note = "partial scan: " + std::to_string(s.shards_done) + " of " + std::to_string(s.shard_count) +
             " shards; rerun with the same checkpoint to continue";
    return;
  }
  r.status = status_of(s.ok() && s.stabilisers.size() == expected && s.orbit_size == orbit);
}

void suite_feet_oracle(Context& c, SuiteResult& r) {
  const bool full = c.f.e() == 1;
  const std::size_t admissible = static_cast<std::size_t>(c.f.q()) * c.f.q() * c.f.q() * (c.f.q() - 1);
  const std::size_t point_stride = full ? 1 : std::max<std::size_t>(1, admissible / 1024);
  const std::size_t line_stride = full ? 1 : c.f.big_order() + 1;
  const FeetOracleReport o = feet_oracle_check(c.f, c.u(), c.opt.threads, point_stride, line_stride);
  r.payload = {{"points", o.points},
               {"point_stride", point_stride},
               {"line_stride", line_stride},
               {"formula_mismatches", o.formula_mismatches},
               {"pairs", o.pairs},
               {"count_mismatches", o.count_mismatches},
               {"tangent_lines", o.tangent_lines},
               {"tangent_not_one", o.tangent_not_one},
               {"alpha_x_plus_y_lines", o.c0_lines},
               {"alpha_x_plus_y_over_one", o.c0_over_one},
               {"infinity_collinear_failures", o.infinity_collinear_failures}};
  if (o.first_mismatch)
    r.witnesses.push_back({{"first_mismatch_point", hex_point(o.first_mismatch->first)},
                           {"first_mismatch_line", hex_line(o.first_mismatch->second)}});
  r.status = status_of(o.ok());
}

Json analytic_json(const FieldCtx& f, const AnalyticReport& a) {
  return Json{{"e", f.e()},
              {"nucleus_cases", a.nucleus_cases},
              {"degenerate_conics", a.degenerate_conics},
              {"conic_nucleus_failures", a.conic_nucleus_failures},
              {"oval_nucleus_failures", a.oval_nucleus_failures},
              {"oval_on_unital_cases", a.oval_on_unital_cases},
              {"oval_on_unital_failures", a.oval_on_unital_failures},
              {"simple_system_max", a.simple_system_max},
              {"simple_system_histogram", histogram_json(a.simple_system_histogram)},
              {"translation_nucleus_ok", a.translation_nucleus_ok},
              {"cap_cases", a.cap_cases},
              {"cap_max", a.cap_max},
              {"cap_max_a3_zero", a.cap_max_a3_zero},
              {"cap_histogram", histogram_json(a.cap_histogram)},
              {"parameterisation_failures", a.parameterisation_failures},
              {"denominator_zeros", a.denominator_zeros},
              {"root_channel_failures", a.root_channel_failures},
              {"family_roots", histogram_json(a.family_roots)},
              {"family_trace_failures", a.family_trace_failures},
              {"family_c1_roots", a.family_c1_roots},
              {"h1_failures", a.h1_failures},
              {"delta_family_roots", a.delta_family_roots},
              {"menichetti_failures", a.menichetti_failures},
              {"trace_identity_failures", a.trace_identity_failures},
              {"ok", a.ok(f)}};
}

void suite_analytic_lemmas(Context& c, SuiteResult& r) {
  const AnalyticReport a = analytic_lemmas(c.f);
  r.payload = analytic_json(c.f, a);
  r.status = status_of(a.ok(c.f));
}

void suite_witnesses(Context& c, SuiteResult& r) {
  const FieldCtx& f = c.f;
  const UnitalSet& u = c.u();
  const Witness w3 = witness_three(f, u);
  const Witness w4 = witness_four(f, u);
  const Witness w4p = witness_four_pencil(f, u);
  // (s, t) = (1, 1) on the three-point line: r = a1 = delta, f(1,1) = 1.
  const ProjPoint unit{{FieldCtx::one(), FieldCtx::one() + f.epsilon(), f.delta() + f.epsilon()}};
  const bool unit_in = std::find(w3.intersection.begin(), w3.intersection.end(), unit) != w3.intersection.end();
  const std::uint32_t pair_roots = membership_polynomial_roots(f, f.delta(), FieldCtx::one());
  r.witnesses = Json::array({witness_json(w3), witness_json(w4), witness_json(w4p)});
  r.payload = {{"three", w3.intersection.size()},
               {"three_contains_unit_point", unit_in},
               {"three_root_pair", pair_roots},
               {"four", w4.intersection.size()},
               {"four_pencil", w4p.intersection.size()}};
  r.note = "four uses [1/delta + (1/delta^2) eps, 0, 1], which is off the special pencil of P; four_pencil uses "
           "[1/delta + delta^(-sigma) eps, 0, 1]";
  r.status = status_of(w3.holds() && unit_in && pair_roots == 2 && w4.holds());
}

void suite_spectrum(Context& c, SuiteResult& r) {
  const bool invariance = c.opt.all_points || c.f.e() == 1;
  SpectrumReport s = full_spectrum_scan(c.f, c.u(), c.opt.all_points, invariance, c.opt.threads);
  Json rows = Json::array();
  for (const auto& row : s.rows) rows.push_back({{"a", to_hex(row.a)}, {"b", to_hex(row.b)}, {"k", row.k}});
  for (const auto& [k, w] : s.witnesses) r.witnesses.push_back(witness_json(w));
  r.payload = {{"scope", s.all_points ? "all" : "representatives"},
               {"points_scanned", s.points_scanned},
               {"histogram", histogram_json(s.histogram)},
               {"max_count", s.max_count},
               {"all_k_realised", s.all_k_realised()},
               {"high_off_pencil", s.high_off_pencil},
               {"easy_over_two", s.easy_over_two},
               {"pencil_size_failures", s.pencil_size_failures},
               {"collinear_feet", s.collinear_feet},
               {"invariance_checked", s.invariance_checked},
               {"invariance_failures", s.invariance_failures},
               {"rows", rows}};
  r.status = status_of(s.ok());
  c.report.spectrum = std::move(s);
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"field_context", suite_field_context},
      {"unital_build", suite_unital_build},
      {"unital_axiom", suite_unital_axiom},
      {"subline_property", suite_subline_property},
      {"abb_equality", suite_abb_equality},
      {"counting_identities", suite_counting_identities},
      {"group_law", suite_group_law},
      {"psi", suite_psi},
      {"orbit_representatives", suite_orbit_representatives},
      {"stabilizer", [](Context& c, SuiteResult& s) { suite_stabilizer(c, s, c.report.command == "stabilizer"); }},
      {"feet_oracle", suite_feet_oracle},
      {"analytic_lemmas", suite_analytic_lemmas},
      {"witnesses", suite_witnesses},
      {"spectrum", suite_spectrum},
  };
  return r;
}

}  // namespace

bool VerificationReport::failed() const {
  return std::any_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.status == SuiteStatus::fail; });
}

const SuiteResult& VerificationReport::suite(const std::string& name) const {
  for (const auto& s : suites)
    if (s.name == name) return s;
  throw std::out_of_range("no suite named " + name);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, fn] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"context", "build",   "verify-unital", "verify-abb",
                                             "group",   "stabilizer", "feet",        "spectrum",
                                             "witnesses", "identities", "all"};
  return s;
}

std::vector<std::string> suites_for(const std::string& subcommand) {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"context", {"field_context"}},
      {"build", {"unital_build"}},
      {"verify-unital", {"unital_build", "unital_axiom", "subline_property"}},
      {"verify-abb", {"abb_equality"}},
      {"group", {"group_law", "psi", "orbit_representatives"}},
      {"stabilizer", {"stabilizer"}},
      {"feet", {"feet_oracle", "analytic_lemmas"}},
      {"spectrum", {"spectrum"}},
      {"witnesses", {"witnesses"}},
      {"identities", {"counting_identities"}},
  };
  if (subcommand == "all") return suite_names();
  const auto it = m.find(subcommand);
  if (it == m.end()) throw std::invalid_argument("unknown subcommand: " + subcommand);
  return it->second;
}

VerificationReport run_suites(const std::string& subcommand, const RunOptions& opt) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto selected = suites_for(subcommand);

  VerificationReport rep;
  rep.command = subcommand;
  rep.options = opt;
  Context ctx{opt, FieldCtx::build(opt.e), std::nullopt, rep};
  const FieldCtx& f = ctx.f;
  rep.q = f.q();
  rep.degree = f.degree();
  rep.modulus = to_hex(f.modulus());
  rep.epsilon = to_hex(f.epsilon());
  rep.delta = to_hex(f.delta());
  rep.reproducibility = {{"subcommand", subcommand},
                         {"all_points", opt.all_points},
                         {"semilinear", opt.semilinear},
                         {"budget", opt.budget}};

  for (const auto& [name, fn] : registry()) {
    SuiteResult s;
    s.name = name;
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) {
      s.note = "not selected";
      rep.suites.push_back(std::move(s));
      continue;
    }
    const auto t0 = Clock::now();
    fn(ctx, s);
    s.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    rep.suites.push_back(std::move(s));
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

Json to_json(const VerificationReport& r, bool with_runtime) {
  Json suites = Json::array();
  std::map<std::string, int> tally{{"pass", 0}, {"fail", 0}, {"skipped", 0}};
  for (const auto& s : r.suites) {
    ++tally[to_string(s.status)];
    suites.push_back({{"name", s.name},
                      {"status", to_string(s.status)},
                      {"runtime_ms", with_runtime ? s.runtime_ms : 0.0},
                      {"note", s.note},
                      {"payload", s.payload},
                      {"witnesses", s.witnesses}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"artifact_version", kArtifactVersion},
              {"command", r.command},
              {"e", r.options.e},
              {"q", r.q},
              {"field", {{"degree", r.degree}, {"modulus", r.modulus}, {"epsilon", r.epsilon}, {"delta", r.delta}}},
              {"summary", {{"pass", tally["pass"]}, {"fail", tally["fail"]}, {"skipped", tally["skipped"]}}},
              {"suites", suites},
              {"reproducibility", r.reproducibility},
              {"runtime_ms", with_runtime ? r.runtime_ms : 0.0}};
}

std::string spectrum_csv(const SpectrumReport& s) {
  std::ostringstream out;
  out << "point_rep_a,point_rep_b,k0,k1,k2,k3,k4\n";
  for (const auto& row : s.rows) {
    out << to_hex(row.a) << ',' << to_hex(row.b);
    for (const auto k : row.k) out << ',' << k;
    out << '\n';
  }
  return out.str();
}

std::string census_csv(const GroupCensus& c) {
  std::ostringstream out;
  out << "order,elements\n";
  for (const auto& [k, n] : c.order_histogram) out << k << ',' << n << '\n';
  return out.str();
}

}  // namespace btu
