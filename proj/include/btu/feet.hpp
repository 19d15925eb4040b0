#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "btu/field.hpp"
#include "btu/projective.hpp"
#include "btu/unital.hpp"

namespace btu {

using StPair = std::pair<Felt, Felt>;  // (s, t) in F_q x F_q

/// Intersection of a line [a1+a2*eps, b1+b2*eps, 1] with the feet of P = (1, y1+y2*eps, z1+z2*eps),
/// written as conditions on the parameters (s, t) of P_{r,s,t}, with r = a1 + b1*s + b2*delta*t.
struct FeetSystem {
  Felt a1, a2, b1, b2;
  Felt y1, y2, z1, z2;

  /// Throws std::invalid_argument when P is on l_inf or U, or when the line has z-coefficient 0.
  static FeetSystem make(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p, const ProjLine& l);

  Felt r(const FieldCtx& f, Felt s, Felt t) const;
  /// s^2 + delta t^2 + st + (y1+b1)s + (y1+y2 delta+b2 delta)t + z1 + a1 = 0
  bool conic_eq(const FieldCtx& f, Felt s, Felt t) const;
  /// f(s,t) = b2 s + (b1+b2)t + a2
  bool ovoid_eq(const FieldCtx& f, Felt s, Felt t) const;
  /// y2 s + y1 t + z2 = b2 s + (b1+b2)t + a2
  bool linear_eq(const FieldCtx& f, Felt s, Felt t) const;

  /// Number of (s, t) in F_q^2 satisfying all three, by full enumeration.
  std::uint32_t count(const FieldCtx& f) const;
};

/// The q+1 pairs (s, t) with f(s,t) = y2 s + y1 t + z2 for an affine point P.
std::vector<StPair> feet_parameters(const FieldCtx& f, const ProjPoint& p);

/// |l ∩ feet(P)| from the intersection system. Lines with z-coefficient 0 are handled by testing
/// alpha + beta(s + t eps) = 0 on the feet parameters. Throws for P on l_inf or U.
std::uint32_t feet_line_count(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p, const ProjLine& l);
/// Same, with feet_parameters(p) supplied by the caller.
std::uint32_t feet_line_count(const FieldCtx& f, const ProjPoint& p, std::span<const StPair> params,
                              const ProjLine& l);

enum class LineClass { easy, special_pencil, through_p };
std::string to_string(LineClass c);

/// For P = (1, y1, z2 eps): special_pencil iff l = [a1 + z2 eps, y1, 1]; otherwise through_p when
/// P is on l; otherwise easy. Throws std::invalid_argument when P is not of that form.
LineClass classify_line(const FieldCtx& f, const ProjPoint& p, const ProjLine& l);

/// Membership in the pencil [a1 + z2 eps, (y1+y2) + y2 eps, 1], a1 in F_q, for any affine P. These
/// are the lines on which the linear condition vanishes identically.
bool on_special_pencil(const FieldCtx& f, const ProjPoint& p, const ProjLine& l);
/// (0, 1, y1+y2 + y2 eps), the common point of that pencil.
ProjPoint special_pencil_centre(const FieldCtx& f, const ProjPoint& p);

/// Common solutions in F_q^2 of s^2 + delta t^2 + st = y1 t + a1 and f(s,t) = y1 t + z2.
std::vector<StPair> simple_system_solutions(const FieldCtx& f, Felt y1, Felt a1, Felt z2);

/// Points and lines of PG(2, q) over the subfield, as normalized triples.
std::vector<Triple> subplane_points(const FieldCtx& f);

/// c_xx x^2 + c_yy y^2 + c_zz z^2 + c_xy xy + c_xz xz + c_yz yz over F_q.
struct Conic {
  Felt xx, yy, zz, xy, xz, yz;
  Felt eval(const FieldCtx& f, const Triple& p) const;
  /// c_xx c_yz^2 + c_yy c_xz^2 + c_zz c_xy^2 + c_xy c_xz c_yz; zero iff degenerate.
  Felt discriminant(const FieldCtx& f) const;
  std::vector<Triple> points(const FieldCtx& f) const;
};

/// (c_yz, c_xz, c_xy), normalized. Throws std::domain_error for a degenerate conic.
Triple conic_nucleus(const FieldCtx& f, const Conic& c);

/// Nucleus of a set of q+1 points of PG(2, q): the tangents at two points are intersected and the
/// result is confirmed on all q+1 lines through it. Returns nullopt when the set has no nucleus.
/// Throws std::invalid_argument unless the set has q+1 points.
std::optional<Triple> oval_nucleus(const FieldCtx& f, std::span<const Triple> oval);

/// Projective points of the affine curve f(s,t) = y1 t + z2 (as (s, t, 1)).
std::vector<Triple> feet_oval(const FieldCtx& f, Felt y1, Felt z2);
/// The conic s^2 + delta t^2 + st + y1 tz + a1 z^2.
Conic feet_conic(const FieldCtx& f, Felt y1, Felt a1);

/// Translation oval D_sigma = {(1, t, t^sigma)} ∪ {(0, 0, 1)}.
std::vector<Triple> translation_oval(const FieldCtx& f);
/// |D_sigma ∩ C| for C: a1 x^2 + a2 y^2 + a3 z^2 + xz. Throws std::invalid_argument if a2 = 0 or a
/// coefficient lies outside F_q.
std::uint32_t translation_oval_conic_cap(const FieldCtx& f, Felt a1, Felt a2, Felt a3);

/// The q+1 points {P_u : u in F_q} ∪ {(z2^(1-sigma/2), z2^(sigma/2))}, P_u in subfield order and the extra point last.
/// Throws std::invalid_argument for z2 = 0 and std::logic_error if 1+u+u^sigma vanishes.
std::vector<StPair> oval_parameterisation(const FieldCtx& f, Felt z2);

/// a1^(s/2) u^s + (z2^(s-1) + d^(s/2) z2 + z2^(s/2) + a1^(s/2)) u^2 + z2^(s/2) u + d^(s/2) z2 + a1^(s/2)
/// with s = sigma, d = delta.
Felt membership_polynomial(const FieldCtx& f, Felt a1, Felt z2, Felt u);
/// Number of roots in F_q, by evaluation.
std::uint32_t membership_polynomial_roots(const FieldCtx& f, Felt a1, Felt z2);

/// Roots in F_q of c^(-s/2) u^s + (c^(s-2) + c^(-1)) u^2 + c^(-1) u (c != 0); c = delta gives the
/// four-point witness.
std::uint32_t linearised_family_roots(const FieldCtx& f, Felt c);
/// (a^(s/2)+1) u^s + a u^2 + u.
Felt h1_polynomial(const FieldCtx& f, Felt a, Felt u);

/// True iff z^(sigma/2) + z + c has a root in F_q, by enumeration. Throws for c outside F_q.
bool menichetti_solvable(const FieldCtx& f, Felt c);

struct Witness {
  std::string name;
  ProjPoint point;
  ProjLine line;
  std::vector<ProjPoint> intersection;  // l ∩ feet_direct(P)
  std::uint32_t expected = 0;
  bool on_special_pencil = false;
  bool holds() const { return intersection.size() == expected; }
};

/// P = (1, 0, eps), l = [delta + eps, 0, 1]; three points expected.
Witness witness_three(const FieldCtx& f, const UnitalSet& u);
/// P = (1, 0, delta^(-sigma) eps), l = [1/delta + (1/delta^2) eps, 0, 1]; four points expected.
Witness witness_four(const FieldCtx& f, const UnitalSet& u);
/// The same P with l = [1/delta + delta^(-sigma) eps, 0, 1], the special-pencil line with
/// a1 = 1/delta that the root count describes.
Witness witness_four_pencil(const FieldCtx& f, const UnitalSet& u);

struct FeetOracleReport {
  std::uint64_t points = 0;
  std::uint64_t formula_mismatches = 0;  // feet_formula != feet_direct
  std::uint64_t pairs = 0;
  std::uint64_t count_mismatches = 0;    // feet_line_count != |l ∩ feet_direct(P)|
  std::uint64_t tangent_lines = 0;       // tangents through P checked
  std::uint64_t tangent_not_one = 0;
  std::uint64_t c0_lines = 0;            // lines alpha x + y = 0 checked
  std::uint64_t c0_over_one = 0;
  std::uint64_t infinity_collinear_failures = 0;  // P on l_inf \ {P_inf} with non-collinear feet
  std::optional<std::pair<ProjPoint, ProjLine>> first_mismatch;
  bool ok() const;
};

/// Every point_stride-th admissible point (index order). For each, feet_formula is compared with
/// feet_direct, and feet_line_count with the geometric count on every line_stride-th line plus,
/// when line_stride > 1, every line holding two or more feet. Points of l_inf \ {P_inf} are all
/// checked for collinear feet.
FeetOracleReport feet_oracle_check(const FieldCtx& f, const UnitalSet& u, unsigned threads = 1,
                                   std::size_t point_stride = 1, std::size_t line_stride = 1);

struct SpectrumRow {
  Felt a;  // representative (1, a, b eps)
  Felt b;
  std::array<std::uint64_t, 5> k{};  // lines meeting the feet in 0..4 points
};

struct SpectrumReport {
  bool all_points = false;
  std::uint64_t points_scanned = 0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // over all scanned (P, l)
  std::vector<SpectrumRow> rows;                     // one per orbit representative
  std::map<std::uint32_t, Witness> witnesses;        // first (P, l) for each count, scan order
  std::uint32_t max_count = 0;
  std::uint64_t high_off_pencil = 0;    // count >= 3 on a line off the special pencil
  std::uint64_t easy_over_two = 0;      // line off the pencil and not through P, count > 2
  std::uint64_t pencil_size_failures = 0;  // canonical P whose special pencil does not have q lines
  std::uint64_t collinear_feet = 0;     // P whose feet are collinear
  std::uint64_t invariance_checked = 0;  // points compared against their representative
  std::uint64_t invariance_failures = 0;
  bool all_k_realised() const;
  bool ok() const;
};

/// Scans the orbit representatives, or every admissible point with all_points. In both modes each
/// point's histogram is compared with its representative's: for the representatives' G-images in
/// representative mode when check_invariance is set, and for every point in all-points mode.
SpectrumReport full_spectrum_scan(const FieldCtx& f, const UnitalSet& u, bool all_points, bool check_invariance,
                                  unsigned threads = 1);

struct AnalyticReport {
  // Feet conic and oval over all (y1, a1, z2) in F_q^3.
  std::uint64_t nucleus_cases = 0;
  std::uint64_t degenerate_conics = 0;
  std::uint64_t conic_nucleus_failures = 0;    // formula or geometric nucleus != (y1, 0, 1)
  std::uint64_t oval_nucleus_failures = 0;     // oval nucleus != (y1, 0, 1) or oval size != q+1
  std::uint64_t oval_on_unital_cases = 0;      // z2 = y1^(sigma+2): the curve is a single point
  std::uint64_t oval_on_unital_failures = 0;   // ... and it is not
  std::uint32_t simple_system_max = 0;
  std::map<std::uint32_t, std::uint64_t> simple_system_histogram;
  // Translation oval against conics with nucleus (0,1,0).
  bool translation_nucleus_ok = false;  // nucleus of D_sigma is (0,1,0)
  std::uint64_t cap_cases = 0;
  std::uint32_t cap_max = 0;
  std::uint32_t cap_max_a3_zero = 0;
  std::map<std::uint32_t, std::uint64_t> cap_histogram;
  // Parameterisation and root counts for y1 = 0.
  std::uint64_t parameterisation_failures = 0;  // z2 != 0 with output != solution set
  std::uint64_t denominator_zeros = 0;          // u with 1 + u + u^sigma = 0
  std::uint64_t root_channel_failures = 0;      // roots + closing point != simple system count
  std::map<std::uint32_t, std::uint64_t> family_roots;  // linearised family: roots -> #c
  std::uint64_t family_trace_failures = 0;      // c != 1, Tr(c) = 1 but fewer than four roots
  std::uint32_t family_c1_roots = 0;            // c = 1, where a = c^(s-1)+1 vanishes
  std::uint64_t h1_failures = 0;                // u = 0 or u = a^(-(1+s/2)) not a root
  std::uint32_t delta_family_roots = 0;         // linearised_family_roots(delta)
  // Menichetti criterion and trace identity over F_q.
  std::uint64_t menichetti_failures = 0;
  std::uint64_t trace_identity_failures = 0;
  bool ok(const FieldCtx& f) const;
};

AnalyticReport analytic_lemmas(const FieldCtx& f);

}  // namespace btu
