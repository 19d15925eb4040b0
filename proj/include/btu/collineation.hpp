#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btu/field.hpp"
#include "btu/projective.hpp"
#include "btu/unital.hpp"

namespace btu {

using Matrix3 = std::array<Felt, 9>;  // row-major

/// Semilinear collineation x -> x^(2^frob) * matrix (row vector, Frobenius first).
/// The matrix is scaled so its first nonzero entry in reading order is 1.
struct Collineation {
  Matrix3 matrix{};
  int frob = 0;
  friend bool operator==(const Collineation&, const Collineation&) = default;
  friend auto operator<=>(const Collineation&, const Collineation&) = default;
};

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Felt det3(const FieldCtx& f, const Matrix3& m);
Matrix3 mat_mul(const FieldCtx& f, const Matrix3& a, const Matrix3& b);

/// Throws std::invalid_argument on a singular matrix. frob is reduced modulo 4e+2.
Collineation make_collineation(const FieldCtx& f, const Matrix3& m, int frob = 0);
Collineation identity_collineation();

ProjPoint act(const FieldCtx& f, const Collineation& c, const ProjPoint& p);
/// The map "first c1, then c2".
Collineation compose(const FieldCtx& f, const Collineation& c1, const Collineation& c2);
Collineation power(const FieldCtx& f, const Collineation& c, std::uint64_t n);
/// Least n >= 1 with c^n = 1; throws BoundExceeded past `bound`.
std::uint64_t element_order(const FieldCtx& f, const Collineation& c, std::uint64_t bound);

/// Parameters of an element M_{u,v} of the linear stabiliser G.
struct GroupElementUV {
  Felt u;
  Felt v;
  friend bool operator==(const GroupElementUV&, const GroupElementUV&) = default;
};

/// Rows (1, u*eps, v+u^sigma*eps | 0, 1, u+u*eps | 0, 0, 1); u, v must lie in F_q.
Collineation m_uv(const FieldCtx& f, Felt u, Felt v);
Collineation m_uv(const FieldCtx& f, GroupElementUV g);
/// Recognises a (normalized) collineation as some M_{u,v}.
std::optional<GroupElementUV> as_uv(const FieldCtx& f, const Collineation& c);
/// All q^2 elements M_{u,v}, u-major over subfield order.
std::vector<Collineation> group_g(const FieldCtx& f);

struct GroupCensus {
  std::uint64_t order = 0;
  std::map<std::uint64_t, std::uint64_t> order_histogram;
  std::uint64_t law_violations = 0;      // pairs where M_{u,v}M_{s,t} != M_{u+s, t+v+su*delta}
  std::uint64_t square_violations = 0;   // M_{u,v}^2 != M_{0,u^2*delta}
  bool commutative = false;
  bool closed_with_inverses = false;
  std::uint64_t exponent = 0;
  int c4_factors = -1;  // k in (C4)^k (C2)^l, -1 when no solution
  int c2_factors = -1;
  std::string invariant_type;
  bool ok(const FieldCtx& f) const;
};

/// Order statistics and group law of G; exhaustive over all q^4 pairs.
GroupCensus group_census(const FieldCtx& f);

/// psi: x -> x^2 * (1, 1, eps | 0, d(1+eps), d(1+eps) | 0, 0, delta^(sigma+1)), d = delta^(sigma/2).
Collineation build_psi(const FieldCtx& f);
/// mu = delta^(sigma/2) * eps.
Felt psi_mu(const FieldCtx& f);

struct PsiTraceReport {
  Felt mu;
  int trace_mu = -1;                // absolute trace over F_{q^2}
  ProjPoint image;                  // psi^(4e+2) (0,1,0)
  ProjPoint expected;               // (0, 1, trace(mu)/mu)
  bool identity_holds = false;      // image == expected
  bool moves_point = false;         // image != (0,1,0)
};
PsiTraceReport psi_trace_identity(const FieldCtx& f);

struct PsiReport {
  bool stabilises = false;
  std::uint64_t order = 0;
  bool all_powers_stabilise = false;
  std::uint64_t pencil_failures = 0;  // z in F_q with psi(0,1,z) != (0,1,1+mu z^2)
  std::uint64_t linear_power_order = 0;  // order of psi^(4e+2)
  bool linear_power_in_g = false;
  std::uint64_t intersection_with_g = 0;  // |<psi> ∩ G|
  std::uint64_t product_size = 0;         // |G<psi>|
  PsiTraceReport trace;
  bool ok(const FieldCtx& f) const;
};
PsiReport psi_suite(const FieldCtx& f, const UnitalSet& u);

/// All elements g * psi^i, deduplicated and sorted.
std::vector<Collineation> g_times_psi(const FieldCtx& f);

/// Points of U used first by stabilizes() and the flag-group scan: P_{r,s,t} for a fixed list
/// of (r, s, t) subfield positions.
std::vector<ProjPoint> default_probes(const FieldCtx& f);

struct StabilityCheck {
  bool stabilises = false;
  std::size_t probes_used = 0;  // probes evaluated before acceptance or rejection
  bool full_check = false;      // whether the whole of U was mapped
};
/// Maps up to probe_budget probe points first and rejects on the first image outside U; survivors
/// are confirmed on all of U.
StabilityCheck stabilizes_detail(const FieldCtx& f, const Collineation& c, const UnitalSet& u,
                                 std::size_t probe_budget = 8);
bool stabilizes(const FieldCtx& f, const Collineation& c, const UnitalSet& u, std::size_t probe_budget = 8);

/// (a, b) with b != a^(sigma+2) such that p lies in the G-orbit of (1, a, b*eps).
/// Throws std::invalid_argument for p on l_inf or on U.
std::pair<Felt, Felt> orbit_representative(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p);

struct OrbitReport {
  std::size_t representatives = 0;
  std::size_t admissible_points = 0;  // points off l_inf and U
  std::size_t covered = 0;            // distinct points in the union of the orbits
  bool all_orbits_full = false;       // every orbit has size q^2
  bool pairwise_disjoint = false;
  bool reduction_consistent = false;  // orbit_representative recovers (a, b) on every orbit point
  bool ok() const;
};
OrbitReport orbit_check(const FieldCtx& f, const UnitalSet& u);

/// (1, a, b*eps) for the q^2-q pairs b != a^(sigma+2), a-major.
std::vector<ProjPoint> orbit_representatives(const FieldCtx& f);

}  // namespace btu
