#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "btu/field.hpp"
#include "btu/projective.hpp"

namespace btu {

/// Point of PG(4, q); coordinates lie in F_q and the leftmost nonzero one is 1.
struct PG4Point {
  std::array<Felt, 5> c{};
  friend bool operator==(const PG4Point&, const PG4Point&) = default;
  friend auto operator<=>(const PG4Point&, const PG4Point&) = default;
};

/// Normalizes; throws std::invalid_argument for the zero vector or coordinates outside F_q.
PG4Point make_pg4(const FieldCtx& f, std::array<Felt, 5> v);

/// Packs subfield positions, 8 bits per coordinate.
std::uint64_t pg4_key(const FieldCtx& f, const PG4Point& p);

/// Field-reduction spread of the hyperplane Sigma: x0 = 0, w.r.t. the basis {1, eps}.
struct Spread {
  std::vector<std::vector<PG4Point>> elements;  // q^2+1 lines, q+1 points each
  std::vector<ProjPoint> plane_points;         // (0, y, z) on l_inf for each element
  std::size_t special = 0;                     // index of p_inf, the element for (y, z) = (0, 1)
  std::unordered_map<std::uint64_t, std::uint32_t> element_of;  // Sigma point key -> element

  const std::vector<PG4Point>& p_inf() const { return elements[special]; }
};

Spread build_spread(const FieldCtx& f);

struct SpreadCheck {
  bool disjoint = false;
  std::size_t covered = 0;  // distinct points in the union
  bool covers = false;      // covered == q^3+q^2+q+1
};
SpreadCheck check_spread(const FieldCtx& f, const Spread& s);

/// Tits ovoid in the solid x3 = 0: {(1,s,t,0,f(s,t))} ∪ {(0,0,0,0,1)}.
struct TitsOvoid {
  std::vector<PG4Point> points;
};

TitsOvoid build_tits_ovoid(const FieldCtx& f);

/// True iff no three of the points are collinear.
bool is_cap(const FieldCtx& f, std::span<const PG4Point> pts);

/// Dual coordinates [p0,p1,p2,0,p4] of the plane of the solid x3 = 0 meeting the ovoid only in r.
/// Throws std::invalid_argument when r is not an ovoid point.
std::array<Felt, 5> tangent_plane_at(const FieldCtx& f, const TitsOvoid& o, const PG4Point& r);

struct OvoidalCone {
  PG4Point vertex;
  std::vector<PG4Point> base;
  std::vector<PG4Point> points;  // sorted, vertex included
};

/// Union of the lines joining vertex to each base point. Throws std::invalid_argument when the
/// vertex lies in the base solid x3 = 0 or a base point does not.
OvoidalCone build_cone(const FieldCtx& f, std::span<const PG4Point> base, const PG4Point& vertex);
OvoidalCone build_cone(const FieldCtx& f, const TitsOvoid& base);  // vertex (0,0,0,1,0)

/// Cone points with x0 = 0, sorted.
std::vector<PG4Point> sigma_section(const OvoidalCone& c);

/// ABB map into PG(2, q^2): affine (1,a1,a2,a3,a4) -> (1, a1+a2*eps, a3+a4*eps), and each spread
/// element inside s -> its point of l_inf. Output sorted. Throws std::invalid_argument when s
/// contains only part of a spread element.
std::vector<ProjPoint> abb_map(const FieldCtx& f, const Spread& spread, std::span<const PG4Point> s);

struct AbbComparison {
  bool equal = false;
  std::size_t image_size = 0;
  std::vector<ProjPoint> only_in_image;
  std::vector<ProjPoint> only_in_unital;
};

/// Compares abb_map(cone) with the point set of the Buekenhout-Tits unital.
AbbComparison compare_with_unital(const FieldCtx& f, const Spread& spread, const OvoidalCone& cone);
/// The canonical cone over build_tits_ovoid().
AbbComparison abb_unital_equality(const FieldCtx& f);

struct Identity {
  std::string name;
  std::string lhs;  // decimal
  std::string rhs;
  bool holds = false;
};

struct IdentityReport {
  std::uint64_t q = 0;
  std::vector<Identity> identities;
  bool ok() const;
};

/// Exact integer checks of the unital and cone counting arguments at a given q.
/// Throws std::invalid_argument unless q = 2^(2e+1) with e >= 1 and q <= 128.
IdentityReport counting_identities(std::uint64_t q);

__extension__ typedef unsigned __int128 uint128;

std::string to_decimal(uint128 v);

}  // namespace btu
