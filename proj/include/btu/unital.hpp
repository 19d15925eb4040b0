#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "btu/field.hpp"
#include "btu/projective.hpp"

namespace btu {

/// P_inf = (0,0,1), the special point of the Buekenhout-Tits unital.
inline ProjPoint p_infinity() { return ProjPoint{{Felt{0}, Felt{0}, Felt{1}}}; }
/// l_inf = [1,0,0], the line x = 0.
inline ProjLine l_infinity() { return ProjLine{{Felt{1}, Felt{0}, Felt{0}}}; }

/// A set of points of PG(2, q^2) with constant-time membership.
class PointSet {
 public:
  /// Throws std::invalid_argument on repeated points.
  PointSet(const FieldCtx& f, std::vector<ProjPoint> points);

  const FieldCtx& field() const { return *field_; }
  const PlaneIndex& index() const { return index_; }
  std::size_t size() const { return points_.size(); }
  std::span<const ProjPoint> points() const { return points_; }
  bool contains(const ProjPoint& p) const { return member_[index_.of(p)] != 0; }
  bool contains_index(std::size_t i) const { return member_[i] != 0; }

 private:
  const FieldCtx* field_;
  PlaneIndex index_;
  std::vector<ProjPoint> points_;
  std::vector<std::uint8_t> member_;
};

/// Per-line intersection sizes with a point set, indexed by PlaneIndex.
struct LineIncidence {
  std::vector<std::uint32_t> hits;
  /// Index of a member point on the line; the unique one when hits == 1.
  std::vector<std::uint32_t> touch;
};

/// Counts |l ∩ S| for every line by walking the q^2+1 lines through each member of S.
LineIncidence line_incidence(const PointSet& s, unsigned threads = 1);

struct UnitalReport {
  std::size_t points = 0;
  std::size_t lines = 0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // |l ∩ S| -> number of lines
  std::uint64_t tangents = 0;
  std::uint64_t secants = 0;
  std::uint64_t violation_count = 0;
  std::vector<ProjLine> violations;  // first few offending lines
  bool ok() const { return violation_count == 0; }
};

/// Classifies every line as tangent (1 point) or secant (q+1 points).
/// Throws std::invalid_argument unless |S| = q^3+1.
UnitalReport verify_unital(const PointSet& s, unsigned threads = 1);

/// A unital with its tangent-line index. The index is built on first use and then shared
/// read-only, so a UnitalSet can be queried from several threads.
class UnitalSet {
 public:
  explicit UnitalSet(PointSet points);

  const FieldCtx& field() const { return points_.field(); }
  const PointSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(const ProjPoint& p) const { return points_.contains(p); }

  const LineIncidence& incidence() const;
  std::uint32_t line_hits(const ProjLine& l) const { return incidence().hits[points_.index().of(l)]; }
  /// U ∩ l, sorted.
  std::vector<ProjPoint> section(const ProjLine& l) const;

  /// The q+1 tangents through p; throws std::invalid_argument when p ∈ U.
  std::vector<ProjLine> tangent_lines(const ProjPoint& p) const;
  /// The unique tangent at p; throws std::invalid_argument when p ∉ U.
  ProjLine tangent_at(const ProjPoint& p) const;

 private:
  struct Lazy;
  PointSet points_;
  std::shared_ptr<Lazy> lazy_;
};

/// {(0,0,1)} ∪ {(1, s+t*eps, r+(s^(sigma+2)+t^sigma+st)*eps) : r,s,t ∈ F_q}.
UnitalSet build_bt_unital(const FieldCtx& f);

/// s^(sigma+2) + t^sigma + st, the Tits ovoid function on F_q x F_q.
Felt tits_f(const FieldCtx& f, Felt s, Felt t);

/// Touch points of the tangents through p (sorted); throws when p ∈ U.
std::vector<ProjPoint> feet_direct(const UnitalSet& u, const ProjPoint& p);

/// The closed-form feet of an affine point p = (1, y1+y2*eps, z1+z2*eps), sorted.
/// Throws std::invalid_argument when p ∈ U or p ∈ l_inf.
std::vector<ProjPoint> feet_formula(const UnitalSet& u, const ProjPoint& p);

/// True iff every secant through q meets U in a Baer subline. Throws when q ∉ U.
bool has_subline_property(const UnitalSet& u, const ProjPoint& q);

/// True iff the points are collinear (fewer than three points are trivially collinear).
bool collinear(const FieldCtx& f, std::span<const ProjPoint> pts);

}  // namespace btu
