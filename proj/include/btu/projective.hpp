#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "btu/field.hpp"

namespace btu {

using Triple = std::array<Felt, 3>;

/// Point of PG(2, q^2); leftmost nonzero coordinate is 1.
struct ProjPoint {
  Triple c{};
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Line [a, b, c] of PG(2, q^2), the set a*x + b*y + c*z = 0; normalized like ProjPoint.
struct ProjLine {
  Triple c{};
  friend bool operator==(const ProjLine&, const ProjLine&) = default;
  friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

/// Scales so the leftmost nonzero entry is 1. Throws std::invalid_argument on the zero triple.
Triple normalize(const FieldCtx& f, Triple v);

ProjPoint make_point(const FieldCtx& f, Felt x, Felt y, Felt z);
ProjLine make_line(const FieldCtx& f, Felt a, Felt b, Felt c);

inline Felt dot(const FieldCtx& f, const Triple& u, const Triple& v) {
  return f.mul(u[0], v[0]) + f.mul(u[1], v[1]) + f.mul(u[2], v[2]);
}

inline Triple cross(const FieldCtx& f, const Triple& u, const Triple& v) {
  return {f.mul(u[1], v[2]) + f.mul(u[2], v[1]), f.mul(u[2], v[0]) + f.mul(u[0], v[2]),
          f.mul(u[0], v[1]) + f.mul(u[1], v[0])};
}

inline bool incident(const FieldCtx& f, const ProjPoint& p, const ProjLine& l) {
  return dot(f, p.c, l.c).is_zero();
}

/// Throws std::invalid_argument when p == q.
ProjLine line_through(const FieldCtx& f, const ProjPoint& p, const ProjPoint& q);
/// Throws std::invalid_argument when l == m.
ProjPoint meet(const FieldCtx& f, const ProjLine& l, const ProjLine& m);

/// Two independent vectors spanning the null space of a nonzero (row) triple.
std::array<Triple, 2> null_basis(const Triple& v);

/// Calls fn(ProjPoint) for each of the q^2+1 points on l.
template <typename Fn>
void for_each_point_on(const FieldCtx& f, const ProjLine& l, Fn&& fn) {
  const auto [u, v] = null_basis(l.c);
  for (std::uint32_t b = 0; b < f.big_order(); ++b) {
    const Felt lam{b};
    fn(ProjPoint{normalize(f, {u[0] + f.mul(lam, v[0]), u[1] + f.mul(lam, v[1]), u[2] + f.mul(lam, v[2])})});
  }
  fn(ProjPoint{normalize(f, v)});
}

/// Calls fn(ProjLine) for each of the q^2+1 lines through p.
template <typename Fn>
void for_each_line_through(const FieldCtx& f, const ProjPoint& p, Fn&& fn) {
  for_each_point_on(f, ProjLine{p.c}, [&](const ProjPoint& dual) { fn(ProjLine{dual.c}); });
}

std::vector<ProjPoint> points_on(const FieldCtx& f, const ProjLine& l);
std::vector<ProjLine> lines_through(const FieldCtx& f, const ProjPoint& p);

/// Dense numbering of normalized triples: (1,y,z) -> y*Q+z, (0,1,z) -> Q^2+z, (0,0,1) -> Q^2+Q,
/// where Q = q^2 and field elements are read as integers. Shared by points and lines.
class PlaneIndex {
 public:
  explicit PlaneIndex(const FieldCtx& f) : order_(f.big_order()) {}

  std::size_t size() const { return static_cast<std::size_t>(order_) * order_ + order_ + 1; }

  std::size_t of(const Triple& t) const {
    if (t[0].bits == 1) return static_cast<std::size_t>(t[1].bits) * order_ + t[2].bits;
    if (t[1].bits == 1) return static_cast<std::size_t>(order_) * order_ + t[2].bits;
    return static_cast<std::size_t>(order_) * order_ + order_;
  }
  std::size_t of(const ProjPoint& p) const { return of(p.c); }
  std::size_t of(const ProjLine& l) const { return of(l.c); }

  Triple triple(std::size_t i) const {
    const std::size_t sq = static_cast<std::size_t>(order_) * order_;
    if (i < sq) return {Felt{1}, Felt{static_cast<std::uint32_t>(i / order_)}, Felt{static_cast<std::uint32_t>(i % order_)}};
    if (i < sq + order_) return {Felt{0}, Felt{1}, Felt{static_cast<std::uint32_t>(i - sq)}};
    return {Felt{0}, Felt{0}, Felt{1}};
  }
  ProjPoint point(std::size_t i) const { return ProjPoint{triple(i)}; }
  ProjLine line(std::size_t i) const { return ProjLine{triple(i)}; }

 private:
  std::uint32_t order_;
};

/// The q+1 points of the Baer subline through three distinct collinear points, in the frame
/// p0 -> (1,0), p1 -> (0,1), p2 -> (1,1). Output is sorted. Throws std::invalid_argument on
/// repeated or non-collinear input.
std::vector<ProjPoint> baer_subline(const FieldCtx& f, const ProjPoint& p0, const ProjPoint& p1,
                                    const ProjPoint& p2);

/// True iff s is collinear and equals the Baer subline through any three of its members.
/// Throws std::invalid_argument unless |s| = q+1.
bool is_baer_subline(const FieldCtx& f, std::span<const ProjPoint> s);

}  // namespace btu
