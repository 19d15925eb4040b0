#include "btu/projective.hpp"

#include <algorithm>
#include <stdexcept>

namespace btu {

Triple normalize(const FieldCtx& f, Triple v) {
  for (const Felt x : v) {
    if (x.is_zero()) continue;
    if (x == FieldCtx::one()) return v;
    const Felt s = f.inv(x);
    return {f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)};
  }
  throw std::invalid_argument("zero vector has no projective point");
}

ProjPoint make_point(const FieldCtx& f, Felt x, Felt y, Felt z) { return ProjPoint{normalize(f, {x, y, z})}; }

ProjLine make_line(const FieldCtx& f, Felt a, Felt b, Felt c) { return ProjLine{normalize(f, {a, b, c})}; }

ProjLine line_through(const FieldCtx& f, const ProjPoint& p, const ProjPoint& q) {
  if (p == q) throw std::invalid_argument("line_through: points coincide");
  return ProjLine{normalize(f, cross(f, p.c, q.c))};
}

ProjPoint meet(const FieldCtx& f, const ProjLine& l, const ProjLine& m) {
  if (l == m) throw std::invalid_argument("meet: lines coincide");
  return ProjPoint{normalize(f, cross(f, l.c, m.c))};
}

std::array<Triple, 2> null_basis(const Triple& v) {
  const Felt z{0};
  const Felt o{1};
  if (!v[0].is_zero()) return {Triple{v[1], v[0], z}, Triple{v[2], z, v[0]}};
  if (!v[1].is_zero()) return {Triple{o, z, z}, Triple{z, v[2], v[1]}};
  return {Triple{o, z, z}, Triple{z, o, z}};
}

std::vector<ProjPoint> points_on(const FieldCtx& f, const ProjLine& l) {
  std::vector<ProjPoint> out;
  out.reserve(f.big_order() + 1);
  for_each_point_on(f, l, [&](const ProjPoint& p) { out.push_back(p); });
  return out;
}

std::vector<ProjLine> lines_through(const FieldCtx& f, const ProjPoint& p) {
  std::vector<ProjLine> out;
  out.reserve(f.big_order() + 1);
  for_each_line_through(f, p, [&](const ProjLine& l) { out.push_back(l); });
  return out;
}

std::vector<ProjPoint> baer_subline(const FieldCtx& f, const ProjPoint& p0, const ProjPoint& p1,
                                    const ProjPoint& p2) {
  if (p0 == p1 || p0 == p2 || p1 == p2) throw std::invalid_argument("baer_subline: points not distinct");

  // Solve p2 = lam*p0 + mu*p1 on two coordinates where p0, p1 are independent.
  const auto& a = p0.c;
  const auto& b = p1.c;
  const auto& c = p2.c;
  int i = 0;
  int j = 1;
  Felt det;
  for (const auto& [ii, jj] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    det = f.mul(a[ii], b[jj]) + f.mul(a[jj], b[ii]);
    if (!det.is_zero()) {
      i = ii;
      j = jj;
      break;
    }
  }
  const Felt dinv = f.inv(det);
  const Felt lam = f.mul(f.mul(c[i], b[j]) + f.mul(c[j], b[i]), dinv);
  const Felt mu = f.mul(f.mul(a[i], c[j]) + f.mul(a[j], c[i]), dinv);
  for (int k = 0; k < 3; ++k) {
    if (f.mul(lam, a[k]) + f.mul(mu, b[k]) != c[k]) throw std::invalid_argument("baer_subline: points not collinear");
  }

  const Triple base{f.mul(lam, a[0]), f.mul(lam, a[1]), f.mul(lam, a[2])};
  const Triple dir{f.mul(mu, b[0]), f.mul(mu, b[1]), f.mul(mu, b[2])};
  std::vector<ProjPoint> out;
  out.reserve(f.q() + 1);
  for (const Felt t : f.subfield()) {
    out.push_back(ProjPoint{normalize(f, {base[0] + f.mul(t, dir[0]), base[1] + f.mul(t, dir[1]),
                                          base[2] + f.mul(t, dir[2])})});
  }
  out.push_back(p1);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_baer_subline(const FieldCtx& f, std::span<const ProjPoint> s) {
  if (s.size() != f.q() + 1) throw std::invalid_argument("is_baer_subline: expected q+1 points");
  std::vector<ProjPoint> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const ProjLine l = line_through(f, s[0], s[1]);
  for (const auto& p : s) {
    if (!incident(f, p, l)) return false;
  }
  return baer_subline(f, s[0], s[1], s[2]) == sorted;
}

}  // namespace btu
