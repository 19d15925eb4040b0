#include "btu/abb.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "btu/unital.hpp"

namespace btu {

PG4Point make_pg4(const FieldCtx& f, std::array<Felt, 5> v) {
  for (const Felt x : v) {
    if (!f.in_subfield(x)) throw std::invalid_argument("PG(4,q) coordinate outside F_q");
  }
  for (const Felt x : v) {
    if (x.is_zero()) continue;
    const Felt s = f.inv(x);
    for (auto& y : v) y = f.mul(y, s);
    return PG4Point{v};
  }
  throw std::invalid_argument("zero vector has no projective point");
}

std::uint64_t pg4_key(const FieldCtx& f, const PG4Point& p) {
  std::uint64_t k = 0;
  for (const Felt x : p.c) k = (k << 8) | f.subfield_position(x);
  return k;
}

Spread build_spread(const FieldCtx& f) {
  const std::uint32_t order = f.big_order();
  Spread sp;
  auto add = [&](Felt y, Felt z) {
    std::vector<PG4Point> elem;
    std::unordered_set<std::uint64_t> seen;
    for (std::uint32_t b = 1; b < order; ++b) {
      const Felt lam{b};
      const auto [y1, y2] = f.decompose(f.mul(lam, y));
      const auto [z1, z2] = f.decompose(f.mul(lam, z));
      const PG4Point p = make_pg4(f, {Felt{0}, y1, y2, z1, z2});
      if (seen.insert(pg4_key(f, p)).second) elem.push_back(p);
    }
    std::sort(elem.begin(), elem.end());
    const auto id = static_cast<std::uint32_t>(sp.elements.size());
    for (const auto& p : elem) sp.element_of.emplace(pg4_key(f, p), id);
    sp.elements.push_back(std::move(elem));
    sp.plane_points.push_back(make_point(f, Felt{0}, y, z));
  };
  for (std::uint32_t z = 0; z < order; ++z) add(Felt{1}, Felt{z});
  sp.special = sp.elements.size();
  add(Felt{0}, Felt{1});
  return sp;
}

SpreadCheck check_spread(const FieldCtx& f, const Spread& s) {
  SpreadCheck c;
  std::unordered_set<std::uint64_t> seen;
  std::size_t total = 0;
  for (const auto& e : s.elements) {
    for (const auto& p : e) {
      seen.insert(pg4_key(f, p));
      ++total;
    }
  }
  const std::uint64_t q = f.q();
  c.covered = seen.size();
  c.disjoint = seen.size() == total;
  c.covers = c.covered == q * q * q + q * q + q + 1;
  return c;
}

TitsOvoid build_tits_ovoid(const FieldCtx& f) {
  TitsOvoid o;
  const Felt z{0};
  for (const Felt s : f.subfield())
    for (const Felt t : f.subfield()) o.points.push_back(PG4Point{{Felt{1}, s, t, z, tits_f(f, s, t)}});
  o.points.push_back(PG4Point{{z, z, z, z, Felt{1}}});
  return o;
}

bool is_cap(const FieldCtx& f, std::span<const PG4Point> pts) {
  std::unordered_set<std::uint64_t> keys;
  for (const auto& p : pts) keys.insert(pg4_key(f, p));
  const auto sub = f.subfield();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      // The other q-1 points of the line are p_i + lam*p_j, lam != 0.
      for (std::size_t k = 1; k < sub.size(); ++k) {
        std::array<Felt, 5> v;
        for (int c = 0; c < 5; ++c) v[c] = pts[i].c[c] + f.mul(sub[k], pts[j].c[c]);
        if (keys.contains(pg4_key(f, make_pg4(f, v)))) return false;
      }
    }
  }
  return true;
}

std::array<Felt, 5> tangent_plane_at(const FieldCtx& f, const TitsOvoid& o, const PG4Point& r) {
  if (std::find(o.points.begin(), o.points.end(), r) == o.points.end())
    throw std::invalid_argument("tangent_plane_at: point is not on the ovoid");
  const auto sub = f.subfield();
  const std::size_t q = sub.size();
  // Enumerate normalized dual vectors (p0,p1,p2,p4) of planes inside x3 = 0.
  for (std::size_t code = 1; code < q * q * q * q; ++code) {
    std::array<Felt, 5> pi{sub[code / (q * q * q)], sub[(code / (q * q)) % q], sub[(code / q) % q], Felt{0},
                           sub[code % q]};
    const Felt lead = *std::find_if(pi.begin(), pi.end(), [](Felt x) { return !x.is_zero(); });
    if (lead != FieldCtx::one()) continue;
    auto on = [&](const PG4Point& p) {
      Felt s;
      for (int c = 0; c < 5; ++c) s += f.mul(pi[c], p.c[c]);
      return s.is_zero();
    };
    if (!on(r)) continue;
    const auto hits = std::count_if(o.points.begin(), o.points.end(), on);
    if (hits == 1) return pi;
  }
  throw std::logic_error("tangent_plane_at: no tangent plane found");
}

OvoidalCone build_cone(const FieldCtx& f, std::span<const PG4Point> base, const PG4Point& vertex) {
  if (vertex.c[3].is_zero()) throw std::invalid_argument("build_cone: vertex lies in the base solid");
  for (const auto& b : base) {
    if (!b.c[3].is_zero()) throw std::invalid_argument("build_cone: base point outside the solid x3 = 0");
  }
  OvoidalCone cone{vertex, std::vector<PG4Point>(base.begin(), base.end()), {}};
  std::unordered_set<std::uint64_t> seen{pg4_key(f, vertex)};
  cone.points.push_back(vertex);
  for (const auto& b : base) {
    for (const Felt lam : f.subfield()) {
      std::array<Felt, 5> v;
      for (int c = 0; c < 5; ++c) v[c] = b.c[c] + f.mul(lam, vertex.c[c]);
      const PG4Point p = make_pg4(f, v);
      if (seen.insert(pg4_key(f, p)).second) cone.points.push_back(p);
    }
  }
  std::sort(cone.points.begin(), cone.points.end());
  return cone;
}

OvoidalCone build_cone(const FieldCtx& f, const TitsOvoid& base) {
  const Felt z{0};
  return build_cone(f, base.points, PG4Point{{z, z, z, Felt{1}, z}});
}

std::vector<PG4Point> sigma_section(const OvoidalCone& c) {
  std::vector<PG4Point> out;
  std::copy_if(c.points.begin(), c.points.end(), std::back_inserter(out),
               [](const PG4Point& p) { return p.c[0].is_zero(); });
  return out;
}

std::vector<ProjPoint> abb_map(const FieldCtx& f, const Spread& spread, std::span<const PG4Point> s) {
  std::vector<ProjPoint> out;
  std::vector<std::uint32_t> per_element(spread.elements.size(), 0);
  for (const auto& p : s) {
    if (p.c[0].is_zero()) {
      const auto it = spread.element_of.find(pg4_key(f, p));
      if (it == spread.element_of.end()) throw std::logic_error("abb_map: Sigma point on no spread element");
      ++per_element[it->second];
      continue;
    }
    out.push_back(ProjPoint{{FieldCtx::one(), f.recompose(p.c[1], p.c[2]), f.recompose(p.c[3], p.c[4])}});
  }
  for (std::size_t e = 0; e < per_element.size(); ++e) {
    if (per_element[e] == 0) continue;
    if (per_element[e] != spread.elements[e].size())
      throw std::invalid_argument("abb_map: set contains part of a spread element");
    out.push_back(spread.plane_points[e]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbbComparison compare_with_unital(const FieldCtx& f, const Spread& spread, const OvoidalCone& cone) {
  const auto image = abb_map(f, spread, cone.points);
  const UnitalSet u = build_bt_unital(f);
  std::vector<ProjPoint> upts(u.points().points().begin(), u.points().points().end());
  std::sort(upts.begin(), upts.end());

  AbbComparison r;
  r.image_size = image.size();
  std::set_difference(image.begin(), image.end(), upts.begin(), upts.end(), std::back_inserter(r.only_in_image));
  std::set_difference(upts.begin(), upts.end(), image.begin(), image.end(), std::back_inserter(r.only_in_unital));
  r.equal = r.only_in_image.empty() && r.only_in_unital.empty();
  return r;
}

AbbComparison abb_unital_equality(const FieldCtx& f) {
  return compare_with_unital(f, build_spread(f), build_cone(f, build_tits_ovoid(f)));
}

std::string to_decimal(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

bool IdentityReport::ok() const {
  return std::all_of(identities.begin(), identities.end(), [](const Identity& i) { return i.holds; });
}

IdentityReport counting_identities(std::uint64_t q) {
  int k = 0;
  while ((std::uint64_t{1} << k) < q) ++k;
  if (q < 8 || (std::uint64_t{1} << k) != q || k % 2 == 0 || q > 128)
    throw std::invalid_argument("counting_identities: q must be 2^(2e+1), 8 <= q <= 128");
  const int e = (k - 1) / 2;

  using U = uint128;
  const U Q = q;
  const U q2 = Q * Q;
  const U q4 = q2 * q2;
  const U q6 = q4 * q2;

  IdentityReport r;
  r.q = q;
  auto add = [&](std::string name, U lhs, U rhs) {
    r.identities.push_back({std::move(name), to_decimal(lhs), to_decimal(rhs), lhs == rhs});
  };
  // lhs/rhs as an exact quotient; a nonzero remainder fails the identity.
  auto add_quotient = [&](std::string name, U num, U den, U rhs) {
    const bool exact = num % den == 0;
    r.identities.push_back({std::move(name), to_decimal(num) + "/" + to_decimal(den), to_decimal(rhs),
                            exact && num / den == rhs});
  };

  // Flag group H: matrices (1,x12,x13 | 0,x22,x23 | 0,0,x33), x22*x33 != 0.
  const U flag_group = q2 * q2 * q2 * (q2 - 1) * (q2 - 1);
  add("flag_group_order", flag_group, (q2 - 1) * (q2 - 1) * q6);
  const U unital_orbit = q4 * (q2 - 1) * (q2 - 1);
  add_quotient("unital_orbit_linear", flag_group, q2, unital_orbit);
  const U semilinear_stab = q2 * static_cast<U>(4 * e + 2);
  add_quotient("unital_orbit_semilinear", flag_group * static_cast<U>(4 * e + 2), semilinear_stab, unital_orbit);

  // Tits ovoids of PG(3,q): |PGL(4,q)| / |Sz(q)|.
  const U pgl4 = q6 * (q2 - 1) * (Q * q2 - 1) * (q4 - 1);
  const U suzuki = q2 * (q2 + 1) * (Q - 1);
  const U ovoids = (Q + 1) * (Q + 1) * q4 * (Q - 1) * (Q - 1) * (q2 + Q + 1);
  add_quotient("tits_ovoid_count", pgl4, suzuki, ovoids);

  const U tangent_to_plane = (Q - 1) * (Q - 1) * q4 * (Q + 1) * (q2 + Q + 1);
  // Dividing by the q^4+q^3+q^2+q+1 hyperplanes of PG(4,q).
  add_quotient("ovoids_tangent_to_plane_pg4_divisor", ovoids * (q2 + 1), q4 + Q * q2 + q2 + Q + 1, tangent_to_plane);
  // Dividing by the q^3+q^2+q+1 planes of PG(3,q).
  add_quotient("ovoids_tangent_to_plane", ovoids * (q2 + 1), Q * q2 + q2 + Q + 1, tangent_to_plane);

  const U per_flag = (Q - 1) * (Q - 1) * q4 * (Q + 1);
  add_quotient("ovoids_tangent_at_point", tangent_to_plane, q2 + Q + 1, per_flag);
  const U cones = (Q + 1) * per_flag;
  add("cones_total", cones, (q2 - 1) * (q2 - 1) * q4);
  add("cones_equal_unitals", cones, unital_orbit);
  return r;
}

}  // namespace btu
