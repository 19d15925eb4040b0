#include "btu/feet.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

#include "btu/collineation.hpp"
#include "btu/parallel.hpp"

namespace btu {

namespace {

void require_affine_off_unital(const UnitalSet& u, const ProjPoint& p, const char* who) {
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument(std::string(who) + ": point lies on l_inf");
  if (u.contains(p)) throw std::invalid_argument(std::string(who) + ": point lies on the unital");
}

FeetSystem system_for(const FieldCtx& f, const ProjPoint& p, const ProjLine& l) {
  if (l.c[2].is_zero()) throw std::invalid_argument("FeetSystem: line has z-coefficient 0");
  const Felt inv = f.inv(l.c[2]);
  FeetSystem s;
  std::tie(s.a1, s.a2) = f.decompose(f.mul(l.c[0], inv));
  std::tie(s.b1, s.b2) = f.decompose(f.mul(l.c[1], inv));
  std::tie(s.y1, s.y2) = f.decompose(p.c[1]);
  std::tie(s.z1, s.z2) = f.decompose(p.c[2]);
  return s;
}

// Lines of PG(2, q) through a subplane point, as normalized triples.
std::vector<Triple> subplane_lines_through(const FieldCtx& f, const Triple& p) {
  const auto [a, b] = null_basis(p);
  std::vector<Triple> out;
  for (const Felt lam : f.subfield())
    out.push_back(normalize(f, {a[0] + f.mul(lam, b[0]), a[1] + f.mul(lam, b[1]), a[2] + f.mul(lam, b[2])}));
  out.push_back(normalize(f, b));
  return out;
}

std::size_t hits(const FieldCtx& f, const Triple& line, std::span<const Triple> pts) {
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [&](const Triple& x) { return dot(f, line, x).is_zero(); }));
}

std::optional<Triple> tangent_at(const FieldCtx& f, const Triple& a, std::span<const Triple> oval) {
  std::optional<Triple> found;
  for (const auto& l : subplane_lines_through(f, a)) {
    if (hits(f, l, oval) != 1) continue;
    if (found) return std::nullopt;
    found = l;
  }
  return found;
}

std::uint32_t count_roots(const FieldCtx& f, auto&& poly) {
  std::uint32_t n = 0;
  for (const Felt u : f.subfield())
    if (poly(u).is_zero()) ++n;
  return n;
}

Felt half_sigma_pow(const FieldCtx& f, Felt x) { return f.pow(x, f.sigma_exp() / 2); }

}  // namespace

FeetSystem FeetSystem::make(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p, const ProjLine& l) {
  require_affine_off_unital(u, p, "FeetSystem");
  return system_for(f, p, l);
}

Felt FeetSystem::r(const FieldCtx& f, Felt s, Felt t) const { return a1 + f.mul(b1, s) + f.mul(b2, f.delta(), t); }

bool FeetSystem::conic_eq(const FieldCtx& f, Felt s, Felt t) const {
  const Felt d = f.delta();
  return (f.sqr(s) + f.mul(d, f.sqr(t)) + f.mul(s, t) + f.mul(y1 + b1, s) + f.mul(y1 + f.mul(y2, d) + f.mul(b2, d), t) +
          z1 + a1)
      .is_zero();
}

bool FeetSystem::ovoid_eq(const FieldCtx& f, Felt s, Felt t) const {
  return tits_f(f, s, t) == f.mul(b2, s) + f.mul(b1 + b2, t) + a2;
}

bool FeetSystem::linear_eq(const FieldCtx& f, Felt s, Felt t) const {
  return f.mul(y2, s) + f.mul(y1, t) + z2 == f.mul(b2, s) + f.mul(b1 + b2, t) + a2;
}

std::uint32_t FeetSystem::count(const FieldCtx& f) const {
  std::uint32_t n = 0;
  for (const Felt s : f.subfield())
    for (const Felt t : f.subfield())
      if (linear_eq(f, s, t) && ovoid_eq(f, s, t) && conic_eq(f, s, t)) ++n;
  return n;
}

std::vector<StPair> feet_parameters(const FieldCtx& f, const ProjPoint& p) {
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument("feet_parameters: point lies on l_inf");
  const auto [y1, y2] = f.decompose(p.c[1]);
  const Felt z2 = f.decompose(p.c[2]).second;
  std::vector<StPair> out;
  for (const Felt s : f.subfield())
    for (const Felt t : f.subfield())
      if (tits_f(f, s, t) == f.mul(y2, s) + f.mul(y1, t) + z2) out.emplace_back(s, t);
  return out;
}

std::uint32_t feet_line_count(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p, const ProjLine& l) {
  require_affine_off_unital(u, p, "feet_line_count");
  const auto params = feet_parameters(f, p);
  return feet_line_count(f, p, params, l);
}

std::uint32_t feet_line_count(const FieldCtx& f, const ProjPoint& p, std::span<const StPair> params,
                              const ProjLine& l) {
  std::uint32_t n = 0;
  if (l.c[2].is_zero()) {
    // alpha x + beta y = 0 meets P_{r,s,t} iff alpha + beta (s + t eps) = 0.
    const Felt eps = f.epsilon();
    for (const auto& [s, t] : params)
      if ((l.c[0] + f.mul(l.c[1], s + f.mul(t, eps))).is_zero()) ++n;
    return n;
  }
  const FeetSystem sys = system_for(f, p, l);
  for (const auto& [s, t] : params)
    if (sys.linear_eq(f, s, t) && sys.ovoid_eq(f, s, t) && sys.conic_eq(f, s, t)) ++n;
  return n;
}

std::string to_string(LineClass c) {
  switch (c) {
    case LineClass::easy:
      return "easy";
    case LineClass::special_pencil:
      return "special_pencil";
    case LineClass::through_p:
      return "through_p";
  }
  return "unknown";
}

LineClass classify_line(const FieldCtx& f, const ProjPoint& p, const ProjLine& l) {
  const auto [z1, z2] = f.decompose(p.c[2]);
  if (p.c[0] != FieldCtx::one() || !f.in_subfield(p.c[1]) || !z1.is_zero())
    throw std::invalid_argument("classify_line: point is not of the form (1, y1, z2 eps)");
  if (z2 == f.pow(p.c[1], f.sigma_exp() + 2)) throw std::invalid_argument("classify_line: point lies on the unital");
  if (on_special_pencil(f, p, l)) return LineClass::special_pencil;
  if (incident(f, p, l)) return LineClass::through_p;
  return LineClass::easy;
}

bool on_special_pencil(const FieldCtx& f, const ProjPoint& p, const ProjLine& l) {
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument("on_special_pencil: point lies on l_inf");
  if (l.c[2].is_zero()) return false;
  const Felt inv = f.inv(l.c[2]);
  const Felt y2 = f.decompose(p.c[1]).second;
  const Felt z2 = f.decompose(p.c[2]).second;
  return f.mul(l.c[1], inv) == p.c[1] + y2 && f.decompose(f.mul(l.c[0], inv)).second == z2;
}

ProjPoint special_pencil_centre(const FieldCtx& f, const ProjPoint& p) {
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument("special_pencil_centre: point lies on l_inf");
  return ProjPoint{{Felt{0}, FieldCtx::one(), p.c[1] + f.decompose(p.c[1]).second}};
}

std::vector<StPair> simple_system_solutions(const FieldCtx& f, Felt y1, Felt a1, Felt z2) {
  const Felt d = f.delta();
  std::vector<StPair> out;
  for (const Felt s : f.subfield()) {
    for (const Felt t : f.subfield()) {
      const Felt rhs = f.mul(y1, t);
      if (f.sqr(s) + f.mul(d, f.sqr(t)) + f.mul(s, t) != rhs + a1) continue;
      if (tits_f(f, s, t) != rhs + z2) continue;
      out.emplace_back(s, t);
    }
  }
  return out;
}

std::vector<Triple> subplane_points(const FieldCtx& f) {
  const Felt z{0};
  const Felt o{1};
  std::vector<Triple> out;
  for (const Felt y : f.subfield())
    for (const Felt x : f.subfield()) out.push_back({o, y, x});
  for (const Felt x : f.subfield()) out.push_back({z, o, x});
  out.push_back({z, z, o});
  return out;
}

Felt Conic::eval(const FieldCtx& f, const Triple& p) const {
  const auto& [x, y, z] = p;
  return f.mul(xx, f.sqr(x)) + f.mul(yy, f.sqr(y)) + f.mul(zz, f.sqr(z)) + f.mul(xy, x, y) + f.mul(xz, x, z) +
         f.mul(yz, y, z);
}

Felt Conic::discriminant(const FieldCtx& f) const {
  return f.mul(xx, f.sqr(yz)) + f.mul(yy, f.sqr(xz)) + f.mul(zz, f.sqr(xy)) + f.mul(xy, xz, yz);
}

std::vector<Triple> Conic::points(const FieldCtx& f) const {
  std::vector<Triple> out;
  for (const auto& p : subplane_points(f))
    if (eval(f, p).is_zero()) out.push_back(p);
  return out;
}

Triple conic_nucleus(const FieldCtx& f, const Conic& c) {
  if (c.discriminant(f).is_zero()) throw std::domain_error("conic_nucleus: degenerate conic");
  return normalize(f, {c.yz, c.xz, c.xy});
}

std::optional<Triple> oval_nucleus(const FieldCtx& f, std::span<const Triple> oval) {
  if (oval.size() != f.q() + 1u) throw std::invalid_argument("oval_nucleus: expected q+1 points");
  const auto t0 = tangent_at(f, oval[0], oval);
  const auto t1 = tangent_at(f, oval[1], oval);
  if (!t0 || !t1 || *t0 == *t1) return std::nullopt;
  const Triple n = normalize(f, cross(f, *t0, *t1));
  if (std::find(oval.begin(), oval.end(), n) != oval.end()) return std::nullopt;
  for (const auto& l : subplane_lines_through(f, n))
    if (hits(f, l, oval) != 1) return std::nullopt;
  return n;
}

std::vector<Triple> feet_oval(const FieldCtx& f, Felt y1, Felt z2) {
  std::vector<Triple> out;
  for (const Felt s : f.subfield())
    for (const Felt t : f.subfield())
      if (tits_f(f, s, t) == f.mul(y1, t) + z2) out.push_back({s, t, FieldCtx::one()});
  return out;
}

Conic feet_conic(const FieldCtx& f, Felt y1, Felt a1) {
  return Conic{FieldCtx::one(), f.delta(), a1, FieldCtx::one(), Felt{0}, y1};
}

std::vector<Triple> translation_oval(const FieldCtx& f) {
  std::vector<Triple> out;
  for (const Felt t : f.subfield()) out.push_back({FieldCtx::one(), t, f.sigma(t)});
  out.push_back({Felt{0}, Felt{0}, FieldCtx::one()});
  return out;
}

std::uint32_t translation_oval_conic_cap(const FieldCtx& f, Felt a1, Felt a2, Felt a3) {
  if (!f.in_subfield(a1) || !f.in_subfield(a2) || !f.in_subfield(a3))
    throw std::invalid_argument("translation_oval_conic_cap: coefficient outside F_q");
  if (a2.is_zero()) throw std::invalid_argument("translation_oval_conic_cap: a2 must be nonzero");
  const Conic c{a1, a2, a3, Felt{0}, FieldCtx::one(), Felt{0}};
  std::uint32_t n = 0;
  for (const auto& p : translation_oval(f))
    if (c.eval(f, p).is_zero()) ++n;
  return n;
}

std::vector<StPair> oval_parameterisation(const FieldCtx& f, Felt z2) {
  if (z2.is_zero()) throw std::invalid_argument("oval_parameterisation: z2 must be nonzero");
  const std::int64_t half = f.sigma_exp() / 2;
  const Felt cs = f.pow_signed(z2, 1 - half);
  const Felt ct = f.pow_signed(z2, half);
  std::vector<StPair> out;
  for (const Felt u : f.subfield()) {
    const Felt us = f.sigma(u);
    const Felt den = FieldCtx::one() + u + us;
    if (den.is_zero()) throw std::logic_error("oval_parameterisation: 1 + u + u^sigma vanishes");
    const Felt di = f.inv(den);
    out.emplace_back(f.mul(cs, us, di), f.mul(ct, FieldCtx::one() + us, di));
  }
  out.emplace_back(cs, ct);
  return out;
}

Felt membership_polynomial(const FieldCtx& f, Felt a1, Felt z2, Felt u) {
  const Felt ah = half_sigma_pow(f, a1);
  const Felt zh = half_sigma_pow(f, z2);
  const Felt dz = f.mul(half_sigma_pow(f, f.delta()), z2);
  const Felt c2 = f.pow(z2, f.sigma_exp() - 1) + dz + zh + ah;
  return f.mul(ah, f.sigma(u)) + f.mul(c2, f.sqr(u)) + f.mul(zh, u) + dz + ah;
}

std::uint32_t membership_polynomial_roots(const FieldCtx& f, Felt a1, Felt z2) {
  return count_roots(f, [&](Felt u) { return membership_polynomial(f, a1, z2, u); });
}

std::uint32_t linearised_family_roots(const FieldCtx& f, Felt c) {
  if (c.is_zero()) throw std::invalid_argument("linearised_family_roots: c must be nonzero");
  const std::int64_t sg = f.sigma_exp();
  const Felt k1 = f.pow_signed(c, -sg / 2);
  const Felt ci = f.inv(c);
  const Felt k2 = f.pow_signed(c, sg - 2) + ci;
  return count_roots(f, [&](Felt u) { return f.mul(k1, f.sigma(u)) + f.mul(k2, f.sqr(u)) + f.mul(ci, u); });
}

Felt h1_polynomial(const FieldCtx& f, Felt a, Felt u) {
  return f.mul(half_sigma_pow(f, a) + FieldCtx::one(), f.sigma(u)) + f.mul(a, f.sqr(u)) + u;
}

bool menichetti_solvable(const FieldCtx& f, Felt c) {
  if (!f.in_subfield(c)) throw std::invalid_argument("menichetti_solvable: c outside F_q");
  for (const Felt z : f.subfield())
    if ((half_sigma_pow(f, z) + z + c).is_zero()) return true;
  return false;
}

namespace {

Witness make_witness(const FieldCtx& f, const UnitalSet& u, std::string name, const ProjPoint& p, const ProjLine& l,
                     std::uint32_t expected) {
  Witness w{std::move(name), p, l, {}, expected, on_special_pencil(f, p, l)};
  for (const auto& x : feet_direct(u, p))
    if (incident(f, x, l)) w.intersection.push_back(x);
  return w;
}

}  // namespace

Witness witness_three(const FieldCtx& f, const UnitalSet& u) {
  const Felt eps = f.epsilon();
  return make_witness(f, u, "three", make_point(f, FieldCtx::one(), Felt{0}, eps),
                      make_line(f, f.delta() + eps, Felt{0}, FieldCtx::one()), 3);
}

Witness witness_four(const FieldCtx& f, const UnitalSet& u) {
  const Felt eps = f.epsilon();
  const Felt di = f.inv(f.delta());
  const Felt z2 = f.pow_signed(f.delta(), -static_cast<std::int64_t>(f.sigma_exp()));
  return make_witness(f, u, "four", make_point(f, FieldCtx::one(), Felt{0}, f.mul(z2, eps)),
                      make_line(f, di + f.mul(f.sqr(di), eps), Felt{0}, FieldCtx::one()), 4);
}

Witness witness_four_pencil(const FieldCtx& f, const UnitalSet& u) {
  const Felt eps = f.epsilon();
  const Felt di = f.inv(f.delta());
  const Felt z2 = f.pow_signed(f.delta(), -static_cast<std::int64_t>(f.sigma_exp()));
  return make_witness(f, u, "four_pencil", make_point(f, FieldCtx::one(), Felt{0}, f.mul(z2, eps)),
                      make_line(f, di + f.mul(z2, eps), Felt{0}, FieldCtx::one()), 4);
}

bool FeetOracleReport::ok() const {
  return formula_mismatches == 0 && count_mismatches == 0 && tangent_not_one == 0 && c0_over_one == 0 &&
         infinity_collinear_failures == 0 && points > 0;
}

namespace {

std::vector<ProjPoint> admissible_points(const UnitalSet& u) {
  const PlaneIndex& idx = u.points().index();
  const std::size_t order = u.field().big_order();
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < order * order; ++i)
    if (!u.points().contains_index(i)) out.push_back(idx.point(i));
  return out;
}

// |l ∩ feet| for every line, by walking the lines through each foot.
void line_counts(const FieldCtx& f, const PlaneIndex& idx, std::span<const ProjPoint> feet,
                 std::vector<std::uint32_t>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  for (const auto& x : feet) for_each_line_through(f, x, [&](const ProjLine& l) { ++counts[idx.of(l)]; });
}

}  // namespace

FeetOracleReport feet_oracle_check(const FieldCtx& f, const UnitalSet& u, unsigned threads,
                                   std::size_t point_stride, std::size_t line_stride) {
  if (point_stride == 0 || line_stride == 0) throw std::invalid_argument("feet_oracle_check: zero stride");
  const PlaneIndex& idx = u.points().index();
  std::vector<ProjPoint> pts;
  {
    const auto all = admissible_points(u);
    for (std::size_t i = 0; i < all.size(); i += point_stride) pts.push_back(all[i]);
  }
  u.incidence();

  struct Part {
    FeetOracleReport r;
    std::size_t first = SIZE_MAX;
    std::vector<std::uint32_t> counts;
  };
  const unsigned workers = worker_count(pts.size(), threads);
  std::vector<Part> parts(workers);
  for (auto& p : parts) p.counts.assign(idx.size(), 0);

  parallel_for(pts.size(), workers, [&](std::size_t i, unsigned w) {
    Part& part = parts[w];
    FeetOracleReport& r = part.r;
    const ProjPoint& p = pts[i];
    const auto direct = feet_direct(u, p);
    ++r.points;
    if (feet_formula(u, p) != direct) ++r.formula_mismatches;
    const auto params = feet_parameters(f, p);
    line_counts(f, idx, direct, part.counts);
    for (std::size_t li = 0; li < idx.size(); ++li) {
      if (li % line_stride != 0 && part.counts[li] < 2) continue;
      const ProjLine l = idx.line(li);
      const std::uint32_t n = feet_line_count(f, p, params, l);
      ++r.pairs;
      if (n != part.counts[li]) {
        ++r.count_mismatches;
        if (i < part.first) {
          part.first = i;
          r.first_mismatch = std::make_pair(p, l);
        }
      }
      if (l.c[2].is_zero() && l != l_infinity()) {
        ++r.c0_lines;
        if (n > 1) ++r.c0_over_one;
      }
    }
    for (const auto& t : u.tangent_lines(p)) {
      ++r.tangent_lines;
      if (feet_line_count(f, p, params, t) != 1) ++r.tangent_not_one;
    }
  });

  FeetOracleReport out;
  std::size_t first = SIZE_MAX;
  for (const auto& part : parts) {
    out.points += part.r.points;
    out.formula_mismatches += part.r.formula_mismatches;
    out.pairs += part.r.pairs;
    out.count_mismatches += part.r.count_mismatches;
    out.tangent_lines += part.r.tangent_lines;
    out.tangent_not_one += part.r.tangent_not_one;
    out.c0_lines += part.r.c0_lines;
    out.c0_over_one += part.r.c0_over_one;
    if (part.first < first) {
      first = part.first;
      out.first_mismatch = part.r.first_mismatch;
    }
  }
  for (std::uint32_t z = 0; z < f.big_order(); ++z) {
    const auto feet = feet_direct(u, ProjPoint{{Felt{0}, FieldCtx::one(), Felt{z}}});
    if (!collinear(f, feet)) ++out.infinity_collinear_failures;
  }
  return out;
}

bool SpectrumReport::all_k_realised() const {
  for (std::uint32_t k = 0; k <= 4; ++k)
    if (!histogram.contains(k) || histogram.at(k) == 0) return false;
  return true;
}

bool SpectrumReport::ok() const {
  return max_count == 4 && all_k_realised() && high_off_pencil == 0 && easy_over_two == 0 &&
         pencil_size_failures == 0 && collinear_feet == 0 && invariance_failures == 0;
}

namespace {

struct PointScan {
  std::vector<std::uint64_t> hist;       // indexed by count
  std::vector<std::size_t> first_line;   // first line index per count, SIZE_MAX if none
  std::uint64_t high_off_pencil = 0;
  std::uint64_t easy_over_two = 0;
  std::uint64_t pencil_size = 0;
  bool collinear = false;
};

PointScan scan_point(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p, std::vector<std::uint32_t>& counts) {
  const PlaneIndex& idx = u.points().index();
  const auto feet = feet_direct(u, p);
  line_counts(f, idx, feet, counts);
  PointScan s;
  s.hist.assign(feet.size() + 1, 0);
  s.first_line.assign(feet.size() + 1, SIZE_MAX);
  for (std::size_t li = 0; li < idx.size(); ++li) {
    const std::uint32_t n = counts[li];
    ++s.hist[n];
    if (s.first_line[n] == SIZE_MAX) s.first_line[n] = li;
    if (n == feet.size()) s.collinear = true;
    if (n < 3) continue;
    const ProjLine l = idx.line(li);
    if (on_special_pencil(f, p, l)) continue;
    ++s.high_off_pencil;
    if (!incident(f, p, l)) ++s.easy_over_two;
  }
  // Every special-pencil line passes through the centre, so scanning its q^2+1 lines suffices.
  for_each_line_through(f, special_pencil_centre(f, p), [&](const ProjLine& l) {
    if (on_special_pencil(f, p, l)) ++s.pencil_size;
  });
  return s;
}

}  // namespace

SpectrumReport full_spectrum_scan(const FieldCtx& f, const UnitalSet& u, bool all_points, bool check_invariance,
                                  unsigned threads) {
  const PlaneIndex& idx = u.points().index();
  const auto reps = orbit_representatives(f);
  u.incidence();

  // Points to scan, and for each the index of its representative.
  std::vector<ProjPoint> pts;
  std::vector<std::size_t> rep_of;
  if (all_points) {
    std::map<ProjPoint, std::size_t> rep_index;
    for (std::size_t i = 0; i < reps.size(); ++i) rep_index.emplace(reps[i], i);
    for (const auto& p : admissible_points(u)) {
      const auto [a, b] = orbit_representative(f, u, p);
      pts.push_back(p);
      rep_of.push_back(rep_index.at(ProjPoint{{FieldCtx::one(), a, f.mul(b, f.epsilon())}}));
    }
  } else {
    pts = reps;
    for (std::size_t i = 0; i < reps.size(); ++i) rep_of.push_back(i);
    if (check_invariance) {
      const auto g = group_g(f);
      for (std::size_t i = 0; i < reps.size(); ++i) {
        for (const auto& m : g) {
          const ProjPoint img = act(f, m, reps[i]);
          if (img == reps[i]) continue;
          pts.push_back(img);
          rep_of.push_back(i);
        }
      }
    }
  }
  const std::size_t scanned = all_points ? pts.size() : reps.size();

  const unsigned workers = worker_count(pts.size(), threads);
  std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(idx.size()));
  std::vector<PointScan> scans(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i, unsigned w) { scans[i] = scan_point(f, u, pts[i], counts[w]); });

  SpectrumReport r;
  r.all_points = all_points;
  r.points_scanned = scanned;
  std::vector<const PointScan*> rep_scan(reps.size(), nullptr);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == reps[rep_of[i]]) rep_scan[rep_of[i]] = &scans[i];

  const std::uint64_t q = f.q();
  for (std::size_t i = 0; i < scanned; ++i) {
    const PointScan& s = scans[i];
    for (std::uint32_t k = 0; k < s.hist.size(); ++k) {
      if (s.hist[k] == 0) continue;
      r.histogram[k] += s.hist[k];
      r.max_count = std::max(r.max_count, k);
      if (!r.witnesses.contains(k)) {
        Witness w{"k" + std::to_string(k), pts[i], idx.line(s.first_line[k]), {}, k, false};
        w.on_special_pencil = on_special_pencil(f, w.point, w.line);
        for (const auto& x : feet_direct(u, w.point))
          if (incident(f, x, w.line)) w.intersection.push_back(x);
        r.witnesses.emplace(k, std::move(w));
      }
    }
    r.high_off_pencil += s.high_off_pencil;
    r.easy_over_two += s.easy_over_two;
    if (s.pencil_size != q) ++r.pencil_size_failures;
    if (s.collinear) ++r.collinear_feet;
  }
  if (check_invariance || all_points) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] == reps[rep_of[i]]) continue;
      ++r.invariance_checked;
      if (scans[i].hist != rep_scan[rep_of[i]]->hist) ++r.invariance_failures;
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    SpectrumRow row;
    row.a = reps[i].c[1];
    row.b = f.decompose(reps[i].c[2]).second;
    const auto& h = rep_scan[i]->hist;
    for (std::size_t k = 0; k < row.k.size() && k < h.size(); ++k) row.k[k] = h[k];
    r.rows.push_back(row);
  }
  return r;
}

bool AnalyticReport::ok(const FieldCtx& f) const {
  const std::uint64_t q = f.q();
  bool family_ok = true;
  for (const auto& [roots, n] : family_roots)
    if (roots != 1 && roots != 2 && roots != 4) family_ok = false;
  return nucleus_cases == q * q * q && conic_nucleus_failures == 0 && oval_nucleus_failures == 0 &&
         oval_on_unital_cases == q && oval_on_unital_failures == 0 &&
         simple_system_max <= 4 && translation_nucleus_ok && cap_cases == q * q * (q - 1) && cap_max <= 4 &&
         cap_max_a3_zero <= 3 && parameterisation_failures == 0 && denominator_zeros == 0 &&
         root_channel_failures == 0 && family_ok && family_trace_failures == 0 && h1_failures == 0 &&
         delta_family_roots == 4 && menichetti_failures == 0 && trace_identity_failures == 0;
}

AnalyticReport analytic_lemmas(const FieldCtx& f) {
  AnalyticReport r;
  const auto sub = f.subfield();
  const Felt d = f.delta();
  const std::uint64_t sg = f.sigma_exp();

  for (const Felt y1 : sub) {
    const Triple n{y1, Felt{0}, FieldCtx::one()};
    const Triple expected = normalize(f, n);
    for (const Felt z2 : sub) {
      const auto oval = feet_oval(f, y1, z2);
      if (z2 == f.pow(y1, sg + 2)) {
        ++r.oval_on_unital_cases;
        if (oval.size() != 1) ++r.oval_on_unital_failures;
      } else if (oval.size() != f.q() + 1u || oval_nucleus(f, oval) != expected) {
        ++r.oval_nucleus_failures;
      }
      for (const Felt a1 : sub) {
        ++r.nucleus_cases;
        const Conic c = feet_conic(f, y1, a1);
        if (c.discriminant(f).is_zero()) {
          ++r.degenerate_conics;
        } else {
          const auto pts = c.points(f);
          if (conic_nucleus(f, c) != expected || pts.size() != f.q() + 1u || oval_nucleus(f, pts) != expected)
            ++r.conic_nucleus_failures;
        }
        const auto n_sol = static_cast<std::uint32_t>(simple_system_solutions(f, y1, a1, z2).size());
        ++r.simple_system_histogram[n_sol];
        r.simple_system_max = std::max(r.simple_system_max, n_sol);
      }
    }
  }

  const auto dsig = translation_oval(f);
  r.translation_nucleus_ok = oval_nucleus(f, dsig) == Triple{Felt{0}, FieldCtx::one(), Felt{0}};
  for (const Felt a1 : sub) {
    for (const Felt a2 : sub) {
      if (a2.is_zero()) continue;
      for (const Felt a3 : sub) {
        const std::uint32_t n = translation_oval_conic_cap(f, a1, a2, a3);
        ++r.cap_cases;
        ++r.cap_histogram[n];
        r.cap_max = std::max(r.cap_max, n);
        if (a3.is_zero()) r.cap_max_a3_zero = std::max(r.cap_max_a3_zero, n);
      }
    }
  }

  for (const Felt u : sub)
    if ((FieldCtx::one() + u + f.sigma(u)).is_zero()) ++r.denominator_zeros;
  for (const Felt z2 : sub) {
    if (z2.is_zero()) continue;
    std::vector<StPair> param;
    try {
      param = oval_parameterisation(f, z2);
    } catch (const std::logic_error&) {
      ++r.parameterisation_failures;
      continue;
    }
    std::vector<StPair> brute;
    for (const auto& t : feet_oval(f, Felt{0}, z2)) brute.emplace_back(t[0], t[1]);
    auto sorted = param;
    std::sort(sorted.begin(), sorted.end());
    std::sort(brute.begin(), brute.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (!distinct || sorted != brute) ++r.parameterisation_failures;

    const auto [cs, ct] = param.back();
    for (const Felt a1 : sub) {
      const bool closing_on_conic = f.sqr(cs) + f.mul(d, f.sqr(ct)) + f.mul(cs, ct) == a1;
      const std::uint32_t total = membership_polynomial_roots(f, a1, z2) + (closing_on_conic ? 1 : 0);
      if (total != simple_system_solutions(f, Felt{0}, a1, z2).size()) ++r.root_channel_failures;
    }
  }

  for (const Felt c : sub) {
    if (!c.is_zero()) {
      const std::uint32_t n = linearised_family_roots(f, c);
      ++r.family_roots[n];
      if (c == FieldCtx::one()) {
        r.family_c1_roots = n;
      } else if (f.trace_abs(c, false) == 1 && n != 4) {
        ++r.family_trace_failures;
      }
    }
    const Felt a = f.pow(c, sg - 1) + FieldCtx::one();
    if (!a.is_zero()) {
      const Felt root = f.pow_signed(a, -static_cast<std::int64_t>(1 + sg / 2));
      if (!h1_polynomial(f, a, Felt{0}).is_zero() || !h1_polynomial(f, a, root).is_zero()) ++r.h1_failures;
    }
    if (menichetti_solvable(f, c) != (f.trace_abs(c, false) == 0)) ++r.menichetti_failures;
    if (f.trace_abs(c, false) != (f.trace_abs(f.pow(a, sg + 1), false) ^ 1)) ++r.trace_identity_failures;
  }
  r.delta_family_roots = linearised_family_roots(f, d);
  return r;
}

}  // namespace btu
