#include "btu/collineation.hpp"

#include <algorithm>
#include <numeric>

namespace btu {

namespace {

// (r, s, t) positions in subfield order for the probe points P_{r,s,t}. The two with s = t = 0
// come first because their images depend only on the first matrix row.
constexpr std::array<std::array<int, 3>, 8> kProbePositions = {{
    {0, 0, 0},
    {1, 0, 0},
    {0, 1, 0},
    {0, 0, 1},
    {0, 1, 1},
    {3, 2, 0},
    {5, 0, 3},
    {6, 4, 7},
}};

Matrix3 frob_matrix(const FieldCtx& f, const Matrix3& m, int k) {
  Matrix3 r;
  for (int i = 0; i < 9; ++i) r[i] = f.frobenius(m[i], k);
  return r;
}

}  // namespace

Felt det3(const FieldCtx& f, const Matrix3& m) {
  return f.mul(m[0], f.mul(m[4], m[8]) + f.mul(m[5], m[7])) + f.mul(m[1], f.mul(m[3], m[8]) + f.mul(m[5], m[6])) +
         f.mul(m[2], f.mul(m[3], m[7]) + f.mul(m[4], m[6]));
}

Matrix3 mat_mul(const FieldCtx& f, const Matrix3& a, const Matrix3& b) {
  Matrix3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[3 * i + j] = f.mul(a[3 * i], b[j]) + f.mul(a[3 * i + 1], b[3 + j]) + f.mul(a[3 * i + 2], b[6 + j]);
  return r;
}

Collineation make_collineation(const FieldCtx& f, const Matrix3& m, int frob) {
  if (det3(f, m).is_zero()) throw std::invalid_argument("make_collineation: singular matrix");
  Collineation c{m, frob % f.degree()};
  if (c.frob < 0) c.frob += f.degree();
  const Felt lead = *std::find_if(m.begin(), m.end(), [](Felt x) { return !x.is_zero(); });
  if (lead != FieldCtx::one()) {
    const Felt s = f.inv(lead);
    for (auto& x : c.matrix) x = f.mul(x, s);
  }
  return c;
}

Collineation identity_collineation() {
  Collineation c;
  c.matrix[0] = c.matrix[4] = c.matrix[8] = Felt{1};
  return c;
}

ProjPoint act(const FieldCtx& f, const Collineation& c, const ProjPoint& p) {
  const Triple x{f.frobenius(p.c[0], c.frob), f.frobenius(p.c[1], c.frob), f.frobenius(p.c[2], c.frob)};
  const auto& m = c.matrix;
  return ProjPoint{normalize(f, {f.mul(x[0], m[0]) + f.mul(x[1], m[3]) + f.mul(x[2], m[6]),
                                 f.mul(x[0], m[1]) + f.mul(x[1], m[4]) + f.mul(x[2], m[7]),
                                 f.mul(x[0], m[2]) + f.mul(x[1], m[5]) + f.mul(x[2], m[8])})};
}

Collineation compose(const FieldCtx& f, const Collineation& c1, const Collineation& c2) {
  // x -> (x^(2^k) A)^(2^m) B = x^(2^(k+m)) A^(2^m) B
  return make_collineation(f, mat_mul(f, frob_matrix(f, c1.matrix, c2.frob), c2.matrix), c1.frob + c2.frob);
}

Collineation power(const FieldCtx& f, const Collineation& c, std::uint64_t n) {
  Collineation r = identity_collineation();
  Collineation b = c;
  while (n != 0) {
    if (n & 1u) r = compose(f, r, b);
    b = compose(f, b, b);
    n >>= 1;
  }
  return r;
}

std::uint64_t element_order(const FieldCtx& f, const Collineation& c, std::uint64_t bound) {
  const Collineation id = identity_collineation();
  Collineation x = c;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (x == id) return n;
    x = compose(f, x, c);
  }
  throw BoundExceeded("element_order: order exceeds bound " + std::to_string(bound));
}

Collineation m_uv(const FieldCtx& f, Felt u, Felt v) {
  if (!f.in_subfield(u) || !f.in_subfield(v)) throw std::invalid_argument("m_uv: parameters must lie in F_q");
  const Felt eps = f.epsilon();
  const Felt z{0};
  const Felt o{1};
  return Collineation{{o, f.mul(u, eps), v + f.mul(f.sigma(u), eps), z, o, u + f.mul(u, eps), z, z, o}, 0};
}

Collineation m_uv(const FieldCtx& f, GroupElementUV g) { return m_uv(f, g.u, g.v); }

std::optional<GroupElementUV> as_uv(const FieldCtx& f, const Collineation& c) {
  if (c.frob != 0) return std::nullopt;
  const auto [u0, u] = f.decompose(c.matrix[1]);
  if (!u0.is_zero()) return std::nullopt;
  const auto [v, rest] = f.decompose(c.matrix[2]);
  if (!f.in_subfield(u)) return std::nullopt;
  const Collineation cand = m_uv(f, u, v);
  if (cand != c) return std::nullopt;
  return GroupElementUV{u, v};
}

std::vector<Collineation> group_g(const FieldCtx& f) {
  std::vector<Collineation> g;
  g.reserve(static_cast<std::size_t>(f.q()) * f.q());
  for (const Felt u : f.subfield())
    for (const Felt v : f.subfield()) g.push_back(m_uv(f, u, v));
  return g;
}

bool GroupCensus::ok(const FieldCtx& f) const {
  const std::uint64_t q = f.q();
  const auto count = [&](std::uint64_t k) {
    const auto it = order_histogram.find(k);
    return it == order_histogram.end() ? 0 : it->second;
  };
  return order == q * q && count(1) == 1 && count(2) == q - 1 && count(4) == q * q - q && law_violations == 0 &&
         square_violations == 0 && commutative && closed_with_inverses && exponent == 4 &&
         c4_factors == 2 * f.e() + 1 && c2_factors == 0;
}

GroupCensus group_census(const FieldCtx& f) {
  GroupCensus c;
  const auto g = group_g(f);
  const auto sub = f.subfield();
  const Felt d = f.delta();
  const Collineation id = identity_collineation();
  c.order = g.size();
  c.commutative = true;
  c.closed_with_inverses = true;

  for (std::size_t i = 0; i < g.size(); ++i) {
    const Felt u = sub[i / sub.size()];
    const Felt v = sub[i % sub.size()];
    const std::uint64_t ord = element_order(f, g[i], 16);
    ++c.order_histogram[ord];
    c.exponent = std::max(c.exponent, ord);
    if (compose(f, g[i], g[i]) != m_uv(f, Felt{0}, f.mul(f.sqr(u), d))) ++c.square_violations;
    bool has_inverse = false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Felt s = sub[j / sub.size()];
      const Felt t = sub[j % sub.size()];
      const Collineation ab = compose(f, g[i], g[j]);
      if (ab != m_uv(f, u + s, t + v + f.mul(s, u, d))) ++c.law_violations;
      if (ab != compose(f, g[j], g[i])) c.commutative = false;
      if (ab == id) has_inverse = true;
    }
    if (!has_inverse) c.closed_with_inverses = false;
  }
  // Closure follows from the law check: every product is again some M_{u,v}.
  if (c.law_violations != 0) c.closed_with_inverses = false;

  // Solve (4^k - 2^k) 2^l = #order-4 elements with 2k + l = log2 |G|.
  int n = 0;
  while ((std::uint64_t{1} << n) < c.order) ++n;
  const std::uint64_t n4 = c.order_histogram.contains(4) ? c.order_histogram.at(4) : 0;
  for (int k = 0; 2 * k <= n; ++k) {
    const int l = n - 2 * k;
    if (((std::uint64_t{1} << (2 * k)) - (std::uint64_t{1} << k)) * (std::uint64_t{1} << l) == n4 &&
        (std::uint64_t{1} << n) == c.order && c.exponent <= 4) {
      c.c4_factors = k;
      c.c2_factors = l;
      c.invariant_type = "(C4)^" + std::to_string(k) + (l ? " x (C2)^" + std::to_string(l) : "");
      break;
    }
  }
  return c;
}

Collineation build_psi(const FieldCtx& f) {
  const Felt eps = f.epsilon();
  const Felt d = f.delta();
  const std::uint64_t sg = f.sigma_exp();
  const Felt ds = f.pow(d, sg / 2);
  const Felt w = f.mul(ds, FieldCtx::one() + eps);
  const Felt z{0};
  const Felt o{1};
  return make_collineation(f, {o, o, eps, z, w, w, z, z, f.pow(d, sg + 1)}, 1);
}

Felt psi_mu(const FieldCtx& f) { return f.mul(f.pow(f.delta(), f.sigma_exp() / 2), f.epsilon()); }

PsiTraceReport psi_trace_identity(const FieldCtx& f) {
  PsiTraceReport r;
  r.mu = psi_mu(f);
  r.trace_mu = f.trace_abs(r.mu, true);
  const ProjPoint base = make_point(f, Felt{0}, Felt{1}, Felt{0});
  const Collineation p = power(f, build_psi(f), static_cast<std::uint64_t>(f.degree()));
  r.image = act(f, p, base);
  r.expected = make_point(f, Felt{0}, Felt{1}, f.div(Felt{static_cast<std::uint32_t>(r.trace_mu)}, r.mu));
  r.identity_holds = r.image == r.expected;
  r.moves_point = r.image != base;
  return r;
}

std::vector<Collineation> g_times_psi(const FieldCtx& f) {
  const Collineation psi = build_psi(f);
  const auto g = group_g(f);
  std::vector<Collineation> out;
  Collineation pk = identity_collineation();
  do {
    for (const auto& x : g) out.push_back(compose(f, x, pk));
    pk = compose(f, pk, psi);
  } while (pk != identity_collineation() && out.size() < 64 * g.size() * f.degree());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PsiReport::ok(const FieldCtx& f) const {
  const std::uint64_t q = f.q();
  const auto e = static_cast<std::uint64_t>(f.e());
  return stabilises && order == 16 * e + 8 && all_powers_stabilise && pencil_failures == 0 &&
         linear_power_order == 4 && linear_power_in_g && intersection_with_g == 4 &&
         product_size == q * q * (4 * e + 2) && trace.identity_holds && trace.trace_mu == 1 && trace.moves_point;
}

PsiReport psi_suite(const FieldCtx& f, const UnitalSet& u) {
  PsiReport r;
  const Collineation psi = build_psi(f);
  r.stabilises = stabilizes(f, psi, u);
  r.order = element_order(f, psi, 64 * static_cast<std::uint64_t>(f.degree()));

  r.all_powers_stabilise = true;
  Collineation pk = identity_collineation();
  for (std::uint64_t i = 0; i < r.order; ++i) {
    if (!stabilizes(f, pk, u)) r.all_powers_stabilise = false;
    if (pk.frob == 0 && as_uv(f, pk)) ++r.intersection_with_g;
    pk = compose(f, pk, psi);
  }

  const Felt mu = psi_mu(f);
  for (std::uint32_t b = 0; b < f.big_order(); ++b) {
    const Felt z{b};
    const ProjPoint img = act(f, psi, make_point(f, Felt{0}, Felt{1}, z));
    if (img != make_point(f, Felt{0}, Felt{1}, FieldCtx::one() + f.mul(mu, f.sqr(z)))) ++r.pencil_failures;
  }

  const Collineation lin = power(f, psi, static_cast<std::uint64_t>(f.degree()));
  r.linear_power_in_g = as_uv(f, lin).has_value();
  r.linear_power_order = element_order(f, lin, 64);
  r.product_size = g_times_psi(f).size();
  r.trace = psi_trace_identity(f);
  return r;
}

std::vector<ProjPoint> default_probes(const FieldCtx& f) {
  const auto sub = f.subfield();
  const Felt eps = f.epsilon();
  std::vector<ProjPoint> out;
  for (const auto& pos : kProbePositions) {
    const Felt r = sub[pos[0]];
    const Felt s = sub[pos[1]];
    const Felt t = sub[pos[2]];
    out.push_back(ProjPoint{{FieldCtx::one(), s + f.mul(t, eps), r + f.mul(tits_f(f, s, t), eps)}});
  }
  return out;
}

StabilityCheck stabilizes_detail(const FieldCtx& f, const Collineation& c, const UnitalSet& u,
                                 std::size_t probe_budget) {
  StabilityCheck r;
  const auto probes = default_probes(f);
  const std::size_t n = std::min(probe_budget, probes.size());
  for (std::size_t i = 0; i < n; ++i) {
    ++r.probes_used;
    if (!u.contains(act(f, c, probes[i]))) return r;
  }
  r.full_check = true;
  // A collineation is injective, so image ⊆ U already forces image = U.
  for (const auto& p : u.points().points()) {
    if (!u.contains(act(f, c, p))) return r;
  }
  r.stabilises = true;
  return r;
}

bool stabilizes(const FieldCtx& f, const Collineation& c, const UnitalSet& u, std::size_t probe_budget) {
  return stabilizes_detail(f, c, u, probe_budget).stabilises;
}

std::pair<Felt, Felt> orbit_representative(const FieldCtx& f, const UnitalSet& u, const ProjPoint& p) {
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument("orbit_representative: point on l_inf");
  if (u.contains(p)) throw std::invalid_argument("orbit_representative: point on the unital");
  const auto [y1, y2] = f.decompose(p.c[1]);
  const ProjPoint p1 = act(f, m_uv(f, y2, Felt{0}), p);
  const auto [c1, c2] = f.decompose(p1.c[2]);
  const ProjPoint p2 = act(f, m_uv(f, Felt{0}, c1), p1);
  if (p2.c[1] != y1 || p2.c[2] != f.mul(c2, f.epsilon())) throw std::logic_error("orbit_representative: reduction failed");
  return {y1, c2};
}

std::vector<ProjPoint> orbit_representatives(const FieldCtx& f) {
  std::vector<ProjPoint> out;
  const std::uint64_t s2 = f.sigma_exp() + 2;
  for (const Felt a : f.subfield()) {
    for (const Felt b : f.subfield()) {
      if (b == f.pow(a, s2)) continue;
      out.push_back(ProjPoint{{FieldCtx::one(), a, f.mul(b, f.epsilon())}});
    }
  }
  return out;
}

bool OrbitReport::ok() const {
  return all_orbits_full && pairwise_disjoint && reduction_consistent && covered == admissible_points;
}

OrbitReport orbit_check(const FieldCtx& f, const UnitalSet& u) {
  OrbitReport r;
  const PlaneIndex& idx = u.points().index();
  const auto g = group_g(f);
  const auto reps = orbit_representatives(f);
  const std::uint64_t order = f.big_order();
  r.representatives = reps.size();
  r.admissible_points = static_cast<std::size_t>(order * order - static_cast<std::uint64_t>(f.q()) * f.q() * f.q());
  r.all_orbits_full = true;
  r.pairwise_disjoint = true;
  r.reduction_consistent = true;

  std::vector<std::int32_t> owner(idx.size(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::vector<ProjPoint> orbit;
    for (const auto& m : g) orbit.push_back(act(f, m, reps[i]));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (orbit.size() != g.size()) r.all_orbits_full = false;
    for (const auto& p : orbit) {
      auto& o = owner[idx.of(p)];
      if (o != -1 && o != static_cast<std::int32_t>(i)) r.pairwise_disjoint = false;
      if (o == -1) ++r.covered;
      o = static_cast<std::int32_t>(i);
      if (p.c[0] != FieldCtx::one() || u.contains(p)) {
        r.reduction_consistent = false;
        continue;
      }
      const auto [a, b] = orbit_representative(f, u, p);
      if (ProjPoint{{FieldCtx::one(), a, f.mul(b, f.epsilon())}} != reps[i]) r.reduction_consistent = false;
    }
  }
  return r;
}

}  // namespace btu
