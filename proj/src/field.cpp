#include "btu/field.hpp"

#include <array>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace btu {

namespace {

// Lowest-weight irreducible polynomials of degree 4e+2 (trinomials), e = 1..3.
constexpr std::array<std::uint32_t, 4> kModuli = {
    0,
    (1u << 6) | (1u << 1) | 1u,    // t^6 + t + 1
    (1u << 10) | (1u << 3) | 1u,   // t^10 + t^3 + 1
    (1u << 14) | (1u << 5) | 1u,   // t^14 + t^5 + 1
};

constexpr std::uint32_t kFullTableLimit = 4096;

}  // namespace

std::string to_hex(std::uint32_t bits) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%x", bits);
  return buf;
}

std::string to_hex(Felt x) { return to_hex(x.bits); }

std::uint32_t modulus_for(int e) {
  if (e < 1 || e >= static_cast<int>(kModuli.size())) return 0;
  return kModuli[static_cast<std::size_t>(e)];
}

std::uint32_t FieldCtx::clmul_reduce(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0;
  const std::uint32_t top = 1u << degree_;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_;
  }
  return r;
}

FieldCtx FieldCtx::build(int e) {
  const std::uint32_t mod = modulus_for(e);
  if (mod == 0) throw std::invalid_argument("no modulus for e = " + std::to_string(e));

  FieldCtx ctx;
  ctx.e_ = e;
  ctx.degree_ = 4 * e + 2;
  ctx.q_ = 1u << (2 * e + 1);
  ctx.big_order_ = 1u << ctx.degree_;
  ctx.modulus_ = mod;
  ctx.sigma_ = 1u << (e + 1);

  const std::uint32_t n = ctx.big_order_;
  if (n <= kFullTableLimit) {
    ctx.mul_table_.resize(static_cast<std::size_t>(n) * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        ctx.mul_table_[(static_cast<std::size_t>(a) << ctx.degree_) | b] =
            static_cast<std::uint16_t>(ctx.clmul_reduce(a, b));
  }

  ctx.frob_.resize(static_cast<std::size_t>(ctx.degree_) * n);
  for (std::uint32_t x = 0; x < n; ++x) ctx.frob_[x] = x;
  for (int k = 1; k < ctx.degree_; ++k) {
    const std::size_t row = static_cast<std::size_t>(k) * n;
    const std::size_t prev = row - n;
    for (std::uint32_t x = 0; x < n; ++x) {
      const std::uint32_t y = ctx.frob_[prev + x];
      ctx.frob_[row + x] = ctx.clmul_reduce(y, y);
    }
  }

  ctx.inv_.assign(n, 0);
  for (std::uint32_t x = 1; x < n; ++x) ctx.inv_[x] = ctx.pow(Felt{x}, n - 2).bits;

  ctx.sub_pos_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (ctx.in_subfield(Felt{x})) {
      ctx.sub_pos_[x] = static_cast<std::uint32_t>(ctx.subfield_.size());
      ctx.subfield_.push_back(Felt{x});
    }
  }
  if (ctx.subfield_.size() != ctx.q_) throw std::logic_error("modulus table entry is not irreducible");

  for (std::uint32_t x = 0; x < n; ++x) {
    const Felt eps{x};
    if (ctx.conj(eps) != eps + one()) continue;
    const Felt d = ctx.sqr(eps) + eps;
    if (d == one() || !ctx.in_subfield(d) || ctx.trace_abs(d, false) != 1) continue;
    ctx.epsilon_ = eps;
    ctx.delta_ = d;
    return ctx;
  }
  throw std::logic_error("no admissible epsilon in F_{q^2}; modulus table is broken");
}

Felt FieldCtx::inv(Felt a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  return Felt{inv_.empty() ? pow(a, big_order_ - 2).bits : inv_[a.bits]};
}

Felt FieldCtx::pow(Felt a, std::uint64_t n) const {
  Felt r = one();
  while (n != 0) {
    if (n & 1u) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Felt FieldCtx::pow_signed(Felt a, std::int64_t n) const {
  if (n == 0) return one();
  if (a.is_zero()) return zero();
  const std::int64_t m = static_cast<std::int64_t>(big_order_) - 1;
  std::int64_t r = n % m;
  if (r < 0) r += m;
  return pow(a, static_cast<std::uint64_t>(r));
}

Felt FieldCtx::sigma(Felt x) const {
  if (!in_subfield(x)) throw std::invalid_argument("sigma: argument outside F_q");
  return frobenius(x, e_ + 1);
}

Felt FieldCtx::sigma_root(Felt x) const {
  if (!in_subfield(x)) throw std::invalid_argument("sigma_root: argument outside F_q");
  return frobenius(x, e_);
}

int FieldCtx::trace_abs(Felt x, bool over_big) const {
  if (!over_big && !in_subfield(x)) throw std::invalid_argument("trace_abs: argument outside F_q");
  const int terms = over_big ? degree_ : degree_ / 2;
  Felt s;
  for (int i = 0; i < terms; ++i) s += frobenius(x, i);
  if (s.bits > 1) throw std::logic_error("trace_abs: trace left F_2");
  return static_cast<int>(s.bits);
}

ExponentReport FieldCtx::exponent_inverse_check() const {
  const std::int64_t s = sigma_;
  struct Spec {
    const char* name;
    std::int64_t exp;
    std::int64_t inv;
  };
  const std::array<Spec, 4> specs = {{
      {"sigma+1", s + 1, s - 1},
      {"sigma+2", s + 2, 1 - s / 2},
      {"sigma-1", s - 1, s + 1},
      {"sigma-2", s - 2, -(s / 2 + 1)},
  }};

  ExponentReport report;
  for (const auto& sp : specs) {
    ExponentPair pair{sp.name, sp.exp, sp.inv};
    std::vector<bool> hit(big_order_, false);
    bool bijective = true;
    bool inverse = true;
    for (Felt x : subfield_) {
      const Felt y = pow_signed(x, sp.exp);
      if (!in_subfield(y) || hit[y.bits]) bijective = false;
      hit[y.bits] = true;
      if (pow_signed(y, sp.inv) != x) inverse = false;
    }
    pair.bijective = bijective;
    pair.inverse_holds = inverse;
    if (!bijective) report.violations.push_back(std::string("x^(") + sp.name + ") is not a permutation of F_q");
    if (!inverse) report.violations.push_back(std::string("wrong inverse for x^(") + sp.name + ")");
    report.pairs.push_back(pair);
  }
  return report;
}

SigmaSquareReport FieldCtx::sigma_square_check() const {
  SigmaSquareReport r;
  const std::uint64_t s2 = static_cast<std::uint64_t>(sigma_) * sigma_;
  for (std::uint32_t b = 0; b < big_order_; ++b) {
    const Felt x{b};
    if (pow(x, s2) == sqr(x)) continue;
    ++r.big_field_violations;
    if (in_subfield(x)) ++r.subfield_violations;
  }
  return r;
}

}  // namespace btu
