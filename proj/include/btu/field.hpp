#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace btu {

/// Element of GF(2^m) in the polynomial basis; bit i is the coefficient of t^i.
struct Felt {
  std::uint32_t bits = 0;

  constexpr Felt() = default;
  constexpr explicit Felt(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }

  constexpr Felt& operator+=(Felt o) {
    bits ^= o.bits;
    return *this;
  }
  friend constexpr Felt operator+(Felt a, Felt b) { return Felt{a.bits ^ b.bits}; }
  friend constexpr bool operator==(Felt, Felt) = default;
  friend constexpr auto operator<=>(Felt, Felt) = default;
};

/// Lowercase hex of the bit vector, no prefix.
std::string to_hex(Felt x);
std::string to_hex(std::uint32_t bits);

/// Violations found by FieldCtx::exponent_inverse_check; empty means every pair held.
struct ExponentPair {
  std::string name;       // e.g. "sigma+1"
  std::int64_t exponent;  // as an integer, may be negative
  std::int64_t inverse;
  bool bijective = false;
  bool inverse_holds = false;
};

struct ExponentReport {
  std::vector<ExponentPair> pairs;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// How the two readings of "sigma squared acts as squaring" fare on the field.
struct SigmaSquareReport {
  std::uint32_t subfield_violations = 0;  // x in F_q with x^(sigma^2) != x^2
  std::uint32_t big_field_violations = 0;  // same over all of F_{q^2}
};

/// Arithmetic context for F_q inside F_{q^2}, q = 2^(2e+1).
///
/// F_q is the Frobenius-fixed subfield {x : x^q = x}. The context is immutable
/// after build() and every member function is safe to call concurrently.
class FieldCtx {
 public:
  /// Throws std::invalid_argument for e outside the modulus table (1..3).
  static FieldCtx build(int e);

  int e() const { return e_; }
  int degree() const { return degree_; }  // 4e+2
  std::uint32_t q() const { return q_; }
  std::uint32_t big_order() const { return big_order_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t sigma_exp() const { return sigma_; }
  Felt epsilon() const { return epsilon_; }
  Felt delta() const { return delta_; }

  static constexpr Felt zero() { return Felt{0}; }
  static constexpr Felt one() { return Felt{1}; }

  Felt mul(Felt a, Felt b) const {
    if (!mul_table_.empty()) return Felt{mul_table_[(a.bits << degree_) | b.bits]};
    return Felt{clmul_reduce(a.bits, b.bits)};
  }
  template <typename... Rest>
  Felt mul(Felt a, Felt b, Felt c, Rest... rest) const {
    return mul(mul(a, b), c, rest...);
  }
  Felt sqr(Felt a) const { return Felt{frob_[big_order_ + a.bits]}; }

  /// Throws std::domain_error on zero.
  Felt inv(Felt a) const;
  Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }
  Felt pow(Felt a, std::uint64_t n) const;
  /// Signed exponent, read modulo q^2-1 on nonzero elements; 0 maps to 0 (n != 0).
  Felt pow_signed(Felt a, std::int64_t n) const;

  /// x^(2^k), k reduced modulo 4e+2.
  Felt frobenius(Felt x, int k) const {
    int r = k % degree_;
    if (r < 0) r += degree_;
    return Felt{frob_[static_cast<std::size_t>(r) * big_order_ + x.bits]};
  }
  Felt conj(Felt x) const { return frobenius(x, degree_ / 2); }  // x^q
  bool in_subfield(Felt x) const { return conj(x) == x; }

  /// x^sigma on F_q; throws std::invalid_argument outside the subfield.
  Felt sigma(Felt x) const;
  /// Inverse of sigma on F_q, i.e. x^(2^e).
  Felt sigma_root(Felt x) const;

  /// Absolute trace to F_2 (returns 0 or 1). With over_big=false x must lie in F_q.
  int trace_abs(Felt x, bool over_big) const;
  /// x + x^q.
  Felt trace_rel(Felt x) const { return x + conj(x); }

  /// x = x1 + x2*eps with x1, x2 in F_q.
  std::pair<Felt, Felt> decompose(Felt x) const {
    Felt x2 = x + conj(x);
    return {x + mul(x2, epsilon_), x2};
  }
  Felt recompose(Felt x1, Felt x2) const { return x1 + mul(x2, epsilon_); }

  /// Elements of F_q in increasing bit order.
  std::span<const Felt> subfield() const { return subfield_; }
  /// Position of x in subfield(); x must lie in F_q.
  std::uint32_t subfield_position(Felt x) const { return sub_pos_[x.bits]; }

  ExponentReport exponent_inverse_check() const;
  SigmaSquareReport sigma_square_check() const;

 private:
  FieldCtx() = default;
  std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b) const;

  int e_ = 0;
  int degree_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t big_order_ = 0;
  std::uint32_t modulus_ = 0;
  std::uint32_t sigma_ = 0;
  Felt epsilon_;
  Felt delta_;

  std::vector<std::uint16_t> mul_table_;  // only when q^2 <= 4096
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> frob_;  // degree_ rows of q^2 entries
  std::vector<Felt> subfield_;
  std::vector<std::uint32_t> sub_pos_;
};

/// Irreducible modulus used for degree 4e+2, or 0 when e is not supported.
std::uint32_t modulus_for(int e);

}  // namespace btu
