#include <doctest.h>

#include <stdexcept>

#include "btu/unital.hpp"

using namespace btu;

TEST_SUITE("unital") {
  TEST_CASE("Buekenhout-Tits unital at e=1") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    CHECK(u.size() == 513);
    CHECK(u.contains(p_infinity()));
    const UnitalReport rep = verify_unital(u.points());
    CHECK(rep.ok());
    CHECK(rep.lines == 4161);
    CHECK(rep.histogram == std::map<std::uint32_t, std::uint64_t>{{1, 513}, {9, 3648}});
    CHECK(u.line_hits(l_infinity()) == 1);
    CHECK(u.tangent_at(p_infinity()) == l_infinity());
  }

  TEST_CASE("mutated point set is not a unital") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    std::vector<ProjPoint> pts(u.points().points().begin(), u.points().points().end());
    const PlaneIndex idx(f);
    for (std::size_t i = 0;; ++i) {
      if (!u.contains(idx.point(i))) {
        pts.back() = idx.point(i);
        break;
      }
    }
    const UnitalReport rep = verify_unital(PointSet(f, pts));
    CHECK_FALSE(rep.ok());
    CHECK(rep.violation_count > 0);
  }

  TEST_CASE("subline property holds only at P_inf") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    CHECK(has_subline_property(u, p_infinity()));
    int holders = 0;
    for (const auto& p : u.points().points()) holders += has_subline_property(u, p) ? 1 : 0;
    CHECK(holders == 1);
    CHECK_THROWS_AS(has_subline_property(u, make_point(f, Felt{1}, Felt{0}, f.epsilon())), std::invalid_argument);
  }

  TEST_CASE("Hermitian control has the subline property everywhere") {
    const FieldCtx f = FieldCtx::build(1);
    const std::uint64_t q = f.q();
    std::vector<ProjPoint> herm;
    const PlaneIndex idx(f);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const ProjPoint p = idx.point(i);
      Felt s;
      for (const Felt x : p.c) s += f.pow(x, q + 1);
      if (s.is_zero()) herm.push_back(p);
    }
    REQUIRE(herm.size() == 513);
    const UnitalSet h(PointSet(f, herm));
    CHECK(verify_unital(h.points()).ok());
    for (std::size_t i = 0; i < herm.size(); i += 16) CHECK(has_subline_property(h, herm[i]));
  }

  TEST_CASE("feet") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    const ProjPoint p = make_point(f, Felt{1}, Felt{0x0e}, f.epsilon());
    REQUIRE_FALSE(u.contains(p));
    const auto feet = feet_direct(u, p);
    CHECK(feet.size() == 9);
    CHECK(feet == feet_formula(u, p));
    CHECK(u.tangent_lines(p).size() == 9);
    CHECK_FALSE(collinear(f, feet));
    // A point of l_inf other than P_inf has collinear feet.
    const ProjPoint inf = make_point(f, Felt{0}, Felt{1}, Felt{0x05});
    const auto inf_feet = feet_direct(u, inf);
    CHECK(inf_feet.size() == 9);
    CHECK(collinear(f, inf_feet));
    CHECK_THROWS_AS(feet_direct(u, p_infinity()), std::invalid_argument);
    CHECK_THROWS_AS(feet_formula(u, inf), std::invalid_argument);
    CHECK_THROWS_AS(u.tangent_at(p), std::invalid_argument);
  }

  TEST_CASE("tits function") {
    const FieldCtx f = FieldCtx::build(1);
    for (const Felt s : f.subfield())
      for (const Felt t : f.subfield()) {
        const Felt v = tits_f(f, s, t);
        CHECK(f.in_subfield(v));
        CHECK(v == f.mul(f.sigma(s), s, s) + f.sigma(t) + f.mul(s, t));
      }
  }

  TEST_CASE("unital at e=2") {
    const FieldCtx f = FieldCtx::build(2);
    const UnitalSet u = build_bt_unital(f);
    CHECK(u.size() == 32769);
  }
}
