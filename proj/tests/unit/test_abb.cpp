#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "btu/abb.hpp"
#include "btu/unital.hpp"

using namespace btu;

TEST_SUITE("abb") {
  TEST_CASE("spread and ovoid at e=1") {
    const FieldCtx f = FieldCtx::build(1);
    const Spread sp = build_spread(f);
    CHECK(sp.elements.size() == 65);
    for (const auto& el : sp.elements) CHECK(el.size() == 9);
    const SpreadCheck sc = check_spread(f, sp);
    CHECK(sc.disjoint);
    CHECK(sc.covers);
    CHECK(sc.covered == 585);
    CHECK(sp.plane_points[sp.special] == p_infinity());
    const TitsOvoid ov = build_tits_ovoid(f);
    CHECK(ov.points.size() == 65);
    CHECK(is_cap(f, ov.points));
    auto bad = ov.points;
    bad.push_back(make_pg4(f, {Felt{1}, Felt{0}, Felt{0}, Felt{0}, Felt{1}}));
    CHECK_FALSE(is_cap(f, bad));
  }

  TEST_CASE("tangent planes") {
    const FieldCtx f = FieldCtx::build(1);
    const TitsOvoid ov = build_tits_ovoid(f);
    for (std::size_t i = 0; i < ov.points.size(); i += 9) {
      const auto pl = tangent_plane_at(f, ov, ov.points[i]);
      CHECK(pl[3].is_zero());
      int hits = 0;
      for (const auto& p : ov.points) {
        Felt s;
        for (int c = 0; c < 5; ++c) s += f.mul(pl[c], p.c[c]);
        hits += s.is_zero() ? 1 : 0;
      }
      CHECK(hits == 1);
    }
    CHECK_THROWS_AS(tangent_plane_at(f, ov, make_pg4(f, {Felt{1}, Felt{0}, Felt{0}, Felt{0}, Felt{1}})),
                    std::invalid_argument);
  }

  TEST_CASE("cone and ABB equality") {
    for (int e : {1, 2}) {
      const FieldCtx f = FieldCtx::build(e);
      const std::uint64_t q = f.q();
      const OvoidalCone cone = build_cone(f, build_tits_ovoid(f));
      CHECK(cone.points.size() == 1 + (q * q + 1) * q);
      CHECK(sigma_section(cone).size() == q + 1);
      const AbbComparison cmp = abb_unital_equality(f);
      CHECK(cmp.equal);
      CHECK(cmp.image_size == q * q * q + 1);
      CHECK(cmp.only_in_image.empty());
      CHECK(cmp.only_in_unital.empty());
    }
  }

  TEST_CASE("mutated cone differs") {
    const FieldCtx f = FieldCtx::build(1);
    const Spread sp = build_spread(f);
    TitsOvoid ov = build_tits_ovoid(f);
    // Replace an affine ovoid point (1,s,t,0,f) by (1,s,t,0,f+1).
    auto& c = ov.points[5].c;
    REQUIRE(c[0] == Felt{1});
    c[4] = c[4] + Felt{1};
    const AbbComparison cmp = compare_with_unital(f, sp, build_cone(f, ov));
    CHECK_FALSE(cmp.equal);
    CHECK(cmp.only_in_image.size() == 8);
    CHECK(cmp.only_in_unital.size() == 8);
  }

  TEST_CASE("abb map errors") {
    const FieldCtx f = FieldCtx::build(1);
    const Spread sp = build_spread(f);
    const std::vector<PG4Point> part{sp.elements[3][0]};
    CHECK_THROWS_AS(abb_map(f, sp, part), std::invalid_argument);
    const std::vector<PG4Point> whole = sp.elements[3];
    CHECK(abb_map(f, sp, whole) == std::vector<ProjPoint>{sp.plane_points[3]});
    CHECK_THROWS_AS(make_pg4(f, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_pg4(f, {Felt{1}, f.epsilon(), Felt{0}, Felt{0}, Felt{0}}), std::invalid_argument);
    const TitsOvoid ov = build_tits_ovoid(f);
    CHECK_THROWS_AS(build_cone(f, ov.points, make_pg4(f, {Felt{1}, Felt{0}, Felt{0}, Felt{0}, Felt{0}})),
                    std::invalid_argument);
  }

  TEST_CASE("counting identities") {
    const IdentityReport r8 = counting_identities(8);
    auto find = [](const IdentityReport& r, const std::string& name) {
      const auto it = std::find_if(r.identities.begin(), r.identities.end(),
                                   [&](const Identity& i) { return i.name == name; });
      REQUIRE(it != r.identities.end());
      return *it;
    };
    CHECK(find(r8, "flag_group_order").lhs == "1040449536");
    CHECK(find(r8, "unital_orbit_semilinear").rhs == "16257024");
    CHECK(find(r8, "tits_ovoid_count").rhs == "1186762752");
    CHECK(find(r8, "ovoids_tangent_to_plane").holds);
    const Identity pg4 = find(r8, "ovoids_tangent_to_plane_pg4_divisor");
    CHECK(pg4.lhs == "77139578880/4681");
    CHECK_FALSE(pg4.holds);
    for (const std::uint64_t q : {8u, 32u, 128u}) {
      const IdentityReport r = counting_identities(q);
      for (const auto& i : r.identities)
        if (i.name != "ovoids_tangent_to_plane_pg4_divisor") CHECK_MESSAGE(i.holds, i.name);
    }
    CHECK_THROWS_AS(counting_identities(16), std::invalid_argument);
    CHECK_THROWS_AS(counting_identities(512), std::invalid_argument);
    CHECK(to_decimal(static_cast<uint128>(1) << 100) == "1267650600228229401496703205376");
  }
}
