#include <doctest.h>

#include <random>
#include <stdexcept>

#include "btu/collineation.hpp"

using namespace btu;

TEST_SUITE("collineation") {
  TEST_CASE("group census at e=1") {
    const FieldCtx f = FieldCtx::build(1);
    const GroupCensus g = group_census(f);
    CHECK(g.ok(f));
    CHECK(g.order == 64);
    CHECK(g.order_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 7}, {4, 56}});
    CHECK(g.law_violations == 0);
    CHECK(g.square_violations == 0);
    CHECK(g.commutative);
    CHECK(g.exponent == 4);
    CHECK(g.c4_factors == 3);
    CHECK(g.c2_factors == 0);
  }

  TEST_CASE("group law by direct composition") {
    const FieldCtx f = FieldCtx::build(1);
    for (const Felt u : f.subfield())
      for (const Felt v : f.subfield())
        for (const Felt s : f.subfield())
          for (const Felt t : f.subfield()) {
            const Collineation lhs = compose(f, m_uv(f, s, t), m_uv(f, u, v));
            const Collineation rhs = m_uv(f, u + s, t + v + f.mul(s, u, f.delta()));
            REQUIRE(lhs == rhs);
          }
    const Collineation m = m_uv(f, Felt{0xe}, Felt{0x17});
    CHECK(as_uv(f, m) == GroupElementUV{Felt{0xe}, Felt{0x17}});
    CHECK_FALSE(as_uv(f, build_psi(f)).has_value());
  }

  TEST_CASE("composition is associative and acts consistently") {
    const FieldCtx f = FieldCtx::build(1);
    std::mt19937 rng(7u);
    std::uniform_int_distribution<std::uint32_t> pick(0, 63);
    auto random_coll = [&] {
      for (;;) {
        Matrix3 m;
        for (auto& x : m) x = Felt{pick(rng)};
        if (!det3(f, m).is_zero()) return make_collineation(f, m, static_cast<int>(pick(rng) % 6));
      }
    };
    const PlaneIndex idx(f);
    for (int i = 0; i < 50; ++i) {
      const Collineation a = random_coll(), b = random_coll(), c = random_coll();
      CHECK(compose(f, compose(f, a, b), c) == compose(f, a, compose(f, b, c)));
      const ProjPoint p = idx.point(pick(rng) * 61 + pick(rng));
      CHECK(act(f, compose(f, a, b), p) == act(f, b, act(f, a, p)));
    }
    CHECK(compose(f, identity_collineation(), build_psi(f)) == build_psi(f));
  }

  TEST_CASE("psi") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    const PsiReport p = psi_suite(f, u);
    CHECK(p.ok(f));
    CHECK(p.stabilises);
    CHECK(p.order == 24);
    CHECK(p.pencil_failures == 0);
    CHECK(p.intersection_with_g == 4);
    CHECK(p.product_size == 384);
    CHECK(p.trace.mu == Felt{0x24});
    CHECK(p.trace.trace_mu == 1);
    CHECK(p.trace.identity_holds);
    CHECK(psi_mu(f) == f.mul(f.pow(f.delta(), 2), f.epsilon()));
    CHECK(element_order(f, build_psi(f), 100) == 24);
    CHECK_THROWS_AS(element_order(f, build_psi(f), 10), BoundExceeded);
  }

  TEST_CASE("g times psi") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    const auto gp = g_times_psi(f);
    CHECK(gp.size() == 384);
    for (std::size_t i = 0; i < gp.size(); i += 23) CHECK(stabilizes(f, gp[i], u));
  }

  TEST_CASE("orbit representatives") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    CHECK(orbit_representatives(f).size() == 56);
    const OrbitReport o = orbit_check(f, u);
    CHECK(o.ok());
    CHECK(o.representatives == 56);
    CHECK(o.admissible_points == 3584);
    CHECK(o.covered == 3584);
    const ProjPoint p = act(f, m_uv(f, Felt{0x16}, Felt{0xf}), make_point(f, Felt{1}, Felt{0xe}, Felt{0x22}));
    CHECK(orbit_representative(f, u, p) == std::pair{Felt{0xe}, Felt{1}});
  }

  TEST_CASE("errors") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    CHECK_THROWS_AS(make_collineation(f, Matrix3{}), std::invalid_argument);
    CHECK_THROWS_AS(orbit_representative(f, u, p_infinity()), std::invalid_argument);
    CHECK_THROWS_AS(orbit_representative(f, u, make_point(f, Felt{0}, Felt{1}, Felt{3})), std::invalid_argument);
  }
}
