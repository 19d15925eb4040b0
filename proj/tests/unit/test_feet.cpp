#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "btu/feet.hpp"

using namespace btu;

namespace {

struct E1 {
  FieldCtx f = FieldCtx::build(1);
  UnitalSet u = build_bt_unital(f);
};

const E1& e1() {
  static const E1 ctx;
  return ctx;
}

// Rows written by the independent Python oracle.
std::vector<std::string> fixture_rows() {
  std::ifstream in(std::string(BTU_FIXTURE_DIR) + "/spectrum_e1.csv");
  REQUIRE(in);
  std::vector<std::string> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  return rows;
}

}  // namespace

TEST_SUITE("feet") {
  TEST_CASE("feet parameters and system") {
    const auto& [f, u] = e1();
    const ProjPoint p = make_point(f, Felt{1}, Felt{0x0f}, f.mul(Felt{0x17}, f.epsilon()) + Felt{0x18});
    REQUIRE_FALSE(u.contains(p));
    CHECK(feet_parameters(f, p).size() == 9);
    const auto feet = feet_direct(u, p);
    for (std::size_t i = 0; i < u.points().index().size(); i += 13) {
      const ProjLine l = u.points().index().line(i);
      std::uint32_t geo = 0;
      for (const auto& x : feet) geo += incident(f, x, l) ? 1 : 0;
      CHECK(feet_line_count(f, u, p, l) == geo);
      if (!l.c[2].is_zero()) CHECK(FeetSystem::make(f, u, p, l).count(f) == geo);
    }
    CHECK_THROWS_AS(FeetSystem::make(f, u, p, make_line(f, Felt{1}, Felt{1}, Felt{0})), std::invalid_argument);
    CHECK_THROWS_AS(feet_parameters(f, p_infinity()), std::invalid_argument);
  }

  TEST_CASE("tangent lines through P meet the feet once") {
    const auto& [f, u] = e1();
    const ProjPoint p = make_point(f, Felt{1}, Felt{0x0e}, Felt{0x22});
    for (const auto& l : u.tangent_lines(p)) CHECK(feet_line_count(f, u, p, l) == 1);
  }

  TEST_CASE("simple system examples") {
    const auto& [f, u] = e1();
    const Felt d = f.delta();
    CHECK(simple_system_solutions(f, Felt{0}, d, Felt{1}).size() == 3);
    CHECK(simple_system_solutions(f, Felt{0}, f.inv(d), f.pow_signed(d, -static_cast<std::int64_t>(f.sigma_exp())))
              .size() == 4);
  }

  TEST_CASE("line classes") {
    const auto& [f, u] = e1();
    const Felt y1{0x0e}, z2{0x17};
    const ProjPoint p = make_point(f, Felt{1}, y1, f.mul(z2, f.epsilon()));
    const Felt a1{0x19};
    const ProjLine pencil = make_line(f, a1 + f.mul(z2, f.epsilon()), y1, Felt{1});
    CHECK(classify_line(f, p, pencil) == LineClass::special_pencil);
    CHECK(on_special_pencil(f, p, pencil));
    CHECK(incident(f, special_pencil_centre(f, p), pencil));
    CHECK(special_pencil_centre(f, p) == make_point(f, Felt{0}, Felt{1}, y1));
    const ProjLine through = line_through(f, p, make_point(f, Felt{0}, Felt{1}, Felt{0x2b}));
    CHECK(classify_line(f, p, through) == LineClass::through_p);
    CHECK(classify_line(f, p, make_line(f, Felt{1}, Felt{2}, Felt{3})) == LineClass::easy);
    CHECK(to_string(LineClass::special_pencil) == "special_pencil");
    CHECK_THROWS_AS(classify_line(f, make_point(f, Felt{1}, f.epsilon(), Felt{0x22}), pencil), std::invalid_argument);
    int on = 0;
    for (const auto& l : lines_through(f, special_pencil_centre(f, p))) on += on_special_pencil(f, p, l) ? 1 : 0;
    CHECK(on == 8);
  }

  TEST_CASE("conic nucleus") {
    const auto& [f, u] = e1();
    const Felt y1{0x0f};
    const Conic c = feet_conic(f, y1, f.sqr(y1) + Felt{1});
    CHECK(c.discriminant(f) != Felt{0});
    CHECK(conic_nucleus(f, c) == normalize(f, Triple{y1, Felt{0}, Felt{1}}));
    CHECK(c.points(f).size() == 9);
    const Conic deg = feet_conic(f, y1, f.sqr(y1));
    CHECK(deg.discriminant(f) == Felt{0});
    CHECK_THROWS_AS(conic_nucleus(f, deg), std::domain_error);
    CHECK(oval_nucleus(f, c.points(f)) == normalize(f, Triple{y1, Felt{0}, Felt{1}}));
    const auto d = translation_oval(f);
    CHECK(d.size() == 9);
    CHECK(oval_nucleus(f, d) == Triple{Felt{0}, Felt{1}, Felt{0}});
    CHECK_THROWS_AS(oval_nucleus(f, std::span<const Triple>(d.data(), 4)), std::invalid_argument);
    CHECK(subplane_points(f).size() == 73);
  }

  TEST_CASE("translation oval cap") {
    const auto& [f, u] = e1();
    std::uint32_t mx = 0, mx0 = 0;
    for (const Felt a1 : f.subfield())
      for (const Felt a2 : f.subfield())
        for (const Felt a3 : f.subfield()) {
          if (a2.is_zero()) continue;
          const std::uint32_t k = translation_oval_conic_cap(f, a1, a2, a3);
          mx = std::max(mx, k);
          if (a3.is_zero()) mx0 = std::max(mx0, k);
        }
    CHECK(mx == 4);
    CHECK(mx0 == 3);
    CHECK_THROWS_AS(translation_oval_conic_cap(f, Felt{1}, Felt{0}, Felt{1}), std::invalid_argument);
  }

  TEST_CASE("oval parameterisation") {
    const auto& [f, u] = e1();
    for (const Felt z2 : f.subfield()) {
      if (z2.is_zero()) continue;
      const auto pts = oval_parameterisation(f, z2);
      CHECK(pts.size() == 9);
      CHECK(pts.front() == StPair{Felt{0}, f.pow(z2, f.sigma_exp() / 2)});
      for (const auto& [s, t] : pts) CHECK(tits_f(f, s, t) == z2);
    }
    CHECK_THROWS_AS(oval_parameterisation(f, Felt{0}), std::invalid_argument);
  }

  TEST_CASE("root counts") {
    const auto& [f, u] = e1();
    CHECK(linearised_family_roots(f, f.delta()) == 4);
    CHECK(membership_polynomial_roots(f, f.delta(), Felt{1}) == 2);
    for (const Felt a : f.subfield()) {
      if (a.is_zero()) continue;
      CHECK(h1_polynomial(f, a, Felt{0}) == Felt{0});
    }
    CHECK(menichetti_solvable(f, Felt{0}));
    int solvable = 0;
    for (const Felt c : f.subfield()) {
      const bool s = menichetti_solvable(f, c);
      solvable += s ? 1 : 0;
      CHECK(s == (f.trace_abs(c, false) == 0));
    }
    CHECK(solvable == 4);
    CHECK_THROWS(menichetti_solvable(f, f.epsilon()));
  }

  TEST_CASE("witnesses") {
    const auto& [f, u] = e1();
    const Witness w3 = witness_three(f, u);
    CHECK(w3.point == make_point(f, Felt{1}, Felt{0}, f.epsilon()));
    CHECK(w3.intersection.size() == 3);
    CHECK(w3.holds());
    CHECK(w3.on_special_pencil);
    const Witness w4 = witness_four(f, u);
    CHECK(w4.expected == 4);
    CHECK(w4.intersection.size() == 0);
    CHECK_FALSE(w4.on_special_pencil);
    const Witness w4p = witness_four_pencil(f, u);
    CHECK(w4p.point == w4.point);
    CHECK(w4p.intersection.size() == 4);
    CHECK(w4p.on_special_pencil);
  }

  TEST_CASE("oracle coherence on a sample") {
    const auto& [f, u] = e1();
    const FeetOracleReport r = feet_oracle_check(f, u, 1, 37, 5);
    CHECK(r.ok());
    CHECK(r.points > 90);
    CHECK(r.formula_mismatches == 0);
    CHECK(r.count_mismatches == 0);
    CHECK(r.infinity_collinear_failures == 0);
  }

  TEST_CASE("spectrum over representatives") {
    const auto& [f, u] = e1();
    const SpectrumReport s = full_spectrum_scan(f, u, false, true, 1);
    CHECK(s.ok());
    CHECK(s.points_scanned == 56);
    CHECK(s.histogram ==
          std::map<std::uint32_t, std::uint64_t>{{0, 202186}, {1, 28968}, {2, 1812}, {3, 32}, {4, 18}});
    CHECK(s.max_count == 4);
    CHECK(s.all_k_realised());
    CHECK(s.high_off_pencil == 0);
    CHECK(s.easy_over_two == 0);
    CHECK(s.collinear_feet == 0);
    CHECK(s.invariance_checked == 3528);
    CHECK(s.invariance_failures == 0);
    const auto rows = fixture_rows();
    REQUIRE(rows.size() == s.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = s.rows[i];
      std::ostringstream line;
      line << to_hex(r.a) << ',' << to_hex(r.b);
      for (const auto k : r.k) line << ',' << k;
      CHECK(line.str() == rows[i]);
    }
    CHECK(rows.front() == "0,1,3611,516,33,1,0");
  }

  TEST_CASE("analytic lemmas at e=1") {
    const FieldCtx& f = e1().f;
    const AnalyticReport a = analytic_lemmas(f);
    CHECK(a.ok(f));
    CHECK(a.degenerate_conics == 64);
    CHECK(a.conic_nucleus_failures == 0);
    CHECK(a.oval_nucleus_failures == 0);
    CHECK(a.oval_on_unital_cases == 8);
    CHECK(a.oval_on_unital_failures == 0);
    CHECK(a.simple_system_max == 4);
    CHECK(a.simple_system_histogram ==
          std::map<std::uint32_t, std::uint64_t>{{0, 202}, {1, 176}, {2, 84}, {3, 32}, {4, 18}});
    CHECK(a.translation_nucleus_ok);
    CHECK(a.cap_cases == 448);
    CHECK(a.cap_max == 4);
    CHECK(a.cap_max_a3_zero == 3);
    CHECK(a.cap_histogram == std::map<std::uint32_t, std::uint64_t>{{0, 126}, {1, 196}, {2, 84}, {3, 28}, {4, 14}});
    CHECK(a.parameterisation_failures == 0);
    CHECK(a.root_channel_failures == 0);
    CHECK(a.family_roots == std::map<std::uint32_t, std::uint64_t>{{2, 4}, {4, 3}});
    CHECK(a.family_trace_failures == 0);
    CHECK(a.family_c1_roots == 2);
    CHECK(a.delta_family_roots == 4);
    CHECK(a.menichetti_failures == 0);
    CHECK(a.trace_identity_failures == 0);
  }
}
