#include <doctest.h>

#include <set>
#include <stdexcept>

#include "btu/projective.hpp"

using namespace btu;

TEST_SUITE("projective") {
  TEST_CASE("plane sizes at e=1") {
    const FieldCtx f = FieldCtx::build(1);
    const PlaneIndex idx(f);
    CHECK(idx.size() == 4161);
    std::set<ProjPoint> seen;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const ProjPoint p = idx.point(i);
      CHECK(idx.of(p) == i);
      CHECK(normalize(f, p.c) == p.c);
      seen.insert(p);
    }
    CHECK(seen.size() == 4161);
  }

  TEST_CASE("incidence") {
    const FieldCtx f = FieldCtx::build(1);
    const PlaneIndex idx(f);
    for (std::size_t i = 0; i < idx.size(); i += 97) {
      const ProjLine l = idx.line(i);
      const auto pts = points_on(f, l);
      CHECK(pts.size() == 65);
      CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == 65);
      for (const auto& p : pts) CHECK(incident(f, p, l));
      CHECK(line_through(f, pts[0], pts[7]) == l);
      const auto ls = lines_through(f, idx.point(i));
      CHECK(ls.size() == 65);
      CHECK(meet(f, ls[3], ls[40]) == idx.point(i));
    }
  }

  TEST_CASE("normalisation") {
    const FieldCtx f = FieldCtx::build(1);
    const Felt a{0x13};
    CHECK(make_point(f, Felt{0}, a, f.mul(a, Felt{5})).c == Triple{Felt{0}, Felt{1}, Felt{5}});
    CHECK_THROWS_AS(normalize(f, Triple{}), std::invalid_argument);
    const ProjPoint p = make_point(f, Felt{1}, Felt{2}, Felt{3});
    CHECK_THROWS_AS(line_through(f, p, p), std::invalid_argument);
    const ProjLine l = make_line(f, Felt{1}, Felt{2}, Felt{3});
    CHECK_THROWS_AS(meet(f, l, l), std::invalid_argument);
  }

  TEST_CASE("Baer sublines") {
    const FieldCtx f = FieldCtx::build(1);
    const ProjLine l = make_line(f, Felt{1}, Felt{0x21}, Felt{0x07});
    const auto pts = points_on(f, l);
    const auto sub = baer_subline(f, pts[0], pts[1], pts[2]);
    CHECK(sub.size() == 9);
    CHECK(is_baer_subline(f, sub));
    CHECK(baer_subline(f, sub[4], sub[2], sub[7]) == sub);
    // The subfield points of [1,0,0] form a subline.
    std::vector<ProjPoint> real;
    for (const Felt z : f.subfield()) real.push_back(make_point(f, Felt{0}, Felt{1}, z));
    real.push_back(make_point(f, Felt{0}, Felt{0}, Felt{1}));
    CHECK(is_baer_subline(f, real));
    real[3] = make_point(f, Felt{0}, Felt{1}, f.epsilon());
    CHECK_FALSE(is_baer_subline(f, real));
    CHECK_THROWS_AS(baer_subline(f, pts[0], pts[0], pts[2]), std::invalid_argument);
    CHECK_THROWS_AS(is_baer_subline(f, std::span<const ProjPoint>(pts.data(), 5)), std::invalid_argument);
  }
}
