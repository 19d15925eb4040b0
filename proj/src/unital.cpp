#include "btu/unital.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "btu/parallel.hpp"

namespace btu {

PointSet::PointSet(const FieldCtx& f, std::vector<ProjPoint> points)
    : field_(&f), index_(f), points_(std::move(points)), member_(index_.size(), 0) {
  for (const auto& p : points_) {
    auto& m = member_[index_.of(p)];
    if (m != 0) throw std::invalid_argument("PointSet: repeated point");
    m = 1;
  }
}

LineIncidence line_incidence(const PointSet& s, unsigned threads) {
  const FieldCtx& f = s.field();
  const PlaneIndex& idx = s.index();
  const std::size_t nlines = idx.size();
  const auto pts = s.points();

  const unsigned workers = worker_count(pts.size(), threads);
  std::vector<LineIncidence> partial(workers);
  for (auto& p : partial) {
    p.hits.assign(nlines, 0);
    p.touch.assign(nlines, 0);
  }
  parallel_for(pts.size(), workers, [&](std::size_t i, unsigned w) {
    auto& part = partial[w];
    const auto pi = static_cast<std::uint32_t>(idx.of(pts[i]));
    for_each_line_through(f, pts[i], [&](const ProjLine& l) {
      const std::size_t li = idx.of(l);
      ++part.hits[li];
      part.touch[li] = pi;
    });
  });

  LineIncidence out = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (std::size_t li = 0; li < nlines; ++li) {
      if (partial[w].hits[li] == 0) continue;
      out.hits[li] += partial[w].hits[li];
      out.touch[li] = partial[w].touch[li];
    }
  }
  return out;
}

UnitalReport verify_unital(const PointSet& s, unsigned threads) {
  const FieldCtx& f = s.field();
  const std::uint64_t q = f.q();
  if (s.size() != q * q * q + 1) throw std::invalid_argument("verify_unital: expected q^3+1 points");

  const LineIncidence inc = line_incidence(s, threads);
  UnitalReport r;
  r.points = s.size();
  r.lines = inc.hits.size();
  for (std::size_t li = 0; li < inc.hits.size(); ++li) {
    const std::uint32_t h = inc.hits[li];
    ++r.histogram[h];
    if (h == 1) {
      ++r.tangents;
    } else if (h == q + 1) {
      ++r.secants;
    } else {
      ++r.violation_count;
      if (r.violations.size() < 16) r.violations.push_back(s.index().line(li));
    }
  }
  return r;
}

struct UnitalSet::Lazy {
  std::once_flag once;
  LineIncidence incidence;
};

UnitalSet::UnitalSet(PointSet points) : points_(std::move(points)), lazy_(std::make_shared<Lazy>()) {}

const LineIncidence& UnitalSet::incidence() const {
  std::call_once(lazy_->once, [this] { lazy_->incidence = line_incidence(points_, 0); });
  return lazy_->incidence;
}

std::vector<ProjPoint> UnitalSet::section(const ProjLine& l) const {
  std::vector<ProjPoint> out;
  for_each_point_on(field(), l, [&](const ProjPoint& p) {
    if (contains(p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjLine> UnitalSet::tangent_lines(const ProjPoint& p) const {
  if (contains(p)) throw std::invalid_argument("tangent_lines: point lies on the unital");
  const auto& inc = incidence();
  std::vector<ProjLine> out;
  for_each_line_through(field(), p, [&](const ProjLine& l) {
    if (inc.hits[points_.index().of(l)] == 1) out.push_back(l);
  });
  return out;
}

ProjLine UnitalSet::tangent_at(const ProjPoint& p) const {
  if (!contains(p)) throw std::invalid_argument("tangent_at: point is not on the unital");
  const auto& inc = incidence();
  std::vector<ProjLine> found;
  for_each_line_through(field(), p, [&](const ProjLine& l) {
    if (inc.hits[points_.index().of(l)] == 1) found.push_back(l);
  });
  if (found.size() != 1) throw std::logic_error("tangent_at: point does not have exactly one tangent");
  return found.front();
}

Felt tits_f(const FieldCtx& f, Felt s, Felt t) {
  const std::uint64_t sg = f.sigma_exp();
  return f.pow(s, sg + 2) + f.pow(t, sg) + f.mul(s, t);
}

UnitalSet build_bt_unital(const FieldCtx& f) {
  const Felt eps = f.epsilon();
  std::vector<ProjPoint> pts;
  pts.reserve(static_cast<std::size_t>(f.q()) * f.q() * f.q() + 1);
  pts.push_back(p_infinity());
  for (const Felt s : f.subfield()) {
    for (const Felt t : f.subfield()) {
      const Felt y = s + f.mul(t, eps);
      const Felt fe = f.mul(tits_f(f, s, t), eps);
      for (const Felt r : f.subfield()) pts.push_back(ProjPoint{{FieldCtx::one(), y, r + fe}});
    }
  }
  // PointSet rejects repeats, which asserts the q^3 affine points are distinct.
  return UnitalSet(PointSet(f, std::move(pts)));
}

std::vector<ProjPoint> feet_direct(const UnitalSet& u, const ProjPoint& p) {
  const auto& inc = u.incidence();
  const auto& idx = u.points().index();
  if (u.contains(p)) throw std::invalid_argument("feet_direct: point lies on the unital");
  std::vector<ProjPoint> out;
  for_each_line_through(u.field(), p, [&](const ProjLine& l) {
    const std::size_t li = idx.of(l);
    if (inc.hits[li] == 1) out.push_back(idx.point(inc.touch[li]));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> feet_formula(const UnitalSet& u, const ProjPoint& p) {
  const FieldCtx& f = u.field();
  if (p.c[0] != FieldCtx::one()) throw std::invalid_argument("feet_formula: point lies on l_inf");
  if (u.contains(p)) throw std::invalid_argument("feet_formula: point lies on the unital");
  const auto [y1, y2] = f.decompose(p.c[1]);
  const auto [z1, z2] = f.decompose(p.c[2]);
  const Felt eps = f.epsilon();
  const Felt d = f.delta();

  std::vector<ProjPoint> out;
  for (const Felt s : f.subfield()) {
    for (const Felt t : f.subfield()) {
      const Felt fv = tits_f(f, s, t);
      if (fv != f.mul(y2, s) + f.mul(y1, t) + z2) continue;
      const Felt r = f.sqr(s) + f.mul(f.sqr(t), d) + f.mul(s, t) + f.mul(y1, s) + f.mul(y1, t) +
                     f.mul(y2, d, t) + z1;
      out.push_back(ProjPoint{{FieldCtx::one(), s + f.mul(t, eps), r + f.mul(fv, eps)}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_subline_property(const UnitalSet& u, const ProjPoint& q) {
  if (!u.contains(q)) throw std::invalid_argument("has_subline_property: point is not on the unital");
  const FieldCtx& f = u.field();
  bool ok = true;
  for_each_line_through(f, q, [&](const ProjLine& l) {
    if (!ok || u.line_hits(l) != f.q() + 1) return;
    const auto sec = u.section(l);
    if (!is_baer_subline(f, sec)) ok = false;
  });
  return ok;
}

bool collinear(const FieldCtx& f, std::span<const ProjPoint> pts) {
  if (pts.size() < 3) return true;
  const ProjLine l = line_through(f, pts[0], pts[1]);
  return std::all_of(pts.begin(), pts.end(), [&](const ProjPoint& p) { return incident(f, p, l); });
}

}  // namespace btu
