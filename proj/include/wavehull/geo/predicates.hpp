#pragma once

// Orientation and in-circle tests that are exact for IEEE doubles.
// Fast path: Shewchuk's stage-A floating-point filter. Slow path: the full
// determinant evaluated in expansion arithmetic (error-free transforms built
// on fma), so the returned sign is always the sign of the true determinant.
// Requires -ffp-contract=off (or equivalent) so compilers do not re-fuse the
// transforms.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace wavehull::geo {

namespace detail {

// half-ulp of 1.0; the "machine epsilon" of Shewchuk's error bounds
inline constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
inline constexpr double kCcwErrA = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kIccErrA = (10.0 + 96.0 * kEps) * kEps;

struct TwoDouble {
  double hi, lo;  // hi + lo == exact result, |lo| <= ulp(hi)/2
};

inline TwoDouble two_sum(double a, double b) {
  double x = a + b;
  double bv = x - a;
  double av = x - bv;
  return {x, (a - av) + (b - bv)};
}

// requires |a| >= |b| or a == 0
inline TwoDouble fast_two_sum(double a, double b) {
  double x = a + b;
  return {x, b - (x - a)};
}

inline TwoDouble two_prod(double a, double b) {
  double x = a * b;
  return {x, std::fma(a, b, -x)};
}

// Expansions: zero-eliminated, nonoverlapping, increasing magnitude.
// Sign of the represented value is the sign of the last component.
using Expansion = std::vector<double>;

inline Expansion make_expansion(TwoDouble t) {
  Expansion e;
  if (t.lo != 0.0) e.push_back(t.lo);
  if (t.hi != 0.0) e.push_back(t.hi);
  return e;
}

// GROW-EXPANSION applied per component of f (EXPANSION-SUM). Quadratic, but
// only needs plain nonoverlapping inputs, which every op here preserves.
inline Expansion expansion_sum(const Expansion& e, const Expansion& f) {
  if (e.empty()) return f;
  if (f.empty()) return e;
  Expansion h = e;
  for (double b : f) {
    Expansion out;
    out.reserve(h.size() + 1);
    double q = b;
    for (double c : h) {
      TwoDouble t = two_sum(q, c);
      if (t.lo != 0.0) out.push_back(t.lo);
      q = t.hi;
    }
    if (q != 0.0 || out.empty()) out.push_back(q);
    h = std::move(out);
  }
  return h;
}

inline Expansion expansion_negate(Expansion e) {
  for (double& c : e) c = -c;
  return e;
}

inline Expansion expansion_scale(const Expansion& e, double b) {
  if (e.empty() || b == 0.0) return {};
  Expansion h;
  h.reserve(2 * e.size());
  TwoDouble p = two_prod(e[0], b);
  if (p.lo != 0.0) h.push_back(p.lo);
  double q = p.hi;
  for (std::size_t i = 1; i < e.size(); ++i) {
    TwoDouble pi = two_prod(e[i], b);
    TwoDouble s = two_sum(q, pi.lo);
    if (s.lo != 0.0) h.push_back(s.lo);
    TwoDouble f = fast_two_sum(pi.hi, s.hi);
    if (f.lo != 0.0) h.push_back(f.lo);
    q = f.hi;
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

inline Expansion expansion_mul(const Expansion& e, const Expansion& f) {
  Expansion acc;
  for (double c : e) acc = expansion_sum(acc, expansion_scale(f, c));
  return acc;
}

inline double expansion_sign(const Expansion& e) {
  if (e.empty()) return 0.0;
  double top = e.back();
  return (top > 0.0) ? 1.0 : (top < 0.0 ? -1.0 : 0.0);
}

// ax*by - ay*bx, exact
inline Expansion cross_expansion(double ax, double ay, double bx, double by) {
  return expansion_sum(make_expansion(two_prod(ax, by)),
                       expansion_negate(make_expansion(two_prod(ay, bx))));
}

inline double orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
  // det = ax by - ax cy - ay bx + ay cx + bx cy - by cx
  Expansion det = cross_expansion(ax, ay, bx, by);
  det = expansion_sum(det, expansion_negate(cross_expansion(ax, ay, cx, cy)));
  det = expansion_sum(det, cross_expansion(bx, by, cx, cy));
  return expansion_sign(det);
}

inline double incircle_exact(double ax, double ay, double bx, double by, double cx, double cy,
                             double dx, double dy) {
  // Laplace expansion of |x y x^2+y^2 1| along the first two columns.
  auto lift = [](double x, double y) {
    return expansion_sum(make_expansion(two_prod(x, x)), make_expansion(two_prod(y, y)));
  };
  Expansion wa = lift(ax, ay), wb = lift(bx, by), wc = lift(cx, cy), wd = lift(dx, dy);

  auto minor_xy = [](double xi, double yi, double xj, double yj) {
    return cross_expansion(xi, yi, xj, yj);
  };
  Expansion m12 = minor_xy(ax, ay, bx, by);
  Expansion m13 = minor_xy(ax, ay, cx, cy);
  Expansion m14 = minor_xy(ax, ay, dx, dy);
  Expansion m23 = minor_xy(bx, by, cx, cy);
  Expansion m24 = minor_xy(bx, by, dx, dy);
  Expansion m34 = minor_xy(cx, cy, dx, dy);

  auto diff = [](const Expansion& u, const Expansion& v) {
    return expansion_sum(u, expansion_negate(v));
  };
  Expansion det = expansion_mul(m12, diff(wc, wd));
  det = expansion_sum(det, expansion_negate(expansion_mul(m13, diff(wb, wd))));
  det = expansion_sum(det, expansion_mul(m14, diff(wb, wc)));
  det = expansion_sum(det, expansion_mul(m23, diff(wa, wd)));
  det = expansion_sum(det, expansion_negate(expansion_mul(m24, diff(wa, wc))));
  det = expansion_sum(det, expansion_mul(m34, diff(wa, wb)));
  return expansion_sign(det);
}

}  // namespace detail

// > 0 if a,b,c counter-clockwise, < 0 clockwise, == 0 collinear.
// Magnitude is meaningful only for its sign.
inline double orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  double detleft = (ax - cx) * (by - cy);
  double detright = (ay - cy) * (bx - cx);
  double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det;
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det;
    detsum = -detleft - detright;
  } else {
    return det;
  }
  double errbound = detail::kCcwErrA * detsum;
  if (det >= errbound || -det >= errbound) return det;
  return detail::orient2d_exact(ax, ay, bx, by, cx, cy);
}

// > 0 if d lies inside the circle through a,b,c (a,b,c counter-clockwise),
// < 0 outside, == 0 cocircular.
inline double incircle(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                       double dy) {
  double adx = ax - dx, ady = ay - dy;
  double bdx = bx - dx, bdy = by - dy;
  double cdx = cx - dx, cdy = cy - dy;

  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;
  double alift = adx * adx + ady * ady;
  double blift = bdx * bdx + bdy * bdy;
  double clift = cdx * cdx + cdy * cdy;

  double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  double errbound = detail::kIccErrA * permanent;
  if (det > errbound || -det > errbound) return det;
  return detail::incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

}  // namespace wavehull::geo
