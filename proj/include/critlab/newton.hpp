#pragma once

#include "critlab/poly.hpp"

#include <string>
#include <vector>

namespace critlab {

/// Lower convex hull of {(i, v_p(c_i)) : c_i != 0}.
///
/// Convention: a segment of slope s and horizontal length l accounts for
/// exactly l roots (with multiplicity, over an algebraic closure) of
/// valuation -s. Roots at 0 (valuation +inf) are not covered by segments;
/// their count is `zero_roots`.
struct NewtonPolygon {
  struct Segment {
    Rational slope;
    long length;
  };
  struct RootValuation {
    Rational valuation;
    long multiplicity;
  };

  std::vector<Segment> segments;  // slopes strictly increasing
  long zero_roots = 0;

  std::vector<RootValuation> root_valuations() const {
    std::vector<RootValuation> out;
    out.reserve(segments.size());
    for (const auto& s : segments) out.push_back({Rational(-s.slope), s.length});
    return out;
  }

  /// Smallest valuation of a nonzero root; +inf when there are none.
  ValOrInf min_root_valuation() const {
    if (segments.empty()) return ValOrInf::infinity();
    // slopes increase, so the last segment carries the smallest valuation
    return ValOrInf(Rational(-segments.back().slope));
  }
};

inline NewtonPolygon newton_polygon(const UniPoly<Rational>& p, const Prime& prime) {
  if (p.is_zero()) throw std::invalid_argument("Newton polygon of the zero polynomial");
  struct Pt {
    long x;
    Rational y;
  };
  std::vector<Pt> pts;
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_zero(c[i])) pts.push_back({static_cast<long>(i), Rational(finite_val_p(c[i], prime))});

  // Monotone chain; drop the middle point of every non-left turn so that
  // collinear runs merge into one segment.
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& a = hull.back();
      Rational cross = Rational(a.x - o.x) * (pt.y - o.y) - Rational(a.y - o.y) * Rational(pt.x - o.x);
      if (sgn(cross) <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }

  NewtonPolygon np;
  np.zero_roots = static_cast<long>(p.order_at_zero());
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long len = hull[i].x - hull[i - 1].x;
    Rational slope = (hull[i].y - hull[i - 1].y) / Rational(len);
    slope.canonicalize();
    np.segments.push_back({slope, len});
  }
  return np;
}

}  // namespace critlab
