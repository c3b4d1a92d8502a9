#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "zlab/config.hpp"
#include "zlab/incidence.hpp"

namespace zlab {

// Order-type equality of two point tuples over a reference tuple: every
// coordinate comparison (across points and across axes, and against the
// reference coordinates) must agree between the tuples.
inline bool same_order_type(const std::vector<Point>& p, const std::vector<Point>& q,
                            const std::vector<Point>& ref) {
  if (p.size() != q.size()) throw Error("ordertype", "tuple lengths differ");
  std::size_t d = 0;
  for (const Point& x : p) {
    if (d == 0) d = x.size();
    if (x.size() != d) throw Error("ordertype", "point dimension mismatch");
  }
  for (const Point& x : q)
    if (x.size() != d) throw Error("ordertype", "point dimension mismatch");
  for (const Point& x : ref)
    if (x.size() != d) throw Error("ordertype", "reference dimension mismatch");

  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t j2 = 0; j2 < d; ++j2)
          if (p[i][j].compare(p[i2][j2]) != q[i][j].compare(q[i2][j2])) return false;
      for (std::size_t k = 0; k < ref.size(); ++k)
        for (std::size_t j2 = 0; j2 < d; ++j2)
          if (p[i][j].compare(ref[k][j2]) != q[i][j].compare(ref[k][j2])) return false;
    }
  return true;
}

namespace detail {

inline std::int64_t ceil_log2_ll(long long n) {
  if (n < 1) throw Error("extremal", "ceil_log2 of a non-positive value");
  std::int64_t p = 0;
  long long v = 1;
  while (v < n) {
    v *= 2;
    ++p;
  }
  return p;
}

// Minimal g such that for every v among `targets`, the resolution-g cell of v
// contains no other value of `universe`. The universe must contain each
// target; with fewer than two distinct universe values any resolution works
// and g = 0 is returned.
inline std::int64_t separation_exponent(const std::vector<DyadicRational>& targets,
                                        std::vector<DyadicRational> universe) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() < 2) return 0;

  const auto separates = [&](std::int64_t g) {
    for (const DyadicRational& v : targets) {
      const DyadicInterval cell = cell_at_resolution(v, g);
      const DyadicRational lo = cell.lower(), hi = cell.upper();
      const auto it = std::lower_bound(universe.begin(), universe.end(), v);
      if (it != universe.begin() && *(it - 1) >= lo) return false;
      if (it + 1 != universe.end() && *(it + 1) < hi) return false;
    }
    return true;
  };

  DyadicRational min_gap;
  bool have_gap = false;
  for (std::size_t i = 0; i + 1 < universe.size(); ++i) {
    const DyadicRational gap = universe[i + 1] - universe[i];
    if (!have_gap || gap < min_gap) {
      min_gap = gap;
      have_gap = true;
    }
  }
  std::int64_t g = -min_gap.floor_log2();  // 2^-g <= min_gap, so this separates
  if (!separates(g)) throw Error("internal", "separation estimate failed");
  while (separates(g - 1)) --g;
  return g;
}

struct AxisWindow {
  DyadicRational shift;   // subtracted before scaling
  std::int64_t width = 0; // everything shifted lands in [0, 2^width]
};

// A dyadic window around all activity of one axis: the shift is aligned to
// the coarsest box lattice so boxes stay dyadic, and points land strictly
// inside [0, 2^width).
inline AxisWindow axis_window(const std::vector<DyadicRational>& point_vals,
                              const std::vector<DyadicRational>& corner_vals,
                              const std::vector<std::int64_t>& box_exponents) {
  AxisWindow w;
  if (point_vals.empty()) throw Error("extremal", "axis window needs at least one point value");
  DyadicRational lo = point_vals[0], hi = point_vals[0];
  bool hi_is_point = true;
  const auto feed = [&](const DyadicRational& v, bool is_point) {
    if (v < lo) lo = v;
    if (v > hi) {
      hi = v;
      hi_is_point = is_point;
    } else if (v == hi && is_point) {
      hi_is_point = true;
    }
  };
  for (const auto& v : point_vals) feed(v, true);
  for (const auto& v : corner_vals) feed(v, false);

  if (box_exponents.empty()) {
    w.shift = lo;
  } else {
    // Align to the coarsest box lattice so every shifted box stays dyadic.
    const std::int64_t t_max = *std::max_element(box_exponents.begin(), box_exponents.end());
    w.shift = DyadicRational(lo.floor_scaled(-t_max), t_max);
  }
  const DyadicRational span = hi - w.shift;
  if (span.is_zero()) {
    w.width = 0;
    return w;
  }
  const std::int64_t fl = span.floor_log2();
  w.width = (span == DyadicRational(1, fl)) ? fl : fl + 1;
  if (hi_is_point && span == DyadicRational(1, w.width)) ++w.width;
  return w;
}

inline void collect_axis_values(const Configuration& cfg, std::size_t axis,
                                std::vector<DyadicRational>& points,
                                std::vector<DyadicRational>& corners,
                                std::vector<std::int64_t>& exponents) {
  for (const Point& p : cfg.points) points.push_back(p[axis]);
  for (const Region& r : cfg.regions) {
    const DyadicBox& b = std::get<DyadicBox>(r);
    corners.push_back(b.intervals[axis].lower());
    corners.push_back(b.intervals[axis].upper());
    exponents.push_back(b.intervals[axis].t);
  }
}

}  // namespace detail

// One dyadic interval on the line holding ell points with distinct dyadic
// coordinates: the seed of the lower-bound recursion, with counts
// (ell, 1, ell).
inline Configuration base_interval_config(long long ell) {
  if (ell < 1) throw Error("extremal", "ell must be >= 1");
  const std::int64_t q = detail::ceil_log2_ll(ell);
  Configuration cfg(1);
  cfg.meta.generator = "base_interval";
  cfg.meta.params["ell"] = std::to_string(ell);
  for (long long i = 0; i < ell; ++i)
    cfg.add_point({DyadicRational(BigInt(2 * i + 1), -(q + 1))});
  cfg.add_region(DyadicBox({DyadicInterval(BigInt(0), 0)}));
  return cfg;
}

// The stepping-up combinator: given a (d-1)-dimensional configuration (the
// template) and a d-dimensional one, produce a d-dimensional configuration
// with points n1*n1', boxes n1*n2' + n1'*n2 and incidences n1*m' + m*n1',
// preserving K_{2,2}-freeness and dyadicity.
//
// Realization: a separation exponent g splits the template's value set into
// cells; copy i of the high configuration is squeezed into the cell product
// around template point i (axes < d-1 scaled by a power of two, the last axis
// untouched except for a tiny per-copy upward shift of the points that stays
// inside each point's separation cell). Slab boxes are template boxes crossed
// with the per-high-point separation cells on the last axis.
inline Configuration step_up(const Configuration& low, const Configuration& high,
                             bool verify = true) {
  const std::size_t d = high.dim;
  if (d < 2) throw Error("extremal", "the high configuration needs dimension >= 2");
  if (low.dim != d - 1) throw Error("extremal", "dimensions must be (d-1, d)");
  if (low.points.empty() || high.points.empty())
    throw Error("extremal", "both configurations need at least one point");
  if (!low.all_regions_dyadic() || !high.all_regions_dyadic())
    throw Error("dyadic", "step-up requires dyadic boxes on both sides");

  const std::size_t n1 = low.points.size();
  const std::size_t np_high = high.points.size();

  const IncidenceGraph low_graph = count_incidences(low, "auto");
  const IncidenceGraph high_graph = count_incidences(high, "auto");
  {
    KkWitness w;
    if (!is_kk_free(low_graph, 2, &w)) throw Error("kkk", "low configuration is not K_{2,2}-free");
    if (!is_kk_free(high_graph, 2, &w)) throw Error("kkk", "high configuration is not K_{2,2}-free");
  }
  const long long m_low = low_graph.edges;
  const long long m_high = high_graph.edges;

  // The high side needs pairwise distinct coordinates per axis.
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<DyadicRational> vals;
    for (const Point& p : high.points) vals.push_back(p[j]);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      throw Error("collision", "high points share a coordinate on axis " + std::to_string(j));
  }
  // The template needs global distinctness: point values distinct across all
  // axes and distinct from every corner value.
  std::vector<DyadicRational> template_point_vals, template_all_vals;
  for (const Point& p : low.points)
    for (const DyadicRational& v : p) template_point_vals.push_back(v);
  template_all_vals = template_point_vals;
  {
    std::vector<DyadicRational> sorted = template_point_vals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("collision", "template point coordinates are not globally distinct");
    for (const Region& r : low.regions) {
      const DyadicBox& b = std::get<DyadicBox>(r);
      for (const DyadicInterval& iv : b.intervals) {
        template_all_vals.push_back(iv.lower());
        template_all_vals.push_back(iv.upper());
        for (const DyadicRational& v : {iv.lower(), iv.upper()})
          if (std::binary_search(sorted.begin(), sorted.end(), v))
            throw Error("collision", "a template point sits on a box corner value");
      }
    }
  }

  const std::int64_t g = detail::separation_exponent(template_point_vals, template_all_vals);

  // Windows and scaling for the first d-1 axes of the high configuration.
  std::vector<detail::AxisWindow> windows(d - 1);
  std::vector<std::int64_t> sigma(d - 1);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    std::vector<DyadicRational> pv, cv;
    std::vector<std::int64_t> ts;
    detail::collect_axis_values(high, j, pv, cv, ts);
    windows[j] = detail::axis_window(pv, cv, ts);
    sigma[j] = windows[j].width + g;
  }

  // Last-axis separation cells and the per-copy point shifts.
  std::vector<DyadicRational> last_points, last_corners;
  std::vector<std::int64_t> last_ts;
  detail::collect_axis_values(high, d - 1, last_points, last_corners, last_ts);
  std::vector<DyadicRational> last_universe = last_points;
  last_universe.insert(last_universe.end(), last_corners.begin(), last_corners.end());
  const std::int64_t h = detail::separation_exponent(last_points, last_universe) + 1;
  std::vector<DyadicInterval> slabs;
  slabs.reserve(np_high);
  DyadicRational gap_min;
  bool have_gap = false;
  for (const Point& p : high.points) {
    const DyadicInterval cell = cell_at_resolution(p[d - 1], h);
    slabs.push_back(cell);
    const DyadicRational gap = cell.upper() - p[d - 1];
    if (!have_gap || gap < gap_min) {
      gap_min = gap;
      have_gap = true;
    }
  }
  const std::int64_t delta_exp =
      gap_min.floor_log2() - detail::ceil_log2_ll(static_cast<long long>(n1) + 1);
  const DyadicRational delta_unit(BigInt(1), delta_exp);

  Configuration out(d);
  out.meta.generator = "step_up";
  out.meta.params["n1"] = std::to_string(n1);
  out.meta.params["n1_high"] = std::to_string(np_high);
  out.meta.params["g"] = std::to_string(g);
  out.meta.params["h"] = std::to_string(h);

  // Scaled copies of the high configuration, one per template point.
  std::vector<DyadicRational> pre_shift(d), post_shift(d);
  std::vector<std::int64_t> zero_scale(d, 0), scale(d, 0);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    pre_shift[j] = -windows[j].shift;
    scale[j] = -sigma[j];
  }
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j + 1 < d; ++j)
      post_shift[j] = cell_at_resolution(low.points[i][j], g).lower();
    const DyadicRational lift = delta_unit * DyadicRational(static_cast<long long>(i) + 1);
    for (const Point& q : high.points) {
      Point u = point_scale_translate(q, pre_shift, zero_scale);
      u = point_scale_translate(u, post_shift, scale);
      u[d - 1] = q[d - 1] + lift;
      out.add_point(std::move(u));
    }
    for (std::size_t r = 0; r < high.regions.size(); ++r) {
      DyadicBox b = std::get<DyadicBox>(high.regions[r]);
      b = box_scale_translate(b, pre_shift, zero_scale);
      b = box_scale_translate(b, post_shift, scale);
      out.add_region(std::move(b), high.multiplicity[r]);
    }
  }

  // Slab boxes: template boxes crossed with the last-axis cells.
  for (std::size_t w = 0; w < np_high; ++w)
    for (std::size_t r = 0; r < low.regions.size(); ++r) {
      std::vector<DyadicInterval> ivs = std::get<DyadicBox>(low.regions[r]).intervals;
      ivs.push_back(slabs[w]);
      out.add_region(DyadicBox(std::move(ivs)), low.multiplicity[r]);
    }

  if (verify) {
    const long long want_points = static_cast<long long>(n1) * static_cast<long long>(np_high);
    const long long want_boxes = static_cast<long long>(n1) * high.n_regions() +
                                 static_cast<long long>(np_high) * low.n_regions();
    const long long want_edges = static_cast<long long>(n1) * m_high +
                                 m_low * static_cast<long long>(np_high);
    if (static_cast<long long>(out.points.size()) != want_points ||
        out.n_regions() != want_boxes)
      throw Error("stepup_selfcheck", "object counts disagree with the combinator formulas");
    const IncidenceGraph out_graph = count_incidences(out, "auto");
    if (out_graph.edges != want_edges)
      throw Error("stepup_selfcheck", "incidence count " + std::to_string(out_graph.edges) +
                                          " != " + std::to_string(want_edges));
    KkWitness w;
    if (!is_kk_free(out_graph, 2, &w))
      throw Error("stepup_selfcheck", "output is not K_{2,2}-free");
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<DyadicRational> vals;
      for (const Point& p : out.points) vals.push_back(p[j]);
      std::sort(vals.begin(), vals.end());
      if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw Error("stepup_selfcheck", "output coordinates collide on axis " + std::to_string(j));
    }
    // Order-type audit: per high point, the copy representatives projected to
    // the template axes must look exactly like the template over the corners.
    std::vector<Point> corners;
    for (const Region& r : low.regions) {
      const DyadicBox& b = std::get<DyadicBox>(r);
      const std::size_t dd = b.dim();
      for (std::size_t bits = 0; bits < (static_cast<std::size_t>(1) << dd); ++bits) {
        Point corner(dd);
        for (std::size_t j = 0; j < dd; ++j)
          corner[j] = (bits >> j) & 1 ? b.intervals[j].upper() : b.intervals[j].lower();
        corners.push_back(std::move(corner));
      }
    }
    for (std::size_t w2 = 0; w2 < np_high; ++w2) {
      std::vector<Point> reps;
      for (std::size_t i = 0; i < n1; ++i) {
        const Point& u = out.points[i * np_high + w2];
        reps.emplace_back(u.begin(), u.end() - 1);
      }
      if (!same_order_type(low.points, reps, corners))
        throw Error("stepup_selfcheck", "order-type audit failed for slab " + std::to_string(w2));
    }
  }
  return out;
}

// The iterated lower-bound family: ell^ell points, ell^ell dyadic boxes and
// ell * ell^ell incidences in the plane, K_{2,2}-free. Every iteration is
// self-verified by the incidence engine.
inline Configuration extremal_family(long long ell, long long max_ell = 6) {
  if (ell < 2) throw Error("extremal", "ell must be >= 2");
  if (ell > max_ell)
    throw Error("budget", "ell exceeds the resource budget (" + std::to_string(max_ell) + ")");

  const Configuration base = base_interval_config(ell);
  Configuration high(2);
  high.meta.generator = "extremal_seed";
  high.add_point({DyadicRational(1, -1), DyadicRational(1, -1)});

  for (long long j = 0; j < ell; ++j) high = step_up(base, high);

  long long want_points = 1;
  for (long long j = 0; j < ell; ++j) want_points *= ell;
  if (static_cast<long long>(high.points.size()) != want_points ||
      high.n_regions() != want_points)
    throw Error("internal", "extremal family counts are off");
  high.meta.generator = "extremal_family";
  high.meta.params.clear();
  high.meta.params["ell"] = std::to_string(ell);
  return high;
}

}  // namespace zlab
