#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zlab/dyadic.hpp"

namespace zlab {

using Point = std::vector<DyadicRational>;

// Product of dyadic intervals, half-open on every axis.
struct DyadicBox {
  std::vector<DyadicInterval> intervals;

  DyadicBox() = default;
  explicit DyadicBox(std::vector<DyadicInterval> ivs) : intervals(std::move(ivs)) {
    if (intervals.empty()) throw Error("region", "dyadic box needs dimension >= 1");
  }

  std::size_t dim() const { return intervals.size(); }

  bool contains(const Point& p) const {
    require_dim(p.size());
    for (std::size_t j = 0; j < intervals.size(); ++j)
      if (!intervals[j].contains(p[j])) return false;
    return true;
  }

  friend bool operator==(const DyadicBox& a, const DyadicBox& b) {
    return a.intervals == b.intervals;
  }

  void require_dim(std::size_t d) const {
    if (d != intervals.size()) throw Error("dimension", "point/box dimension mismatch");
  }
};

// Axis-aligned box with dyadic endpoints and per-axis open/closed flags.
struct GeneralBox {
  struct Axis {
    DyadicRational lo, hi;
    bool lo_closed = true;
    bool hi_closed = false;
  };
  std::vector<Axis> axes;

  GeneralBox() = default;
  explicit GeneralBox(std::vector<Axis> a) : axes(std::move(a)) {
    if (axes.empty()) throw Error("region", "box needs dimension >= 1");
    for (const Axis& ax : axes)
      if (!(ax.lo < ax.hi)) throw Error("region", "degenerate box: lower must be < upper");
  }

  std::size_t dim() const { return axes.size(); }

  bool contains(const Point& p) const {
    if (p.size() != axes.size()) throw Error("dimension", "point/box dimension mismatch");
    for (std::size_t j = 0; j < axes.size(); ++j) {
      const Axis& ax = axes[j];
      const int lo_cmp = p[j].compare(ax.lo);
      if (lo_cmp < 0 || (lo_cmp == 0 && !ax.lo_closed)) return false;
      const int hi_cmp = p[j].compare(ax.hi);
      if (hi_cmp > 0 || (hi_cmp == 0 && !ax.hi_closed)) return false;
    }
    return true;
  }
};

// Intersection of translated half-spaces a_i . x  (>|>=)  b_i, each translated
// by its own vector y_i; membership is
//   sum_j a[i][j]*x[j] + sum_j (-a[i][j])*y[i][j]  op_i  b[i]  for all i.
struct TranslatePolytope {
  struct HalfSpace {
    std::vector<DyadicRational> normal;  // length d
    DyadicRational offset;               // b_i
    bool strict = false;                 // true: ">", false: ">="
    std::vector<DyadicRational> translation;  // y_i, length d
  };
  std::vector<HalfSpace> halfspaces;
  std::size_t dimension = 0;

  TranslatePolytope() = default;
  TranslatePolytope(std::vector<HalfSpace> hs, std::size_t d)
      : halfspaces(std::move(hs)), dimension(d) {
    if (d == 0) throw Error("region", "polytope needs dimension >= 1");
    for (const HalfSpace& h : halfspaces)
      if (h.normal.size() != d || h.translation.size() != d)
        throw Error("region", "half-space normal/translation dimension mismatch");
  }

  std::size_t dim() const { return dimension; }

  bool contains(const Point& p) const {
    if (p.size() != dimension) throw Error("dimension", "point/polytope dimension mismatch");
    for (const HalfSpace& h : halfspaces) {
      DyadicRational acc;
      for (std::size_t j = 0; j < dimension; ++j) {
        acc = acc + h.normal[j] * p[j];
        acc = acc - h.normal[j] * h.translation[j];
      }
      const int c = acc.compare(h.offset);
      if (h.strict ? c <= 0 : c < 0) return false;
    }
    return true;
  }
};

using Region = std::variant<DyadicBox, GeneralBox, TranslatePolytope>;

inline std::size_t region_dim(const Region& r) {
  return std::visit([](const auto& v) { return v.dim(); }, r);
}

inline bool box_contains(const Region& r, const Point& p) {
  return std::visit([&](const auto& v) { return v.contains(p); }, r);
}

inline bool is_dyadic_box(const Region& r) {
  return std::holds_alternative<DyadicBox>(r);
}

inline const char* region_kind(const Region& r) {
  if (std::holds_alternative<DyadicBox>(r)) return "dyadic_box";
  if (std::holds_alternative<GeneralBox>(r)) return "general_box";
  return "translate_polytope";
}

// Per-axis dilation by 2^scale_pow followed by a dyadic shift. The image is
// again a lattice dyadic box; the shift must be a multiple of the scaled cell
// size on each axis, otherwise the image leaves the dyadic lattice.
inline DyadicBox box_scale_translate(const DyadicBox& b, const std::vector<DyadicRational>& shift,
                                     const std::vector<std::int64_t>& scale_pow) {
  if (shift.size() != b.dim() || scale_pow.size() != b.dim())
    throw Error("dimension", "shift/scale dimension mismatch");
  std::vector<DyadicInterval> out;
  out.reserve(b.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    const DyadicInterval& iv = b.intervals[j];
    const std::int64_t t = iv.t + scale_pow[j];
    // shift = q * 2^t for an integer q
    const DyadicRational& sh = shift[j];
    BigInt q;
    if (!sh.is_zero()) {
      if (sh.exponent() < t)
        throw Error("region", "shift on axis " + std::to_string(j) +
                                  " is not a multiple of the scaled interval length");
      q = sh.mantissa() << static_cast<unsigned>(sh.exponent() - t);
    }
    out.emplace_back(iv.s + q, t);
  }
  return DyadicBox(std::move(out));
}

inline Point point_scale_translate(const Point& p, const std::vector<DyadicRational>& shift,
                                   const std::vector<std::int64_t>& scale_pow) {
  if (shift.size() != p.size() || scale_pow.size() != p.size())
    throw Error("dimension", "shift/scale dimension mismatch");
  Point out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    out[j] = p[j].times_pow2(scale_pow[j]) + shift[j];
  return out;
}

}  // namespace zlab
