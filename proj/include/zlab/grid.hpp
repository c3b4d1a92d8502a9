#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zlab/dyadic.hpp"
#include "zlab/incidence.hpp"

namespace zlab {

// A finite r-grid B_1 x ... x B_r; elements of B_i are the labels 0..n_i-1.
struct FiniteGrid {
  std::vector<int> sizes;

  FiniteGrid() = default;
  explicit FiniteGrid(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw Error("grid", "grid rank must be >= 1");
    for (int n : sizes)
      if (n < 0) throw Error("grid", "negative axis size");
  }

  std::size_t rank() const { return sizes.size(); }

  long long cell_count() const {
    long long c = 1;
    for (int n : sizes) c *= n;
    return c;
  }

  long long flat_index(const std::vector<int>& cell) const {
    if (cell.size() != sizes.size()) throw Error("grid", "cell arity mismatch");
    long long f = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      if (cell[j] < 0 || cell[j] >= sizes[j]) throw Error("grid", "cell label out of range");
      f = f * sizes[j] + cell[j];
    }
    return f;
  }

  std::vector<int> unflatten(long long flat) const {
    std::vector<int> cell(sizes.size());
    for (std::size_t j = sizes.size(); j-- > 0;) {
      cell[j] = static_cast<int>(flat % sizes[j]);
      flat /= sizes[j];
    }
    return cell;
  }

  // Lexicographic cell enumeration; returns false once exhausted.
  bool next_cell(std::vector<int>& cell) const {
    for (std::size_t j = sizes.size(); j-- > 0;) {
      if (++cell[j] < sizes[j]) return true;
      cell[j] = 0;
    }
    return false;
  }
};

// Elementary symmetric sum of degree j over the part sizes.
inline BigInt delta(const std::vector<int>& sizes, int j) {
  const int r = static_cast<int>(sizes.size());
  if (j < 0 || j > r) throw Error("delta", "degree out of range [0, r]");
  // e_0..e_j via the standard one-pass recurrence.
  std::vector<BigInt> e(static_cast<std::size_t>(j) + 1);
  e[0] = 1;
  for (int i = 0; i < r; ++i)
    for (int d = std::min(j, i + 1); d >= 1; --d)
      e[static_cast<std::size_t>(d)] += e[static_cast<std::size_t>(d - 1)] * sizes[static_cast<std::size_t>(i)];
  return e[static_cast<std::size_t>(j)];
}

// A total map from the grid into the integers (the integers play the role of
// the linearly ordered value set).
struct MonotoneTable {
  FiniteGrid grid;
  std::vector<long long> values;  // row-major over grid cells

  MonotoneTable() = default;
  MonotoneTable(FiniteGrid g, std::vector<long long> v) : grid(std::move(g)), values(std::move(v)) {
    if (static_cast<long long>(values.size()) != grid.cell_count())
      throw Error("grid", "table size does not match the grid");
  }

  long long value_at(const std::vector<int>& cell) const {
    return values[static_cast<std::size_t>(grid.flat_index(cell))];
  }
};

// Counterexample to coordinate-wise monotonicity: on axis `axis`, the
// comparison of the values at labels b and b_prime flips between the
// co-tuples a and a_prime.
struct MonotoneWitness {
  int axis = -1;
  std::vector<int> a, a_prime;  // co-tuples over the axes != axis
  int b = -1, b_prime = -1;
};

namespace detail {

// Iterate over co-tuples of B^axis, exposing flat strides to read f(a + b).
class CoTupleWalker {
 public:
  CoTupleWalker(const FiniteGrid& g, int axis) : grid_(g), axis_(axis) {
    for (std::size_t j = 0; j < g.sizes.size(); ++j)
      if (static_cast<int>(j) != axis) co_axes_.push_back(static_cast<int>(j));
    co_tuple_.assign(co_axes_.size(), 0);
    strides_.assign(g.sizes.size(), 1);
    for (std::size_t j = g.sizes.size() - 1; j-- > 0;)
      strides_[j] = strides_[j + 1] * g.sizes[j + 1];
    rebuild_base();
  }

  bool empty() const {
    for (int ax : co_axes_)
      if (grid_.sizes[static_cast<std::size_t>(ax)] == 0) return true;
    return false;
  }

  const std::vector<int>& co_tuple() const { return co_tuple_; }
  long long axis_stride() const { return strides_[static_cast<std::size_t>(axis_)]; }
  long long base() const { return base_; }  // flat index with axis label 0

  bool advance() {
    for (std::size_t j = co_axes_.size(); j-- > 0;) {
      const int ax = co_axes_[j];
      if (++co_tuple_[j] < grid_.sizes[static_cast<std::size_t>(ax)]) {
        rebuild_base();
        return true;
      }
      co_tuple_[j] = 0;
    }
    rebuild_base();
    return false;
  }

 private:
  void rebuild_base() {
    base_ = 0;
    for (std::size_t j = 0; j < co_axes_.size(); ++j)
      base_ += static_cast<long long>(co_tuple_[j]) * strides_[static_cast<std::size_t>(co_axes_[j])];
  }

  const FiniteGrid& grid_;
  int axis_;
  std::vector<int> co_axes_;
  std::vector<int> co_tuple_;
  std::vector<long long> strides_;
  long long base_ = 0;
};

}  // namespace detail

// Coordinate-wise monotonicity: per axis, the comparison pattern of f across
// that axis must not depend on the co-coordinates. The check sorts one
// reference row and verifies every other row realizes the identical pattern
// of strict steps and ties, which is equivalent to the pairwise definition.
inline bool check_monotone(const MonotoneTable& f, MonotoneWitness* witness = nullptr) {
  const FiniteGrid& g = f.grid;
  const int r = static_cast<int>(g.rank());
  for (int axis = 0; axis < r; ++axis) {
    const int n = g.sizes[static_cast<std::size_t>(axis)];
    if (n <= 1) continue;
    detail::CoTupleWalker walk(g, axis);
    if (walk.empty()) continue;

    // Reference order of B_axis from the first co-tuple.
    const long long stride = walk.axis_stride();
    const long long base0 = walk.base();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const long long vx = f.values[static_cast<std::size_t>(base0 + stride * x)];
      const long long vy = f.values[static_cast<std::size_t>(base0 + stride * y)];
      return vx != vy ? vx < vy : x < y;
    });
    std::vector<bool> strict(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) {
      const long long va = f.values[static_cast<std::size_t>(base0 + stride * order[static_cast<std::size_t>(i)])];
      const long long vb = f.values[static_cast<std::size_t>(base0 + stride * order[static_cast<std::size_t>(i) + 1])];
      strict[static_cast<std::size_t>(i)] = va < vb;
    }
    const std::vector<int> ref_co = walk.co_tuple();

    while (walk.advance()) {
      const long long base = walk.base();
      for (int i = 0; i + 1 < n; ++i) {
        const int b = order[static_cast<std::size_t>(i)];
        const int b2 = order[static_cast<std::size_t>(i) + 1];
        const long long va = f.values[static_cast<std::size_t>(base + stride * b)];
        const long long vb = f.values[static_cast<std::size_t>(base + stride * b2)];
        const bool ok = strict[static_cast<std::size_t>(i)] ? va < vb : va == vb;
        if (!ok) {
          if (witness) {
            witness->axis = axis;
            witness->a = ref_co;
            witness->a_prime = walk.co_tuple();
            // Orient the pair so that f(a + b) <= f(a + b') holds at the
            // reference co-tuple but fails at the violating one.
            if (va > vb) {
              witness->b = b;
              witness->b_prime = b2;
            } else {  // tie expected, got va < vb: the reversed pair flips
              witness->b = b2;
              witness->b_prime = b;
            }
          }
          return false;
        }
      }
    }
  }
  return true;
}

enum class Strictness { Less, LessEq, Greater, GreaterEq };

inline const char* strictness_name(Strictness s) {
  switch (s) {
    case Strictness::Less: return "<";
    case Strictness::LessEq: return "<=";
    case Strictness::Greater: return ">";
    case Strictness::GreaterEq: return ">=";
  }
  return "?";
}

inline Strictness strictness_from_name(const std::string& s) {
  if (s == "<") return Strictness::Less;
  if (s == "<=") return Strictness::LessEq;
  if (s == ">") return Strictness::Greater;
  if (s == ">=") return Strictness::GreaterEq;
  throw Error("grid", "unknown strictness '" + s + "'");
}

// Certificate for the basic set {b : f(b) [strictness] l}.
struct BasicSetCert {
  MonotoneTable table;
  long long threshold = 0;
  Strictness strictness = Strictness::Less;

  bool holds_flat(long long flat) const {
    const long long v = table.values[static_cast<std::size_t>(flat)];
    switch (strictness) {
      case Strictness::Less: return v < threshold;
      case Strictness::LessEq: return v <= threshold;
      case Strictness::Greater: return v > threshold;
      case Strictness::GreaterEq: return v >= threshold;
    }
    return false;
  }

  // Equivalent strict-< certificate: values are doubled (and negated for the
  // reversed comparisons) so the successor thresholds can stay integral.
  BasicSetCert normalized() const {
    BasicSetCert out;
    out.table.grid = table.grid;
    out.table.values.resize(table.values.size());
    const bool negate = strictness == Strictness::Greater || strictness == Strictness::GreaterEq;
    for (std::size_t i = 0; i < table.values.size(); ++i)
      out.table.values[i] = negate ? -2 * table.values[i] : 2 * table.values[i];
    switch (strictness) {
      case Strictness::Less: out.threshold = 2 * threshold; break;
      case Strictness::LessEq: out.threshold = 2 * threshold + 1; break;
      case Strictness::Greater: out.threshold = -2 * threshold; break;
      case Strictness::GreaterEq: out.threshold = -2 * threshold + 1; break;
    }
    out.strictness = Strictness::Less;
    return out;
  }
};

// Intersection of at most s basic subsets of one grid; s = basics.size() is
// the certified grid-complexity.
struct GridComplexityCert {
  FiniteGrid grid;
  std::vector<BasicSetCert> basics;

  GridComplexityCert() = default;
  GridComplexityCert(FiniteGrid g, std::vector<BasicSetCert> b)
      : grid(std::move(g)), basics(std::move(b)) {
    for (const BasicSetCert& c : basics)
      if (c.table.grid.sizes != grid.sizes)
        throw Error("grid", "basic certificate grid mismatch");
  }

  // Membership mask of the denoted set over all grid cells.
  std::vector<char> denoted_mask() const {
    const long long cells = grid.cell_count();
    std::vector<char> mask(static_cast<std::size_t>(cells), 1);
    for (const BasicSetCert& c : basics)
      for (long long f = 0; f < cells; ++f)
        if (mask[static_cast<std::size_t>(f)] && !c.holds_flat(f)) mask[static_cast<std::size_t>(f)] = 0;
    return mask;
  }

  GridSubset denoted_subset() const {
    GridSubset out;
    out.sizes = grid.sizes;
    const std::vector<char> mask = denoted_mask();
    for (long long f = 0; f < static_cast<long long>(mask.size()); ++f)
      if (mask[static_cast<std::size_t>(f)]) out.cells.push_back(grid.unflatten(f));
    return out;
  }
};

// True iff the explicit subset equals the certificate's denoted set.
inline bool verify_grid_complexity(const GridSubset& a, const GridComplexityCert& cert) {
  if (a.sizes != cert.grid.sizes) return false;
  std::vector<char> given(static_cast<std::size_t>(cert.grid.cell_count()), 0);
  for (const auto& cell : a.cells) given[static_cast<std::size_t>(cert.grid.flat_index(cell))] = 1;
  return given == cert.denoted_mask();
}

}  // namespace zlab
