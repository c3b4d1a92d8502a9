#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

// Per-axis order classes: labels quotiented by the axis pre-order induced by
// a coordinate-wise monotone table, with class ids increasing along it.
struct AxisClasses {
  std::vector<int> class_of;       // label -> class id
  std::vector<int> representative; // class id -> some label
  int count = 0;
};

namespace detail {

inline AxisClasses axis_classes(const MonotoneTable& f, int axis) {
  const FiniteGrid& g = f.grid;
  const int n = g.sizes[static_cast<std::size_t>(axis)];
  AxisClasses out;
  out.class_of.assign(static_cast<std::size_t>(n), 0);
  if (n == 0) return out;
  CoTupleWalker walk(g, axis);
  if (walk.empty()) {
    // No co-tuples: the pre-order is vacuous, collapse everything.
    out.count = 1;
    out.representative = {0};
    return out;
  }
  const long long stride = walk.axis_stride();
  const long long base = walk.base();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const long long vx = f.values[static_cast<std::size_t>(base + stride * x)];
    const long long vy = f.values[static_cast<std::size_t>(base + stride * y)];
    return vx != vy ? vx < vy : x < y;
  });
  int cls = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) {
      const long long prev = f.values[static_cast<std::size_t>(base + stride * order[i - 1])];
      const long long cur = f.values[static_cast<std::size_t>(base + stride * order[i])];
      if (prev != cur) ++cls;
    }
    out.class_of[static_cast<std::size_t>(order[i])] = cls;
    if (static_cast<int>(out.representative.size()) <= cls)
      out.representative.push_back(order[i]);
  }
  out.count = cls + 1;
  return out;
}

}  // namespace detail

// The quotiented ingredients of the coordinate splitting: the class grid Q of
// the first r-1 axes, the classes C of the last axis, and the relation
// "q comes before c" (true iff f < l at the representatives).
struct SplitInternals {
  int rank = 0;
  std::vector<AxisClasses> classes;  // one per axis
  std::vector<int> q_dims;           // class counts of axes 0..r-2
  long long q_count = 0;
  int c_count = 0;
  std::vector<char> q_before_c;      // flat q * c_count + c

  long long q_flat(const std::vector<int>& q_tuple) const {
    long long f = 0;
    for (std::size_t j = 0; j < q_dims.size(); ++j) f = f * q_dims[j] + q_tuple[j];
    return f;
  }

  std::vector<int> q_unflatten(long long flat) const {
    std::vector<int> t(q_dims.size());
    for (std::size_t j = q_dims.size(); j-- > 0;) {
      t[j] = static_cast<int>(flat % q_dims[j]);
      flat /= q_dims[j];
    }
    return t;
  }
};

// Splitting certificate: a linear order on T = B^r (+) B_r realized by
// positions 0..order_size-1; the certified set is reconstructed as
// { a (+) b : fr_map[a] < fr_last[b] }.
struct SplitCertificate {
  std::vector<int> sizes;          // original grid sizes
  long long order_size = 0;
  std::vector<long long> fr_map;   // flat over the first r-1 axes -> position
  std::vector<long long> fr_last;  // label of the last axis -> position

  long long co_cell_count() const {
    long long c = 1;
    for (std::size_t j = 0; j + 1 < sizes.size(); ++j) c *= sizes[j];
    return c;
  }
};

namespace detail {

inline SplitInternals compute_split_internals(const BasicSetCert& basic) {
  const BasicSetCert x = basic.normalized();
  const MonotoneTable& f = x.table;
  const int r = static_cast<int>(f.grid.rank());
  if (r < 2) throw Error("split", "coordinate splitting needs rank >= 2");

  MonotoneWitness w;
  if (!check_monotone(f, &w))
    throw Error("monotonicity",
                "table is not coordinate-wise monotone: axis " + std::to_string(w.axis) +
                    ", labels b=" + std::to_string(w.b) + " b'=" + std::to_string(w.b_prime));

  SplitInternals in;
  in.rank = r;
  in.classes.reserve(static_cast<std::size_t>(r));
  for (int axis = 0; axis < r; ++axis) in.classes.push_back(axis_classes(f, axis));
  in.q_dims.resize(static_cast<std::size_t>(r - 1));
  in.q_count = 1;
  for (int j = 0; j < r - 1; ++j) {
    in.q_dims[static_cast<std::size_t>(j)] = std::max(in.classes[static_cast<std::size_t>(j)].count, 0);
    in.q_count *= in.q_dims[static_cast<std::size_t>(j)];
  }
  in.c_count = in.classes[static_cast<std::size_t>(r - 1)].count;

  in.q_before_c.assign(static_cast<std::size_t>(in.q_count * std::max(in.c_count, 0)), 0);
  if (in.q_count > 0 && in.c_count > 0) {
    std::vector<int> cell(static_cast<std::size_t>(r));
    for (long long qf = 0; qf < in.q_count; ++qf) {
      const std::vector<int> qt = in.q_unflatten(qf);
      for (int j = 0; j < r - 1; ++j)
        cell[static_cast<std::size_t>(j)] =
            in.classes[static_cast<std::size_t>(j)].representative[static_cast<std::size_t>(qt[static_cast<std::size_t>(j)])];
      for (int c = 0; c < in.c_count; ++c) {
        cell[static_cast<std::size_t>(r - 1)] =
            in.classes[static_cast<std::size_t>(r - 1)].representative[static_cast<std::size_t>(c)];
        const long long v = f.value_at(cell);
        in.q_before_c[static_cast<std::size_t>(qf * in.c_count + c)] = v < x.threshold ? 1 : 0;
      }
    }
  }
  return in;
}

}  // namespace detail

// Coordinate splitting of a basic set: produces maps f^r on B^r and f_r on
// B_r into one linear order such that X = { a (+) b : f^r(a) < f_r(b) } and
// the order restricted to B^r extends the product order of the axis
// pre-orders. The linear extension is a deterministic topological sort of the
// product-order covers together with the before/after relation; ties are
// broken by label order (B^r tuples lexicographically, then B_r labels).
inline SplitCertificate coordinate_split(const BasicSetCert& basic,
                                         SplitInternals* internals_out = nullptr) {
  SplitInternals in = detail::compute_split_internals(basic);
  const int r = in.rank;
  const long long nodes = in.q_count + in.c_count;

  // Edges: q -> q+e_j (product-order covers), and the full cross relation.
  std::vector<std::vector<long long>> succ(static_cast<std::size_t>(nodes));
  std::vector<long long> indeg(static_cast<std::size_t>(nodes), 0);
  const auto add_edge = [&](long long from, long long to) {
    succ[static_cast<std::size_t>(from)].push_back(to);
    ++indeg[static_cast<std::size_t>(to)];
  };
  for (long long qf = 0; qf < in.q_count; ++qf) {
    const std::vector<int> qt = in.q_unflatten(qf);
    long long stride = 1;
    for (std::size_t j = in.q_dims.size(); j-- > 0;) {
      if (qt[j] + 1 < in.q_dims[j]) add_edge(qf, qf + stride);
      stride *= in.q_dims[j];
    }
    for (int c = 0; c < in.c_count; ++c) {
      if (in.q_before_c[static_cast<std::size_t>(qf * in.c_count + c)])
        add_edge(qf, in.q_count + c);
      else
        add_edge(in.q_count + c, qf);
    }
  }

  std::priority_queue<long long, std::vector<long long>, std::greater<long long>> ready;
  for (long long v = 0; v < nodes; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
  std::vector<long long> position(static_cast<std::size_t>(nodes), -1);
  long long placed = 0;
  while (!ready.empty()) {
    const long long v = ready.top();
    ready.pop();
    position[static_cast<std::size_t>(v)] = placed++;
    for (long long u : succ[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(u)] == 0) ready.push(u);
  }
  if (placed != nodes)
    throw Error("internal_cycle",
                "cycle in the union of the product order and the cross relation; "
                "this contradicts the splitting construction");

  SplitCertificate cert;
  cert.sizes = basic.table.grid.sizes;
  cert.order_size = nodes;
  cert.fr_map.resize(static_cast<std::size_t>(cert.co_cell_count()));
  // Map each original co-cell through its class tuple.
  {
    FiniteGrid co_grid(std::vector<int>(cert.sizes.begin(), cert.sizes.end() - 1));
    if (co_grid.cell_count() > 0) {
      std::vector<int> cell(static_cast<std::size_t>(r - 1), 0);
      long long flat = 0;
      do {
        std::vector<int> qt(static_cast<std::size_t>(r - 1));
        for (int j = 0; j < r - 1; ++j)
          qt[static_cast<std::size_t>(j)] =
              in.classes[static_cast<std::size_t>(j)].class_of[static_cast<std::size_t>(cell[static_cast<std::size_t>(j)])];
        cert.fr_map[static_cast<std::size_t>(flat)] = position[static_cast<std::size_t>(in.q_flat(qt))];
        ++flat;
      } while (co_grid.next_cell(cell));
    }
  }
  const int n_last = cert.sizes.back();
  cert.fr_last.resize(static_cast<std::size_t>(n_last));
  for (int b = 0; b < n_last; ++b)
    cert.fr_last[static_cast<std::size_t>(b)] = position[static_cast<std::size_t>(
        in.q_count + in.classes[static_cast<std::size_t>(r - 1)].class_of[static_cast<std::size_t>(b)])];

  if (internals_out) *internals_out = std::move(in);
  return cert;
}

// True iff the certificate reproduces the basic set cell-by-cell and its
// order extends the product pre-order on the first r-1 axes.
inline bool verify_split(const BasicSetCert& basic, const SplitCertificate& cert) {
  const BasicSetCert x = basic.normalized();
  const FiniteGrid& g = x.table.grid;
  if (g.sizes != cert.sizes) return false;
  const int r = static_cast<int>(g.rank());
  if (r < 2) return false;
  if (static_cast<long long>(cert.fr_map.size()) != cert.co_cell_count()) return false;
  if (static_cast<int>(cert.fr_last.size()) != g.sizes.back()) return false;

  MonotoneWitness w;
  if (!check_monotone(x.table, &w)) return false;

  // Reconstruction, cell by cell over the whole grid.
  const long long cells = g.cell_count();
  if (cells > 0) {
    std::vector<int> cell(static_cast<std::size_t>(r), 0);
    long long flat = 0;
    do {
      long long co_flat = 0;
      for (int j = 0; j < r - 1; ++j)
        co_flat = co_flat * g.sizes[static_cast<std::size_t>(j)] + cell[static_cast<std::size_t>(j)];
      const bool in_set = x.table.values[static_cast<std::size_t>(flat)] < x.threshold;
      const bool by_cert = cert.fr_map[static_cast<std::size_t>(co_flat)] <
                           cert.fr_last[static_cast<std::size_t>(cell[static_cast<std::size_t>(r - 1)])];
      if (in_set != by_cert) return false;
      ++flat;
    } while (g.next_cell(cell));
  }

  // Extension of the product pre-order: strict domination of class tuples
  // forces strictly smaller positions; equivalent tuples share positions.
  std::vector<AxisClasses> classes;
  for (int axis = 0; axis < r; ++axis) classes.push_back(detail::axis_classes(x.table, axis));
  FiniteGrid co_grid(std::vector<int>(g.sizes.begin(), g.sizes.end() - 1));
  const long long co_cells = co_grid.cell_count();
  if (co_cells == 0) return true;
  const auto class_tuple = [&](long long co_flat) {
    std::vector<int> cell = co_grid.unflatten(co_flat);
    std::vector<int> qt(cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j)
      qt[j] = classes[j].class_of[static_cast<std::size_t>(cell[j])];
    return qt;
  };
  for (long long a = 0; a < co_cells; ++a) {
    const std::vector<int> qa = class_tuple(a);
    for (long long b = 0; b < co_cells; ++b) {
      if (a == b) continue;
      const std::vector<int> qb = class_tuple(b);
      bool all_le = true, all_eq = true;
      for (std::size_t j = 0; j < qa.size(); ++j) {
        if (qa[j] > qb[j]) all_le = false;
        if (qa[j] != qb[j]) all_eq = false;
      }
      const long long pa = cert.fr_map[static_cast<std::size_t>(a)];
      const long long pb = cert.fr_map[static_cast<std::size_t>(b)];
      if (all_eq) {
        if (pa != pb) return false;
      } else if (all_le) {
        if (!(pa < pb)) return false;
      }
    }
  }
  return true;
}

}  // namespace zlab
