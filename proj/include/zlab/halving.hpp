#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "zlab/split.hpp"

namespace zlab {

enum class NodeKind { Root, HalvedLeft, HalvedRight, StrippedOff, Leaf };

inline const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Root: return "root";
    case NodeKind::HalvedLeft: return "halved_left";
    case NodeKind::HalvedRight: return "halved_right";
    case NodeKind::StrippedOff: return "stripped_off";
    case NodeKind::Leaf: return "leaf";
  }
  return "?";
}

struct DecompNode {
  NodeKind kind = NodeKind::Leaf;     // how the node arose from its parent
  std::vector<int> b1, b2;            // sub-grid as original labels
  int active = 0;                     // basic constraints still in force
  bool leaf = false;
  long long pivot = -1;               // internal: pivot position h
  long long leaf_size = 0;            // |A| restricted to this leaf
  long long leaf_bound = 0;           // k*(|b1|+|b2|) for nonempty base leaves
  int halving_depth = 0;              // halving steps from the root
  int strip_depth = 0;                // strip-off steps from the root
  std::vector<int> children;
};

struct DecompositionTree {
  std::vector<DecompNode> nodes;  // nodes[0] is the root
  int k = 0;
  int s = 0;
  long long n = 0;                // delta^2_1 of the root grid
  long long set_size = 0;         // |A|
  long long certified_bound = 0;  // sum over leaves of k*(n1'+n2')
  double alpha_set = 0.0;         // set_size   / (n * log2^s(n+1))
  double alpha_cert = 0.0;        // certified  / (n * log2^s(n+1))
  int max_halving_depth = 0;
  int max_strip_depth = 0;

  // Cells of A as flat indices of the root grid, collected from the leaves.
  std::vector<long long> leaf_cells(const FiniteGrid& grid) const {
    std::vector<long long> out;
    for (const DecompNode& node : nodes) {
      if (!node.leaf) continue;
      for (int a : node.b1)
        for (int b : node.b2) out.push_back(grid.flat_index({a, b}));
    }
    return out;
  }
};

namespace detail {

struct HalvingContext {
  const GridComplexityCert* cert;
  int k;
  DecompositionTree* tree;
};

// Restriction of one basic certificate to a sub-grid, materialized as a small
// table so that coordinate_split sees an ordinary 2-grid instance.
inline BasicSetCert restrict_basic(const BasicSetCert& c, const std::vector<int>& b1,
                                   const std::vector<int>& b2) {
  BasicSetCert out;
  out.threshold = c.threshold;
  out.strictness = c.strictness;
  out.table.grid = FiniteGrid({static_cast<int>(b1.size()), static_cast<int>(b2.size())});
  out.table.values.reserve(b1.size() * b2.size());
  const int n2 = c.table.grid.sizes[1];
  for (int a : b1)
    for (int b : b2)
      out.table.values.push_back(c.table.values[static_cast<std::size_t>(a) * n2 + b]);
  return out;
}

inline int halving_build(HalvingContext& ctx, std::vector<int> b1, std::vector<int> b2, int active,
                         NodeKind kind, int halve_depth, int strip_depth) {
  DecompositionTree& tree = *ctx.tree;
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  {
    DecompNode& node = tree.nodes.back();
    node.kind = kind;
    node.b1 = b1;
    node.b2 = b2;
    node.active = active;
    node.halving_depth = halve_depth;
    node.strip_depth = strip_depth;
  }
  tree.max_halving_depth = std::max(tree.max_halving_depth, halve_depth);
  tree.max_strip_depth = std::max(tree.max_strip_depth, strip_depth);

  if (b1.empty() || b2.empty()) {
    DecompNode& node = tree.nodes[static_cast<std::size_t>(id)];
    node.leaf = true;
    node.kind = NodeKind::Leaf;
    node.b1.clear();
    node.b2.clear();
    return id;
  }

  if (active == 0) {
    // Base case: the whole sub-grid lies in A, so one side must be < k.
    DecompNode& node = tree.nodes[static_cast<std::size_t>(id)];
    node.leaf = true;
    node.kind = NodeKind::Leaf;
    node.leaf_size = static_cast<long long>(b1.size()) * static_cast<long long>(b2.size());
    node.leaf_bound = static_cast<long long>(ctx.k) *
                      (static_cast<long long>(b1.size()) + static_cast<long long>(b2.size()));
    if (static_cast<int>(std::min(b1.size(), b2.size())) >= ctx.k)
      throw Error("internal",
                  "base-case leaf has both sides >= k despite the freeness precondition");
    tree.set_size += node.leaf_size;
    tree.certified_bound += node.leaf_bound;
    return id;
  }

  const BasicSetCert restricted =
      restrict_basic(ctx.cert->basics[static_cast<std::size_t>(active - 1)], b1, b2);
  const SplitCertificate split = coordinate_split(restricted);
  const std::vector<long long>& f1 = split.fr_map;   // positions for b1 (restricted labels)
  const std::vector<long long>& f2 = split.fr_last;  // positions for b2

  // Pivot: minimal position h among the realized values with
  // |B1^{<=h}| + |B2^{<=h}| >= n/2.
  std::vector<long long> values;
  values.reserve(f1.size() + f2.size());
  values.insert(values.end(), f1.begin(), f1.end());
  values.insert(values.end(), f2.begin(), f2.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const long long n = static_cast<long long>(b1.size() + b2.size());
  long long pivot = values.back();
  for (long long h : values) {
    long long mass = 0;
    for (long long v : f1) mass += v <= h ? 1 : 0;
    for (long long v : f2) mass += v <= h ? 1 : 0;
    if (2 * mass >= n) {
      pivot = h;
      break;
    }
  }
  tree.nodes[static_cast<std::size_t>(id)].pivot = pivot;

  std::vector<int> b1_lt, b1_eq, b1_gt, b2_lt, b2_geq, b2_gt;
  for (std::size_t i = 0; i < b1.size(); ++i) {
    if (f1[i] < pivot) b1_lt.push_back(b1[i]);
    else if (f1[i] == pivot) b1_eq.push_back(b1[i]);
    else b1_gt.push_back(b1[i]);
  }
  for (std::size_t i = 0; i < b2.size(); ++i) {
    if (f2[i] < pivot) b2_lt.push_back(b2[i]);
    if (f2[i] >= pivot) b2_geq.push_back(b2[i]);
    if (f2[i] > pivot) b2_gt.push_back(b2[i]);
  }

  // Both halved parts carry at most n/2 of the mass.
  if (2 * static_cast<long long>(b1_lt.size() + b2_lt.size()) > n ||
      2 * static_cast<long long>(b1_gt.size() + b2_gt.size()) > n)
    throw Error("internal", "pivot failed to halve the grid mass");

  std::vector<int> kids;
  kids.push_back(halving_build(ctx, b1_lt, b2_lt, active, NodeKind::HalvedLeft, halve_depth + 1,
                               strip_depth));
  kids.push_back(halving_build(ctx, b1_gt, b2_gt, active, NodeKind::HalvedRight, halve_depth + 1,
                               strip_depth));
  kids.push_back(halving_build(ctx, b1_lt, b2_geq, active - 1, NodeKind::StrippedOff, halve_depth,
                               strip_depth + 1));
  kids.push_back(halving_build(ctx, b1_eq, b2_gt, active - 1, NodeKind::StrippedOff, halve_depth,
                               strip_depth + 1));
  tree.nodes[static_cast<std::size_t>(id)].children = std::move(kids);
  return id;
}

}  // namespace detail

// The recursive pivot-halving decomposition of a certified set over a 2-grid.
// The denoted set must be K_{k,k}-free (checked explicitly; a violation is
// reported with a witness in the error message). Leaves partition the set;
// base-case leaves are full sub-grids bounded by k*(n1'+n2').
inline DecompositionTree halving_decomposition_r2(const GridComplexityCert& cert, int k,
                                                  GridWitness* witness_out = nullptr) {
  if (cert.grid.rank() != 2) throw Error("halving", "decomposition requires a 2-grid");
  if (k < 2) throw Error("halving", "k must be >= 2");

  GridSubset a = cert.denoted_subset();
  GridWitness w;
  if (!is_grid_free(a, k, &w)) {
    if (witness_out) *witness_out = w;
    std::string msg = "denoted set contains a K_{k,k}: axis choices";
    for (const auto& ch : w.axis_choices) {
      msg += " {";
      for (std::size_t i = 0; i < ch.size(); ++i) msg += (i ? "," : "") + std::to_string(ch[i]);
      msg += "}";
    }
    throw Error("kkk", msg);
  }

  DecompositionTree tree;
  tree.k = k;
  tree.s = static_cast<int>(cert.basics.size());
  tree.n = static_cast<long long>(cert.grid.sizes[0]) + cert.grid.sizes[1];

  std::vector<int> b1(static_cast<std::size_t>(cert.grid.sizes[0]));
  std::vector<int> b2(static_cast<std::size_t>(cert.grid.sizes[1]));
  for (std::size_t i = 0; i < b1.size(); ++i) b1[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < b2.size(); ++i) b2[i] = static_cast<int>(i);

  detail::HalvingContext ctx{&cert, k, &tree};
  detail::halving_build(ctx, std::move(b1), std::move(b2), tree.s, NodeKind::Root, 0, 0);

  const double lg = std::log2(static_cast<double>(tree.n) + 1.0);
  const double denom = static_cast<double>(tree.n) * std::pow(lg, static_cast<double>(tree.s));
  tree.alpha_set = denom > 0 ? static_cast<double>(tree.set_size) / denom : 0.0;
  tree.alpha_cert = denom > 0 ? static_cast<double>(tree.certified_bound) / denom : 0.0;
  return tree;
}

}  // namespace zlab
