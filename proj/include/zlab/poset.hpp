#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zlab/dyadic.hpp"
#include "zlab/incidence.hpp"

namespace zlab {

// Finite partial order on elements 0..n-1 stored as a packed <= matrix.
class Poset {
 public:
  Poset() = default;
  explicit Poset(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    for (int i = 0; i < n; ++i) set_leq(i, i);
  }

  int size() const { return n_; }

  void set_leq(int a, int b) {
    bits_[row(a) + static_cast<std::size_t>(b) / 64] |= 1ULL << (b % 64);
  }

  bool leq(int a, int b) const {
    return (bits_[row(a) + static_cast<std::size_t>(b) / 64] >> (b % 64)) & 1ULL;
  }

  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  // Reflexivity and antisymmetry exactly; transitivity exhaustively below 200
  // elements and by random triple sampling above.
  void validate(std::uint64_t sample_seed = 1) const {
    for (int a = 0; a < n_; ++a) {
      if (!leq(a, a)) throw Error("poset", "relation is not reflexive");
      for (int b = 0; b < n_; ++b)
        if (a != b && leq(a, b) && leq(b, a)) throw Error("poset", "relation is not antisymmetric");
    }
    const auto check_triple = [&](int a, int b, int c) {
      if (leq(a, b) && leq(b, c) && !leq(a, c)) throw Error("poset", "relation is not transitive");
    };
    if (n_ <= 200) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          if (!leq(a, b)) continue;
          for (int c = 0; c < n_; ++c) check_triple(a, b, c);
        }
    } else {
      std::mt19937_64 rng(sample_seed);
      std::uniform_int_distribution<int> pick(0, n_ - 1);
      for (int i = 0; i < 100000; ++i) check_triple(pick(rng), pick(rng), pick(rng));
    }
  }

  // Children of x (covers from below) within the member mask: maximal
  // elements among { y in mask : y < x }.
  std::vector<int> children(int x, const std::vector<char>& mask) const {
    std::vector<int> below;
    for (int y = 0; y < n_; ++y)
      if (mask[static_cast<std::size_t>(y)] && less(y, x)) below.push_back(y);
    std::vector<int> out;
    for (int y : below) {
      bool maximal = true;
      for (int z : below)
        if (z != y && less(y, z)) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(y);
    }
    return out;
  }

  std::vector<std::vector<int>> children_lists(const std::vector<char>& mask) const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x)
      if (mask[static_cast<std::size_t>(x)]) out[static_cast<std::size_t>(x)] = children(x, mask);
    return out;
  }

  // All t-descendants of x within the mask: everything reachable by at most t
  // downward cover steps (including x itself).
  std::vector<int> descendants(int x, int t, const std::vector<char>& mask) const {
    if (!mask[static_cast<std::size_t>(x)]) throw Error("poset", "element outside the mask");
    if (t < 0) throw Error("poset", "descendant depth must be >= 0");
    const std::vector<std::vector<int>> kids = children_lists(mask);
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> frontier = {x};
    seen[static_cast<std::size_t>(x)] = 1;
    std::vector<int> out = {x};
    for (int depth = 0; depth < t && !frontier.empty(); ++depth) {
      std::vector<int> next;
      for (int y : frontier)
        for (int z : kids[static_cast<std::size_t>(y)])
          if (!seen[static_cast<std::size_t>(z)]) {
            seen[static_cast<std::size_t>(z)] = 1;
            next.push_back(z);
            out.push_back(z);
          }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> descendants(int x, int t) const {
    return descendants(x, t, std::vector<char>(static_cast<std::size_t>(n_), 1));
  }

  // Everything <= x (the full down-set), for the descendant-count claim.
  std::vector<int> down_set(int x) const {
    std::vector<int> out;
    for (int y = 0; y < n_; ++y)
      if (leq(y, x)) out.push_back(y);
    return out;
  }

  std::vector<int> interval(int a, int b) const {
    std::vector<int> out;
    if (!leq(a, b)) return out;
    for (int x = 0; x < n_; ++x)
      if (leq(a, x) && leq(x, b)) out.push_back(x);
    return out;
  }

 private:
  std::size_t row(int a) const { return static_cast<std::size_t>(a) * words_; }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Maximum antichain of the sub-poset induced by `elems`, via Dilworth:
// a minimum chain cover comes from maximum bipartite matching on the strict
// comparabilities, and Koenig's vertex cover yields the antichain.
inline std::vector<int> max_antichain(const Poset& p, const std::vector<int>& elems) {
  const int m = static_cast<int>(elems.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && p.less(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]))
        adj[static_cast<std::size_t>(i)].push_back(j);

  std::vector<int> match_left(static_cast<std::size_t>(m), -1);
  std::vector<int> match_right(static_cast<std::size_t>(m), -1);
  std::vector<char> used;
  const std::function<bool(int)> augment = [&](int u) -> bool {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      if (match_right[static_cast<std::size_t>(v)] == -1 ||
          augment(match_right[static_cast<std::size_t>(v)])) {
        match_left[static_cast<std::size_t>(u)] = v;
        match_right[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < m; ++u) {
    used.assign(static_cast<std::size_t>(m), 0);
    augment(u);
  }

  // Koenig: alternating reachability from unmatched left vertices.
  std::vector<char> left_vis(static_cast<std::size_t>(m), 0), right_vis(static_cast<std::size_t>(m), 0);
  std::vector<int> stack;
  for (int u = 0; u < m; ++u)
    if (match_left[static_cast<std::size_t>(u)] == -1) {
      left_vis[static_cast<std::size_t>(u)] = 1;
      stack.push_back(u);
    }
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (right_vis[static_cast<std::size_t>(v)]) continue;
      right_vis[static_cast<std::size_t>(v)] = 1;
      const int u2 = match_right[static_cast<std::size_t>(v)];
      if (u2 != -1 && !left_vis[static_cast<std::size_t>(u2)]) {
        left_vis[static_cast<std::size_t>(u2)] = 1;
        stack.push_back(u2);
      }
    }
  }
  // Vertex cover = unreached left + reached right; the complement on both
  // sides is an antichain of size m - matching.
  std::vector<int> antichain;
  for (int i = 0; i < m; ++i)
    if (left_vis[static_cast<std::size_t>(i)] && !right_vis[static_cast<std::size_t>(i)])
      antichain.push_back(elems[static_cast<std::size_t>(i)]);
  return antichain;
}

inline long long poset_pair_budget() {
  const long long b = std::max<long long>(2000, static_cast<long long>(std::sqrt(
                                                    static_cast<double>(grid_cell_budget()))));
  return b;
}

// Exact local d-linearity: every interval [a,b] has maximum antichain <= d.
// Errors out above the size cutoff (raise ZLAB_MAX_CELLS for larger runs).
inline bool is_locally_d_linear(const Poset& p, int d, std::vector<int>* witness = nullptr) {
  if (d < 1) throw Error("poset", "d must be >= 1");
  if (p.size() > poset_pair_budget())
    throw Error("budget", "poset too large for the exact local-linearity check");
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b) {
      if (!p.leq(a, b)) continue;
      const std::vector<int> iv = p.interval(a, b);
      if (static_cast<int>(iv.size()) <= d) continue;
      const std::vector<int> ac = max_antichain(p, iv);
      if (static_cast<int>(ac.size()) > d) {
        if (witness) *witness = ac;
        return false;
      }
    }
  return true;
}

// d-linearity of one subset: no antichain larger than d inside it.
inline bool is_d_linear_subset(const Poset& p, const std::vector<int>& elems, int d,
                               std::vector<int>* witness = nullptr) {
  const std::vector<int> ac = max_antichain(p, elems);
  if (static_cast<int>(ac.size()) > d) {
    if (witness) *witness = ac;
    return false;
  }
  return true;
}

}  // namespace zlab
