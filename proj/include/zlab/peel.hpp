#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "zlab/poset.hpp"
#include "zlab/rectorder.hpp"

namespace zlab {

// A family of subsets of poset elements (one per point in the rectangle
// application); repetitions are legitimate.
using Arrangement = std::vector<std::vector<int>>;

// One application of the peeling inequality:
//   sum_l |l cap P_i|  <=  sum_l |l cap P_{i+1}| + d(k-1)|L| + (k-1) m^{k-1} (|P_i|-|P_{i+1}|).
struct PeelStepRecord {
  long long size_p = 0;
  long long size_p_next = 0;
  long long sum_l_p = 0;
  long long sum_l_p_next = 0;
  long long low_incidences = 0;  // counted over the current restriction
  double rhs = 0.0;
  bool inequality_ok = false;
};

struct PeelTrace {
  int k = 0;
  int d = 0;
  double c = 0.0;
  double m = 0.0;
  long long t = 0;
  long long n1 = 0;           // poset size after preprocessing
  long long n_lines = 0;      // |L|
  long long sum_l_total = 0;  // sum over l of |l|
  bool termination_guaranteed = false;  // (m/(k d^k))^t > n1
  bool emptied = false;
  long long emptied_after = -1;  // first step index with P empty, -1 if never
  std::vector<PeelStepRecord> steps;
  std::vector<long long> chain_sizes;  // |P_0|, |P_1|, ...
  double final_bound_rhs = 0.0;        // d(k-1) t |L| + (k-1) m^{k-1} n1 (+ leftover)
  bool final_bound_ok = false;
  PreprocessReport preprocess;
};

namespace detail {

inline long long arrangement_mass(const Arrangement& lines, const std::vector<char>& mask) {
  long long s = 0;
  for (const auto& l : lines)
    for (int x : l) s += mask[static_cast<std::size_t>(x)] ? 1 : 0;
  return s;
}

// Low points of one line within the mask: members with no descending chain of
// length k-1 below them inside the line.
inline long long count_low_points(const Poset& p, const std::vector<int>& line,
                                  const std::vector<char>& mask, int k) {
  std::vector<int> members;
  for (int x : line)
    if (mask[static_cast<std::size_t>(x)]) members.push_back(x);
  const int m = static_cast<int>(members.size());
  // longest chain ending at each member, within the induced subposet
  std::vector<int> depth(static_cast<std::size_t>(m), 1);
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  // sort by number of members strictly below, so dependencies come first
  std::vector<int> below_count(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && p.less(members[static_cast<std::size_t>(j)], members[static_cast<std::size_t>(i)]))
        ++below_count[static_cast<std::size_t>(i)];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return below_count[static_cast<std::size_t>(a)] < below_count[static_cast<std::size_t>(b)];
  });
  for (int oi : order)
    for (int j = 0; j < m; ++j)
      if (oi != j && p.less(members[static_cast<std::size_t>(j)], members[static_cast<std::size_t>(oi)]))
        depth[static_cast<std::size_t>(oi)] =
            std::max(depth[static_cast<std::size_t>(oi)], depth[static_cast<std::size_t>(j)] + 1);
  long long low = 0;
  for (int i = 0; i < m; ++i)
    if (depth[static_cast<std::size_t>(i)] <= k - 1) ++low;
  return low;
}

}  // namespace detail

// One peeling step: P_next is the set of members of P that have a
// (k-1)-descendant (cover paths inside P) with more than m children in P.
// Emits the verified instance of the per-step inequality; a violation is an
// implementation bug and raises a hard error.
inline std::vector<char> peel_step(const Poset& p, const std::vector<char>& mask,
                                   const Arrangement& lines, int k, double m, int d,
                                   PeelStepRecord* record = nullptr) {
  if (k < 2) throw Error("peel", "k must be >= 2");
  const std::vector<std::vector<int>> kids = p.children_lists(mask);
  std::vector<char> busy(static_cast<std::size_t>(p.size()), 0);
  for (int x = 0; x < p.size(); ++x)
    if (mask[static_cast<std::size_t>(x)] &&
        static_cast<double>(kids[static_cast<std::size_t>(x)].size()) > m)
      busy[static_cast<std::size_t>(x)] = 1;

  std::vector<char> next(static_cast<std::size_t>(p.size()), 0);
  for (int x = 0; x < p.size(); ++x) {
    if (!mask[static_cast<std::size_t>(x)]) continue;
    // BFS down cover paths for at most k-1 steps looking for a busy node.
    std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
    std::vector<int> frontier = {x};
    seen[static_cast<std::size_t>(x)] = 1;
    bool found = busy[static_cast<std::size_t>(x)] != 0;
    for (int depth = 0; depth < k - 1 && !found && !frontier.empty(); ++depth) {
      std::vector<int> nf;
      for (int y : frontier)
        for (int z : kids[static_cast<std::size_t>(y)])
          if (!seen[static_cast<std::size_t>(z)]) {
            seen[static_cast<std::size_t>(z)] = 1;
            nf.push_back(z);
            if (busy[static_cast<std::size_t>(z)]) {
              found = true;
              break;
            }
          }
      frontier = std::move(nf);
    }
    if (found) next[static_cast<std::size_t>(x)] = 1;
  }

  if (record) {
    record->size_p = 0;
    record->size_p_next = 0;
    for (int x = 0; x < p.size(); ++x) {
      record->size_p += mask[static_cast<std::size_t>(x)] ? 1 : 0;
      record->size_p_next += next[static_cast<std::size_t>(x)] ? 1 : 0;
    }
    record->sum_l_p = detail::arrangement_mass(lines, mask);
    record->sum_l_p_next = detail::arrangement_mass(lines, next);
    record->low_incidences = 0;
    for (const auto& line : lines) {
      const long long low = detail::count_low_points(p, line, mask, k);
      if (low > static_cast<long long>(d) * (k - 1))
        throw Error("lemma", "a line holds more than d(k-1) low points; the line is not d-linear");
      record->low_incidences += low;
    }
    record->rhs = static_cast<double>(record->sum_l_p_next) +
                  static_cast<double>(d) * (k - 1) * static_cast<double>(lines.size()) +
                  (k - 1) * std::pow(m, k - 1) *
                      static_cast<double>(record->size_p - record->size_p_next);
    record->inequality_ok =
        static_cast<double>(record->sum_l_p) <= record->rhs * (1.0 + 1e-12) + 1e-9;
    if (!record->inequality_ok)
      throw Error("lemma", "peeling inequality violated: sum " + std::to_string(record->sum_l_p) +
                               " > rhs " + std::to_string(record->rhs));
  }
  return next;
}

// The full peeling run on a dyadic rectangle configuration: preprocess, build
// the arrangement of per-point lines, choose m and t from c, peel t times,
// and verify the telescoped bound. d is k-1 throughout, matching the
// reduction from dyadic rectangles.
inline PeelTrace peel_run(const Configuration& cfg, int k, double c) {
  if (k < 2) throw Error("peel", "k must be >= 2");
  {
    KkWitness w;
    if (!is_kk_free(count_incidences(cfg, "auto"), k, &w))
      throw Error("kkk", "input incidence graph contains a K_{k,k}");
  }
  RectOrderResult ro = build_rect_order(cfg, k);
  const int d = k - 1;

  PeelTrace trace;
  trace.k = k;
  trace.d = d;
  trace.c = c;
  trace.preprocess = ro.report;
  trace.n1 = ro.poset.size();
  trace.n_lines = static_cast<long long>(ro.point_lines.size());

  const double log_term = std::log(100.0 + static_cast<double>(trace.n1));
  const double x = c * log_term / std::log(log_term);
  trace.m = std::pow(x, 1.0 / static_cast<double>(k - 1));
  trace.t = static_cast<long long>(std::floor(x));

  const double kd = static_cast<double>(k) * std::pow(static_cast<double>(d), k);
  trace.termination_guaranteed =
      trace.m > kd &&
      static_cast<double>(trace.t) * (std::log(trace.m) - std::log(kd)) >
          std::log(std::max<double>(1.0, static_cast<double>(trace.n1)));

  std::vector<char> mask(static_cast<std::size_t>(ro.poset.size()), 1);
  trace.sum_l_total = detail::arrangement_mass(ro.point_lines, mask);
  trace.chain_sizes.push_back(trace.n1);

  for (long long i = 0; i < trace.t; ++i) {
    PeelStepRecord rec;
    std::vector<char> next = peel_step(ro.poset, mask, ro.point_lines, k, trace.m, d, &rec);
    trace.steps.push_back(rec);
    mask = std::move(next);
    trace.chain_sizes.push_back(rec.size_p_next);
    if (rec.size_p_next == 0) {
      trace.emptied = true;
      trace.emptied_after = i + 1;
      break;
    }
  }
  const long long final_size = trace.chain_sizes.back();
  if (final_size == 0) trace.emptied = true;
  if (trace.termination_guaranteed && trace.t > 0 &&
      static_cast<long long>(trace.steps.size()) == trace.t && !trace.emptied)
    throw Error("claim", "P_t nonempty although (m/(k d^k))^t > n1; the descendant-count claim "
                         "guarantees this cannot happen");

  const long long leftover = trace.emptied ? 0 : detail::arrangement_mass(ro.point_lines, mask);
  trace.final_bound_rhs = static_cast<double>(leftover) +
                          static_cast<double>(d) * (k - 1) * static_cast<double>(trace.t) *
                              static_cast<double>(trace.n_lines) +
                          (k - 1) * std::pow(trace.m, k - 1) * static_cast<double>(trace.n1);
  trace.final_bound_ok =
      static_cast<double>(trace.sum_l_total) <= trace.final_bound_rhs * (1.0 + 1e-12) + 1e-9;
  if (!trace.final_bound_ok)
    throw Error("lemma", "telescoped peeling bound violated");
  return trace;
}

}  // namespace zlab
