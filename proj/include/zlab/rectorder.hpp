#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zlab/config.hpp"
#include "zlab/incidence.hpp"
#include "zlab/poset.hpp"

namespace zlab {

struct PreprocessReport {
  long long rects_before = 0;         // with multiplicity
  long long rects_after = 0;          // distinct survivors
  long long chain_removed_copies = 0; // copies removed to kill nested k-chains
  long long chain_removed_incidences = 0;
  long long chain_removal_bound = 0;  // (k-1) * n_2, must dominate the above
  long long dedup_dropped_copies = 0;
  long long dedup_dropped_incidences = 0;
  long long incidences_before = 0;    // with multiplicity
  long long incidences_after = 0;     // survivors, multiplicity one
  bool removed_copies_were_sparse = true;  // every removed copy held <= k-1 points
};

// The containment order on surviving dyadic rectangles I x J:
//   (I x J) <= (I' x J')  iff  I is inside I' and J contains J'.
struct RectOrderResult {
  Poset poset;
  std::vector<DyadicBox> rects;       // poset element -> rectangle
  std::vector<int> source_region;    // poset element -> index into cfg.regions
  std::vector<std::vector<int>> point_lines;  // per point: sorted poset elements containing it
  PreprocessReport report;
};

namespace detail {

inline bool rect_set_subset(const DyadicBox& inner, const DyadicBox& outer) {
  return interval_subset(inner.intervals[0], outer.intervals[0]) &&
         interval_subset(inner.intervals[1], outer.intervals[1]);
}

struct RectKey {
  std::pair<std::string, std::int64_t> a, b;
  bool operator<(const RectKey& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

inline RectKey rect_key(const DyadicBox& r) {
  return RectKey{{r.intervals[0].s.str(), r.intervals[0].t}, {r.intervals[1].s.str(), r.intervals[1].t}};
}

}  // namespace detail

// Preprocessing of Theorem-style dyadic rectangle families: remove the deep
// ends of nested containment chains so no chain of k nested rectangles
// remains (losing at most (k-1) * n_2 incidences), then collapse repetitions,
// and build the partial order. The report accounts for every discarded
// incidence.
inline RectOrderResult build_rect_order(const Configuration& cfg, int k) {
  if (cfg.dim != 2) throw Error("rectorder", "dyadic rectangle order requires dimension 2");
  if (!cfg.all_regions_dyadic()) throw Error("rectorder", "all regions must be dyadic rectangles");
  if (k < 2) throw Error("rectorder", "k must be >= 2");

  const IncidenceGraph graph = count_incidences(cfg, "auto");

  // Collapse identical stored rectangles, summing multiplicity.
  std::map<detail::RectKey, int> index_of;
  std::vector<DyadicBox> rects;
  std::vector<long long> mult;
  std::vector<std::vector<int>> points;  // per distinct rect
  std::vector<int> source;
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    const DyadicBox& box = std::get<DyadicBox>(cfg.regions[r]);
    if (box.dim() != 2) throw Error("rectorder", "regions must be 2-dimensional");
    const detail::RectKey key = detail::rect_key(box);
    const auto it = index_of.find(key);
    if (it == index_of.end()) {
      index_of.emplace(key, static_cast<int>(rects.size()));
      rects.push_back(box);
      mult.push_back(cfg.multiplicity[r]);
      points.push_back(graph.region_points[r]);
      source.push_back(static_cast<int>(r));
    } else {
      mult[static_cast<std::size_t>(it->second)] += cfg.multiplicity[r];
    }
  }

  RectOrderResult out;
  PreprocessReport& rep = out.report;
  rep.rects_before = cfg.n_regions();
  rep.incidences_before = graph.edges;
  rep.chain_removal_bound = static_cast<long long>(k - 1) * rep.rects_before;

  // Longest containment chain strictly above each distinct rectangle,
  // counted with multiplicity (equal copies stack).
  const int nd = static_cast<int>(rects.size());
  std::vector<long long> above(static_cast<std::size_t>(nd), -1);
  const std::function<long long(int)> chain_above = [&](int x) -> long long {
    long long& memo = above[static_cast<std::size_t>(x)];
    if (memo >= 0) return memo;
    memo = 0;
    for (int y = 0; y < nd; ++y) {
      if (y == x) continue;
      if (detail::rect_set_subset(rects[static_cast<std::size_t>(x)], rects[static_cast<std::size_t>(y)]) &&
          !detail::rect_set_subset(rects[static_cast<std::size_t>(y)], rects[static_cast<std::size_t>(x)]))
        memo = std::max(memo, chain_above(y) + mult[static_cast<std::size_t>(y)]);
    }
    return memo;
  };

  std::vector<int> keep;
  for (int x = 0; x < nd; ++x) {
    const long long a0 = chain_above(x);
    const long long surviving = std::max<long long>(0, std::min<long long>(mult[static_cast<std::size_t>(x)],
                                                                            (k - 1) - a0));
    const long long chain_removed = mult[static_cast<std::size_t>(x)] - surviving;
    const long long pts = static_cast<long long>(points[static_cast<std::size_t>(x)].size());
    if (chain_removed > 0) {
      rep.chain_removed_copies += chain_removed;
      rep.chain_removed_incidences += chain_removed * pts;
      if (pts > static_cast<long long>(k - 1)) rep.removed_copies_were_sparse = false;
    }
    if (surviving > 0) {
      rep.dedup_dropped_copies += surviving - 1;
      rep.dedup_dropped_incidences += (surviving - 1) * pts;
      keep.push_back(x);
    }
  }
  rep.rects_after = static_cast<long long>(keep.size());

  out.rects.reserve(keep.size());
  out.source_region.reserve(keep.size());
  for (int x : keep) {
    out.rects.push_back(rects[static_cast<std::size_t>(x)]);
    out.source_region.push_back(source[static_cast<std::size_t>(x)]);
  }

  // Survivors cannot contain a k-chain: their chain-above plus one copy stays
  // below k by construction.
  const int n = static_cast<int>(out.rects.size());
  out.poset = Poset(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (interval_subset(out.rects[static_cast<std::size_t>(i)].intervals[0],
                          out.rects[static_cast<std::size_t>(j)].intervals[0]) &&
          interval_subset(out.rects[static_cast<std::size_t>(j)].intervals[1],
                          out.rects[static_cast<std::size_t>(i)].intervals[1]))
        out.poset.set_leq(i, j);
    }
  out.poset.validate();

  out.point_lines.assign(cfg.points.size(), {});
  for (int i = 0; i < n; ++i) {
    for (int p : points[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])]) {
      out.point_lines[static_cast<std::size_t>(p)].push_back(i);
      ++rep.incidences_after;
    }
  }
  return out;
}

// Brute-force search for a nested chain of `depth` rectangles (set
// containment, allowing equality between copies); test oracle for the
// preprocessing.
inline bool has_nested_chain(const std::vector<DyadicBox>& rects, const std::vector<int>& mult,
                             int depth) {
  const int n = static_cast<int>(rects.size());
  // chain_len[x] = longest chain ending at x going inward, with multiplicity
  std::vector<long long> memo(static_cast<std::size_t>(n), -1);
  const std::function<long long(int)> rec = [&](int x) -> long long {
    long long& m = memo[static_cast<std::size_t>(x)];
    if (m >= 0) return m;
    m = mult[static_cast<std::size_t>(x)];
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      if (detail::rect_set_subset(rects[static_cast<std::size_t>(x)], rects[static_cast<std::size_t>(y)]) &&
          !detail::rect_set_subset(rects[static_cast<std::size_t>(y)], rects[static_cast<std::size_t>(x)]))
        m = std::max(m, rec(y) + mult[static_cast<std::size_t>(x)]);
    }
    return m;
  };
  for (int x = 0; x < n; ++x)
    if (rec(x) >= depth) return true;
  return false;
}

}  // namespace zlab
