#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zlab/config.hpp"

namespace zlab {

// Bipartite containment relation between the points and the stored (distinct)
// regions of a configuration. Edges are per stored region; the edge count
// weights each stored region by its multiplicity.
struct IncidenceGraph {
  std::size_t n_points = 0;
  std::size_t n_regions = 0;            // distinct stored regions
  std::vector<int> multiplicity;        // parallel to regions
  std::vector<std::vector<int>> region_points;  // sorted point indices per region
  long long edges = 0;                  // with multiplicity

  std::vector<std::vector<int>> points_to_regions() const {
    std::vector<std::vector<int>> pr(n_points);
    for (std::size_t r = 0; r < n_regions; ++r)
      for (int p : region_points[r]) pr[static_cast<std::size_t>(p)].push_back(static_cast<int>(r));
    return pr;
  }

  void recount_edges() {
    edges = 0;
    for (std::size_t r = 0; r < n_regions; ++r)
      edges += static_cast<long long>(multiplicity[r]) * static_cast<long long>(region_points[r].size());
  }
};

namespace detail {

struct AxisRange {
  DyadicRational lo, hi;
  bool lo_closed = true, hi_closed = false;

  bool contains(const DyadicRational& v) const {
    const int lc = v.compare(lo);
    if (lc < 0 || (lc == 0 && !lo_closed)) return false;
    const int hc = v.compare(hi);
    return hc < 0 || (hc == 0 && hi_closed);
  }
};

inline AxisRange region_axis_range(const Region& r, std::size_t axis) {
  if (const auto* db = std::get_if<DyadicBox>(&r)) {
    const DyadicInterval& iv = db->intervals[axis];
    return {iv.lower(), iv.upper(), true, false};
  }
  if (const auto* gb = std::get_if<GeneralBox>(&r)) {
    const GeneralBox::Axis& ax = gb->axes[axis];
    return {ax.lo, ax.hi, ax.lo_closed, ax.hi_closed};
  }
  throw Error("engine", "sweep engine handles boxes only; use the brute-force engine");
}

}  // namespace detail

// Reference oracle: test every point against every region. Box endpoints are
// cached per axis so the inner loop is pure comparisons.
inline IncidenceGraph incidences_bruteforce(const Configuration& cfg) {
  IncidenceGraph g;
  g.n_points = cfg.points.size();
  g.n_regions = cfg.regions.size();
  g.multiplicity = cfg.multiplicity;
  g.region_points.resize(cfg.regions.size());
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    const Region& reg = cfg.regions[r];
    if (std::holds_alternative<TranslatePolytope>(reg)) {
      for (std::size_t p = 0; p < cfg.points.size(); ++p)
        if (box_contains(reg, cfg.points[p])) g.region_points[r].push_back(static_cast<int>(p));
      continue;
    }
    std::vector<detail::AxisRange> axes(cfg.dim);
    for (std::size_t j = 0; j < cfg.dim; ++j) axes[j] = detail::region_axis_range(reg, j);
    for (std::size_t p = 0; p < cfg.points.size(); ++p) {
      const Point& pt = cfg.points[p];
      if (pt.size() != cfg.dim) throw Error("dimension", "point dimension mismatch");
      bool inside = true;
      for (std::size_t j = 0; j < cfg.dim && inside; ++j) inside = axes[j].contains(pt[j]);
      if (inside) g.region_points[r].push_back(static_cast<int>(p));
    }
  }
  g.recount_edges();
  return g;
}

namespace detail {

// Segment tree over elementary slots; each box occupies a contiguous slot
// range and a stabbing query collects every box covering the query slot.
class StabbingTree {
 public:
  explicit StabbingTree(std::size_t slots) : slots_(std::max<std::size_t>(slots, 1)) {
    size_ = 1;
    while (size_ < slots_) size_ <<= 1;
    buckets_.assign(2 * size_, {});
  }

  void insert(int id, std::size_t lo, std::size_t hi) {  // inclusive slot range
    if (lo > hi) return;
    positions_.resize(std::max<std::size_t>(positions_.size(), static_cast<std::size_t>(id) + 1));
    insert_rec(1, 0, size_ - 1, lo, hi, id);
  }

  void erase(int id) {
    for (const auto& [node, pos] : positions_[static_cast<std::size_t>(id)]) {
      auto& bucket = buckets_[node];
      const int moved = bucket.back();
      bucket[pos] = moved;
      bucket.pop_back();
      if (moved != id) {
        for (auto& entry : positions_[static_cast<std::size_t>(moved)])
          if (entry.first == node) entry.second = pos;
      }
    }
    positions_[static_cast<std::size_t>(id)].clear();
  }

  void stab(std::size_t slot, std::vector<int>& out) const {
    std::size_t node = 1, lo = 0, hi = size_ - 1;
    for (;;) {
      out.insert(out.end(), buckets_[node].begin(), buckets_[node].end());
      if (lo == hi) break;
      const std::size_t mid = lo + (hi - lo) / 2;
      if (slot <= mid) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
  }

 private:
  void insert_rec(std::size_t node, std::size_t lo, std::size_t hi, std::size_t qlo,
                  std::size_t qhi, int id) {
    if (qhi < lo || hi < qlo) return;
    if (qlo <= lo && hi <= qhi) {
      buckets_[node].push_back(id);
      positions_[static_cast<std::size_t>(id)].emplace_back(node, buckets_[node].size() - 1);
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    insert_rec(2 * node, lo, mid, qlo, qhi, id);
    insert_rec(2 * node + 1, mid + 1, hi, qlo, qhi, id);
  }

  std::size_t slots_, size_;
  std::vector<std::vector<int>> buckets_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> positions_;
};

}  // namespace detail

// Plane sweep over x with a stabbing structure over y. Dimension 2, boxes
// only; adjacency is identical to the brute-force oracle.
inline IncidenceGraph incidences_sweep(const Configuration& cfg) {
  if (cfg.dim != 2) throw Error("engine", "sweep engine requires dimension 2");
  IncidenceGraph g;
  g.n_points = cfg.points.size();
  g.n_regions = cfg.regions.size();
  g.multiplicity = cfg.multiplicity;
  g.region_points.resize(cfg.regions.size());

  std::vector<detail::AxisRange> xr(cfg.regions.size()), yr(cfg.regions.size());
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    xr[r] = detail::region_axis_range(cfg.regions[r], 0);
    yr[r] = detail::region_axis_range(cfg.regions[r], 1);
  }

  // Slot layout over the sorted distinct y endpoint values V:
  // slot 2i+1 = the single value V[i]; even slots = the open gaps between.
  std::vector<DyadicRational> yvals;
  yvals.reserve(2 * cfg.regions.size());
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    yvals.push_back(yr[r].lo);
    yvals.push_back(yr[r].hi);
  }
  std::sort(yvals.begin(), yvals.end());
  yvals.erase(std::unique(yvals.begin(), yvals.end()), yvals.end());
  const auto value_index = [&](const DyadicRational& v) {
    return static_cast<std::size_t>(
        std::lower_bound(yvals.begin(), yvals.end(), v) - yvals.begin());
  };
  const auto point_slot = [&](const DyadicRational& v) -> std::size_t {
    const auto it = std::lower_bound(yvals.begin(), yvals.end(), v);
    const std::size_t i = static_cast<std::size_t>(it - yvals.begin());
    if (it != yvals.end() && *it == v) return 2 * i + 1;
    return 2 * i;  // open gap below yvals[i] (or below everything for i=0)
  };

  // Event order at equal x: close-open, open-closed, point, open-open, close-closed.
  struct Event {
    DyadicRational x;
    int priority;
    int id;  // region or point index
  };
  std::vector<Event> events;
  events.reserve(cfg.points.size() + 2 * cfg.regions.size());
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    events.push_back({xr[r].lo, xr[r].lo_closed ? 1 : 3, static_cast<int>(r)});
    events.push_back({xr[r].hi, xr[r].hi_closed ? 4 : 0, static_cast<int>(r)});
  }
  for (std::size_t p = 0; p < cfg.points.size(); ++p)
    events.push_back({cfg.points[p][0], 2, static_cast<int>(p)});
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    const int c = a.x.compare(b.x);
    if (c != 0) return c < 0;
    return a.priority < b.priority;
  });

  detail::StabbingTree tree(2 * yvals.size() + 1);
  std::vector<int> hits;
  for (const Event& ev : events) {
    if (ev.priority == 2) {
      hits.clear();
      tree.stab(point_slot(cfg.points[static_cast<std::size_t>(ev.id)][1]), hits);
      for (int r : hits) g.region_points[static_cast<std::size_t>(r)].push_back(ev.id);
    } else if (ev.priority == 1 || ev.priority == 3) {
      const detail::AxisRange& y = yr[static_cast<std::size_t>(ev.id)];
      const std::size_t from = 2 * value_index(y.lo) + (y.lo_closed ? 1 : 2);
      const std::size_t to = 2 * value_index(y.hi) + (y.hi_closed ? 1 : 0);
      if (from <= to) tree.insert(ev.id, from, to);
    } else {
      tree.erase(ev.id);
    }
  }
  for (auto& pts : g.region_points) std::sort(pts.begin(), pts.end());
  g.recount_edges();
  return g;
}

inline IncidenceGraph count_incidences(const Configuration& cfg, const std::string& engine = "auto") {
  if (engine == "brute") return incidences_bruteforce(cfg);
  const bool sweepable =
      cfg.dim == 2 && std::all_of(cfg.regions.begin(), cfg.regions.end(), [](const Region& r) {
        return !std::holds_alternative<TranslatePolytope>(r);
      });
  if (engine == "sweep") {
    if (!sweepable) throw Error("engine", "sweep engine requires dimension-2 boxes");
    return incidences_sweep(cfg);
  }
  if (engine != "auto") throw Error("engine", "unknown engine '" + engine + "'");
  return sweepable ? incidences_sweep(cfg) : incidences_bruteforce(cfg);
}

// Witness of a K_{k,k}: k point indices and k region indices (with repeats
// standing for multiplicity) all mutually incident.
struct KkWitness {
  std::vector<int> points;
  std::vector<int> regions;
};

namespace detail {

// Recursive search for k regions (multiplicity-aware) whose common point set
// has size >= k. Exact; exponential in the worst case, intended for desk
// scale. Regions are scanned in increasing degree order with an
// intersection-size cutoff for pruning.
inline bool find_kkk(const IncidenceGraph& g, int k, KkWitness* witness) {
  const std::size_t nr = g.n_regions;
  std::vector<int> order(nr);
  for (std::size_t i = 0; i < nr; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto da = g.region_points[static_cast<std::size_t>(a)].size();
    const auto db = g.region_points[static_cast<std::size_t>(b)].size();
    return da != db ? da < db : a < b;
  });

  // Depth-first over positions in `order`; each region may be taken up to
  // min(mult, remaining) times.
  std::vector<int> chosen;
  const std::function<bool(std::size_t, int, const std::vector<int>&)> rec =
      [&](std::size_t pos, int remaining, const std::vector<int>& cur) -> bool {
    if (remaining == 0) {
      if (cur.size() >= static_cast<std::size_t>(k)) {
        witness->points.assign(cur.begin(), cur.begin() + k);
        witness->regions = chosen;
        return true;
      }
      return false;
    }
    for (std::size_t i = pos; i < nr; ++i) {
      const int r = order[i];
      const auto& pts = g.region_points[static_cast<std::size_t>(r)];
      if (pts.size() < static_cast<std::size_t>(k)) continue;
      std::vector<int> inter;
      if (chosen.empty()) {
        inter = pts;
      } else {
        inter.clear();
        std::set_intersection(cur.begin(), cur.end(), pts.begin(), pts.end(),
                              std::back_inserter(inter));
      }
      if (inter.size() < static_cast<std::size_t>(k)) continue;
      const int copies = std::min(g.multiplicity[static_cast<std::size_t>(r)], remaining);
      for (int c = 1; c <= copies; ++c) {
        chosen.push_back(r);
        if (rec(i + 1, remaining - c, inter)) return true;
      }
      for (int c = 1; c <= copies; ++c) chosen.pop_back();
    }
    return false;
  };

  std::vector<int> all;
  return rec(0, k, all);
}

}  // namespace detail

// Decide K_{k,k}-freeness of the bipartite incidence graph. For k=2 the
// check counts region pairs sharing two points; the general case intersects
// neighbor sets with early cutoff.
inline bool is_kk_free(const IncidenceGraph& g, int k, KkWitness* witness = nullptr) {
  if (k < 2) throw Error("kfree", "k must be >= 2");
  KkWitness local;
  KkWitness* w = witness ? witness : &local;
  if (g.n_points < static_cast<std::size_t>(k)) return true;

  if (k == 2) {
    // Pair counting over each point's region list; multiplicity >= 2 plus two
    // points in one region is already a K_{2,2}.
    for (std::size_t r = 0; r < g.n_regions; ++r)
      if (g.multiplicity[r] >= 2 && g.region_points[r].size() >= 2) {
        w->points = {g.region_points[r][0], g.region_points[r][1]};
        w->regions = {static_cast<int>(r), static_cast<int>(r)};
        return false;
      }
    std::map<std::pair<int, int>, int> pair_first_point;
    const auto pr = g.points_to_regions();
    for (std::size_t p = 0; p < pr.size(); ++p) {
      const auto& regs = pr[p];
      for (std::size_t i = 0; i < regs.size(); ++i)
        for (std::size_t j = i + 1; j < regs.size(); ++j) {
          const auto key = std::make_pair(regs[i], regs[j]);
          const auto it = pair_first_point.find(key);
          if (it == pair_first_point.end()) {
            pair_first_point.emplace(key, static_cast<int>(p));
          } else {
            w->points = {it->second, static_cast<int>(p)};
            w->regions = {regs[i], regs[j]};
            return false;
          }
        }
    }
    return true;
  }
  return !detail::find_kkk(g, k, w);
}

inline bool is_kk_free(const Configuration& cfg, int k, KkWitness* witness = nullptr,
                       const std::string& engine = "auto") {
  return is_kk_free(count_incidences(cfg, engine), k, witness);
}

// ---- Sub-grid freeness of explicit subsets of an r-grid ----

// A subset of an r-grid given explicitly by its cells (tuples of indices).
struct GridSubset {
  std::vector<int> sizes;              // |B_1|, ..., |B_r|
  std::vector<std::vector<int>> cells; // each of length r
};

struct GridWitness {
  std::vector<std::vector<int>> axis_choices;  // per axis, the k chosen labels
};

inline long long grid_cell_budget() {
  if (const char* env = std::getenv("ZLAB_MAX_CELLS")) {
    const long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 1000000;  // default exact-search cutoff
}

namespace detail {

// Search for C_1 x ... x C_r inside A with |C_i| = k, recursing on axis 0:
// choose k axis-0 labels, intersect their sections, then recurse in r-1.
inline bool find_grid_kkk(const std::vector<int>& sizes,
                          const std::vector<std::vector<int>>& cells, int k,
                          GridWitness* witness) {
  const std::size_t r = sizes.size();
  if (r == 1) {
    std::vector<int> labels;
    for (const auto& c : cells) labels.push_back(c[0]);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() < static_cast<std::size_t>(k)) return false;
    witness->axis_choices.push_back(std::vector<int>(labels.begin(), labels.begin() + k));
    return true;
  }

  // Sections of axis 0: label -> set of (r-1)-suffixes, as sorted flat keys.
  std::vector<int> tail_sizes(sizes.begin() + 1, sizes.end());
  long long tail_span = 1;
  for (int s : tail_sizes) tail_span *= s;
  const auto tail_key = [&](const std::vector<int>& cell) {
    long long key = 0;
    for (std::size_t j = 1; j < cell.size(); ++j) key = key * tail_sizes[j - 1] + cell[j];
    return key;
  };
  std::map<int, std::vector<long long>> sections;
  for (const auto& c : cells) sections[c[0]].push_back(tail_key(c));
  std::vector<std::pair<int, std::vector<long long>>> secs;
  for (auto& [label, keys] : sections) {
    std::sort(keys.begin(), keys.end());
    secs.emplace_back(label, std::move(keys));
  }
  // Larger sections first: the running intersection shrinks fastest this way.
  std::sort(secs.begin(), secs.end(), [](const auto& a, const auto& b) {
    return a.second.size() != b.second.size() ? a.second.size() > b.second.size()
                                              : a.first < b.first;
  });

  const long long need = [&] {
    long long n = 1;
    for (int i = 0; i < static_cast<int>(r) - 1; ++i) n *= k;
    return n;
  }();  // k^(r-1) cells must survive the intersection

  std::vector<int> chosen;
  const std::function<bool(std::size_t, const std::vector<long long>&)> rec =
      [&](std::size_t pos, const std::vector<long long>& cur) -> bool {
    if (chosen.size() == static_cast<std::size_t>(k)) {
      // Decode the surviving suffixes and recurse on the (r-1)-grid.
      std::vector<std::vector<int>> sub_cells;
      sub_cells.reserve(cur.size());
      for (long long key : cur) {
        std::vector<int> cell(r - 1);
        long long rem = key;
        for (std::size_t j = r - 1; j-- > 0;) {
          cell[j] = static_cast<int>(rem % tail_sizes[j]);
          rem /= tail_sizes[j];
        }
        sub_cells.push_back(std::move(cell));
      }
      GridWitness sub;
      if (find_grid_kkk(tail_sizes, sub_cells, k, &sub)) {
        witness->axis_choices.clear();
        witness->axis_choices.push_back(chosen);
        for (auto& ch : sub.axis_choices) witness->axis_choices.push_back(std::move(ch));
        return true;
      }
      return false;
    }
    for (std::size_t i = pos; i < secs.size(); ++i) {
      std::vector<long long> inter;
      if (chosen.empty()) {
        inter = secs[i].second;
      } else {
        std::set_intersection(cur.begin(), cur.end(), secs[i].second.begin(),
                              secs[i].second.end(), std::back_inserter(inter));
      }
      if (static_cast<long long>(inter.size()) < need) continue;
      chosen.push_back(secs[i].first);
      if (rec(i + 1, inter)) return true;
      chosen.pop_back();
    }
    return false;
  };
  (void)tail_span;
  std::vector<long long> all;
  return rec(0, all);
}

}  // namespace detail

// Exact K_{k,...,k}-freeness of an explicit grid subset, below the cell
// budget (ZLAB_MAX_CELLS overrides the default 10^6).
inline bool is_grid_free(const GridSubset& a, int k, GridWitness* witness = nullptr) {
  if (a.sizes.size() < 1) throw Error("gridfree", "grid rank must be >= 1");
  if (k < 2) throw Error("gridfree", "k must be >= 2");
  long long span = 1;
  for (int s : a.sizes) {
    if (s < 0) throw Error("gridfree", "negative axis size");
    span *= std::max(s, 1);
    if (span > grid_cell_budget())
      throw Error("budget", "grid exceeds the exact-search cell budget; sample instead");
  }
  for (const auto& c : a.cells) {
    if (c.size() != a.sizes.size()) throw Error("gridfree", "cell arity mismatch");
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] < 0 || c[j] >= a.sizes[j]) throw Error("gridfree", "cell label out of range");
  }
  GridWitness local;
  return !detail::find_grid_kkk(a.sizes, a.cells, k, witness ? witness : &local);
}

}  // namespace zlab
