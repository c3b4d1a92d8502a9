#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zlab/region.hpp"

namespace zlab {

// Provenance of a configuration: generator name, parameters, seed.
struct ConfigMeta {
  std::string generator = "unspecified";
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
};

// A finite set of points plus a finite multiset of regions, all sharing one
// dimension. Repeated regions are stored once with a multiplicity.
struct Configuration {
  std::size_t dim = 0;
  std::vector<Point> points;
  std::vector<Region> regions;
  std::vector<int> multiplicity;  // parallel to regions, every entry >= 1
  ConfigMeta meta;

  Configuration() = default;
  explicit Configuration(std::size_t d) : dim(d) {}

  void add_point(Point p) {
    if (p.size() != dim) throw Error("dimension", "point dimension mismatch");
    points.push_back(std::move(p));
  }

  void add_region(Region r, int mult = 1) {
    if (region_dim(r) != dim) throw Error("dimension", "region dimension mismatch");
    if (mult < 1) throw Error("config", "region multiplicity must be >= 1");
    regions.push_back(std::move(r));
    multiplicity.push_back(mult);
  }

  std::size_t n_points() const { return points.size(); }

  // Region count with multiplicity.
  long long n_regions() const {
    long long n = 0;
    for (int m : multiplicity) n += m;
    return n;
  }

  bool all_regions_dyadic() const {
    for (const Region& r : regions)
      if (!is_dyadic_box(r)) return false;
    return true;
  }
};

}  // namespace zlab
