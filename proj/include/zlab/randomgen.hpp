#pragma once

#include <random>
#include <string>
#include <vector>

#include "zlab/config.hpp"
#include "zlab/incidence.hpp"

namespace zlab {

// Seeded random configuration in [0,1)^dim: dyadic points everywhere; boxes
// are dyadic cells, or a mix of dyadic and flagged general boxes when
// mix_general is set. Deterministic for a fixed seed.
inline Configuration random_configuration(std::size_t n_points, std::size_t n_regions,
                                          std::size_t dim, std::uint64_t seed,
                                          bool mix_general = false) {
  if (dim < 1) throw Error("random", "dimension must be >= 1");
  std::mt19937_64 rng(seed);
  const auto random_coord = [&]() {
    const std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 10);  // denominator 2^e
    const BigInt den = BigInt(1) << static_cast<unsigned>(e);
    const BigInt num = 2 * BigInt(static_cast<unsigned long long>(rng()) %
                                  static_cast<unsigned long long>(1ULL << (e - 1))) + 1;
    return DyadicRational(num, -e);
  };
  const auto random_interval = [&]() {
    const std::int64_t t = -static_cast<std::int64_t>(rng() % 7);  // length 2^t, t in [-6, 0]
    const long long cells = 1LL << (-t);
    return DyadicInterval(BigInt(static_cast<long long>(rng() % static_cast<std::uint64_t>(cells))), t);
  };

  Configuration cfg(dim);
  cfg.meta.generator = "random";
  cfg.meta.seed = seed;
  cfg.meta.params["n_points"] = std::to_string(n_points);
  cfg.meta.params["n_regions"] = std::to_string(n_regions);
  cfg.meta.params["mix_general"] = mix_general ? "1" : "0";

  for (std::size_t i = 0; i < n_points; ++i) {
    Point p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = random_coord();
    cfg.add_point(std::move(p));
  }
  for (std::size_t i = 0; i < n_regions; ++i) {
    if (mix_general && rng() % 2 == 0) {
      std::vector<GeneralBox::Axis> axes(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        DyadicRational a = random_coord(), b = random_coord();
        while (a == b) b = random_coord();
        if (b < a) std::swap(a, b);
        axes[j] = {a, b, rng() % 2 == 0, rng() % 2 == 0};
      }
      cfg.add_region(GeneralBox(std::move(axes)));
    } else {
      std::vector<DyadicInterval> ivs(dim);
      for (std::size_t j = 0; j < dim; ++j) ivs[j] = random_interval();
      cfg.add_region(DyadicBox(std::move(ivs)));
    }
  }
  return cfg;
}

// Random dyadic configuration thinned greedily until it is K_{k,k}-free:
// while a witness exists, drop the witness region holding the most points
// (ties to the smallest index). Reports the number of deletions.
inline Configuration generate_random(std::size_t n_points, std::size_t n_regions, std::size_t dim,
                                     std::uint64_t seed, int k, long long* deletions = nullptr) {
  if (k < 2) throw Error("random", "k must be >= 2");
  Configuration cfg = random_configuration(n_points, n_regions, dim, seed, false);
  cfg.meta.generator = "random_kfree";
  cfg.meta.params["k"] = std::to_string(k);
  long long dropped = 0;
  for (;;) {
    const IncidenceGraph g = count_incidences(cfg, "auto");
    KkWitness w;
    if (is_kk_free(g, k, &w)) break;
    int victim = -1;
    std::size_t best_degree = 0;
    for (int r : w.regions) {
      const std::size_t deg = g.region_points[static_cast<std::size_t>(r)].size();
      if (victim == -1 || deg > best_degree || (deg == best_degree && r < victim)) {
        victim = r;
        best_degree = deg;
      }
    }
    cfg.regions.erase(cfg.regions.begin() + victim);
    cfg.multiplicity.erase(cfg.multiplicity.begin() + victim);
    ++dropped;
  }
  cfg.meta.params["deleted_regions"] = std::to_string(dropped);
  if (deletions) *deletions = dropped;
  return cfg;
}

}  // namespace zlab
