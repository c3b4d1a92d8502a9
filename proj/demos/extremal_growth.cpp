// Builds the iterated extremal families, counts their incidences, and fits
// the candidate bound shapes to the measured series.

#include <iostream>

#include "zlab/zlab.hpp"

int main() {
  using namespace zlab;
  std::vector<SeriesPoint> series;
  std::cout << "ell  points  boxes  incidences  K22-free\n";
  for (long long ell = 2; ell <= 4; ++ell) {
    const Configuration cfg = extremal_family(ell);
    const IncidenceGraph g = count_incidences(cfg, "auto");
    const bool free = is_kk_free(g, 2);
    std::cout << ell << "    " << cfg.points.size() << "    " << cfg.n_regions() << "    "
              << g.edges << "    " << (free ? "yes" : "NO") << "\n";
    series.push_back({static_cast<double>(cfg.points.size()),
                      static_cast<double>(cfg.n_regions()), static_cast<double>(g.edges)});
  }
  const std::vector<ModelSpec> specs = {
      {ModelFamily::Linear}, {ModelFamily::LogLog}, {ModelFamily::PolyLog, 2, 2, 1}};
  for (const BoundModel& m : fit_bounds(series, specs))
    std::cout << m.name << ": alpha=" << m.alpha_raw << " rms=" << m.rms_raw << "\n";
  return 0;
}
