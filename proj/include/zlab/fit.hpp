#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zlab/dyadic.hpp"

namespace zlab {

enum class ModelFamily { Linear, Kst, PolyLog, LogLog };

struct ModelSpec {
  ModelFamily family = ModelFamily::Linear;
  int k = 2;  // Kst
  int r = 2;  // PolyLog
  int s = 1;  // PolyLog

  std::string name() const {
    switch (family) {
      case ModelFamily::Linear: return "linear";
      case ModelFamily::Kst: return "kst_k" + std::to_string(k);
      case ModelFamily::PolyLog:
        return "polylog_r" + std::to_string(r) + "_s" + std::to_string(s);
      case ModelFamily::LogLog: return "loglog";
    }
    return "?";
  }
};

struct SeriesPoint {
  double n1 = 0, n2 = 0, edges = 0;
};

// beta(r, s) = s * (2^(r-1) - 1), computed exactly.
inline long long polylog_beta(int r, int s) {
  if (r < 2 || s < 0) throw Error("fit", "beta needs r >= 2, s >= 0");
  return static_cast<long long>(s) * ((1LL << (r - 1)) - 1);
}

inline double model_value(const ModelSpec& spec, double n1, double n2) {
  const double n = n1 + n2;
  switch (spec.family) {
    case ModelFamily::Linear:
      return n;
    case ModelFamily::Kst:
      return std::pow(n, 2.0 - 1.0 / static_cast<double>(spec.k));
    case ModelFamily::PolyLog:
      return n * std::pow(std::log(n + 1.0), static_cast<double>(polylog_beta(spec.r, spec.s)));
    case ModelFamily::LogLog: {
      const double lg = std::log(100.0 + n1);
      return n * lg / std::log(lg);
    }
  }
  return 0.0;
}

// One fitted bound shape alpha * f(n). alpha_raw minimizes the squared
// absolute residuals and drives model comparison; alpha_log is the geometric
// fit of the log-ratios, reported alongside. No residual is ever hidden.
struct BoundModel {
  ModelSpec spec;
  std::string name;
  double alpha_raw = 0, rms_raw = 0;
  double alpha_log = 0, rms_log = 0;
  std::vector<double> residuals_raw;
};

inline std::vector<BoundModel> fit_bounds(const std::vector<SeriesPoint>& series,
                                          const std::vector<ModelSpec>& specs) {
  if (series.size() < 3) throw Error("fit", "need at least 3 data points per fit");
  std::vector<BoundModel> out;
  out.reserve(specs.size());
  for (const ModelSpec& spec : specs) {
    BoundModel bm;
    bm.spec = spec;
    bm.name = spec.name();
    double sum_ff = 0, sum_fe = 0, sum_log = 0;
    for (const SeriesPoint& p : series) {
      const double f = model_value(spec, p.n1, p.n2);
      if (!(f > 0) || !(p.edges > 0))
        throw Error("fit", "model and edge values must be positive to fit");
      sum_ff += f * f;
      sum_fe += f * p.edges;
      sum_log += std::log(p.edges / f);
    }
    bm.alpha_raw = sum_fe / sum_ff;
    bm.alpha_log = std::exp(sum_log / static_cast<double>(series.size()));
    double ss_raw = 0, ss_log = 0;
    for (const SeriesPoint& p : series) {
      const double f = model_value(spec, p.n1, p.n2);
      const double res = p.edges - bm.alpha_raw * f;
      bm.residuals_raw.push_back(res);
      ss_raw += res * res;
      const double lres = std::log(p.edges / f) - std::log(bm.alpha_log);
      ss_log += lres * lres;
    }
    bm.rms_raw = std::sqrt(ss_raw / static_cast<double>(series.size()));
    bm.rms_log = std::sqrt(ss_log / static_cast<double>(series.size()));
    out.push_back(std::move(bm));
  }
  return out;
}

inline const BoundModel& best_model(const std::vector<BoundModel>& models) {
  if (models.empty()) throw Error("fit", "no models fitted");
  std::size_t best = 0;
  for (std::size_t i = 1; i < models.size(); ++i)
    if (models[i].rms_raw < models[best].rms_raw) best = i;
  return models[best];
}

}  // namespace zlab
