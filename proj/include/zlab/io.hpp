#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zlab/config.hpp"
#include "zlab/fit.hpp"
#include "zlab/grid.hpp"
#include "zlab/halving.hpp"
#include "zlab/peel.hpp"
#include "zlab/split.hpp"

namespace zlab {

using Json = nlohmann::ordered_json;

// ---- exact integer fields ----
// Mantissas are arbitrary precision, so they travel as decimal strings; plain
// JSON integers are accepted on input for convenience.

inline Json bigint_to_json(const BigInt& v) { return Json(v.str()); }

inline BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error("io", "expected an integer or a decimal string");
}

inline Json dyadic_to_json(const DyadicRational& v) {
  return Json::array({bigint_to_json(v.mantissa()), v.exponent()});
}

inline DyadicRational dyadic_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("io", "dyadic value must be [mantissa, exponent]");
  return DyadicRational(bigint_from_json(j[0]), j[1].get<std::int64_t>());
}

inline Json interval_to_json(const DyadicInterval& iv) {
  return Json::array({bigint_to_json(iv.s), iv.t});
}

inline DyadicInterval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("io", "dyadic interval must be [s, t]");
  return DyadicInterval(bigint_from_json(j[0]), j[1].get<std::int64_t>());
}

// ---- configurations ----

inline Json region_to_json(const Region& r, int mult) {
  Json j;
  j["type"] = region_kind(r);
  j["mult"] = mult;
  if (const auto* db = std::get_if<DyadicBox>(&r)) {
    Json ivs = Json::array();
    for (const DyadicInterval& iv : db->intervals) ivs.push_back(interval_to_json(iv));
    j["intervals"] = std::move(ivs);
  } else if (const auto* gb = std::get_if<GeneralBox>(&r)) {
    Json axes = Json::array();
    for (const GeneralBox::Axis& ax : gb->axes) {
      Json a;
      a["lo"] = dyadic_to_json(ax.lo);
      a["hi"] = dyadic_to_json(ax.hi);
      a["lo_closed"] = ax.lo_closed;
      a["hi_closed"] = ax.hi_closed;
      axes.push_back(std::move(a));
    }
    j["axes"] = std::move(axes);
  } else {
    const auto& tp = std::get<TranslatePolytope>(r);
    j["dim"] = tp.dimension;
    Json hs = Json::array();
    for (const TranslatePolytope::HalfSpace& h : tp.halfspaces) {
      Json a;
      Json normal = Json::array(), translation = Json::array();
      for (const DyadicRational& v : h.normal) normal.push_back(dyadic_to_json(v));
      for (const DyadicRational& v : h.translation) translation.push_back(dyadic_to_json(v));
      a["normal"] = std::move(normal);
      a["offset"] = dyadic_to_json(h.offset);
      a["strict"] = h.strict;
      a["translation"] = std::move(translation);
      hs.push_back(std::move(a));
    }
    j["halfspaces"] = std::move(hs);
  }
  return j;
}

inline std::pair<Region, int> region_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  const int mult = j.value("mult", 1);
  if (type == "dyadic_box") {
    std::vector<DyadicInterval> ivs;
    for (const Json& iv : j.at("intervals")) ivs.push_back(interval_from_json(iv));
    return {DyadicBox(std::move(ivs)), mult};
  }
  if (type == "general_box") {
    std::vector<GeneralBox::Axis> axes;
    for (const Json& a : j.at("axes"))
      axes.push_back({dyadic_from_json(a.at("lo")), dyadic_from_json(a.at("hi")),
                      a.at("lo_closed").get<bool>(), a.at("hi_closed").get<bool>()});
    return {GeneralBox(std::move(axes)), mult};
  }
  if (type == "translate_polytope") {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<TranslatePolytope::HalfSpace> hs;
    for (const Json& a : j.at("halfspaces")) {
      TranslatePolytope::HalfSpace h;
      for (const Json& v : a.at("normal")) h.normal.push_back(dyadic_from_json(v));
      h.offset = dyadic_from_json(a.at("offset"));
      h.strict = a.at("strict").get<bool>();
      for (const Json& v : a.at("translation")) h.translation.push_back(dyadic_from_json(v));
      hs.push_back(std::move(h));
    }
    return {TranslatePolytope(std::move(hs), dim), mult};
  }
  throw Error("io", "unknown region type '" + type + "'");
}

inline Json config_to_json(const Configuration& cfg) {
  Json j;
  j["format"] = "zlab-config";
  j["version"] = 1;
  j["dim"] = cfg.dim;
  Json meta;
  meta["generator"] = cfg.meta.generator;
  meta["seed"] = cfg.meta.seed;
  Json params;
  for (const auto& [k, v] : cfg.meta.params) params[k] = v;
  meta["params"] = std::move(params);
  j["meta"] = std::move(meta);
  Json pts = Json::array();
  for (const Point& p : cfg.points) {
    Json coords = Json::array();
    for (const DyadicRational& v : p) coords.push_back(dyadic_to_json(v));
    pts.push_back(std::move(coords));
  }
  j["points"] = std::move(pts);
  Json regs = Json::array();
  for (std::size_t r = 0; r < cfg.regions.size(); ++r)
    regs.push_back(region_to_json(cfg.regions[r], cfg.multiplicity[r]));
  j["regions"] = std::move(regs);
  return j;
}

inline Configuration config_from_json(const Json& j) {
  if (j.value("format", "") != "zlab-config") throw Error("io", "not a zlab-config document");
  Configuration cfg(j.at("dim").get<std::size_t>());
  if (j.contains("meta")) {
    const Json& meta = j["meta"];
    cfg.meta.generator = meta.value("generator", "unspecified");
    cfg.meta.seed = meta.value("seed", 0ULL);
    if (meta.contains("params"))
      for (const auto& [k, v] : meta["params"].items())
        cfg.meta.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  for (const Json& p : j.at("points")) {
    Point pt;
    for (const Json& v : p) pt.push_back(dyadic_from_json(v));
    cfg.add_point(std::move(pt));
  }
  for (const Json& r : j.at("regions")) {
    auto [region, mult] = region_from_json(r);
    cfg.add_region(std::move(region), mult);
  }
  return cfg;
}

// ---- grids, tables, certificates ----

inline Json table_to_json(const MonotoneTable& t) {
  Json j;
  j["format"] = "zlab-table";
  j["sizes"] = t.grid.sizes;
  j["values"] = t.values;
  return j;
}

inline MonotoneTable table_from_json(const Json& j) {
  if (j.value("format", "") != "zlab-table" && !j.contains("sizes"))
    throw Error("io", "not a zlab-table document");
  return MonotoneTable(FiniteGrid(j.at("sizes").get<std::vector<int>>()),
                       j.at("values").get<std::vector<long long>>());
}

inline Json basic_cert_to_json(const BasicSetCert& c) {
  Json j = table_to_json(c.table);
  j["format"] = "zlab-basic-cert";
  j["threshold"] = c.threshold;
  j["strictness"] = strictness_name(c.strictness);
  return j;
}

inline BasicSetCert basic_cert_from_json(const Json& j) {
  BasicSetCert c;
  c.table = MonotoneTable(FiniteGrid(j.at("sizes").get<std::vector<int>>()),
                          j.at("values").get<std::vector<long long>>());
  c.threshold = j.at("threshold").get<long long>();
  c.strictness = strictness_from_name(j.at("strictness").get<std::string>());
  return c;
}

inline Json grid_cert_to_json(const GridComplexityCert& c) {
  Json j;
  j["format"] = "zlab-grid-cert";
  j["sizes"] = c.grid.sizes;
  Json basics = Json::array();
  for (const BasicSetCert& b : c.basics) {
    Json bj;
    bj["values"] = b.table.values;
    bj["threshold"] = b.threshold;
    bj["strictness"] = strictness_name(b.strictness);
    basics.push_back(std::move(bj));
  }
  j["basics"] = std::move(basics);
  return j;
}

inline GridComplexityCert grid_cert_from_json(const Json& j) {
  if (j.value("format", "") != "zlab-grid-cert") throw Error("io", "not a zlab-grid-cert document");
  FiniteGrid grid(j.at("sizes").get<std::vector<int>>());
  std::vector<BasicSetCert> basics;
  for (const Json& bj : j.at("basics")) {
    BasicSetCert b;
    b.table = MonotoneTable(grid, bj.at("values").get<std::vector<long long>>());
    b.threshold = bj.at("threshold").get<long long>();
    b.strictness = strictness_from_name(bj.at("strictness").get<std::string>());
    basics.push_back(std::move(b));
  }
  return GridComplexityCert(std::move(grid), std::move(basics));
}

inline Json split_cert_to_json(const SplitCertificate& c) {
  Json j;
  j["format"] = "zlab-split-cert";
  j["sizes"] = c.sizes;
  j["order_size"] = c.order_size;
  j["fr_map"] = c.fr_map;
  j["fr_last"] = c.fr_last;
  return j;
}

inline SplitCertificate split_cert_from_json(const Json& j) {
  if (j.value("format", "") != "zlab-split-cert")
    throw Error("io", "not a zlab-split-cert document");
  SplitCertificate c;
  c.sizes = j.at("sizes").get<std::vector<int>>();
  c.order_size = j.at("order_size").get<long long>();
  c.fr_map = j.at("fr_map").get<std::vector<long long>>();
  c.fr_last = j.at("fr_last").get<std::vector<long long>>();
  return c;
}

inline Json decomposition_to_json(const DecompositionTree& t, bool full_tree = false) {
  Json j;
  j["format"] = "zlab-decomposition";
  j["k"] = t.k;
  j["s"] = t.s;
  j["n"] = t.n;
  j["set_size"] = t.set_size;
  j["certified_bound"] = t.certified_bound;
  j["alpha_set"] = t.alpha_set;
  j["alpha_cert"] = t.alpha_cert;
  j["max_halving_depth"] = t.max_halving_depth;
  j["max_strip_depth"] = t.max_strip_depth;
  j["node_count"] = t.nodes.size();
  long long leaves = 0;
  for (const DecompNode& n : t.nodes) leaves += n.leaf ? 1 : 0;
  j["leaf_count"] = leaves;
  if (full_tree) {
    Json nodes = Json::array();
    for (const DecompNode& n : t.nodes) {
      Json nj;
      nj["kind"] = node_kind_name(n.kind);
      nj["active"] = n.active;
      nj["halving_depth"] = n.halving_depth;
      nj["strip_depth"] = n.strip_depth;
      if (n.leaf) {
        nj["b1"] = n.b1;
        nj["b2"] = n.b2;
        nj["size"] = n.leaf_size;
        nj["bound"] = n.leaf_bound;
      } else {
        nj["pivot"] = n.pivot;
        nj["children"] = n.children;
      }
      nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
  }
  return j;
}

// ---- peel traces ----

inline Json peel_trace_to_json(const PeelTrace& t) {
  Json j;
  j["format"] = "zlab-peel-trace";
  j["k"] = t.k;
  j["d"] = t.d;
  j["c"] = t.c;
  j["m"] = t.m;
  j["t"] = t.t;
  j["n1"] = t.n1;
  j["lines"] = t.n_lines;
  j["sum_l_total"] = t.sum_l_total;
  j["termination_guaranteed"] = t.termination_guaranteed;
  j["emptied"] = t.emptied;
  j["emptied_after"] = t.emptied_after;
  j["chain_sizes"] = t.chain_sizes;
  j["final_bound_rhs"] = t.final_bound_rhs;
  j["final_bound_ok"] = t.final_bound_ok;
  Json pre;
  pre["rects_before"] = t.preprocess.rects_before;
  pre["rects_after"] = t.preprocess.rects_after;
  pre["chain_removed_copies"] = t.preprocess.chain_removed_copies;
  pre["chain_removed_incidences"] = t.preprocess.chain_removed_incidences;
  pre["chain_removal_bound"] = t.preprocess.chain_removal_bound;
  pre["dedup_dropped_copies"] = t.preprocess.dedup_dropped_copies;
  pre["dedup_dropped_incidences"] = t.preprocess.dedup_dropped_incidences;
  pre["incidences_before"] = t.preprocess.incidences_before;
  pre["incidences_after"] = t.preprocess.incidences_after;
  j["preprocess"] = std::move(pre);
  Json steps = Json::array();
  for (const PeelStepRecord& s : t.steps) {
    Json sj;
    sj["size_p"] = s.size_p;
    sj["size_p_next"] = s.size_p_next;
    sj["sum_l_p"] = s.sum_l_p;
    sj["sum_l_p_next"] = s.sum_l_p_next;
    sj["low_incidences"] = s.low_incidences;
    sj["rhs"] = s.rhs;
    sj["ok"] = s.inequality_ok;
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  return j;
}

// Schema: zlab-peel-trace-csv v1. Comment preamble carries the run
// parameters; one row per peeling step.
inline std::string peel_trace_to_csv(const PeelTrace& t) {
  std::ostringstream os;
  os << "# zlab-peel-trace-csv v1\n";
  os << "# k=" << t.k << " d=" << t.d << " c=" << t.c << " m=" << std::setprecision(17) << t.m
     << " t=" << t.t << " n1=" << t.n1 << " lines=" << t.n_lines
     << " sum_l_total=" << t.sum_l_total
     << " termination_guaranteed=" << (t.termination_guaranteed ? 1 : 0)
     << " emptied=" << (t.emptied ? 1 : 0) << " final_bound_rhs=" << t.final_bound_rhs
     << " final_bound_ok=" << (t.final_bound_ok ? 1 : 0) << "\n";
  os << "step,size_p,size_p_next,sum_l_p,sum_l_p_next,low_incidences,rhs,ok\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const PeelStepRecord& s = t.steps[i];
    os << i << ',' << s.size_p << ',' << s.size_p_next << ',' << s.sum_l_p << ','
       << s.sum_l_p_next << ',' << s.low_incidences << ',' << std::setprecision(17) << s.rhs
       << ',' << (s.inequality_ok ? 1 : 0) << "\n";
  }
  return os.str();
}

// Schema: zlab-series-csv v1: header n1,n2,edges then one row per instance.
inline std::string series_to_csv(const std::vector<SeriesPoint>& series) {
  std::ostringstream os;
  os << "n1,n2,edges\n";
  for (const SeriesPoint& p : series)
    os << std::setprecision(17) << p.n1 << ',' << p.n2 << ',' << p.edges << "\n";
  return os.str();
}

inline std::vector<SeriesPoint> series_from_csv(std::istream& in) {
  std::vector<SeriesPoint> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n1", 0) == 0) continue;
    std::istringstream ls(line);
    SeriesPoint p;
    char comma;
    if (ls >> p.n1 >> comma >> p.n2 >> comma >> p.edges) out.push_back(p);
  }
  return out;
}

// ---- files, digests ----

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("io", "cannot open '" + path + "' for writing");
  f << content;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("io", "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline Json read_json_file(const std::string& path) {
  return Json::parse(read_text_file(path));
}

inline void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// FNV-1a over the canonical serialization.
inline std::string digest_of(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string config_digest(const Configuration& cfg) {
  return digest_of(config_to_json(cfg).dump());
}

// ---- minimal SVG scatter/line plot for fit results ----

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<std::pair<double, double>> points;  // (x, y), plotted in log-log
};

inline std::string svg_loglog_plot(const std::vector<SvgSeries>& series, const std::string& title) {
  const double width = 640, height = 480, margin = 56;
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const SvgSeries& s : series)
    for (const auto& [x, y] : s.points) {
      const double lx = std::log10(x), ly = std::log10(y);
      min_x = std::min(min_x, lx);
      max_x = std::max(max_x, lx);
      min_y = std::min(min_y, ly);
      max_y = std::max(max_y, ly);
    }
  if (min_x >= max_x) max_x = min_x + 1;
  if (min_y >= max_y) max_y = min_y + 1;
  const auto px = [&](double x) {
    return margin + (std::log10(x) - min_x) / (max_x - min_x) * (width - 2 * margin);
  };
  const auto py = [&](double y) {
    return height - margin - (std::log10(y) - min_y) / (max_y - min_y) * (height - 2 * margin);
  };
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
     << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
     << "</text>\n";
  os << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
     << "' y2='" << height - margin << "' stroke='black'/>\n";
  os << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
     << height - margin << "' stroke='black'/>\n";
  double legend_y = margin;
  for (const SvgSeries& s : series) {
    os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : s.points) os << px(x) << ',' << py(y) << ' ';
    os << "'/>\n";
    for (const auto& [x, y] : s.points)
      os << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='3' fill='" << s.color
         << "'/>\n";
    os << "<text x='" << width - margin + 4 << "' y='" << legend_y << "' font-size='11' fill='"
       << s.color << "'>" << s.label << "</text>\n";
    legend_y += 14;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zlab
