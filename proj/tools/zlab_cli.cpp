// Command-line front end: generation, counting, freeness certification,
// splitting, decomposition, peeling, bound fitting and benchmarks.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zlab/zlab.hpp"

namespace {

using namespace zlab;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json run_record(const std::string& op, const Configuration& cfg, const Json& params,
                const Json& results, double wall_s) {
  Json j;
  j["op"] = op;
  j["config_digest"] = config_digest(cfg);
  j["params"] = params;
  j["n1"] = cfg.points.size();
  j["n2"] = cfg.n_regions();
  j["results"] = results;
  j["wall_seconds"] = wall_s;
  j["seed"] = cfg.meta.seed;
  return j;
}

void emit_record(const std::string& path, const Json& record) {
  if (!path.empty()) write_json_file(path, record);
}

int cmd_gen_extremal(long long ell, const std::string& out, const std::string& record) {
  const auto t0 = std::chrono::steady_clock::now();
  Configuration cfg = extremal_family(ell);
  write_json_file(out, config_to_json(cfg));
  std::cout << "wrote " << out << ": " << cfg.points.size() << " points, " << cfg.n_regions()
            << " boxes\n";
  emit_record(record, run_record("gen-extremal", cfg, Json{{"ell", ell}}, Json::object(),
                                 seconds_since(t0)));
  return 0;
}

int cmd_gen_random(std::size_t n1, std::size_t n2, std::size_t dim, std::uint64_t seed, int k,
                   const std::string& out, const std::string& record) {
  const auto t0 = std::chrono::steady_clock::now();
  long long deleted = 0;
  Configuration cfg = generate_random(n1, n2, dim, seed, k, &deleted);
  write_json_file(out, config_to_json(cfg));
  std::cout << "wrote " << out << ": " << cfg.points.size() << " points, " << cfg.n_regions()
            << " regions (" << deleted << " deleted for K_{" << k << "," << k << "}-freeness)\n";
  emit_record(record, run_record("gen-random", cfg,
                                 Json{{"n1", n1}, {"n2", n2}, {"dim", dim}, {"seed", seed}, {"k", k}},
                                 Json{{"deleted", deleted}}, seconds_since(t0)));
  return 0;
}

int cmd_count(const std::string& in, const std::string& engine, const std::string& record) {
  const auto t0 = std::chrono::steady_clock::now();
  Configuration cfg = config_from_json(read_json_file(in));
  const IncidenceGraph g = count_incidences(cfg, engine);
  std::cout << g.edges << "\n";
  emit_record(record, run_record("count", cfg, Json{{"engine", engine}},
                                 Json{{"edges", g.edges}}, seconds_since(t0)));
  return 0;
}

int cmd_check_kfree(const std::string& in, int k, const std::string& engine,
                    const std::string& record) {
  const auto t0 = std::chrono::steady_clock::now();
  Configuration cfg = config_from_json(read_json_file(in));
  KkWitness w;
  const bool free = is_kk_free(count_incidences(cfg, engine), k, &w);
  Json results;
  results["free"] = free;
  if (free) {
    std::cout << "free\n";
  } else {
    Json wj;
    wj["points"] = w.points;
    wj["regions"] = w.regions;
    results["witness"] = wj;
    std::cout << "not free\nwitness: " << wj.dump() << "\n";
  }
  emit_record(record, run_record("check-kfree", cfg, Json{{"k", k}}, results, seconds_since(t0)));
  return free ? 0 : 2;
}

int cmd_check_gridfree(const std::string& in, int k) {
  const Json j = read_json_file(in);
  GridSubset a;
  a.sizes = j.at("sizes").get<std::vector<int>>();
  for (const auto& c : j.at("cells")) a.cells.push_back(c.get<std::vector<int>>());
  GridWitness w;
  if (is_grid_free(a, k, &w)) {
    std::cout << "free\n";
    return 0;
  }
  Json wj = Json::array();
  for (const auto& ch : w.axis_choices) wj.push_back(ch);
  std::cout << "not free\nwitness: " << wj.dump() << "\n";
  return 2;
}

int cmd_split(const std::string& in, const std::string& out) {
  const Json j = read_json_file(in);
  BasicSetCert basic = basic_cert_from_json(j);
  SplitCertificate cert = coordinate_split(basic);
  if (!verify_split(basic, cert)) throw Error("internal", "emitted certificate failed to verify");
  write_json_file(out, split_cert_to_json(cert));
  std::cout << "wrote " << out << ": order on " << cert.order_size << " elements\n";
  return 0;
}

int cmd_decompose(const std::string& in, int k, const std::string& out, bool full) {
  GridComplexityCert cert = grid_cert_from_json(read_json_file(in));
  DecompositionTree tree = halving_decomposition_r2(cert, k);
  const Json j = decomposition_to_json(tree, full);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
    std::cout << "wrote " << out << ": |A|=" << tree.set_size
              << " certified=" << tree.certified_bound << " alpha_cert=" << tree.alpha_cert
              << "\n";
  }
  return 0;
}

int cmd_peel(const std::string& in, int k, double c, const std::string& trace_csv,
             const std::string& out, const std::string& record) {
  const auto t0 = std::chrono::steady_clock::now();
  Configuration cfg = config_from_json(read_json_file(in));
  PeelTrace trace = peel_run(cfg, k, c);
  if (!trace_csv.empty()) write_text_file(trace_csv, peel_trace_to_csv(trace));
  const Json j = peel_trace_to_json(trace);
  if (!out.empty()) write_json_file(out, j);
  std::cout << "peel: n1=" << trace.n1 << " m=" << trace.m << " t=" << trace.t
            << " steps=" << trace.steps.size() << " emptied=" << (trace.emptied ? "yes" : "no")
            << " sum|l|=" << trace.sum_l_total << " bound=" << trace.final_bound_rhs
            << (trace.final_bound_ok ? " (holds)" : " (violated)") << "\n";
  emit_record(record, run_record("peel", cfg, Json{{"k", k}, {"c", c}},
                                 Json{{"emptied", trace.emptied}, {"bound_ok", trace.final_bound_ok}},
                                 seconds_since(t0)));
  return 0;
}

int cmd_fit(const std::string& in, const std::vector<std::string>& model_names, int k, int r, int s,
            const std::string& svg) {
  std::istringstream is(read_text_file(in));
  const std::vector<SeriesPoint> series = series_from_csv(is);
  std::vector<ModelSpec> specs;
  for (const std::string& name : model_names) {
    if (name == "linear") specs.push_back({ModelFamily::Linear});
    else if (name == "kst") specs.push_back({ModelFamily::Kst, k});
    else if (name == "polylog") specs.push_back({ModelFamily::PolyLog, k, r, s});
    else if (name == "loglog") specs.push_back({ModelFamily::LogLog});
    else throw Error("cli", "unknown model '" + name + "'");
  }
  const std::vector<BoundModel> models = fit_bounds(series, specs);
  std::cout << "model,alpha_raw,rms_raw,alpha_log,rms_log\n";
  for (const BoundModel& m : models)
    std::cout << m.name << ',' << m.alpha_raw << ',' << m.rms_raw << ',' << m.alpha_log << ','
              << m.rms_log << "\n";
  std::cout << "best," << best_model(models).name << "\n";
  if (!svg.empty()) {
    std::vector<SvgSeries> curves;
    SvgSeries data{"measured", "#000000", {}};
    for (const SeriesPoint& p : series) data.points.push_back({p.n1 + p.n2, p.edges});
    curves.push_back(std::move(data));
    const std::vector<std::string> palette = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
    for (std::size_t i = 0; i < models.size(); ++i) {
      SvgSeries fit{models[i].name, palette[i % palette.size()], {}};
      for (const SeriesPoint& p : series)
        fit.points.push_back({p.n1 + p.n2, models[i].alpha_raw * model_value(models[i].spec, p.n1, p.n2)});
      curves.push_back(std::move(fit));
    }
    write_text_file(svg, svg_loglog_plot(curves, "incidence growth"));
    std::cout << "wrote " << svg << "\n";
  }
  return 0;
}

int cmd_bench(long long ell, std::uint64_t seed) {
  std::cout << "case,engine,n1,n2,edges,seconds\n";
  for (long long l = 2; l <= ell; ++l) {
    Configuration cfg = extremal_family(l);
    for (const std::string& engine : {std::string("brute"), std::string("sweep")}) {
      const auto t0 = std::chrono::steady_clock::now();
      const IncidenceGraph g = count_incidences(cfg, engine);
      std::cout << "extremal_" << l << ',' << engine << ',' << cfg.points.size() << ','
                << cfg.n_regions() << ',' << g.edges << ',' << seconds_since(t0) << "\n";
    }
  }
  Configuration rnd = random_configuration(400, 400, 2, seed, true);
  for (const std::string& engine : {std::string("brute"), std::string("sweep")}) {
    const auto t0 = std::chrono::steady_clock::now();
    const IncidenceGraph g = count_incidences(rnd, engine);
    std::cout << "random_400," << engine << ',' << rnd.points.size() << ',' << rnd.n_regions()
              << ',' << g.edges << ',' << seconds_since(t0) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zlab: exact point/box incidence laboratory"};
  app.require_subcommand(1);

  std::string in, out, record, trace_csv, engine = "auto", svg;
  long long ell = 3;
  std::uint64_t seed = 1;
  std::size_t n1 = 100, n2 = 100, dim = 2;
  int k = 2, r = 2, s = 1;
  double c = -1.0;
  bool full_tree = false;
  std::vector<std::string> models = {"linear", "loglog", "polylog"};

  auto* gen_extremal = app.add_subcommand("gen-extremal", "emit the iterated extremal family");
  gen_extremal->add_option("--ell", ell, "family parameter (2..6)")->required();
  gen_extremal->add_option("--out", out, "output configuration JSON")->required();
  gen_extremal->add_option("--record", record, "write a run-record JSON");

  auto* gen_random = app.add_subcommand("gen-random", "emit a random K_{k,k}-free configuration");
  gen_random->add_option("--n1", n1, "points");
  gen_random->add_option("--n2", n2, "regions before thinning");
  gen_random->add_option("--dim", dim, "dimension");
  gen_random->add_option("--seed", seed, "random seed");
  gen_random->add_option("--k", k, "freeness parameter");
  gen_random->add_option("--out", out, "output configuration JSON")->required();
  gen_random->add_option("--record", record, "write a run-record JSON");

  auto* count = app.add_subcommand("count", "count incidences");
  count->add_option("--in", in, "configuration JSON")->required();
  count->add_option("--engine", engine, "brute|sweep|auto");
  count->add_option("--record", record, "write a run-record JSON");

  auto* kfree = app.add_subcommand("check-kfree", "decide K_{k,k}-freeness");
  kfree->add_option("--in", in, "configuration JSON")->required();
  kfree->add_option("--k", k, "k");
  kfree->add_option("--engine", engine, "brute|sweep|auto");
  kfree->add_option("--record", record, "write a run-record JSON");

  auto* gridfree = app.add_subcommand("check-gridfree", "decide sub-grid freeness of an explicit set");
  gridfree->add_option("--in", in, "grid-subset JSON {sizes, cells}")->required();
  gridfree->add_option("--k", k, "k");

  auto* split = app.add_subcommand("split", "emit a coordinate-splitting certificate");
  split->add_option("--in", in, "basic-set certificate JSON")->required();
  split->add_option("--out", out, "output certificate JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "run the halving decomposition");
  decompose->add_option("--in", in, "grid-complexity certificate JSON")->required();
  decompose->add_option("--k", k, "k");
  decompose->add_option("--out", out, "output accounting JSON (stdout when omitted)");
  decompose->add_flag("--full-tree", full_tree, "include every node in the output");

  auto* peel = app.add_subcommand("peel", "run the containment-order peeling");
  peel->add_option("--in", in, "configuration JSON (dyadic rectangles)")->required();
  peel->add_option("--k", k, "k");
  peel->add_option("--c", c, "peeling constant (default 4 k (k-1)^k)");
  peel->add_option("--trace", trace_csv, "write the per-step trace CSV");
  peel->add_option("--out", out, "write the full trace JSON");
  peel->add_option("--record", record, "write a run-record JSON");

  auto* fit = app.add_subcommand("fit", "fit bound models to a series CSV");
  fit->add_option("--in", in, "series CSV (n1,n2,edges)")->required();
  fit->add_option("--model", models, "models: linear kst polylog loglog");
  fit->add_option("--k", k, "k for the kst model");
  fit->add_option("--r", r, "r for the polylog model");
  fit->add_option("--s", s, "s for the polylog model");
  fit->add_option("--svg", svg, "write a log-log plot SVG");

  auto* bench = app.add_subcommand("bench", "time the incidence engines");
  bench->add_option("--ell", ell, "largest extremal family to time");
  bench->add_option("--seed", seed, "random-benchmark seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_extremal->parsed()) return cmd_gen_extremal(ell, out, record);
    if (gen_random->parsed()) return cmd_gen_random(n1, n2, dim, seed, k, out, record);
    if (count->parsed()) return cmd_count(in, engine, record);
    if (kfree->parsed()) return cmd_check_kfree(in, k, engine, record);
    if (gridfree->parsed()) return cmd_check_gridfree(in, k);
    if (split->parsed()) return cmd_split(in, out);
    if (decompose->parsed()) return cmd_decompose(in, k, out, full_tree);
    if (peel->parsed()) {
      const int d = k - 1;
      if (c <= 0) c = 4.0 * k * std::pow(static_cast<double>(d), k);
      return cmd_peel(in, k, c, trace_csv, out, record);
    }
    if (fit->parsed()) return cmd_fit(in, models, k, r, s, svg);
    if (bench->parsed()) return cmd_bench(ell, seed);
  } catch (const zlab::Error& e) {
    zlab::Json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    zlab::Json err;
    err["error"] = "exception";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
