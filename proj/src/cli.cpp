#include "splinedim/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "splinedim/bounds.hpp"
#include "splinedim/mesh.hpp"
#include "splinedim/oracle.hpp"
#include "splinedim/ordering.hpp"
#include "splinedim/refine.hpp"
#include "splinedim/report.hpp"

namespace splinedim {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw MeshError("cannot write file: " + out_path);
  file << text;
}

struct KRange {
  int lo = 0;
  int hi = 0;
};

KRange parse_k_range(const std::string& text) {
  KRange range;
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      range.lo = range.hi = std::stoi(text);
    } else {
      range.lo = std::stoi(text.substr(0, dots));
      range.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse k range \"" + text +
                                "\" (expected K or A..B)");
  }
  if (range.lo > range.hi) {
    throw std::invalid_argument("empty k range \"" + text + "\"");
  }
  if (range.hi > 1'000'000) {
    throw std::invalid_argument("degree cap is 1000000 (got " +
                                std::to_string(range.hi) + ")");
  }
  return range;
}

std::vector<int> read_ordering_file(const std::string& path) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (doc.contains("ordering")) {
      list = &doc["ordering"];
    } else if (doc.contains("suggested_ordering")) {
      list = &doc["suggested_ordering"];
    }
  }
  if (!list->is_array()) {
    throw MeshError("ordering file must be a JSON array of vertex indices");
  }
  std::vector<int> ordering;
  for (const auto& entry : *list) {
    if (!entry.is_number_integer()) {
      throw MeshError("ordering file must contain integers only");
    }
    ordering.push_back(entry.get<int>());
  }
  return ordering;
}

int cmd_validate(const std::string& path, OutputFormat format,
                 const std::string& out_path, std::ostream& out) {
  const std::string text = read_file(path);
  Triangulation t;
  ValidationReport report;
  try {
    // Build without validating so the full report can be shown.
    nlohmann::json mesh = nlohmann::json::parse(text);
    std::vector<Point2> vertices;
    for (const auto& entry : mesh.at("vertices")) {
      vertices.push_back(Point2{parse_rational(entry.at(0).get<std::string>()),
                                parse_rational(entry.at(1).get<std::string>())});
    }
    std::vector<std::array<int, 3>> triangles;
    for (const auto& entry : mesh.at("triangles")) {
      triangles.push_back(
          {entry.at(0).get<int>(), entry.at(1).get<int>(), entry.at(2).get<int>()});
    }
    t = build_triangulation(std::move(vertices), std::move(triangles));
    report = validate_disk(t);
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("mesh file is not valid JSON: ") + e.what());
  }

  std::ostringstream os;
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["valid"] = report.ok();
    j["failures"] = report.failures;
    j["note"] = report.note;
    if (report.ok()) {
      j["f_vector"] = {{"f0", t.f0()},
                       {"f1", t.f1()},
                       {"f2", t.f2()},
                       {"f0_interior", t.f0_interior()},
                       {"f1_interior", t.f1_interior()},
                       {"f0_boundary", t.f0_boundary()},
                       {"f1_boundary", t.f1_boundary()}};
    }
    os << j.dump(2) << "\n";
  } else {
    os << report.summary() << "\n";
    os << "note: " << report.note << "\n";
  }
  write_output(os.str(), out_path, out);
  return report.ok() ? kExitOk : kExitUsageOrInput;
}

int cmd_stats(const std::string& path, OutputFormat format,
              const std::string& out_path, std::ostream& out) {
  const Triangulation t = parse_triangulation(read_file(path));
  std::ostringstream os;
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["f0"] = t.f0();
    j["f1"] = t.f1();
    j["f2"] = t.f2();
    j["f0_interior"] = t.f0_interior();
    j["f1_interior"] = t.f1_interior();
    j["f0_boundary"] = t.f0_boundary();
    j["f1_boundary"] = t.f1_boundary();
    auto& per_vertex = j["interior_vertices"] = nlohmann::ordered_json::array();
    for (int v : t.interior_vertices) {
      per_vertex.push_back({{"vertex", v},
                            {"degree", t.vertex_edges[v].size()},
                            {"slope_count", slope_count(t, v)}});
    }
    os << j.dump(2) << "\n";
  } else {
    os << "f0=" << t.f0() << " f1=" << t.f1() << " f2=" << t.f2()
       << " f0_interior=" << t.f0_interior()
       << " f1_interior=" << t.f1_interior()
       << " f0_boundary=" << t.f0_boundary()
       << " f1_boundary=" << t.f1_boundary() << "\n";
    for (int v : t.interior_vertices) {
      os << "interior vertex " << v << ": degree " << t.vertex_edges[v].size()
         << ", slopes t=" << slope_count(t, v) << "\n";
    }
  }
  write_output(os.str(), out_path, out);
  return kExitOk;
}

struct BoundsOptions {
  int r = 0;
  KRange krange;
  std::string order = "exhaustive";  // exhaustive | greedy | <ordering file>
  bool oracle = false;
  std::uint64_t seed = 0;
};

int cmd_bounds(const std::string& path, const BoundsOptions& options,
               OutputFormat format, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  if (options.r < 0 || options.r > options.krange.lo) {
    err << "usage error: need 0 <= r <= k (r=" << options.r
        << ", k starts at " << options.krange.lo << ")\n";
    return kExitUsageOrInput;
  }
  const Triangulation t = parse_triangulation(read_file(path));

  std::optional<std::vector<int>> supplied;
  MinimizeStrategy strategy = MinimizeStrategy::Auto;
  if (options.order == "exhaustive") {
    strategy = MinimizeStrategy::Exhaustive;
    if (t.f0_interior() > 9) {
      err << "exhaustive ordering search not feasible for "
          << t.f0_interior() << " interior vertices; use --order greedy\n";
      return kExitUsageOrInput;
    }
  } else if (options.order == "greedy") {
    strategy = MinimizeStrategy::Greedy;
  } else {
    supplied = read_ordering_file(options.order);
  }

  std::vector<BoundReport> reports;
  for (int k = options.krange.lo; k <= options.krange.hi; ++k) {
    BoundReport report;
    report.r = options.r;
    report.k = k;
    report.lbh = lower_bound_hom(t, options.r, k);
    report.lbs = schumaker_lower(t, options.r, k);
    report.trivial_floor = binom2(k + 2);

    if (supplied) {
      const OrderedStats stats = tilde_slope_counts(t, *supplied);
      report.ubh_for_ordering = upper_bound_hom(t, stats, options.r, k);
      report.ordering_has_zero_tilde = stats.has_zero_tilde();
      if (is_schumaker_ordering(t, *supplied)) {
        report.ubs_for_ordering = schumaker_upper(t, stats, options.r, k);
      }
      report.exactness_certified = exactness_certificate(t, *supplied, options.r);
    } else {
      const MinimizeResult best =
          minimize_upper_bound(t, options.r, k, strategy, 200000, options.seed);
      report.best_ubh = best.value;
      if (!best.ordering.empty() || t.f0_interior() == 0) {
        const OrderedStats stats = tilde_slope_counts(t, best.ordering);
        report.ubh_for_ordering = best.value;
        report.ordering_has_zero_tilde = stats.has_zero_tilde();
        if (is_schumaker_ordering(t, best.ordering)) {
          report.ubs_for_ordering = schumaker_upper(t, stats, options.r, k);
        }
        report.exactness_certified =
            exactness_certificate(t, best.ordering, options.r);
      }
    }

    if (options.oracle) {
      report.oracle_dim = spline_dimension(t, options.r, k);
      report.homology_defect = *report.oracle_dim - report.lbh;
    }
    report.check_invariants();
    reports.push_back(report);
  }
  write_output(render_reports(reports, format), out_path, out);
  return kExitOk;
}

int cmd_oracle(const std::string& path, int r, const KRange& krange,
               OutputFormat format, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  if (r < 0 || r > krange.lo) {
    err << "usage error: need 0 <= r <= k\n";
    return kExitUsageOrInput;
  }
  const Triangulation t = parse_triangulation(read_file(path));
  std::vector<BoundReport> reports;
  for (int k = krange.lo; k <= krange.hi; ++k) {
    BoundReport report;
    report.r = r;
    report.k = k;
    report.lbh = lower_bound_hom(t, r, k);
    report.lbs = schumaker_lower(t, r, k);
    report.trivial_floor = binom2(k + 2);
    report.oracle_dim = spline_dimension(t, r, k);
    report.homology_defect = *report.oracle_dim - report.lbh;
    report.check_invariants();
    reports.push_back(report);
  }
  write_output(render_reports(reports, format), out_path, out);
  return kExitOk;
}

int cmd_certify(const std::string& path, int r, const std::string& ordering_path,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  if (r < 0) {
    err << "usage error: need r >= 0\n";
    return kExitUsageOrInput;
  }
  const Triangulation t = parse_triangulation(read_file(path));
  std::vector<int> ordering;
  if (!ordering_path.empty()) {
    ordering = read_ordering_file(ordering_path);
  } else {
    ordering = find_certifying_ordering(t, r);
    if (ordering.empty() && t.f0_interior() > 0) {
      write_output(
          "no certifying ordering found (search incomplete, existence unknown)\n",
          out_path, out);
      return kExitOk;
    }
  }

  const bool certified = exactness_certificate(t, ordering, r);
  std::ostringstream os;
  if (certified) {
    // Certified means the bounds agree at every degree; spot-check a few.
    for (int k = r; k <= r + 4; ++k) {
      const long long lbh = lower_bound_hom(t, r, k);
      const long long ubh = upper_bound_hom(t, ordering, r, k);
      if (lbh != ubh) {
        throw InternalInconsistencyError(
            "certificate holds but bounds disagree at k=" + std::to_string(k));
      }
    }
    os << "exactness certified: dim C^r_k equals the lower bound for all k >= r\n";
    os << "ordering:";
    for (int v : ordering) os << ' ' << v;
    os << "\n";
  } else {
    os << "not certified for this ordering\n";
  }
  write_output(os.str(), out_path, out);
  return kExitOk;
}

int cmd_refine(const std::string& path, const std::string& scheme,
               const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const Triangulation t = parse_triangulation(read_file(path));
  RefinementRecord record;
  std::vector<std::pair<std::string, std::vector<int>>> extra;
  if (scheme == "ps12") {
    record = ps12_split(t);
  } else if (scheme == "ps6") {
    record = ps6_split(t);
    extra.emplace_back("suggested_ordering", ps6_peeled_numbering(record, t));
  } else {
    err << "unknown scheme \"" << scheme << "\" (expected ps6 or ps12)\n";
    return kExitUsageOrInput;
  }
  const ValidationReport report = validate_disk(record.child);
  if (!report.ok()) {
    throw InternalInconsistencyError("refinement produced an invalid mesh: " +
                                     report.summary());
  }
  extra.emplace_back("parent_of_triangle", record.parent_of_triangle);
  write_output(write_mesh_json(record.child, extra), out_path, out);
  return kExitOk;
}

int cmd_order(const std::string& path, const std::string& strategy, int r, int k,
              std::uint64_t seed, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const Triangulation t = parse_triangulation(read_file(path));
  std::ostringstream os;
  if (strategy == "schumaker-search") {
    const SchumakerSearchResult result = find_schumaker_ordering(t);
    switch (result.outcome) {
      case SearchOutcome::Found:
        os << "schumaker ordering found:";
        for (int v : result.ordering) os << ' ' << v;
        os << "\n";
        break;
      case SearchOutcome::NoneExists:
        os << "no Schumaker-valid ordering exists\n";
        break;
      case SearchOutcome::BudgetExhausted:
        os << "search budget exhausted; existence unknown\n";
        break;
    }
  } else if (strategy == "exhaustive" || strategy == "greedy") {
    if (r < 0 || r > k) {
      err << "usage error: need 0 <= r <= k\n";
      return kExitUsageOrInput;
    }
    if (strategy == "exhaustive" && t.f0_interior() > 9) {
      err << "exhaustive ordering search not feasible for "
          << t.f0_interior() << " interior vertices; use greedy\n";
      return kExitUsageOrInput;
    }
    const MinimizeResult result = minimize_upper_bound(
        t, r, k,
        strategy == "exhaustive" ? MinimizeStrategy::Exhaustive
                                 : MinimizeStrategy::Greedy,
        200000, seed);
    os << "ordering:";
    for (int v : result.ordering) os << ' ' << v;
    os << "\nupper bound (r=" << r << ", k=" << k << "): " << result.value
       << (result.exhaustive ? " [exhaustive minimum]" : " [heuristic]") << "\n";
  } else {
    err << "unknown strategy \"" << strategy
        << "\" (expected exhaustive, greedy or schumaker-search)\n";
    return kExitUsageOrInput;
  }
  write_output(os.str(), out_path, out);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "validate") {
      return cmd_validate(config.mesh_path, config.format, config.out_path, out);
    }
    if (config.command == "stats") {
      return cmd_stats(config.mesh_path, config.format, config.out_path, out);
    }
    if (config.command == "bounds") {
      BoundsOptions options;
      options.r = config.r;
      options.krange = {config.k_min, config.k_max};
      options.order = config.order;
      options.oracle = config.oracle;
      options.seed = config.seed;
      return cmd_bounds(config.mesh_path, options, config.format,
                        config.out_path, out, err);
    }
    if (config.command == "oracle") {
      return cmd_oracle(config.mesh_path, config.r, {config.k_min, config.k_max},
                        config.format, config.out_path, out, err);
    }
    if (config.command == "certify") {
      return cmd_certify(config.mesh_path, config.r, config.ordering_path,
                         config.out_path, out, err);
    }
    if (config.command == "refine") {
      return cmd_refine(config.mesh_path, config.scheme, config.out_path, out, err);
    }
    if (config.command == "order") {
      return cmd_order(config.mesh_path, config.strategy, config.r, config.k_min,
                       config.seed, config.out_path, out, err);
    }
    err << "unknown command \"" << config.command << "\"\n";
    return kExitUsageOrInput;
  } catch (const InternalInconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageOrInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"dimension bounds for bivariate spline spaces over planar "
               "triangulations"};
  app.require_subcommand(1);

  std::string mesh_path, out_path, format_name = "table";
  std::string order = "exhaustive", strategy = "greedy", scheme, ordering_path;
  std::string k_text = "0";
  int r = 0;
  bool oracle = false;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("mesh", mesh_path, "mesh file (JSON)")->required();
    cmd->add_option("--out", out_path, "write output to this path");
    if (with_format) {
      cmd->add_option("--format", format_name, "table | json | csv");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "check the disk invariants");
  add_common(validate);

  CLI::App* stats = app.add_subcommand("stats", "f-vector and slope counts");
  add_common(stats);

  CLI::App* bounds = app.add_subcommand("bounds", "bound table over a k range");
  add_common(bounds);
  bounds->add_option("--r", r, "smoothness order")->required();
  bounds->add_option("--k", k_text, "degree K or range A..B")->required();
  bounds->add_option("--order", order, "exhaustive | greedy | ordering file");
  bounds->add_flag("--oracle", oracle, "also run the exact dimension oracle");
  bounds->add_option("--seed", seed, "seed for randomized search restarts");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact dimension by rank");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--r", r, "smoothness order")->required();
  oracle_cmd->add_option("--k", k_text, "degree K or range A..B")->required();

  CLI::App* certify = app.add_subcommand(
      "certify", "certify that upper and lower bounds agree at every degree");
  add_common(certify, false);
  certify->add_option("--r", r, "smoothness order")->required();
  certify->add_option("--ordering", ordering_path, "ordering file (JSON array)");

  CLI::App* refine = app.add_subcommand("refine", "Powell-Sabin refinements");
  add_common(refine, false);
  refine->add_option("--scheme", scheme, "ps6 | ps12")->required();

  CLI::App* order_cmd = app.add_subcommand("order", "ordering search");
  add_common(order_cmd, false);
  order_cmd->add_option("--strategy", strategy,
                        "exhaustive | greedy | schumaker-search");
  order_cmd->add_option("--r", r, "smoothness order");
  order_cmd->add_option("--k", k_text, "degree");
  order_cmd->add_option("--seed", seed, "seed for randomized search restarts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageOrInput;
  }

  RunConfig config;
  config.mesh_path = mesh_path;
  config.r = r;
  config.order = order;
  config.strategy = strategy;
  config.scheme = scheme;
  config.ordering_path = ordering_path;
  config.oracle = oracle;
  config.seed = seed;
  config.out_path = out_path;
  try {
    config.format = parse_format(format_name);
    const KRange krange = parse_k_range(k_text);
    config.k_min = krange.lo;
    config.k_max = krange.hi;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageOrInput;
  }
  for (const CLI::App* cmd : {validate, stats, bounds, oracle_cmd, certify,
                              refine, order_cmd}) {
    if (cmd->parsed()) config.command = cmd->get_name();
  }
  return run(config, out, err);
}

}  // namespace splinedim
