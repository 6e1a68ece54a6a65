#include "helixkit/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "helixkit/helix.hpp"
#include "helixkit/hypersurf.hpp"
#include "helixkit/io.hpp"
#include "helixkit/numeric.hpp"

namespace helixkit::cli {

using io::Json;

namespace {

struct Config {
  std::string input;
  int grid = 512;
  double tol_axis = kDefaultTolAxis;
  double tol_const = kDefaultTolConst;
  double tol_hint = kDefaultTolHint;
  double eps_curv = kCurvatureEps;
  double margin = 0.02;
  std::string format = "json";
  std::string output;
  std::string axis_hint;
  std::string report;
  bool both = false;
  int count = 0;
  unsigned seed = 1;
  double length = 5.0;
};

// A failure the user caused with a bad file or flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App& cmd, Config& cfg) {
  cmd.add_option("input", cfg.input, "Input JSON file")->required();
  cmd.add_option("--grid", cfg.grid, "Number of analysis samples")->check(CLI::Range(16, 1 << 24));
  cmd.add_option("--margin", cfg.margin, "Fraction of the domain trimmed from each end")
      ->check(CLI::Range(0.0, 0.49));
  cmd.add_option("--output,-o", cfg.output, "Write to this file instead of stdout");
}

void add_classify(CLI::App& cmd, Config& cfg) {
  cmd.add_option("--tol-axis", cfg.tol_axis, "Max angular spread of the axis field (rad)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tol-const", cfg.tol_const, "Max relative std of the tested scalar")->check(CLI::PositiveNumber);
  cmd.add_option("--tol-hint", cfg.tol_hint, "Max std of the axis-hint inner products")->check(CLI::PositiveNumber);
  cmd.add_option("--eps-curv", cfg.eps_curv, "Curvature below which the frame is degenerate")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--axis-hint", cfg.axis_hint, "Candidate axis x,y,z[,...] for direct tests");
}

std::optional<Vec> parse_hint(const std::string& text, int dim) {
  if (text.empty()) return std::nullopt;
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--axis-hint: cannot read \"" + item + "\" as a number");
    }
  }
  if (static_cast<int>(xs.size()) != dim)
    throw UsageError("--axis-hint needs " + std::to_string(dim) + " components");
  Vec v = Eigen::Map<Vec>(xs.data(), dim);
  if (!(v.norm() > 0)) throw UsageError("--axis-hint must be non-zero");
  return v.normalized();
}

ClassifyOptions classify_options(const Config& cfg, int dim) {
  ClassifyOptions o;
  o.grid = cfg.grid;
  o.margin = cfg.margin;
  o.tol_axis = cfg.tol_axis;
  o.tol_const = cfg.tol_const;
  o.tol_hint = cfg.tol_hint;
  o.frenet.curvature_eps = cfg.eps_curv;
  o.axis_hint = parse_hint(cfg.axis_hint, dim);
  return o;
}

Curve load_unit_speed(const Config& cfg) { return arclength_reparametrize(io::load_curve(cfg.input)); }

// Opens --output (or falls back to `out`) and hands the stream to `write`.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::InputError("cannot write " + path);
  write(f);
}

std::vector<std::vector<double>> indicatrix_rows(const Curve& beta, std::size_t count) {
  if (beta.is_analytic()) return io::curve_rows(beta, count);
  std::vector<std::vector<double>> rows;
  const auto& s = beta.sample_parameters();
  const auto& p = beta.sample_points();
  const double slack = 1e-9 * beta.domain().length();
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!beta.domain().contains(s[j], slack)) continue;
    std::vector<double> row{s[j]};
    for (Eigen::Index i = 0; i < p[j].size(); ++i) row.push_back(p[j][i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
  const Curve c = load_unit_speed(cfg);
  const ClassifyOptions opts = classify_options(cfg, c.dim());
  std::vector<FrenetApparatus> grid;
  HelixReport r;
  try {
    grid = frenet_grid(c, opts.grid, opts.margin, opts.frenet);
    r = classify_grid(grid, opts);
  } catch (const DegenerateError& e) {
    r.status = ReportStatus::Degenerate;
    r.message = e.what();
    r.masked_fraction = 1.0;
  }
  if (cfg.format == "csv") {
    const int n = c.dim();
    std::vector<std::string> header{"s"};
    for (int i = 1; i < n; ++i) header.push_back("k" + std::to_string(i));
    for (int i = 1; i <= n; ++i) header.push_back("G" + std::to_string(i));
    header.push_back("sum_G2");
    std::vector<std::vector<double>> rows;
    std::optional<HelixFunctions> G;
    if (!grid.empty()) try {
        G = slant_functions(grid);
      } catch (const UnreliableError&) {
      }
    const double nan = std::nan("");
    for (std::size_t j = 0; j < grid.size(); ++j) {
      std::vector<double> row{grid[j].s};
      for (int i = 1; i < n; ++i) row.push_back(grid[j].k(i));
      for (int i = 0; i < n; ++i) row.push_back(G ? G->values[j][i] : nan);
      row.push_back(G ? G->sum_of_squares(j) : nan);
      rows.push_back(std::move(row));
    }
    emit(cfg.output, out, [&](std::ostream& o) { io::write_csv(o, header, rows); });
  } else {
    emit(cfg.output, out, [&](std::ostream& o) { o << io::dump(io::to_json(r)); });
  }
  return r.status == ReportStatus::Ok ? kExitOk : kExitDegenerate;
}

int cmd_indicatrix(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Curve c = load_unit_speed(cfg);
  const ClassifyOptions opts = classify_options(cfg, c.dim());
  const Curve beta = tangent_indicatrix(c.trimmed(cfg.margin));
  const auto rows = indicatrix_rows(beta, static_cast<std::size_t>(cfg.grid));

  Json same_axis;
  if (!cfg.report.empty() || cfg.format == "json") {
    try {
      same_axis = io::to_json(verify_same_axis(c, opts));
    } catch (const std::exception& e) {
      same_axis = {{"error", e.what()}};
      err << "same-axis check skipped: " << e.what() << '\n';
    }
  }
  if (cfg.format == "csv") {
    emit(cfg.output, out, [&](std::ostream& o) { io::write_csv(o, io::curve_header("s_beta", c.dim()), rows); });
  } else {
    Json j;
    j["samples"] = Json::array();
    for (const auto& row : rows) {
      Json r = Json::array();
      for (double x : row) r.push_back(io::number(x));
      j["samples"].push_back(r);
    }
    j["same_axis"] = same_axis;
    emit(cfg.output, out, [&](std::ostream& o) { o << io::dump(j); });
  }
  if (!cfg.report.empty()) emit(cfg.report, out, [&](std::ostream& o) { o << io::dump(same_axis); });
  return kExitOk;
}

int cmd_axis(const Config& cfg, std::ostream& out) {
  const Curve c = load_unit_speed(cfg);
  const SameAxisReport r = verify_same_axis(c, classify_options(cfg, c.dim()));
  emit(cfg.output, out, [&](std::ostream& o) { o << io::dump(io::to_json(r)); });
  return kExitOk;
}

int cmd_geodesic(const Config& cfg, std::ostream& out) {
  io::SurfaceScenario sc = io::load_scenario(cfg.input);
  auto specs = sc.geodesics;
  const int count = cfg.count > 0 ? cfg.count : (specs.empty() ? 5 : 0);
  for (auto& g : random_geodesics(sc.surface, count, cfg.seed, cfg.length)) specs.push_back(std::move(g));

  GeodesicVerifyOptions opts;
  opts.classify = classify_options(cfg, sc.surface.dim());
  GeodesicTheoremReport rep;
  rep.surface = is_helix_surface(sc.surface);
  if (rep.surface.constant) {
    std::vector<std::vector<GeodesicSample>> paths;
    for (const auto& g : specs) paths.push_back(geodesic(sc.surface, g.start, g.tangent, g.length, g.steps));
    rep = verify_geodesic_theorems(sc.surface, paths, opts);
  } else {
    rep.message = "not a helix surface: <d, xi> is not constant (std " + std::to_string(rep.surface.stddev) + ")";
  }
  emit(cfg.output, out, [&](std::ostream& o) { o << io::dump(io::to_json(rep)); });
  return rep.passed ? kExitOk : kExitDegenerate;
}

int cmd_plotdata(const Config& cfg, std::ostream& out) {
  const Curve c = load_unit_speed(cfg);
  const auto count = static_cast<std::size_t>(cfg.grid);
  const auto rows = io::curve_rows(c, count);
  emit(cfg.output, out, [&](std::ostream& o) { io::write_csv(o, io::curve_header("s", c.dim()), rows); });
  if (cfg.both) {
    if (cfg.output.empty()) throw UsageError("--both needs --output to name the curve file");
    const std::filesystem::path p(cfg.output);
    const auto beta_path = p.parent_path() / (p.stem().string() + "_indicatrix" + p.extension().string());
    const Curve beta = tangent_indicatrix(c.trimmed(cfg.margin));
    std::vector<std::vector<double>> brows;
    if (beta.is_analytic()) {
      brows = io::curve_rows(beta, count);
    } else {
      for (double s : numeric::linspace(beta.domain().lo, beta.domain().hi, count)) {
        const Vec x = beta.position(s);
        std::vector<double> row{s};
        for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(x[i]);
        brows.push_back(std::move(row));
      }
    }
    emit(beta_path.string(), out,
         [&](std::ostream& o) { io::write_csv(o, io::curve_header("s_beta", c.dim()), brows); });
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frenet apparatus, helix and slant-helix classification for curves in E^n"};
  app.require_subcommand(1);
  Config cfg;

  auto* analyze = app.add_subcommand("analyze", "Classify a curve as general and/or slant helix");
  add_common(*analyze, cfg);
  add_classify(*analyze, cfg);
  analyze->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* indicatrix = app.add_subcommand("indicatrix", "Tangent indicatrix samples and the same-axis check");
  add_common(*indicatrix, cfg);
  add_classify(*indicatrix, cfg);
  indicatrix->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  indicatrix->add_option("--report", cfg.report, "Also write the same-axis report to this file");

  auto* axis = app.add_subcommand("axis", "Compare the slant axis of a curve with its indicatrix's axis");
  add_common(*axis, cfg);
  add_classify(*axis, cfg);

  auto* geo = app.add_subcommand("geodesic", "Integrate geodesics on a surface and check the helix theorems");
  add_common(*geo, cfg);
  add_classify(*geo, cfg);
  geo->add_option("--count", cfg.count, "Random geodesics to add (default 5 when the file lists none)")
      ->check(CLI::NonNegativeNumber);
  geo->add_option("--seed", cfg.seed, "Seed for the random geodesics");
  geo->add_option("--length", cfg.length, "Arc length of each random geodesic")->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plotdata", "CSV traces of the curve (and its indicatrix) for plotting");
  add_common(*plot, cfg);
  plot->add_flag("--both", cfg.both, "Also write <output stem>_indicatrix.csv");

  std::vector<std::string> argv_store{"helixkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (indicatrix->parsed()) return cmd_indicatrix(cfg, out, err);
    if (axis->parsed()) return cmd_axis(cfg, out);
    if (geo->parsed()) return cmd_geodesic(cfg, out);
    if (plot->parsed()) return cmd_plotdata(cfg, out);
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const UnreliableError& e) {
    err << "unreliable: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const IntegrationError& e) {
    err << "geodesic integration failed: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace helixkit::cli
