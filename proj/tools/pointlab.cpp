// pointlab: sampling, cluster reports, percolation estimates, spectra,
// branch curves, and band scans, from one seeded, manifest-tracked binary.
//
// Exit codes: 0 success, 2 usage/input error, 3 statistical bracketing
// failure, 4 solver non-convergence.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pointlab/pointlab.hpp"

namespace {

using pointlab::fmt17;
using pointlab::json;

// --out values are prefixes; POINTLAB_OUT_DIR (if set) roots relative ones
std::filesystem::path resolve_prefix(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("POINTLAB_OUT_DIR"))
      p = std::filesystem::path(dir) / p;
  return p;
}

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// every subcommand ends here: data files first, then the manifest next to them
void finish_run(const std::string& subcommand, const std::vector<std::string>& argv,
                const json& parameters, const std::filesystem::path& prefix,
                const std::vector<std::filesystem::path>& outputs) {
  pointlab::RunManifest m;
  m.subcommand = subcommand;
  m.argv = argv;
  m.parameters = parameters;
  for (const auto& o : outputs) m.outputs.push_back(o.string());
  m.created = iso_utc_now();
  pointlab::write_text_atomic(prefix.string() + ".manifest.json",
                              pointlab::manifest_to_json(m).dump(2) + "\n");
}

int run_cli(const std::vector<std::string>& args);

// ---------------------------------------------------------------- sample

struct SampleOpts {
  std::string model, out;
  int dim = 0;
  double intensity = 0.0, bound = 0.0, count_radius = 1.0;
  std::optional<double> alpha;
  std::vector<double> window;
  std::uint64_t seed = 0;
  bool has_intensity = false, has_bound = false;
};

int cmd_sample(const SampleOpts& o, const std::vector<std::string>& argv) {
  if (o.model == "poisson" && !o.has_intensity)
    throw std::invalid_argument("--intensity is required for --model poisson");
  if (o.model == "displaced" && !o.has_bound)
    throw std::invalid_argument("--bound is required for --model displaced");
  const pointlab::Window w{o.window[0], o.window[1]};

  pointlab::PointConfiguration config =
      o.model == "poisson"
          ? pointlab::sample_poisson(o.intensity, w, o.dim, o.seed)
          : pointlab::sample_displaced_lattice(o.bound, w, o.dim, o.seed);

  std::optional<pointlab::CouplingSequence> couplings;
  if (o.alpha) couplings.emplace(config.size(), *o.alpha);

  const auto prefix = resolve_prefix(o.out);
  const auto config_path = prefix.string() + ".config.json";
  pointlab::write_text_atomic(
      config_path,
      pointlab::config_to_json(config, couplings ? &*couplings : nullptr).dump(2) + "\n");

  const auto dstar = pointlab::min_pairwise_distance(config);
  std::printf("points: %zu\n", config.size());
  std::printf("d_*: %s\n", dstar ? fmt17(*dstar).c_str() : "n/a");
  std::printf("local_count_bound(r=%s): %d\n", fmt17(o.count_radius).c_str(),
              pointlab::local_count_bound(config, o.count_radius));

  json params{{"model", o.model}, {"dim", o.dim},   {"window", {w.lo, w.hi}},
              {"seed", o.seed},   {"out", o.out},   {"count_radius", o.count_radius}};
  if (o.model == "poisson") params["intensity"] = o.intensity;
  if (o.model == "displaced") params["bound"] = o.bound;
  if (o.alpha) params["alpha"] = *o.alpha;
  finish_run("sample", argv, params, prefix, {config_path});
  return 0;
}

// --------------------------------------------------------------- clusters

struct ClustersOpts {
  std::string in, out;
  double radius = 0.0;
};

int cmd_clusters(const ClustersOpts& o, const std::vector<std::string>& argv) {
  const json doc = json::parse(pointlab::read_text(o.in), nullptr, true, true);
  const auto config = pointlab::config_from_json(doc);
  const auto report = pointlab::clusters(config, o.radius);

  json jrep{{"radius", report.radius},
            {"components", report.components},
            {"touches_boundary", report.touches_boundary},
            {"max_component_size", report.max_component_size}};

  std::vector<std::vector<std::string>> rows;
  for (std::size_t c = 0; c < report.components.size(); ++c)
    for (int idx : report.components[c])
      rows.push_back({std::to_string(idx), std::to_string(c)});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::stoi(a[0]) < std::stoi(b[0]);
  });

  const auto prefix = resolve_prefix(o.out);
  const auto json_path = prefix.string() + ".clusters.json";
  const auto csv_path = prefix.string() + ".clusters.csv";
  pointlab::write_text_atomic(json_path, jrep.dump(2) + "\n");
  pointlab::write_text_atomic(csv_path,
                              pointlab::csv_table({"point_index", "component_id"}, rows));

  int contacts = 0;
  for (bool t : report.touches_boundary) contacts += t;
  std::printf("components: %zu\n", report.components.size());
  std::printf("max component size: %d\n", report.max_component_size);
  std::printf("boundary contacts: %d\n", contacts);

  finish_run("clusters", argv,
             json{{"in", o.in}, {"radius", o.radius}, {"out", o.out}}, prefix,
             {json_path, csv_path});
  return 0;
}

// ------------------------------------------------------------- percolation

struct PercolationOpts {
  std::string mode, out;
  int dim = 0;
  std::vector<double> radii, lambdas;
  double box = 0.0, tol = 0.02;
  long long trials = 0;
  std::uint64_t seed = 0;
};

std::vector<std::string> crossing_row(const pointlab::CrossingEstimate& e) {
  return {std::to_string(e.dim),       fmt17(e.radius),
          fmt17(e.intensity),          fmt17(e.box_size),
          std::to_string(e.trials),    fmt17(e.crossing_prob),
          fmt17(e.std_err),            std::to_string(e.seed)};
}

const std::vector<std::string> crossing_header = {
    "d", "R", "lambda", "box_size", "trials", "crossing_prob", "std_err", "seed"};

int cmd_percolation(const PercolationOpts& o, const std::vector<std::string>& argv) {
  const auto prefix = resolve_prefix(o.out);
  json params{{"mode", o.mode},     {"dim", o.dim},   {"radius", o.radii},
              {"box", o.box},       {"tol", o.tol},   {"trials", o.trials},
              {"seed", o.seed},     {"out", o.out}};

  if (o.mode == "sweep") {
    if (o.lambdas.empty())
      throw std::invalid_argument("--lambda is required at least once for --mode sweep");
    if (o.radii.size() != 1)
      throw std::invalid_argument("--radius must be given exactly once for --mode sweep");
    params["lambda"] = o.lambdas;
    const double cap = *std::max_element(o.lambdas.begin(), o.lambdas.end());
    std::vector<std::vector<std::string>> rows;
    for (double lam : o.lambdas)
      rows.push_back(crossing_row(pointlab::crossing_probability(
          o.dim, lam, o.radii[0], o.box, o.trials, o.seed, cap)));
    const auto csv_path = prefix.string() + ".sweep.csv";
    pointlab::write_text_atomic(csv_path, pointlab::csv_table(crossing_header, rows));
    std::printf("sweep: %zu intensities, box %s, %lld trials each\n", o.lambdas.size(),
                fmt17(o.box).c_str(), o.trials);
    finish_run("percolation", argv, params, prefix, {csv_path});
    return 0;
  }

  if (o.mode == "critical") {
    if (o.radii.size() != 1)
      throw std::invalid_argument("--radius must be given exactly once for --mode critical");
    const auto est = pointlab::estimate_critical_density(o.dim, o.radii[0], o.box,
                                                         o.trials, o.tol, o.seed);
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : est.probes) rows.push_back(crossing_row(p));
    const auto csv_path = prefix.string() + ".probes.csv";
    const auto json_path = prefix.string() + ".critical.json";
    pointlab::write_text_atomic(csv_path, pointlab::csv_table(crossing_header, rows));
    json jres{{"dim", est.dim},
              {"R", est.radius},
              {"lambda_c_hat", est.lambda_hat},
              {"bracket", {{"lo", est.bracket_lo}, {"hi", est.bracket_hi}}},
              {"box_size", est.box_size},
              {"trials_per_probe", est.trials}};
    pointlab::write_text_atomic(json_path, jres.dump(2) + "\n");
    std::printf("lambda_c_hat: %s  bracket [%s, %s]\n", fmt17(est.lambda_hat).c_str(),
                fmt17(est.bracket_lo).c_str(), fmt17(est.bracket_hi).c_str());
    finish_run("percolation", argv, params, prefix, {csv_path, json_path});
    return 0;
  }

  // scaling: the box scales with R (box * R), the tolerance with R^-d,
  // so every radius is probed at the same box/R ratio
  if (o.radii.empty())
    throw std::invalid_argument("--radius is required at least once for --mode scaling");
  const auto report =
      pointlab::verify_scaling(o.dim, o.radii, o.box, o.trials, o.tol, o.seed);
  std::vector<std::vector<std::string>> rows;
  for (const auto& est : report.estimates)
    for (const auto& p : est.probes) rows.push_back(crossing_row(p));
  const auto csv_path = prefix.string() + ".probes.csv";
  const auto json_path = prefix.string() + ".scaling.json";
  pointlab::write_text_atomic(csv_path, pointlab::csv_table(crossing_header, rows));
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back(
        {{"R", e.radius}, {"lambda_c_hat", e.lambda_hat}, {"scaled", e.scaled}});
  json jres{{"dim", report.dim},
            {"box_scale", o.box},
            {"trials_per_probe", o.trials},
            {"tol_scale", o.tol},
            {"entries", entries},
            {"max_pairwise_rel_dev", report.max_pairwise_rel_dev}};
  pointlab::write_text_atomic(json_path, jres.dump(2) + "\n");
  for (const auto& e : report.entries)
    std::printf("R=%s  lambda_c_hat=%s  scaled=%s\n", fmt17(e.radius).c_str(),
                fmt17(e.lambda_hat).c_str(), fmt17(e.scaled).c_str());
  std::printf("max pairwise relative deviation: %s\n",
              fmt17(report.max_pairwise_rel_dev).c_str());
  finish_run("percolation", argv, params, prefix, {csv_path, json_path});
  return 0;
}

// --------------------------------------------------------------- spectrum

struct SpectrumOpts {
  std::string in, out;
  int dim = 0;
  double alpha = 0.0, distance = 0.0, tol = 1e-12;
  bool has_in = false, has_alpha = false, has_distance = false, branch = false;
  double lmin = 0.0, lmax = 0.0;
  int lcount = 0;
};

int cmd_spectrum(const SpectrumOpts& o, const std::vector<std::string>& argv) {
  const auto prefix = resolve_prefix(o.out);

  if (o.branch) {
    if (!o.has_alpha) throw std::invalid_argument("--alpha is required for --branch");
    if (!(o.lmin > 0.0) || !(o.lmax > o.lmin) || o.lcount < 2)
      throw std::invalid_argument(
          "--branch needs --lmin > 0, --lmax > --lmin, --lcount >= 2");
    int dim = o.dim;
    std::vector<double> base;
    if (o.has_in) {
      const json doc = json::parse(pointlab::read_text(o.in), nullptr, true, true);
      const auto config = pointlab::config_from_json(doc);
      if (config.dim != 1)
        throw std::invalid_argument("--branch with --in supports dim 1 configurations");
      dim = 1;
      for (const auto& p : config.points) base.push_back(p[0]);
    } else if (dim == 0) {
      throw std::invalid_argument("--dim is required for --branch without --in");
    }
    std::vector<double> grid(o.lcount);
    const double lr = std::log(o.lmax / o.lmin);
    for (int i = 0; i < o.lcount; ++i)
      grid[i] = o.lmin * std::exp(lr * static_cast<double>(i) / (o.lcount - 1));

    const auto curve = pointlab::branch_curve(dim, o.alpha, base, grid, o.tol);
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : curve.branches)
      for (std::size_t i = 0; i < b.L.size(); ++i)
        rows.push_back({fmt17(b.L[i]), std::to_string(b.index), fmt17(b.E[i])});
    const auto csv_path = prefix.string() + ".branch.csv";
    pointlab::write_text_atomic(csv_path,
                                pointlab::csv_table({"L", "branch_index", "E"}, rows));
    std::printf("branches: %zu over %d spacings\n", curve.branches.size(), o.lcount);
    if (!curve.failed_L.empty())
      std::fprintf(stderr, "warning: solver failed to converge at %zu spacing(s)\n",
                   curve.failed_L.size());
    json params{{"alpha", o.alpha}, {"dim", dim},       {"lmin", o.lmin},
                {"lmax", o.lmax},   {"lcount", o.lcount}, {"tol", o.tol},
                {"out", o.out}};
    if (o.has_in) params["in"] = o.in;
    finish_run("spectrum", argv, params, prefix, {csv_path});
    return 0;
  }

  pointlab::SpectralProblem problem;
  json params{{"tol", o.tol}, {"out", o.out}};
  if (o.has_in) {
    const json doc = json::parse(pointlab::read_text(o.in), nullptr, true, true);
    pointlab::CouplingSequence couplings;
    problem.config = pointlab::config_from_json(doc, &couplings);
    if (couplings.empty())
      throw std::invalid_argument("--in configuration carries no couplings");
    problem.couplings = std::move(couplings);
    params["in"] = o.in;
  } else {
    if (!o.has_alpha || !o.has_distance || o.dim == 0)
      throw std::invalid_argument(
          "need either --in or the two-point flags --dim --alpha --distance");
    problem = pointlab::two_point_problem(o.dim, o.alpha, o.distance);
    params["dim"] = o.dim;
    params["alpha"] = o.alpha;
    params["distance"] = o.distance;
  }

  const auto spectrum = pointlab::negative_spectrum(problem, o.tol);
  json jres{{"eigenvalues", spectrum.eigenvalues},
            {"roots_s", spectrum.roots_s},
            {"s_max", spectrum.s_max},
            {"refinements", spectrum.refinements}};
  const auto json_path = prefix.string() + ".spectrum.json";
  pointlab::write_text_atomic(json_path, jres.dump(2) + "\n");
  std::printf("negative eigenvalues: %zu\n", spectrum.eigenvalues.size());
  for (double e : spectrum.eigenvalues) std::printf("  %s\n", fmt17(e).c_str());
  finish_run("spectrum", argv, params, prefix, {json_path});
  return 0;
}

// ------------------------------------------------------------------ bands

struct BandsOpts {
  std::string out;
  double spacing = 0.0, alpha = 0.0, emin = 0.0, emax = 0.0;
  int resolution = 4096;
};

int cmd_bands(const BandsOpts& o, const std::vector<std::string>& argv) {
  const pointlab::LatticeProblem lattice{o.spacing, o.alpha};
  const auto scan = pointlab::band_intervals(lattice, o.emin, o.emax, o.resolution);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < scan.grid_energy.size(); ++i)
    rows.push_back({fmt17(scan.grid_energy[i]), fmt17(scan.grid_dispersion[i]),
                    std::abs(scan.grid_dispersion[i]) <= 1.0 ? "1" : "0"});
  json intervals = json::array();
  for (const auto& b : scan.intervals)
    intervals.push_back({{"lo", b.lo}, {"hi", b.hi}});
  json jres{{"spacing", o.spacing},
            {"alpha", o.alpha},
            {"emin", o.emin},
            {"emax", o.emax},
            {"resolution", scan.resolution},
            {"resolution_warning", scan.resolution_warning},
            {"intervals", intervals}};

  const auto prefix = resolve_prefix(o.out);
  const auto csv_path = prefix.string() + ".bands.csv";
  const auto json_path = prefix.string() + ".bands.json";
  pointlab::write_text_atomic(csv_path,
                              pointlab::csv_table({"E", "f", "in_band"}, rows));
  pointlab::write_text_atomic(json_path, jres.dump(2) + "\n");

  std::printf("bands in [%s, %s]: %zu\n", fmt17(o.emin).c_str(), fmt17(o.emax).c_str(),
              scan.intervals.size());
  for (const auto& b : scan.intervals)
    std::printf("  [%s, %s]\n", fmt17(b.lo).c_str(), fmt17(b.hi).c_str());
  if (scan.resolution_warning)
    std::fprintf(stderr, "warning: band count changed under refinement; "
                         "increase --resolution\n");

  finish_run("bands", argv,
             json{{"spacing", o.spacing}, {"alpha", o.alpha}, {"emin", o.emin},
                  {"emax", o.emax}, {"resolution", o.resolution}, {"out", o.out}},
             prefix, {csv_path, json_path});
  return 0;
}

// ------------------------------------------------------------ sweep-sigma

struct SweepSigmaOpts {
  std::string out;
  int dim = 0, nmin = 2, nmax = 2, samples = 200, bins = 50;
  std::vector<double> nu;        // finite support
  std::vector<double> nu_interval;  // or [lo, hi]
  double lmin = 0.0, lmax = 0.0, tol = 1e-10;
  std::uint64_t seed = 0;
};

// samples admissible finite families (Gamma, alpha) with couplings drawn from
// the given distribution and pools every negative eigenvalue found: a
// lower-bound illustration of the almost-sure negative spectrum, never a
// completeness claim
int cmd_sweep_sigma(const SweepSigmaOpts& o, const std::vector<std::string>& argv) {
  if (o.nu.empty() && o.nu_interval.empty())
    throw std::invalid_argument("--nu (or --nu-interval) must provide a nonempty support");
  if (!o.nu.empty() && !o.nu_interval.empty())
    throw std::invalid_argument("--nu and --nu-interval are mutually exclusive");
  if (!o.nu_interval.empty() && !(o.nu_interval[0] < o.nu_interval[1]))
    throw std::invalid_argument("--nu-interval needs lo < hi");
  if (!(o.lmin > 0.0) || !(o.lmax >= o.lmin))
    throw std::invalid_argument("--lmin and --lmax must satisfy 0 < lmin <= lmax");
  if (o.nmin < 1 || o.nmax < o.nmin)
    throw std::invalid_argument("--nmin and --nmax must satisfy 1 <= nmin <= nmax");
  if (o.samples < 1) throw std::invalid_argument("--samples must be positive");
  if (o.bins < 1) throw std::invalid_argument("--bins must be positive");

  std::vector<double> found;
  int skipped = 0;
  const double log_ratio = std::log(o.lmax / o.lmin);
  for (int k = 0; k < o.samples; ++k) {
    pointlab::RandomEngine rng(pointlab::derive_seed(o.seed, k));
    const int n =
        o.dim == 1
            ? o.nmin + static_cast<int>(rng.uniform() * (o.nmax - o.nmin + 1))
            : 2;
    const double spacing = o.lmin * std::exp(log_ratio * rng.uniform());
    auto problem = o.dim == 1
                       ? pointlab::equally_spaced_problem(std::max(n, 1), 0.0, spacing)
                       : pointlab::two_point_problem(o.dim, 0.0, spacing);
    for (double& a : problem.couplings)
      a = o.nu.empty()
              ? rng.uniform(o.nu_interval[0], o.nu_interval[1])
              : o.nu[std::min(o.nu.size() - 1,
                              static_cast<std::size_t>(rng.uniform() * o.nu.size()))];
    try {
      const auto spec = pointlab::negative_spectrum(problem, o.tol);
      found.insert(found.end(), spec.eigenvalues.begin(), spec.eigenvalues.end());
    } catch (const pointlab::ConvergenceError&) {
      ++skipped;
    }
  }

  std::vector<std::vector<std::string>> rows;
  if (!found.empty()) {
    const double lo = *std::min_element(found.begin(), found.end());
    const double width = (0.0 - lo) / o.bins;
    std::vector<long long> counts(o.bins, 0);
    for (double e : found) {
      int b = width > 0.0 ? static_cast<int>((e - lo) / width) : 0;
      ++counts[std::min(std::max(b, 0), o.bins - 1)];
    }
    for (int b = 0; b < o.bins; ++b)
      rows.push_back({fmt17(lo + b * width), fmt17(lo + (b + 1) * width),
                      std::to_string(counts[b])});
  }
  const auto prefix = resolve_prefix(o.out);
  const auto csv_path = prefix.string() + ".sigma.csv";
  pointlab::write_text_atomic(csv_path,
                              pointlab::csv_table({"bin_lo", "bin_hi", "count"}, rows));

  if (found.empty())
    std::printf("no negative eigenvalues found over %d samples\n", o.samples);
  else
    std::printf("negative eigenvalues: %zu over %d samples, range [%s, %s]\n",
                found.size(), o.samples,
                fmt17(*std::min_element(found.begin(), found.end())).c_str(),
                fmt17(*std::max_element(found.begin(), found.end())).c_str());
  if (skipped) std::fprintf(stderr, "warning: %d samples skipped (non-convergence)\n", skipped);

  json params{{"dim", o.dim},     {"nmin", o.nmin},   {"nmax", o.nmax},
              {"lmin", o.lmin},   {"lmax", o.lmax},   {"samples", o.samples},
              {"bins", o.bins},   {"seed", o.seed},   {"out", o.out}};
  if (!o.nu.empty()) params["nu"] = o.nu;
  if (!o.nu_interval.empty()) params["nu_interval"] = o.nu_interval;
  finish_run("sweep-sigma", argv, params, prefix, {csv_path});
  return 0;
}

// ------------------------------------------------------------------ rerun

int cmd_rerun(const std::string& manifest_path) {
  const json doc = json::parse(pointlab::read_text(manifest_path), nullptr, true, true);
  const auto manifest = pointlab::manifest_from_json(doc);
  if (manifest.argv.empty())
    throw std::invalid_argument("manifest holds an empty argv");
  if (manifest.argv[0] == "rerun")
    throw std::invalid_argument("refusing to rerun a rerun manifest");
  return run_cli(manifest.argv);
}

// ------------------------------------------------------------------- main

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"point-interaction lab: seeded sampling, percolation, spectra, bands"};
  app.require_subcommand(1);

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "draw a point configuration");
  sample->add_option("--model", so.model, "poisson | displaced")
      ->required()
      ->check(CLI::IsMember({"poisson", "displaced"}));
  sample->add_option("--dim", so.dim, "dimension (1-3)")->required();
  auto* so_int = sample->add_option("--intensity", so.intensity, "Poisson intensity");
  auto* so_bound = sample->add_option("--bound", so.bound, "lattice displacement bound");
  sample->add_option("--window", so.window, "window LO HI")->required()->expected(2);
  sample->add_option("--seed", so.seed, "RNG seed")->required();
  double alpha_val = 0.0;
  auto* so_alpha =
      sample->add_option("--alpha", alpha_val, "attach this constant coupling to every point");
  sample->add_option("--count-radius", so.count_radius,
                     "radius for the printed local count bound");
  sample->add_option("--out", so.out, "output prefix")->required();

  ClustersOpts co;
  auto* clusters_cmd = app.add_subcommand("clusters", "component report for a configuration");
  clusters_cmd->add_option("--in", co.in, "configuration JSON")->required();
  clusters_cmd->add_option("--radius", co.radius, "ball radius R")->required();
  clusters_cmd->add_option("--out", co.out, "output prefix")->required();

  PercolationOpts po;
  auto* perc = app.add_subcommand("percolation", "crossing probabilities and lambda_c");
  perc->add_option("--mode", po.mode, "sweep | critical | scaling")
      ->required()
      ->check(CLI::IsMember({"sweep", "critical", "scaling"}));
  perc->add_option("--dim", po.dim, "dimension (1-3)")->required();
  perc->add_option("--radius", po.radii, "ball radius R (repeat for scaling)")->required();
  perc->add_option("--lambda", po.lambdas, "intensity (repeat for sweep grid)");
  perc->add_option("--box", po.box,
                   "box edge; in scaling mode the edge per unit radius (box * R)")
      ->required();
  perc->add_option("--trials", po.trials, "Monte Carlo trials per probe")->required();
  perc->add_option("--tol", po.tol,
                   "bracket width; in scaling mode the width per unit R^-d");
  perc->add_option("--seed", po.seed, "RNG seed")->required();
  perc->add_option("--out", po.out, "output prefix")->required();

  SpectrumOpts spo;
  auto* spec = app.add_subcommand("spectrum", "negative eigenvalues / branch curves");
  auto* sp_in = spec->add_option("--in", spo.in, "configuration JSON with couplings");
  spec->add_option("--dim", spo.dim, "dimension (1-3), two-point mode");
  auto* sp_alpha = spec->add_option("--alpha", spo.alpha, "coupling constant");
  auto* sp_dist = spec->add_option("--distance", spo.distance, "two-point separation");
  spec->add_option("--tol", spo.tol, "root bisection tolerance");
  spec->add_flag("--branch", spo.branch, "sweep the spacing and tabulate branches");
  spec->add_option("--lmin", spo.lmin, "branch sweep: smallest spacing");
  spec->add_option("--lmax", spo.lmax, "branch sweep: largest spacing");
  spec->add_option("--lcount", spo.lcount, "branch sweep: number of grid points");
  spec->add_option("--out", spo.out, "output prefix")->required();

  BandsOpts bo;
  auto* bands = app.add_subcommand("bands", "Kronig-Penney band scan");
  bands->add_option("--spacing", bo.spacing, "lattice spacing L")->required();
  bands->add_option("--alpha", bo.alpha, "coupling constant")->required();
  bands->add_option("--emin", bo.emin, "scan range start")->required();
  bands->add_option("--emax", bo.emax, "scan range end")->required();
  bands->add_option("--resolution", bo.resolution, "scan grid points");
  bands->add_option("--out", bo.out, "output prefix")->required();

  SweepSigmaOpts sso;
  auto* sigma = app.add_subcommand(
      "sweep-sigma", "pool negative eigenvalues over sampled finite families");
  sigma->add_option("--dim", sso.dim, "dimension (1-3)")->required();
  sigma->add_option("--nu", sso.nu, "finite coupling support (repeatable)");
  sigma->add_option("--nu-interval", sso.nu_interval, "coupling support interval LO HI")
      ->expected(2);
  sigma->add_option("--nmin", sso.nmin, "smallest family size (dim 1)");
  sigma->add_option("--nmax", sso.nmax, "largest family size (dim 1)");
  sigma->add_option("--lmin", sso.lmin, "smallest spacing")->required();
  sigma->add_option("--lmax", sso.lmax, "largest spacing")->required();
  sigma->add_option("--samples", sso.samples, "number of sampled families");
  sigma->add_option("--bins", sso.bins, "histogram bins");
  sigma->add_option("--seed", sso.seed, "RNG seed")->required();
  sigma->add_option("--out", sso.out, "output prefix")->required();

  std::string manifest_path;
  auto* rerun = app.add_subcommand("rerun", "re-execute a recorded run");
  rerun->add_option("--manifest", manifest_path, "manifest JSON from a previous run")
      ->required();

  std::vector<const char*> argv;
  argv.push_back("pointlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message naming the offending flag
    return 2;
  }

  so.has_intensity = so_int->count() > 0;
  so.has_bound = so_bound->count() > 0;
  if (so_alpha->count() > 0) so.alpha = alpha_val;
  spo.has_in = sp_in->count() > 0;
  spo.has_alpha = sp_alpha->count() > 0;
  spo.has_distance = sp_dist->count() > 0;

  if (sample->parsed()) return cmd_sample(so, args);
  if (clusters_cmd->parsed()) return cmd_clusters(co, args);
  if (perc->parsed()) return cmd_percolation(po, args);
  if (spec->parsed()) return cmd_spectrum(spo, args);
  if (bands->parsed()) return cmd_bands(bo, args);
  if (sigma->parsed()) return cmd_sweep_sigma(sso, args);
  if (rerun->parsed()) return cmd_rerun(manifest_path);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_cli(args);
  } catch (const pointlab::BracketingError& e) {
    std::cerr << "bracketing failure: " << e.what() << "\n";
    return 3;
  } catch (const pointlab::ConvergenceError& e) {
    std::cerr << "solver non-convergence: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
