// sdmt: sensing-constrained diversity-multiplexing tradeoff toolkit.
//
// Subcommands: dmt, outage, geometry, bcrb, sample.  Every command writes a
// CSV table plus a JSON sidecar (schema "sdmt/1") echoing the resolved
// configuration, and is byte-reproducible given the same seed and inputs.
// Exit codes: 0 success, 2 configuration error, 3 rare-event resolution.

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sdmt/dmt.hpp"
#include "sdmt/errors.hpp"
#include "sdmt/linalg.hpp"
#include "sdmt/manifold.hpp"
#include "sdmt/outage.hpp"
#include "sdmt/rng.hpp"
#include "sdmt/scenario.hpp"
#include "sdmt/sensing.hpp"
#include "sdmt/wishart.hpp"

using nlohmann::json;
using namespace sdmt;

namespace {

constexpr const char* kSchema = "sdmt/1";
constexpr double kNatsToBits = 1.4426950408889634;  // 1 / ln 2

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

void write_json_file(const std::string& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("SDMT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("SDMT_SEED is not a valid unsigned integer");
    }
  }
  return 0;
}

double parse_blocklength(const std::string& token) {
  if (token == "inf") return kInfiniteBlocklength;
  try {
    const double t = std::stod(token);
    if (!(t >= 1.0)) throw ConfigError("blocklength must be >= 1");
    return t;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("invalid blocklength '" + token + "' (number or inf)");
  }
}

json curve_to_json(const DmtCurve& curve, const std::string& label) {
  json points = json::array();
  for (const auto& p : curve.breakpoints()) {
    points.push_back({{"r", p.r}, {"d", p.d}});
  }
  json out;
  out["label"] = label;
  out["n_c"] = curve.n_c();
  out["rank_or_m"] = curve.rank_or_m();
  if (std::isinf(curve.blocklength())) {
    out["t"] = "inf";
  } else {
    out["t"] = curve.blocklength();
  }
  out["breakpoints"] = points;
  return out;
}

void append_curve_rows(CsvTable& table, const DmtCurve& curve,
                       const std::string& label) {
  for (const auto& p : curve.breakpoints()) {
    table.rows.push_back({format_number(p.r), format_number(p.d), label});
  }
}

// ---------------------------------------------------------------------------
// dmt

struct DmtArgs {
  int m = 2;
  int n_c = 2;
  std::optional<int> rank;
  std::string t_text = "inf";
  bool fig2 = false;
  std::string out = "dmt";
};

int run_dmt(const DmtArgs& args) {
  const double t = parse_blocklength(args.t_text);
  CsvTable table;
  table.header = {"r", "d", "curve"};
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "dmt";
  json curves = json::array();

  if (args.fig2) {
    // Multi-target family: M = N_c = 10, bound rank N_t in {2,4,6,8,10}.
    const int m = 10, n_c = 10;
    const DmtCurve reference = unconstrained_dmt(m, n_c);
    append_curve_rows(table, reference, "unconstrained");
    curves.push_back(curve_to_json(reference, "unconstrained"));
    for (int n_t = 2; n_t <= 10; n_t += 2) {
      const DmtCurve bound = rank_bound_curve(n_t, m, n_c, t);
      const std::string label = "rank_bound_nt" + std::to_string(n_t);
      append_curve_rows(table, bound, label);
      curves.push_back(curve_to_json(bound, label));
    }
    doc["config"] = {{"m", m},
                     {"n_c", n_c},
                     {"t", std::isinf(t) ? json("inf") : json(t)},
                     {"fig2", true}};
  } else {
    const int rank = args.rank.value_or(args.m);
    const DmtCurve reference = unconstrained_dmt(args.m, args.n_c);
    append_curve_rows(table, reference, "unconstrained");
    curves.push_back(curve_to_json(reference, "unconstrained"));
    const DmtCurve constrained = constrained_dmt(rank, args.n_c, t);
    append_curve_rows(table, constrained, "constrained");
    curves.push_back(curve_to_json(constrained, "constrained"));
    doc["config"] = {{"m", args.m},
                     {"n_c", args.n_c},
                     {"rank", rank},
                     {"t", std::isinf(t) ? json("inf") : json(t)},
                     {"fig2", false}};
  }
  doc["curves"] = curves;
  write_text_file(args.out + ".csv", table.render());
  write_json_file(args.out + ".json", doc);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// outage

struct OutageArgs {
  std::string scenario_path;
  std::optional<int> m;
  std::optional<int> n_c;
  std::optional<std::string> t_text;
  std::optional<int> rank;
  std::optional<std::string> cov_literal;
  std::optional<std::string> snr_text;
  std::optional<double> r;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out = "outage";
};

CovarianceSpec resolve_covariance(const std::optional<std::string>& literal,
                                  const std::optional<int>& rank, int m) {
  if (literal) return parse_covariance(*literal, m);
  if (rank) {
    if (*rank < 1 || *rank > m) {
      throw ConfigError("rank must lie in [1, m]");
    }
    // Uniform power over `rank` directions keeps the trace at M.
    std::vector<double> diag(m, 0.0);
    for (int i = 0; i < *rank; ++i) {
      diag[i] = static_cast<double>(m) / *rank;
    }
    return CovarianceSpec::diagonal(std::move(diag));
  }
  return CovarianceSpec::identity(m);
}

int run_outage(const OutageArgs& args) {
  Scenario scenario;
  if (!args.scenario_path.empty()) {
    scenario = parse_scenario_file(args.scenario_path);
  }
  const int m = args.m.value_or(scenario.system.m);
  const int n_c = args.n_c.value_or(scenario.system.n_c);
  const double t = args.t_text ? parse_blocklength(*args.t_text)
                               : scenario.system.t;
  std::optional<int> rank = args.rank ? args.rank : scenario.rank;
  CovarianceSpec cov =
      args.cov_literal || !scenario.covariance
          ? resolve_covariance(args.cov_literal, rank, m)
          : *scenario.covariance;
  std::vector<double> grid = args.snr_text
                                 ? parse_number_list(*args.snr_text, true)
                                 : scenario.snr_grid;
  if (grid.empty()) throw ConfigError("outage: no SNR grid given");
  if (!args.r && scenario.r_values.size() != 1) {
    throw ConfigError("outage: need exactly one target multiplexing gain r");
  }
  const double r = args.r ? *args.r : scenario.r_values.front();
  const std::int64_t samples =
      args.samples.value_or(scenario.n_samples.value_or(100000));
  const std::uint64_t seed =
      args.seed ? *args.seed : resolve_seed(scenario.seed);
  const int workers = args.workers.value_or(scenario.workers.value_or(0));

  const OutageEstimate est =
      estimate_outage(cov, n_c, t, r, grid, samples, seed, workers);

  CsvTable table;
  table.header = {"snr", "p_hat", "ci_half_width", "hits", "n_samples"};
  for (std::size_t g = 0; g < est.snr_grid.size(); ++g) {
    table.rows.push_back({format_number(est.snr_grid[g]),
                          format_number(est.p_hat[g]),
                          format_number(est.ci_half_width[g]),
                          std::to_string(est.hits[g]),
                          std::to_string(est.n_samples)});
  }

  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "outage";
  doc["config"] = {{"m", m},
                   {"n_c", n_c},
                   {"t", std::isinf(t) ? json("inf") : json(t)},
                   {"rank", cov.rank()},
                   {"r", r},
                   {"n_samples", samples},
                   {"seed", seed},
                   {"workers", workers},
                   {"snr_grid", est.snr_grid}};
  if (std::isnan(est.fitted_slope)) {
    doc["fitted_slope"] = nullptr;
    doc["slope_stderr"] = nullptr;
  } else {
    doc["fitted_slope"] = est.fitted_slope;
    doc["slope_stderr"] = std::isnan(est.slope_stderr)
                              ? json(nullptr)
                              : json(est.slope_stderr);
  }
  // Closed-form diversity target, when the regime admits one.
  if (cov.rank() <= n_c && (std::isinf(t) || t >= n_c)) {
    const double theory =
        constrained_dmt(static_cast<int>(cov.rank()), n_c, t).evaluate(r);
    doc["theory_d"] = theory;
    if (!std::isnan(est.fitted_slope) && theory > 0.0) {
      doc["slope_relative_error"] =
          std::abs(-est.fitted_slope - theory) / theory;
    }
  }
  write_text_file(args.out + ".csv", table.render());
  write_json_file(args.out + ".json", doc);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// geometry

struct GeometryArgs {
  std::optional<std::string> alpha_text;
  int m = 1;
  std::string t_text = "4";
  std::optional<std::string> sigma_text;
  std::optional<int> n;
  std::string snr_text = "100";
  double delta = 0.5;
  std::string out = "geometry";
};

int run_geometry(const GeometryArgs& args) {
  const std::vector<double> snr_grid = parse_number_list(args.snr_text, true);
  CsvTable table;
  table.header = {"snr",
                  "sigma_min",
                  "max_second_fundamental_form",
                  "tube_radius_lower",
                  "injectivity_radius_lower",
                  "c_bound",
                  "log_volume_nats",
                  "log_volume_bits",
                  "entropy_approx_nats",
                  "entropy_approx_bits",
                  "error_bound_shape"};
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "geometry";
  json rows = json::array();

  std::vector<double> alpha;
  std::vector<double> sigma;
  if (args.sigma_text) {
    sigma = parse_number_list(*args.sigma_text, false);
    if (!args.n) throw ConfigError("geometry: --sigma needs --n");
  } else if (args.alpha_text) {
    alpha = parse_number_list(*args.alpha_text, false);
    if (!std::is_sorted(alpha.begin(), alpha.end())) {
      throw ConfigError("geometry: alpha must ascend");
    }
  } else {
    throw ConfigError("geometry: give either --alpha or --sigma");
  }

  for (const double snr : snr_grid) {
    try {
      const double t = parse_blocklength(args.t_text);
      if (!args.sigma_text && std::isinf(t)) {
        throw ConfigError("geometry: blocklength must be finite");
      }
      const GeneralizedStiefel manifold =
          args.sigma_text
              ? GeneralizedStiefel::from_sigma(sigma, *args.n)
              : make_snr_manifold(static_cast<Eigen::Index>(t), args.m, alpha,
                                  snr);
      const GeometryReport report = geometry_bounds(manifold);
      const EntropyApprox entropy =
          entropy_approximation(manifold, args.delta, snr);
      table.rows.push_back({format_number(snr),
                            format_number(manifold.sigma_min()),
                            format_number(report.max_second_fundamental_form),
                            format_number(report.tube_radius_lower),
                            format_number(report.injectivity_radius_lower),
                            format_number(report.c_bound),
                            format_number(report.log_volume),
                            format_number(report.log_volume * kNatsToBits),
                            format_number(entropy.approx),
                            format_number(entropy.approx * kNatsToBits),
                            format_number(entropy.error_bound_shape)});
      rows.push_back({{"snr", snr},
                      {"sigma_min", manifold.sigma_min()},
                      {"max_second_fundamental_form",
                       report.max_second_fundamental_form},
                      {"tube_radius_lower", report.tube_radius_lower},
                      {"injectivity_radius_lower",
                       report.injectivity_radius_lower},
                      {"c_bound", report.c_bound},
                      {"log_volume_nats", report.log_volume},
                      {"log_volume_bits", report.log_volume * kNatsToBits},
                      {"entropy_approx_nats", entropy.approx},
                      {"entropy_approx_bits", entropy.approx * kNatsToBits},
                      {"error_bound_shape", entropy.error_bound_shape}});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("geometry: ") + e.what());
    }
  }
  json config = {{"delta", args.delta}, {"snr_grid", snr_grid}};
  if (args.sigma_text) {
    config["sigma"] = sigma;
    config["n"] = *args.n;
  } else {
    config["alpha"] = alpha;
    config["m"] = args.m;
    config["t"] = args.t_text;
  }
  doc["config"] = config;
  doc["rows"] = rows;
  doc["units"] = {{"log_volume", "nats and bits as labeled"},
                  {"entropy_approx", "nats and bits as labeled"}};
  write_text_file(args.out + ".csv", table.render());
  write_json_file(args.out + ".json", doc);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bcrb

struct BcrbArgs {
  int m = 3;
  std::optional<int> n_s;
  std::string t_text = "10";
  std::string etas_text = "10";
  std::optional<std::string> cov_literal;
  std::string out = "bcrb";
};

int run_bcrb(const BcrbArgs& args) {
  const double t = parse_blocklength(args.t_text);
  if (std::isinf(t)) throw ConfigError("bcrb: blocklength must be finite");
  const int n_s = args.n_s.value_or(args.m);  // sensing array defaults to Tx size
  const std::vector<double> etas = parse_number_list(args.etas_text, true);
  CovarianceSpec cov = args.cov_literal
                           ? parse_covariance(*args.cov_literal, args.m)
                           : CovarianceSpec::identity(args.m);
  if (cov.dim() != args.m) throw ConfigError("bcrb: covariance dimension != m");

  CsvTable table;
  table.header = {"eta_s", "bcrb"};
  json rows = json::array();
  for (const double eta : etas) {
    const SensingModel model{n_s, eta, t, args.m,
                             SensingKind::kChannelEstimation};
    const double e = bcrb_channel_estimation(cov, model);
    table.rows.push_back({format_number(eta), format_number(e)});
    rows.push_back({{"eta_s", eta}, {"bcrb", e}});
  }
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "bcrb";
  doc["config"] = {{"m", args.m},
                   {"n_s", n_s},
                   {"t", t},
                   {"rank", cov.rank()},
                   {"eta_s_grid", etas}};
  doc["rows"] = rows;
  write_text_file(args.out + ".csv", table.render());
  write_json_file(args.out + ".json", doc);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string kind = "haar";
  int rows = 2;
  int cols = 2;
  int k = 2;
  int n = 4;
  std::optional<std::string> sigma_text;
  std::optional<std::string> cov_literal;
  int m = 2;
  int n_c = 2;
  std::string snr_text = "100";
  int count = 1;
  std::optional<std::uint64_t> seed;
  std::string out = "sample";
};

int run_sample(const SampleArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  PhiloxRng rng(seed);
  CsvTable table;
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "sample";
  json config = {{"kind", args.kind}, {"count", args.count}, {"seed", seed}};

  auto append_matrix = [&table](int draw, const ComplexMatrix& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        table.rows.push_back({std::to_string(draw), std::to_string(i),
                              std::to_string(j), format_number(x(i, j).real()),
                              format_number(x(i, j).imag())});
      }
    }
  };

  if (args.kind == "ginibre") {
    table.header = {"draw", "row", "col", "re", "im"};
    config["rows"] = args.rows;
    config["cols"] = args.cols;
    for (int d = 0; d < args.count; ++d) {
      append_matrix(d, sample_ginibre(args.rows, args.cols, rng));
    }
  } else if (args.kind == "haar") {
    table.header = {"draw", "row", "col", "re", "im"};
    config["k"] = args.k;
    config["n"] = args.n;
    for (int d = 0; d < args.count; ++d) {
      append_matrix(d, haar_stiefel(args.k, args.n, rng));
    }
  } else if (args.kind == "stiefel") {
    if (!args.sigma_text) throw ConfigError("sample stiefel: needs --sigma");
    const std::vector<double> sigma = parse_number_list(*args.sigma_text, false);
    const GeneralizedStiefel manifold =
        GeneralizedStiefel::from_sigma(sigma, args.n);
    table.header = {"draw", "row", "col", "re", "im"};
    config["sigma"] = sigma;
    config["n"] = args.n;
    for (int d = 0; d < args.count; ++d) {
      append_matrix(d, uniform_sample(manifold, rng));
    }
  } else if (args.kind == "alpha") {
    const CovarianceSpec cov =
        args.cov_literal ? parse_covariance(*args.cov_literal, args.m)
                         : CovarianceSpec::identity(args.m);
    const double snr = parse_snr(args.snr_text);
    AlphaSampler sampler(cov, args.n_c, snr);
    table.header = {"draw", "index", "alpha"};
    config["m"] = args.m;
    config["n_c"] = args.n_c;
    config["snr"] = snr;
    config["rank"] = cov.rank();
    for (int d = 0; d < args.count; ++d) {
      const AlphaSample s = sampler.sample(rng);
      for (std::size_t i = 0; i < s.alpha.size(); ++i) {
        table.rows.push_back({std::to_string(d), std::to_string(i),
                              format_number(s.alpha[i])});
      }
    }
  } else {
    throw ConfigError("sample: unknown kind '" + args.kind +
                      "' (ginibre, haar, stiefel, alpha)");
  }
  doc["config"] = config;
  write_text_file(args.out + ".csv", table.render());
  write_json_file(args.out + ".json", doc);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensing-constrained diversity-multiplexing tradeoff toolkit"};
  app.require_subcommand(1);

  DmtArgs dmt_args;
  auto* dmt_cmd = app.add_subcommand("dmt", "closed-form tradeoff curves");
  dmt_cmd->add_option("--m", dmt_args.m, "Tx antennas");
  dmt_cmd->add_option("--nc", dmt_args.n_c, "Rx antennas");
  int dmt_rank = -1;
  dmt_cmd->add_option("--rank", dmt_rank, "covariance rank (default m)");
  dmt_cmd->add_option("--t", dmt_args.t_text, "blocklength (number or inf)");
  dmt_cmd->add_flag("--fig2", dmt_args.fig2,
                    "multi-target family: M = N_c = 10, N_t in {2,4,6,8,10}");
  dmt_cmd->add_option("--out", dmt_args.out, "output prefix");

  OutageArgs outage_args;
  auto* outage_cmd =
      app.add_subcommand("outage", "Monte Carlo outage probability");
  std::string outage_t, outage_snr, outage_cov;
  int outage_m = -1, outage_nc = -1, outage_rank = -1, outage_workers = -1;
  double outage_r = -1.0;
  std::int64_t outage_samples = -1;
  std::uint64_t outage_seed = 0;
  auto* outage_seed_opt =
      outage_cmd->add_option("--seed", outage_seed, "RNG seed");
  outage_cmd->add_option("--scenario", outage_args.scenario_path,
                         "scenario file (key = value lines)");
  outage_cmd->add_option("--m", outage_m, "Tx antennas");
  outage_cmd->add_option("--nc", outage_nc, "Rx antennas");
  outage_cmd->add_option("--t", outage_t, "blocklength");
  outage_cmd->add_option("--rank", outage_rank,
                         "uniform-power covariance of this rank");
  outage_cmd->add_option("--cov", outage_cov,
                         "covariance literal (identity, diag:[...], matrix:[...])");
  outage_cmd->add_option("--r", outage_r, "target multiplexing gain");
  outage_cmd->add_option("--snr", outage_snr, "SNR grid, comma separated");
  outage_cmd->add_option("--samples", outage_samples, "samples per grid point");
  outage_cmd->add_option("--workers", outage_workers,
                         "worker threads (0 = hardware)");
  outage_cmd->add_option("--out", outage_args.out, "output prefix");

  GeometryArgs geometry_args;
  auto* geometry_cmd =
      app.add_subcommand("geometry", "manifold geometry report");
  std::string geometry_alpha, geometry_sigma;
  int geometry_n = -1;
  geometry_cmd->add_option("--alpha", geometry_alpha,
                           "ascending exponents, comma separated");
  geometry_cmd->add_option("--m", geometry_args.m, "Tx antennas");
  geometry_cmd->add_option("--t", geometry_args.t_text, "blocklength");
  geometry_cmd->add_option("--sigma", geometry_sigma,
                           "direct manifold scales (alternative to --alpha)");
  geometry_cmd->add_option("--n", geometry_n, "columns when using --sigma");
  geometry_cmd->add_option("--snr", geometry_args.snr_text,
                           "SNR value or sweep, comma separated");
  geometry_cmd->add_option("--delta", geometry_args.delta,
                           "entropy bound exponent in (0, 1]");
  geometry_cmd->add_option("--out", geometry_args.out, "output prefix");

  BcrbArgs bcrb_args;
  auto* bcrb_cmd = app.add_subcommand("bcrb", "sensing BCRB sweep");
  int bcrb_ns = -1;
  std::string bcrb_cov;
  bcrb_cmd->add_option("--m", bcrb_args.m, "Tx antennas");
  bcrb_cmd->add_option("--ns", bcrb_ns, "sensing Rx antennas (default m)");
  bcrb_cmd->add_option("--t", bcrb_args.t_text, "blocklength");
  bcrb_cmd->add_option("--etas", bcrb_args.etas_text,
                       "sensing SNR grid (dB suffix allowed)");
  bcrb_cmd->add_option("--cov", bcrb_cov, "covariance literal");
  bcrb_cmd->add_option("--out", bcrb_args.out, "output prefix");

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "dump raw draws");
  std::uint64_t sample_seed = 0;
  auto* sample_seed_opt =
      sample_cmd->add_option("--seed", sample_seed, "RNG seed");
  std::string sample_sigma, sample_cov;
  sample_cmd->add_option("--kind", sample_args.kind,
                         "ginibre | haar | stiefel | alpha");
  sample_cmd->add_option("--rows", sample_args.rows, "ginibre rows");
  sample_cmd->add_option("--cols", sample_args.cols, "ginibre cols");
  sample_cmd->add_option("--k", sample_args.k, "haar frame rows");
  sample_cmd->add_option("--n", sample_args.n, "columns");
  sample_cmd->add_option("--sigma", sample_sigma, "stiefel scales");
  sample_cmd->add_option("--cov", sample_cov, "alpha covariance literal");
  sample_cmd->add_option("--m", sample_args.m, "alpha Tx antennas");
  sample_cmd->add_option("--nc", sample_args.n_c, "alpha Rx antennas");
  sample_cmd->add_option("--snr", sample_args.snr_text,
                         "alpha SNR (dB suffix allowed)");
  sample_cmd->add_option("--count", sample_args.count, "number of draws");
  sample_cmd->add_option("--out", sample_args.out, "output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*dmt_cmd) {
      if (dmt_rank >= 0) dmt_args.rank = dmt_rank;
      return run_dmt(dmt_args);
    }
    if (*outage_cmd) {
      if (outage_m >= 0) outage_args.m = outage_m;
      if (outage_nc >= 0) outage_args.n_c = outage_nc;
      if (!outage_t.empty()) outage_args.t_text = outage_t;
      if (outage_rank >= 0) outage_args.rank = outage_rank;
      if (!outage_cov.empty()) outage_args.cov_literal = outage_cov;
      if (!outage_snr.empty()) outage_args.snr_text = outage_snr;
      if (outage_r >= 0.0) outage_args.r = outage_r;
      if (outage_samples >= 0) outage_args.samples = outage_samples;
      if (!outage_seed_opt->empty()) outage_args.seed = outage_seed;
      if (outage_workers >= 0) outage_args.workers = outage_workers;
      return run_outage(outage_args);
    }
    if (*geometry_cmd) {
      if (!geometry_alpha.empty()) geometry_args.alpha_text = geometry_alpha;
      if (!geometry_sigma.empty()) geometry_args.sigma_text = geometry_sigma;
      if (geometry_n >= 0) geometry_args.n = geometry_n;
      return run_geometry(geometry_args);
    }
    if (*bcrb_cmd) {
      if (bcrb_ns >= 0) bcrb_args.n_s = bcrb_ns;
      if (!bcrb_cov.empty()) bcrb_args.cov_literal = bcrb_cov;
      return run_bcrb(bcrb_args);
    }
    if (*sample_cmd) {
      if (!sample_seed_opt->empty()) sample_args.seed = sample_seed;
      if (!sample_sigma.empty()) sample_args.sigma_text = sample_sigma;
      if (!sample_cov.empty()) sample_args.cov_literal = sample_cov;
      return run_sample(sample_args);
    }
  } catch (const RareEventError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
