#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandpoly/band_model.hpp"
#include "bandpoly/crossover_model.hpp"
#include "bandpoly/gaussian_spectral.hpp"
#include "bandpoly/mc_lab.hpp"
#include "bandpoly/rng.hpp"
#include "bandpoly/scan.hpp"
#include "bandpoly/unitary_harmonics.hpp"
#include "bandpoly/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

std::complex<double> parse_complex(const std::string& s, const char* field) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re))
    throw std::invalid_argument(std::string(field) + ": expected 're' or 're,im'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw std::invalid_argument(std::string(field) + ": expected 're' or 're,im'");
  }
  return {re, im};
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.size() < 2)
    throw std::invalid_argument("w-grid: need at least 2 comma-separated values");
  return out;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("out: cannot open " + out_path);
    f << content;
  }
}

std::string csv_preamble(const json& config) {
  return "# schema_version=" + std::to_string(kSchemaVersion) +
         " config=" + config.dump() + "\n";
}

struct CommonArgs {
  int n = 64;
  double w = 8.0;
  std::string z_str = "0";
  std::string zeta_str = "0";
  std::string w_grid_str;
  std::size_t samples = 20'000;
  std::uint64_t seed = 1;
  int m0 = 0;
  int workers = 0;
  std::string out;
  std::string format = "csv";
  std::string filter;
};

void validate_common(const CommonArgs& a, bool needs_samples) {
  if (a.n < 1) throw std::invalid_argument("n: must be >= 1");
  if (!(a.w > 0.0)) throw std::invalid_argument("w: must be > 0");
  if (needs_samples && a.samples < 100)
    throw std::invalid_argument("samples: must be >= 100");
  if (a.format != "csv" && a.format != "json")
    throw std::invalid_argument("format: must be csv or json");
}

json config_json(const std::string& command, const CommonArgs& a) {
  json c;
  c["command"] = command;
  c["n"] = a.n;
  c["w"] = a.w;
  c["z"] = a.z_str;
  c["zeta"] = a.zeta_str;
  if (!a.w_grid_str.empty()) c["w_grid"] = a.w_grid_str;
  c["samples"] = a.samples;
  c["seed"] = a.seed;
  c["m0"] = a.m0;
  c["workers"] = a.workers;
  return c;
}

int cmd_profile(const CommonArgs& a) {
  validate_common(a, false);
  const bandpoly::BandProfile p = bandpoly::build_profile(a.n, a.w);
  const double row_sum_error =
      (p.j.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const int band = static_cast<int>(5.0 * a.w);
  const json config = config_json("profile", a);

  if (a.format == "json") {
    json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["config"] = config;
    rec["n"] = a.n;
    rec["w"] = a.w;
    rec["row_sum_error"] = row_sum_error;
    json entries = json::array();
    for (int j = 0; j < a.n; ++j)
      for (int k = std::max(0, j - band); k < std::min(a.n, j + band + 1); ++k)
        entries.push_back({j, k, p.j(j, k)});
    rec["entries"] = entries;
    emit(a.out, rec.dump(2) + "\n");
  } else {
    std::string csv = csv_preamble(config) + "j,k,J_jk\n";
    for (int j = 0; j < a.n; ++j)
      for (int k = std::max(0, j - band); k < std::min(a.n, j + band + 1); ++k)
        csv += std::to_string(j) + "," + std::to_string(k) + "," +
               sci(p.j(j, k)) + "\n";
    emit(a.out, csv);
  }
  return 0;
}

int cmd_mc_ratio(const CommonArgs& a) {
  validate_common(a, true);
  const std::complex<double> z = parse_complex(a.z_str, "z");
  const std::complex<double> zeta = parse_complex(a.zeta_str, "zeta");
  const bandpoly::SpectralPoint point =
      bandpoly::make_spectral_point(z, zeta, a.n, a.w);
  const auto t0 = std::chrono::steady_clock::now();
  const bandpoly::RatioResult r =
      bandpoly::estimate_ratios(point, a.samples, a.seed, a.workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["config"] = config_json("mc-ratio", a);
  rec["n"] = a.n;
  rec["w"] = a.w;
  rec["z"] = a.z_str;
  rec["zeta"] = a.zeta_str;
  rec["samples"] = r.samples;
  rec["gin"] = r.gin.value;
  rec["gin_stderr"] = r.gin.stderr_;
  rec["loc"] = r.loc.value;
  rec["loc_stderr"] = r.loc.stderr_;
  rec["singular_count"] = r.singular_count;
  rec["seed"] = a.seed;
  rec["wall_time_s"] = wall;
  if (a.format == "csv") {
    std::string csv = csv_preamble(rec["config"]) +
                      "gin,gin_stderr,loc,loc_stderr,singular_count\n" +
                      sci(r.gin.value) + "," + sci(r.gin.stderr_) + "," +
                      sci(r.loc.value) + "," + sci(r.loc.stderr_) + "," +
                      std::to_string(r.singular_count) + "\n";
    emit(a.out, csv);
  } else {
    emit(a.out, rec.dump(2) + "\n");
  }
  return 0;
}

int cmd_crossover_scan(const CommonArgs& a) {
  validate_common(a, true);
  const std::complex<double> z = parse_complex(a.z_str, "z");
  const std::complex<double> zeta = parse_complex(a.zeta_str, "zeta");
  const std::vector<double> grid = parse_grid(a.w_grid_str);
  for (double w : grid)
    if (!(w > 0.0)) throw std::invalid_argument("w-grid: entries must be > 0");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("z: |z| must be < 1");

  const bandpoly::ScanResult s = bandpoly::crossover_scan(
      a.n, z, zeta, grid, a.samples, a.seed, a.m0, a.workers);
  const json config = config_json("crossover-scan", a);

  if (a.format == "json") {
    json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["config"] = config;
    json pts = json::array();
    for (const bandpoly::ScanPoint& p : s.points) {
      pts.push_back({{"w", p.w},
                     {"gin_mc", p.mc.gin.value},
                     {"gin_stderr", p.mc.gin.stderr_},
                     {"loc_mc", p.mc.loc.value},
                     {"loc_stderr", p.mc.loc.stderr_},
                     {"gin_pred", p.gin_pred},
                     {"loc_pred", p.loc_pred},
                     {"gin_limit", p.gin_limit}});
    }
    rec["points"] = pts;
    rec["gap"] = s.gap;
    rec["gap_stderr"] = s.gap_stderr;
    emit(a.out, rec.dump(2) + "\n");
  } else {
    emit(a.out, csv_preamble(config) + bandpoly::scan_csv(s));
  }
  return 0;
}

int cmd_spectra(const CommonArgs& a) {
  validate_common(a, false);
  const std::complex<double> z = parse_complex(a.z_str, "z");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("z: |z| must be < 1");
  const double u = std::sqrt(1.0 - std::norm(z));
  const bandpoly::GaussKernel1D k = bandpoly::gauss_kernel(a.w, u);
  const bandpoly::NystromGrid grid = bandpoly::nystrom_grid(a.w, u);
  const std::vector<double> eig = bandpoly::nystrom_eigs(k, grid, 9);
  const bandpoly::MehlerSpectrum mehler = bandpoly::mehler_spectrum(k, 8);

  json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["config"] = config_json("spectra", a);
  rec["w"] = a.w;
  rec["u_star"] = u;
  rec["eigenvalues"] = eig;
  json err = json::array();
  for (std::size_t m = 0; m < eig.size(); ++m)
    err.push_back(std::abs(eig[m] / mehler.eigs[m] - 1.0));
  rec["mehler_error"] = err;
  rec["grid_nodes"] = grid.nodes.size();
  emit(a.out, rec.dump(2) + "\n");
  return 0;
}

int cmd_group_integrals(const CommonArgs& a) {
  validate_common(a, false);
  const std::complex<double> z = parse_complex(a.z_str, "z");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("z: |z| must be < 1");
  const double u = std::sqrt(1.0 - std::norm(z));

  json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["config"] = config_json("group-integrals", a);
  rec["w"] = a.w;
  rec["u_star"] = u;
  json heat = json::array();
  for (int l = 1; l <= 4; ++l) {
    const double eig = bandpoly::heat_eig(l, a.w, u);
    const double closed = 1.0 - l * (l + 1) / (2.0 * u * u * a.w * a.w);
    heat.push_back({{"l", l},
                    {"eig", eig},
                    {"closed_form", closed},
                    {"deviation", std::abs(eig - closed)}});
  }
  rec["heat_eigs"] = heat;

  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  bandpoly::HermitianPair pair{0.4 * sx,
                               0.4 * sx + (0.6 / std::sqrt(a.w)) * sy};
  const bandpoly::ZExpansion zx = bandpoly::z_expansion_check(pair, a.w, u);
  rec["z_expansion"] = {{"z_quad", zx.z_quad},
                        {"delta_formula", zx.delta_formula},
                        {"remainder", zx.remainder}};
  emit(a.out, rec.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonArgs& a) {
  const std::vector<bandpoly::CriterionResult> results =
      bandpoly::run_acceptance(a.filter, a.seed, a.workers);
  bool all_pass = true;
  json rep = json::array();
  for (const bandpoly::CriterionResult& r : results) {
    std::cout << bandpoly::format_result(r) << "\n";
    rep.push_back({{"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    if (!r.pass) all_pass = false;
  }
  if (!a.out.empty()) {
    json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["config"] = {{"command", "verify"},
                     {"filter", a.filter},
                     {"seed", a.seed},
                     {"workers", a.workers}};
    rec["criteria"] = rep;
    rec["all_pass"] = all_pass;
    emit(a.out, rec.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band-matrix correlation-ratio laboratory"};
  app.require_subcommand(1);
  CommonArgs a;

  const auto add_common = [&](CLI::App* sub, bool mc) {
    sub->add_option("--n", a.n, "matrix size");
    sub->add_option("--w", a.w, "bandwidth parameter");
    sub->add_option("--z", a.z_str, "base point, 're' or 're,im'");
    sub->add_option("--zeta", a.zeta_str, "microscopic separation");
    if (mc) {
      sub->add_option("--samples", a.samples, "MC samples");
      sub->add_option("--seed", a.seed, "RNG seed");
      sub->add_option("--workers", a.workers,
                      "worker threads (0 = env/hardware)");
    }
    sub->add_option("--m0", a.m0, "model truncation level (0 = auto)");
    sub->add_option("--out", a.out, "output path (default stdout)");
    sub->add_option("--format", a.format, "csv|json");
  };

  CLI::App* profile = app.add_subcommand("profile", "band variance profile");
  add_common(profile, false);
  CLI::App* mc_ratio = app.add_subcommand("mc-ratio", "MC correlation ratios");
  add_common(mc_ratio, true);
  CLI::App* scan = app.add_subcommand("crossover-scan",
                                      "MC + model scan over a w-grid");
  add_common(scan, true);
  scan->add_option("--w-grid", a.w_grid_str, "comma-separated w values")
      ->required();
  CLI::App* spectra = app.add_subcommand("spectra", "transfer-kernel spectrum");
  add_common(spectra, false);
  CLI::App* group = app.add_subcommand("group-integrals",
                                       "unitary-sector quadratures");
  add_common(group, false);
  CLI::App* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--filter", a.filter, "run only matching criteria");
  verify->add_option("--seed", a.seed, "RNG seed");
  verify->add_option("--workers", a.workers, "worker threads");
  verify->add_option("--out", a.out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (profile->parsed()) return cmd_profile(a);
    if (mc_ratio->parsed()) return cmd_mc_ratio(a);
    if (scan->parsed()) return cmd_crossover_scan(a);
    if (spectra->parsed()) return cmd_spectra(a);
    if (group->parsed()) return cmd_group_integrals(a);
    if (verify->parsed()) return cmd_verify(a);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
