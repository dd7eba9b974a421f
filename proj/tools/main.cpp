#include "cpe/cli.hpp"
#include "cpe/common.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// Product factor tokens are positional: "jacobi:ALPHA:GAMMA", "gauss:T",
// "ginibre:NU", "rank1:G1:G2:...", "haar", "haar-binomial".
cpe::EnsembleSpec parse_factor(const std::string& token) {
  std::vector<std::string> parts;
  std::stringstream ss(token);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw CLI::ValidationError("--product", "empty factor");
  const std::string& name = parts[0];
  auto want = [&](std::size_t k) {
    if (parts.size() != k + 1)
      throw CLI::ValidationError("--product", "factor \"" + name + "\" takes " +
                                                  std::to_string(k) + " value(s)");
  };
  if (name == "haar") { want(0); return cpe::make_haar(cpe::HaarVariant::Geometric); }
  if (name == "haar-binomial") { want(0); return cpe::make_haar(cpe::HaarVariant::Binomial); }
  if (name == "jacobi") { want(2); return cpe::make_jacobi(std::stod(parts[1]), std::stod(parts[2])); }
  if (name == "gauss") { want(1); return cpe::make_gauss(std::stod(parts[1])); }
  if (name == "ginibre") { want(1); return cpe::make_ginibre(std::stod(parts[1])); }
  if (name == "rank1") {
    std::vector<double> gs;
    for (std::size_t i = 1; i < parts.size(); ++i) gs.push_back(std::stod(parts[i]));
    return cpe::make_rank1(gs);
  }
  throw CLI::ValidationError("--product", "unknown factor family: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cpe: eigenvalue statistics of unitary-matrix ensembles whose spherical "
      "transform is a ratio of Laurent coefficients"};
  app.require_subcommand(0, 0);

  std::string command, config_path, ensemble_name, variant = "geometric";
  std::string gammas_text, product_text, fixed_text, out_path;
  double alpha = 1.0, gamma = 0.0, t = 0.5, nu = 0.0, phase = 0.0, tol = -1.0;
  int n = -1, threads = -1;
  std::uint64_t seed = 0;
  bool inverse = false;

  app.add_option("command", command,
                 "kernel | density | sample | transform | verify")
      ->required();
  auto* oconfig = app.add_option("--config", config_path, "JSON job description; flags override it");
  auto* on = app.add_option("--n", n, "matrix dimension");
  auto* oout = app.add_option("--out", out_path, "output CSV path (default stdout)");
  auto* oseed = app.add_option("--seed", seed, "RNG seed");
  auto* othreads = app.add_option("--threads", threads, "worker threads (0 = CPE_THREADS env or hardware)");
  auto* otol = app.add_option("--tol", tol, "tolerance knob recorded in the job");
  auto* oens = app.add_option("--ensemble", ensemble_name, "haar | jacobi | gauss | ginibre | rank1");
  auto* ovariant = app.add_option("--variant", variant, "haar variant: geometric | binomial");
  auto* oalpha = app.add_option("--alpha", alpha, "jacobi exponent, > -1");
  auto* ogamma = app.add_option("--gamma", gamma, "jacobi asymmetry");
  auto* ot = app.add_option("--t", t, "gauss time parameter, > 0");
  auto* onu = app.add_option("--nu", nu, "ginibre parameter, > -1");
  auto* ogammas = app.add_option("--gammas", gammas_text, "rank1 parameters, comma separated");
  auto* oproduct = app.add_option("--product", product_text,
                                  "independent product, comma separated factors like "
                                  "jacobi:1:0.3,gauss:0.5 (overrides --ensemble)");
  auto* ophase = app.add_option("--phase", phase, "rotate the ensemble by exp(i*phase)");
  auto* oinverse = app.add_flag("--inverse", inverse, "invert the ensemble (reverses eigenvalue angles)");
  auto* ofixed = app.add_option("--fixed-angles", fixed_text,
                                "condition on a fixed factor with these eigenvalue angles, "
                                "comma separated");

  CLI11_PARSE(app, argc, argv);

  cpe::JobConfig job;
  try {
    if (oconfig->count() > 0) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config file: " << config_path << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      job = cpe::parse_config(buf.str());
    }
    job.command = command;
    if (on->count()) job.n = n;
    if (oout->count()) job.out = out_path;
    if (oseed->count()) job.seed = seed;
    if (othreads->count()) job.threads = threads;
    if (otol->count()) job.tol = tol;

    const bool family_flags = oens->count() || oproduct->count();
    if (family_flags) {
      cpe::EnsembleSpec spec = cpe::make_haar();
      if (oproduct->count()) {
        std::vector<cpe::EnsembleSpec> factors;
        std::stringstream ss(product_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) factors.push_back(parse_factor(tok));
        spec = factors.size() == 1 ? factors[0] : cpe::make_product(factors);
      } else if (ensemble_name == "haar") {
        if (ovariant->count() && variant == "binomial")
          spec = cpe::make_haar(cpe::HaarVariant::Binomial);
        else
          spec = cpe::make_haar(cpe::HaarVariant::Geometric);
      } else if (ensemble_name == "jacobi") {
        spec = cpe::make_jacobi(alpha, gamma);
      } else if (ensemble_name == "gauss") {
        spec = cpe::make_gauss(t);
      } else if (ensemble_name == "ginibre") {
        spec = cpe::make_ginibre(nu);
      } else if (ensemble_name == "rank1") {
        spec = cpe::make_rank1(parse_double_list(gammas_text));
      } else {
        std::cerr << "error: unknown ensemble: " << ensemble_name << "\n";
        return 2;
      }
      if (ophase->count()) spec = cpe::make_phase_shift(std::polar(1.0, phase), spec);
      if (oinverse->count()) spec = cpe::make_inverse(spec);
      if (ofixed->count())
        spec = cpe::make_fixed_times(parse_double_list(fixed_text), spec);
      job.ensemble = spec;
    } else if (oconfig->count() == 0 && command != "verify") {
      std::cerr << "error: specify an ensemble via --ensemble/--product or --config\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  return cpe::run(job, std::cerr);
}
