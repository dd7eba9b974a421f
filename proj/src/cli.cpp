#include "cpe/cli.hpp"

#include "cpe/common.hpp"
#include "cpe/density.hpp"
#include "cpe/kernel.hpp"
#include "cpe/laurent.hpp"
#include "cpe/sampling.hpp"
#include "cpe/spherical.hpp"
#include "cpe/verify.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace cpe {
namespace {

using nlohmann::json;

EnsembleSpec ensemble_from_object(const json& j);

std::vector<EnsembleSpec> inner_list(const json& j, const char* key) {
  std::vector<EnsembleSpec> out;
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
    fail(std::string("ensemble config: missing or empty \"") + key + "\"");
  for (const auto& item : j.at(key)) out.push_back(ensemble_from_object(item));
  return out;
}

EnsembleSpec ensemble_from_object(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail("ensemble config: expected an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "haar") {
    const std::string variant = j.value("variant", std::string("geometric"));
    if (variant == "custom") {
      if (!j.contains("weight")) fail("haar custom variant needs a \"weight\" object");
      return make_custom_haar(weight_from_json(j.at("weight").dump()));
    }
    if (variant == "geometric") return make_haar(HaarVariant::Geometric);
    if (variant == "binomial") return make_haar(HaarVariant::Binomial);
    fail("unknown haar variant: " + variant);
  }
  if (kind == "jacobi")
    return make_jacobi(j.at("alpha").get<double>(), j.value("gamma", 0.0));
  if (kind == "gauss") return make_gauss(j.at("t").get<double>());
  if (kind == "ginibre") return make_ginibre(j.at("nu").get<double>());
  if (kind == "rank1") {
    auto gammas = j.at("gammas").get<std::vector<double>>();
    return make_rank1(gammas);
  }
  if (kind == "phase_shift") {
    const double phi = j.at("phase").get<double>();
    return make_phase_shift(std::polar(1.0, phi),
                            ensemble_from_object(j.at("inner")));
  }
  if (kind == "inverse") return make_inverse(ensemble_from_object(j.at("inner")));
  if (kind == "product") return make_product(inner_list(j, "factors"));
  if (kind == "fixed_times") {
    auto angles = j.at("angles").get<std::vector<double>>();
    return make_fixed_times(angles, ensemble_from_object(j.at("inner")));
  }
  fail("unknown ensemble kind: " + kind);
}

json ensemble_to_object(const EnsembleSpec& spec) {
  json j;
  switch (spec.kind) {
    case EnsembleKind::Haar:
      j["kind"] = "haar";
      if (spec.variant == HaarVariant::Geometric) j["variant"] = "geometric";
      else if (spec.variant == HaarVariant::Binomial) j["variant"] = "binomial";
      else {
        j["variant"] = "custom";
        j["weight"] = json::parse(weight_to_json(spec.custom));
      }
      break;
    case EnsembleKind::Jacobi:
      j["kind"] = "jacobi";
      j["alpha"] = spec.alpha;
      j["gamma"] = spec.gamma;
      break;
    case EnsembleKind::Gauss:
      j["kind"] = "gauss";
      j["t"] = spec.t;
      break;
    case EnsembleKind::Ginibre:
      j["kind"] = "ginibre";
      j["nu"] = spec.nu;
      break;
    case EnsembleKind::Rank1Product:
      j["kind"] = "rank1";
      j["gammas"] = spec.gammas;
      break;
    case EnsembleKind::PhaseShift:
      j["kind"] = "phase_shift";
      j["phase"] = std::arg(spec.z0);
      j["inner"] = ensemble_to_object(spec.inner.at(0));
      break;
    case EnsembleKind::Inverse:
      j["kind"] = "inverse";
      j["inner"] = ensemble_to_object(spec.inner.at(0));
      break;
    case EnsembleKind::Product: {
      j["kind"] = "product";
      json factors = json::array();
      for (const auto& f : spec.inner) factors.push_back(ensemble_to_object(f));
      j["factors"] = factors;
      break;
    }
    case EnsembleKind::FixedTimes:
      j["kind"] = "fixed_times";
      j["angles"] = spec.fixed_angles;
      j["inner"] = ensemble_to_object(spec.inner.at(0));
      break;
  }
  return j;
}

json job_to_object(const JobConfig& job) {
  json j;
  j["command"] = job.command;
  j["n"] = job.n;
  j["ensemble"] = ensemble_to_object(job.ensemble);
  j["seed"] = job.seed;
  j["threads"] = job.threads;
  j["tol"] = job.tol;
  j["grid"] = job.grid;
  j["samples"] = job.samples;
  j["bins"] = job.bins;
  if (!job.out.empty()) j["out"] = job.out;
  return j;
}

// All CSV payloads use %.17g so a round trip through text is lossless.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CsvSink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os;

  explicit CsvSink(const std::string& path) {
    if (path.empty()) {
      os = &std::cout;
    } else {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) fail("cannot open output file: " + path);
      os = file.get();
    }
  }
  void comment(const std::string& text) { *os << "# " << text << "\n"; }
  void header(const std::string& cols) { *os << cols << "\n"; }
  template <typename... T>
  void row(T... vals) {
    bool first = true;
    ((*os << (first ? "" : ","), first = false, *os << vals), ...);
    *os << "\n";
  }
};

CsvSink open_sink(const JobConfig& job) {
  CsvSink sink(job.out);
  sink.comment(job_to_object(job).dump());
  return sink;
}

int cmd_transform(const JobConfig& job) {
  const LaurentWeight w = resolve_weight(job.ensemble, job.n);
  CsvSink sink = open_sink(job);
  sink.comment("coefficients of the spherical transform, u_s for s in ["
               + std::to_string(w.s_lo) + "," + std::to_string(w.s_hi()) + "]");
  sink.header("s,re,im");
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    const cplx u = w.coeff(s);
    sink.row(s, fmt17(u.real()), fmt17(u.imag()));
  }
  return 0;
}

int cmd_kernel(const JobConfig& job) {
  const int M = job.grid;
  if (M < 2) fail("kernel: grid must be at least 2");
  CsvSink sink = open_sink(job);
  sink.header("i,j,theta1,theta2,re,im");
  if (job.ensemble.kind == EnsembleKind::FixedTimes) {
    const LaurentWeight w = resolve_weight(job.ensemble.inner.at(0), job.n);
    EigenAngles x(job.ensemble.fixed_angles);
    for (int i = 0; i < M; ++i) {
      const double t1 = -pi + 2.0 * pi * i / M;
      for (int j = 0; j < M; ++j) {
        const double t2 = -pi + 2.0 * pi * j / M;
        const cplx k = kernel_fixed(w, x, std::polar(1.0, t1), std::polar(1.0, t2),
                                    FixedMethod::Series);
        sink.row(i, j, fmt17(t1), fmt17(t2), fmt17(k.real()), fmt17(k.imag()));
      }
    }
    return 0;
  }
  const LaurentWeight w = resolve_weight(job.ensemble, job.n);
  const KernelGrid grid = kernel_grid(w, M, M, KernelMethod::Series);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      const cplx k = grid.K(i, j);
      sink.row(i, j, fmt17(grid.th1[i]), fmt17(grid.th2[j]), fmt17(k.real()),
               fmt17(k.imag()));
    }
  return 0;
}

int cmd_density(const JobConfig& job) {
  const int M = job.grid;
  if (M < 2) fail("density: grid must be at least 2");
  CsvSink sink = open_sink(job);
  sink.comment("one-point eigenvalue density R_1(theta), normalized so that "
               "its mean over the circle equals n");
  sink.header("theta,r1");
  if (job.ensemble.kind == EnsembleKind::FixedTimes) {
    const LaurentWeight w = resolve_weight(job.ensemble.inner.at(0), job.n);
    EigenAngles x(job.ensemble.fixed_angles);
    for (int i = 0; i < M; ++i) {
      const double t = -pi + 2.0 * pi * i / M;
      const cplx z = std::polar(1.0, t);
      const cplx k = kernel_fixed(w, x, z, z, FixedMethod::Series);
      sink.row(fmt17(t), fmt17(k.real()));
    }
    return 0;
  }
  const LaurentWeight w = resolve_weight(job.ensemble, job.n);
  const BiorthSystem sys = biorth_polya(w);
  for (int i = 0; i < M; ++i) {
    const double t = -pi + 2.0 * pi * i / M;
    const cplx z = std::polar(1.0, t);
    sink.row(fmt17(t), fmt17(sys.kernel(z, z).real()));
  }
  return 0;
}

// Matches the kinds sample_polya_product knows how to draw directly.
bool directly_samplable(const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::Haar:
      return spec.variant == HaarVariant::Geometric;
    case EnsembleKind::Rank1Product:
      return true;
    case EnsembleKind::PhaseShift:
    case EnsembleKind::Inverse:
    case EnsembleKind::Product:
      for (const auto& inner : spec.inner)
        if (!directly_samplable(inner)) return false;
      return true;
    default:
      return false;
  }
}

int cmd_sample(const JobConfig& job) {
  SampleBatch batch;
  const bool direct = directly_samplable(job.ensemble);
  if (direct) {
    batch = sample_polya_product(job.ensemble, job.n, job.samples, job.seed,
                                 job.threads);
  } else {
    // No exact sampler for this ensemble; fall back to Metropolis on the
    // joint density.
    if (job.ensemble.kind == EnsembleKind::FixedTimes) {
      const LaurentWeight w = resolve_weight(job.ensemble.inner.at(0), job.n);
      EigenAngles x(job.ensemble.fixed_angles);
      auto target = [&](const EigenAngles& th) {
        return jpdf_fixed_product(w, th, x);
      };
      batch = metropolis_sample(target, job.n, job.samples, job.seed, {});
    } else {
      const LaurentWeight w = resolve_weight(job.ensemble, job.n);
      auto target = [&](const EigenAngles& th) { return jpdf_polya(w, th); };
      batch = metropolis_sample(target, job.n, job.samples, job.seed, {});
    }
  }
  CsvSink sink = open_sink(job);
  sink.comment(direct ? "sampler: exact (matrix model)"
                      : "sampler: metropolis on the joint density");
  sink.header("sample,slot,theta");
  for (std::size_t k = 0; k < batch.angles.size(); ++k)
    for (int j = 0; j < job.n; ++j)
      sink.row(k, j, fmt17(batch.angles[k][j]));
  return 0;
}

}  // namespace

JobConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  JobConfig job;
  job.command = j.value("command", std::string());
  job.n = j.value("n", 2);
  if (j.contains("ensemble")) job.ensemble = ensemble_from_object(j.at("ensemble"));
  job.out = j.value("out", std::string());
  job.seed = j.value("seed", std::uint64_t{12345});
  job.threads = j.value("threads", 0);
  job.tol = j.value("tol", 1e-9);
  job.grid = j.value("grid", 256);
  job.samples = j.value("samples", long{10000});
  job.bins = j.value("bins", 64);
  job.config_json = json_text;
  return job;
}

EnsembleSpec ensemble_from_json(const std::string& json_text) {
  return ensemble_from_object(json::parse(json_text));
}

int run(const JobConfig& job, std::ostream& log) {
  try {
    if (job.n < 1) fail("n must be positive");
    if (job.command == "transform") return cmd_transform(job);
    if (job.command == "kernel") return cmd_kernel(job);
    if (job.command == "density") return cmd_density(job);
    if (job.command == "sample") return cmd_sample(job);
    if (job.command == "verify") return run_acceptance(log) ? 0 : 1;
    fail("unknown command: \"" + job.command +
         "\" (expected kernel, density, sample, transform, or verify)");
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cpe
