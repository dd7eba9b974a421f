#include "cpe/verify.hpp"

#include "cpe/bilateral.hpp"
#include "cpe/common.hpp"
#include "cpe/density.hpp"
#include "cpe/ensembles.hpp"
#include "cpe/gammafn.hpp"
#include "cpe/kernel.hpp"
#include "cpe/laurent.hpp"
#include "cpe/pfreq.hpp"
#include "cpe/sampling.hpp"
#include "cpe/spherical.hpp"
#include "cpe/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace cpe {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double rand_angle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  return u(rng);
}

cplx unit(double theta) { return std::polar(1.0, theta); }

// Termwise sum_{k<N} (z1/z2)^k; the closed ratio form of the same thing
// degenerates at z1 = z2, the sum never does.
cplx cue_kernel(int N, cplx z1, cplx z2) {
  const cplx r = z1 / z2;
  cplx acc(0.0, 0.0), p(1.0, 0.0);
  for (int k = 0; k < N; ++k) {
    acc += p;
    p *= r;
  }
  return acc;
}

// P and Q tabulated on a uniform M-point grid: Pm is M x N, Qm is N x M,
// so circle averages of kernel products become small matrix products.
void tabulate_system(const BiorthSystem& sys, int M, Eigen::MatrixXcd& Pm,
                     Eigen::MatrixXcd& Qm) {
  const int N = sys.N;
  Pm.resize(M, N);
  Qm.resize(N, M);
  for (int m = 0; m < M; ++m) {
    const cplx z = unit(-pi + 2.0 * pi * m / M);
    for (int j = 0; j < N; ++j) {
      Pm(m, j) = sys.evalP(j, z);
      Qm(j, m) = sys.evalQ(j, z);
    }
  }
}

// The standard catalog slice used by the whole-catalog criteria. The
// rank-one parameters are sized like the coefficient window's half-width
// (N-1)/2 at the largest N checked: each factor multiplies the window's
// dynamic range by sqrt(((N-1)/2)^2 + gamma^2)/|gamma|, and the
// reproducing-kernel quadrature squares that range into its rounding
// floor. A unit-scale pool leaves a range near 4e3 at N = 6 and only
// eight significant digits; this pool keeps the range below 30.
std::vector<std::pair<std::string, EnsembleSpec>> catalog_specs(int N) {
  static const std::vector<double> gamma_pool = {1.8,  -2.55, 3.3, 1.35,
                                                 -2.7, 2.1,   3.75, -1.65};
  std::vector<double> gs(gamma_pool.begin(), gamma_pool.begin() + (N + 2));
  return {
      {"haar", make_haar(HaarVariant::Geometric)},
      {"haar-binomial", make_haar(HaarVariant::Binomial)},
      {"jacobi(1.5,0.3)", make_jacobi(1.5, 0.3)},
      {"gauss(0.7)", make_gauss(0.7)},
      {"ginibre(0.9)", make_ginibre(0.9)},
      {"rank1", make_rank1(gs)},
  };
}

// 1. Any weight supported exactly on [0, N-1] has the rotation-invariant
// kernel sum_{k<N} (z1/z2)^k; check both evaluation methods against it.
CriterionResult c01() {
  constexpr double tol = 1e-10;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int N = 2; N <= 8; ++N) {
    const LaurentWeight w = resolve_weight(make_jacobi(0.0, 0.0), N);
    for (int trial = 0; trial < 100; ++trial) {
      const cplx z1 = unit(rand_angle(rng)), z2 = unit(rand_angle(rng));
      const cplx ref = cue_kernel(N, z1, z2);
      worst = std::max(worst,
                       std::abs(kernel_eval(w, z1, z2, KernelMethod::Series) - ref));
      worst = std::max(
          worst,
          std::abs(kernel_eval(w, z1, z2, KernelMethod::ChristoffelDarboux) - ref));
    }
  }
  return {1, "flat finite-window kernels match the rotation-invariant kernel",
          worst <= tol, "max err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 2. Bi-orthonormality re-derived by independent circle quadrature.
CriterionResult c02() {
  constexpr double tol = 1e-9;
  constexpr int M = 2048;
  double worst = 0.0;
  for (int N : {2, 4, 6})
    for (double alpha : {0.5, 2.5})
      for (double gamma : {0.0, 0.7}) {
        const BiorthSystem sys = biorth_polya(resolve_weight(make_jacobi(alpha, gamma), N));
        Eigen::MatrixXcd Pm, Qm;
        tabulate_system(sys, M, Pm, Qm);
        const Eigen::MatrixXcd G = (Qm * Pm) / static_cast<double>(M);
        const Eigen::MatrixXcd D =
            G - Eigen::MatrixXcd::Identity(N, N);
        worst = std::max(worst, D.cwiseAbs().maxCoeff());
      }
  return {2, "bi-orthonormality holds under independent circle quadrature",
          worst <= tol, "max |G - I| " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 3. Confluent coefficients against a plain Fourier quadrature of the
// closed-form circle weight.
CriterionResult c03() {
  constexpr double tol = 1e-10;
  constexpr int M = 65536;
  double worst = 0.0;
  const std::vector<std::array<double, 3>> sets = {{2.0, 1.0, 0.3},
                                                   {3.0, 2.5, -0.4}};
  for (const auto& prm : sets) {
    const int N = static_cast<int>(prm[0]);
    const double alpha = prm[1], gamma = prm[2];
    std::vector<cplx> wv(M);
    std::vector<double> th(M);
    for (int m = 0; m < M; ++m) {
      th[m] = -pi + 2.0 * pi * (m + 0.5) / M;
      wv[m] = jacobi_closed_form_value(N, alpha, gamma, th[m]);
    }
    const EnsembleSpec spec = make_jacobi(alpha, gamma);
    for (long s = -20; s <= N + 20; ++s) {
      cplx acc(0.0, 0.0), comp(0.0, 0.0);
      for (int m = 0; m < M; ++m) {
        // Kahan: the sum has 2^16 O(1) terms and the target is 1e-10.
        const cplx term = wv[m] * unit(s * th[m]) - comp;
        const cplx t = acc + term;
        comp = (t - acc) - term;
        acc = t;
      }
      worst = std::max(worst,
                       std::abs(acc / static_cast<double>(M) -
                                closed_form_transform(spec, N, s)));
    }
  }
  return {3, "confluent coefficients match quadrature of the closed-form weight",
          worst <= tol, "max err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 4. Correlation functions two ways: determinants of the kernel against
// brute-force integrals of the joint density.
CriterionResult c04() {
  constexpr double tol = 1e-5;
  constexpr int grid = 2048;
  const LaurentWeight w = resolve_weight(make_jacobi(1.0, 0.3), 2);
  const BiorthSystem sys = biorth_polya(w);
  std::mt19937_64 rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double t1 = rand_angle(rng);
    const double ref1 = brute_force_Rk(w, {t1}, grid);
    const double det1 = sys.kernel(unit(t1), unit(t1)).real();
    worst = std::max(worst, std::abs(det1 - ref1) / std::max(1e-12, std::abs(ref1)));

    double t2 = rand_angle(rng);
    while (std::abs(wrap_angle(t2 - t1)) < 0.3) t2 = rand_angle(rng);
    const double ref2 = brute_force_Rk(w, {t1, t2}, grid);
    const cplx k11 = sys.kernel(unit(t1), unit(t1));
    const cplx k22 = sys.kernel(unit(t2), unit(t2));
    const cplx k12 = sys.kernel(unit(t1), unit(t2));
    const cplx k21 = sys.kernel(unit(t2), unit(t1));
    const double det2 = (k11 * k22 - k12 * k21).real();
    worst = std::max(worst, std::abs(det2 - ref2) / std::max(1e-12, std::abs(ref2)));
  }
  return {4, "kernel determinants match brute-force correlation functions",
          worst <= tol, "max rel err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 5. Convolution: coefficientwise product of two confluent weights against
// the same coefficients assembled from a single merged log-Gamma sum, and
// the heat-kernel semigroup, which convolution must reproduce exactly.
CriterionResult c05() {
  constexpr double tol_kernel = 1e-9;
  constexpr double tol_gauss = 1e-12;
  const int N = 3;
  const double a1 = 1.5, g1 = 0.3, a2 = 2.5, g2 = -0.4;
  const LaurentWeight w1 = resolve_weight(make_jacobi(a1, g1), N);
  const LaurentWeight w2 = resolve_weight(make_jacobi(a2, g2), N);
  const LaurentWeight wc = convolve(w1, w2);

  LaurentWeight wb = wc;
  for (long s = wb.s_lo; s <= wb.s_hi(); ++s) {
    auto term = [&](double alpha, double gamma) {
      return log_gamma_complex(cplx(N + alpha, 0.0)) -
             log_gamma_complex(cplx(N + 0.5 * alpha - s, gamma)) -
             log_gamma_complex(cplx(0.5 * alpha + s + 1.0, -gamma));
    };
    wb.u[static_cast<std::size_t>(s - wb.s_lo)] =
        std::exp(term(a1, g1) + term(a2, g2));
  }

  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const cplx z1 = unit(rand_angle(rng)), z2 = unit(rand_angle(rng));
    worst = std::max(worst, std::abs(kernel_eval(wc, z1, z2) - kernel_eval(wb, z1, z2)));
  }

  const LaurentWeight gc =
      convolve(resolve_weight(make_gauss(0.4), N), resolve_weight(make_gauss(0.7), N));
  const LaurentWeight gd = resolve_weight(make_gauss(1.1), N);
  double gworst = 0.0;
  for (long s = gd.s_lo; s <= gd.s_hi(); ++s)
    gworst = std::max(gworst, std::abs(gc.coeff(s) - gd.coeff(s)));

  const bool pass = worst <= tol_kernel && gworst <= tol_gauss;
  return {5, "coefficientwise convolution matches merged closed forms",
          pass,
          "kernel err " + fmt(worst) + " (tol " + fmt(tol_kernel) + "), semigroup err " +
              fmt(gworst) + " (tol " + fmt(tol_gauss) + ")"};
}

// 6. Trace and reproducing property of every catalog kernel on an exact
// quadrature grid.
CriterionResult c06() {
  constexpr double tol_trace = 1e-10;
  constexpr double tol_repr = 1e-8;
  std::mt19937_64 rng(606);
  double worst_trace = 0.0, worst_repr = 0.0;
  for (int N = 2; N <= 6; ++N)
    for (const auto& [name, spec] : catalog_specs(N)) {
      const LaurentWeight w = resolve_weight(spec, N);
      const BiorthSystem sys = biorth_polya(w);
      const int M = exact_grid_size(w);
      Eigen::MatrixXcd Pm, Qm;
      tabulate_system(sys, M, Pm, Qm);
      const Eigen::MatrixXcd Gm = (Qm * Pm) / static_cast<double>(M);

      cplx tr(0.0, 0.0);
      for (int m = 0; m < M; ++m) {
        Eigen::MatrixXcd one = Pm.row(m) * Qm.col(m);
        tr += one(0, 0);
      }
      tr /= static_cast<double>(M);
      worst_trace = std::max(worst_trace, std::abs(tr - cplx(N, 0.0)));

      for (int trial = 0; trial < 5; ++trial) {
        const cplx z1 = unit(rand_angle(rng)), z2 = unit(rand_angle(rng));
        Eigen::VectorXcd p1(N), q2(N);
        for (int j = 0; j < N; ++j) {
          p1(j) = sys.evalP(j, z1);
          q2(j) = sys.evalQ(j, z2);
        }
        // mean over the grid of K(z1, phi) K(phi, z2) telescopes to
        // p1^T (Qm Pm / M) q2, and Qm Pm / M is the Gram matrix.
        Eigen::MatrixXcd one = p1.transpose() * Gm * q2;
        worst_repr = std::max(worst_repr, std::abs(one(0, 0) - sys.kernel(z1, z2)));
      }
    }
  const bool pass = worst_trace <= tol_trace && worst_repr <= tol_repr;
  return {6, "catalog kernels have trace N and reproduce themselves", pass,
          "trace err " + fmt(worst_trace) + " (tol " + fmt(tol_trace) +
              "), reproducing err " + fmt(worst_repr) + " (tol " + fmt(tol_repr) + ")"};
}

// 7. The closed-form normalization constant against 2d torus quadrature of
// |z1 - z2|^2 (2 cos(th/2))^alpha e^{gamma th} per coordinate; this is the
// real weight of the confluent family, whose complex circle weight only
// enters through the determinantal identity.
CriterionResult c07() {
  constexpr double tol = 1e-6;
  constexpr int M = 8192;
  const int N = 2;
  double worst = 0.0;
  for (const auto& prm : std::vector<std::array<double, 2>>{{0.0, 0.0}, {1.0, 0.3}}) {
    const double alpha = prm[0], gamma = prm[1];
    std::vector<double> wv(M), c(M), s(M);
    for (int m = 0; m < M; ++m) {
      const double th = -pi + 2.0 * pi * (m + 0.5) / M;
      wv[m] = std::pow(2.0 * std::cos(0.5 * th), alpha) * std::exp(gamma * th);
      c[m] = std::cos(th);
      s[m] = std::sin(th);
    }
    double acc = 0.0;
    for (int m1 = 0; m1 < M; ++m1) {
      double row = 0.0;
      for (int m2 = 0; m2 < M; ++m2) {
        const double dsq = 2.0 - 2.0 * (c[m1] * c[m2] + s[m1] * s[m2]);
        row += dsq * wv[m2];
      }
      acc += wv[m1] * row;
    }
    acc /= static_cast<double>(M) * M;
    const double ref = normalization_CN(N, alpha, gamma);
    worst = std::max(worst, std::abs(acc - ref) / ref);
  }
  return {7, "closed-form normalization matches torus quadrature", worst <= tol,
          "max rel err " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 8. The reflection-product matrix model against the kernel's one-point
// density. Pooled over 1e6 spectra: with 64 bins the counting-noise floor
// of the L1 distance is about 0.033 at 1e5 spectra, above the tolerance an
// unbiased sampler is being held to, and about 0.011 at 1e6.
CriterionResult c08() {
  constexpr double tol = 0.02;
  constexpr int bins = 64;
  const int N = 3;
  const std::vector<double> gs = {0.2, -0.35, 0.5, 0.15, -0.4};
  const EnsembleSpec spec = make_rank1(gs);
  const SampleBatch batch = sample_polya_product(spec, N, 1000000, 20240816, 0);
  const std::vector<double> emp = empirical_density(batch, bins);

  const BiorthSystem sys = biorth_polya(resolve_weight(spec, N));
  std::vector<double> model(bins);
  const double width = 2.0 * pi / bins;
  for (int b = 0; b < bins; ++b) {
    const cplx z = unit(-pi + (b + 0.5) * width);
    model[b] = sys.kernel(z, z).real();
  }
  const double l1 = l1_histogram_distance(emp, model, width);
  return {8, "matrix-model sampler reproduces the kernel density", l1 <= tol,
          "L1 distance " + fmt(l1) + " (tol " + fmt(tol) + ", 1e6 spectra, 64 bins)"};
}

// 9. Metropolis spectra of one ensemble, angle-inverted, against the
// kernel CDF of the inverse ensemble. The exponent is kept large: the
// derivative determinant weights coefficient s by s^{N-1}, so a slowly
// decaying window leaves truncation wiggle near the cusp where the density
// vanishes, and the walk would trip the negativity guard there.
CriterionResult c09() {
  const int N = 2;
  const LaurentWeight w = resolve_weight(make_jacobi(6.0, 0.4), N);
  auto target = [&](const EigenAngles& z) { return jpdf_polya(w, z); };
  MetropolisOptions opts;
  opts.thin = 60;
  const SampleBatch batch = metropolis_sample(target, N, 3000, 909, opts);
  std::vector<double> inv;
  for (const auto& v : batch.angles)
    for (double t : v) inv.push_back(wrap_angle(-t));

  const BiorthSystem sys = biorth_polya(resolve_weight(make_jacobi(6.0, -0.4), N));
  constexpr int G = 4096;
  std::vector<double> node(G + 1), cum(G + 1, 0.0);
  std::vector<double> r1(G + 1);
  for (int i = 0; i <= G; ++i) {
    node[i] = -pi + 2.0 * pi * i / G;
    const cplx z = unit(node[i]);
    r1[i] = std::max(0.0, sys.kernel(z, z).real());
  }
  for (int i = 1; i <= G; ++i)
    cum[i] = cum[i - 1] + 0.5 * (r1[i - 1] + r1[i]) * (node[i] - node[i - 1]);
  const double total = cum[G];
  auto cdf = [&](double x) {
    if (x <= node.front()) return 0.0;
    if (x >= node.back()) return 1.0;
    const auto it = std::upper_bound(node.begin(), node.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - node.begin());
    const double f = (x - node[i - 1]) / (node[i] - node[i - 1]);
    return (cum[i - 1] + f * (cum[i] - cum[i - 1])) / total;
  };
  const double D = ks_statistic(inv, cdf);
  const double crit = ks_critical(inv.size());
  return {9, "Metropolis spectra of the inverted ensemble pass the KS test",
          D < crit,
          "KS D " + fmt(D) + " vs 1% critical " + fmt(crit) + " (n " +
              std::to_string(inv.size()) + ")"};
}

// 10. Direct series versus the telescoped two-term kernel on every
// sufficiently decaying catalog weight, plus rejection of one that decays
// too slowly for the telescoped form's tail bound.
CriterionResult c10() {
  constexpr double tol = 1e-8;
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  for (int N : {2, 4}) {
    auto specs = catalog_specs(N);
    // The alpha = 1.5 entry decays exactly at the eligibility gate; swap in
    // one safely above it.
    std::erase_if(specs, [](const auto& p) { return p.first == "jacobi(1.5,0.3)"; });
    specs.emplace_back("jacobi(2.5,0.7)", make_jacobi(2.5, 0.7));
    for (const auto& [name, spec] : specs) {
      const LaurentWeight w = resolve_weight(spec, N);
      for (int trial = 0; trial < 100; ++trial) {
        const cplx z1 = unit(rand_angle(rng)), z2 = unit(rand_angle(rng));
        worst = std::max(worst,
                         std::abs(kernel_eval(w, z1, z2, KernelMethod::Series) -
                                  kernel_eval(w, z1, z2, KernelMethod::ChristoffelDarboux)));
      }
    }
  }
  bool rejected = false;
  const LaurentWeight slow = resolve_weight(make_jacobi(0.5, 0.2), 2);
  try {
    kernel_eval(slow, cplx(1.0, 0.0), unit(1.0), KernelMethod::ChristoffelDarboux);
  } catch (const std::exception&) {
    rejected = true;
  }
  const bool pass = worst <= tol && rejected && !cd_eligible(slow);
  return {10, "direct and telescoped kernel evaluations agree where eligible",
          pass,
          "max err " + fmt(worst) + " (tol " + fmt(tol) + "), slow-decay weight " +
              (rejected ? "rejected" : "NOT rejected")};
}

// 11. Fixed-factor kernel: polynomial series versus the double-contour
// evaluation, and its determinant against the joint density.
CriterionResult c11() {
  constexpr double tol_methods = 1e-7;
  constexpr double tol_det = 1e-5;
  std::mt19937_64 rng(1111);
  double worst_m = 0.0, worst_d = 0.0;
  struct Set {
    int N;
    double alpha, gamma;
    std::vector<double> x;
  };
  const std::vector<Set> sets = {{2, 1.0, 0.3, {0.3, -1.1}},
                                 {3, 2.5, -0.4, {0.3, -1.1, 1.9}}};
  for (const auto& st : sets) {
    const LaurentWeight w = resolve_weight(make_jacobi(st.alpha, st.gamma), st.N);
    const EigenAngles x(st.x);
    for (int trial = 0; trial < 5; ++trial) {
      const cplx z1 = unit(rand_angle(rng)), z2 = unit(rand_angle(rng));
      const cplx a = kernel_fixed(w, x, z1, z2, FixedMethod::Series);
      const cplx b = kernel_fixed(w, x, z1, z2, FixedMethod::Contour);
      worst_m = std::max(worst_m, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> th(st.N);
      bool ok = true;
      do {
        ok = true;
        for (auto& t : th) t = rand_angle(rng);
        for (int a = 0; a < st.N && ok; ++a)
          for (int b = a + 1; b < st.N && ok; ++b)
            if (std::abs(wrap_angle(th[a] - th[b])) < 0.2) ok = false;
      } while (!ok);
      Eigen::MatrixXcd K(st.N, st.N);
      for (int a = 0; a < st.N; ++a)
        for (int b = 0; b < st.N; ++b)
          K(a, b) = kernel_fixed(w, x, unit(th[a]), unit(th[b]), FixedMethod::Series);
      const double det = K.determinant().real();
      double lf = 0.0;
      for (int j = 2; j <= st.N; ++j) lf += std::log(j);
      const double ref = std::exp(lf) * jpdf_fixed_product(w, EigenAngles(th), x);
      worst_d = std::max(worst_d, std::abs(det - ref) / std::max(1e-12, std::abs(ref)));
    }
  }
  const bool pass = worst_m <= tol_methods && worst_d <= tol_det;
  return {11, "fixed-factor kernel: series matches contour and joint density",
          pass,
          "method gap " + fmt(worst_m) + " (tol " + fmt(tol_methods) +
              "), det vs density " + fmt(worst_d) + " (tol " + fmt(tol_det) + ")"};
}

// 12. Sign-consistency of the order-n forms for the three candidate
// families, and rejection of the corrupted one.
CriterionResult c12() {
  constexpr long trials = 1000;
  bool all_pass = true;
  std::ostringstream det;
  for (const auto& cand :
       {make_rank1_candidate(0.5), make_dlvp_candidate(), make_theta_candidate(0.7)}) {
    long viol = 0;
    for (int n = 1; n <= cand.order_cap; ++n)
      viol += check_order(cand, n, trials, 1212).violations;
    if (viol != 0) all_pass = false;
    det << cand.name << " violations " << viol << ", ";
  }
  const FrequencyCandidate bad = make_corrupted_dlvp_candidate();
  long bad_viol = 0;
  int bad_order = 0;
  for (int n = 1; n <= bad.order_cap && bad_viol == 0; ++n) {
    bad_viol = check_order(bad, n, trials, 1212).violations;
    bad_order = n;
  }
  if (bad_viol == 0) all_pass = false;
  det << "corrupted candidate violations " << bad_viol << " at order " << bad_order;
  return {12, "sign-consistency checks pass and the corrupted candidate fails",
          all_pass, det.str()};
}

// 13. The conjugation-average closed form against plain Monte Carlo over
// the invariant measure.
CriterionResult c13() {
  const int N = 2;
  const double alpha = 1.2, gamma = 0.4;
  const std::vector<double> xang = {0.7, -1.9}, yang = {0.4, 2.3};
  const long n = 100000;

  const double cn = normalization_CN(N, alpha, gamma);
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(N, N), Ydag = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    X(j, j) = unit(xang[j]);
    Ydag(j, j) = std::conj(unit(yang[j]));
  }
  double mean = 0.0, m2 = 0.0;
  for (long k = 0; k < n; ++k) {
    std::mt19937_64 rng = stream_rng(13, static_cast<std::uint64_t>(k));
    const Eigen::MatrixXcd U = sample_haar_unitary(N, rng);
    const Eigen::MatrixXcd V = U * Ydag * U.adjoint() * X;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(V, false);
    double f = 2.0 / cn;  // N! / normalization
    for (int j = 0; j < N; ++j) {
      const double th = std::arg(es.eigenvalues()(j));
      const double c = 2.0 * std::cos(0.5 * th);
      f *= c > 0.0 ? std::pow(c, alpha) * std::exp(gamma * th) : 0.0;
    }
    const double delta = f - mean;
    mean += delta / (k + 1);
    m2 += delta * (f - mean);
  }
  const double sem = std::sqrt(m2 / (n - 1) / n);
  const LaurentWeight w = resolve_weight(make_jacobi(alpha, gamma), N);
  const double rhs = group_integral_rhs(w, EigenAngles(xang), EigenAngles(yang)).real();
  const double z = (mean - rhs) / sem;
  return {13, "conjugation-average closed form sits within Monte Carlo error",
          std::abs(z) <= 3.0,
          "z-score " + fmt(z) + " (mc " + fmt(mean) + ", closed " + fmt(rhs) +
              ", sem " + fmt(sem) + ")"};
}

// 14. Reconstructing the weight from black-box transform ratios; the
// result must match the catalog coefficients up to one canonical constant.
CriterionResult c14() {
  constexpr double tol = 1e-10;
  double worst = 0.0;
  bool parity_ok = true;
  std::ostringstream det;
  const std::vector<std::pair<EnsembleSpec, int>> cases = {
      {make_jacobi(1.7, 0.45), 3}, {make_gauss(0.3), 4}};
  for (const auto& [spec, N] : cases) {
    const LaurentWeight w = resolve_weight(spec, N);
    auto T = [&](std::vector<long> s) {
      return ensemble_transform(spec, N, MultiIndex{std::move(s)});
    };
    auto family = [&](long sp, int hole) {
      std::vector<long> v{sp};
      for (int j = 0; j < N; ++j)
        if (j != hole) v.push_back(j);
      return v;
    };
    std::vector<cplx> r(N);
    for (int l = 0; l < N; ++l) r[l] = T(family(N, l));

    LaurentWeight vhat = w;
    for (long s = vhat.s_lo; s <= vhat.s_hi(); ++s) {
      cplx u;
      if (s < 0 || s >= N) u = T(family(s, 0));
      else u = r[0] / r[static_cast<int>(s)];
      vhat.u[static_cast<std::size_t>(s - vhat.s_lo)] = u;
    }
    const cplx phase = canonical_phase(vhat);
    const cplx cref = w.coeff(0) / (vhat.coeff(0) * phase);
    for (long s = vhat.s_lo; s <= vhat.s_hi(); ++s) {
      const cplx cs = w.coeff(s) / (vhat.coeff(s) * phase);
      worst = std::max(worst, std::abs(cs / cref - 1.0));
    }
    if (std::abs(cref.imag()) > tol * std::abs(cref)) parity_ok = false;
    if (N % 2 == 1 && cref.real() <= 0.0) parity_ok = false;
    det << "constant " << fmt(cref.real()) << (N % 2 ? " (odd n) " : " (even n) ");
  }
  return {14, "transform ratios rebuild the weight up to one real constant",
          worst <= tol && parity_ok,
          "max constancy defect " + fmt(worst) + " (tol " + fmt(tol) + "), " + det.str()};
}

}  // namespace

std::vector<CriterionResult> acceptance_results() {
  using Fn = CriterionResult (*)();
  const Fn fns[] = {c01, c02, c03, c04, c05, c06, c07,
                    c08, c09, c10, c11, c12, c13, c14};
  std::vector<CriterionResult> out;
  int id = 1;
  for (Fn f : fns) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({id, "criterion threw", false, e.what()});
    }
    ++id;
  }
  return out;
}

bool run_acceptance(std::ostream& os) {
  const std::vector<CriterionResult> rs = acceptance_results();
  bool all = true;
  for (const auto& r : rs) {
    all = all && r.pass;
    char head[16];
    std::snprintf(head, sizeof(head), "[%2d/14]", r.id);
    os << head << (r.pass ? " PASS " : " FAIL ") << r.label << ": " << r.detail
       << "\n";
  }
  os << (all ? "acceptance: all 14 criteria passed"
             : "acceptance: FAILURES present")
     << "\n";
  return all;
}

}  // namespace cpe
