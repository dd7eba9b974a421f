#include "cpe/pfreq.hpp"

#include "cpe/gammafn.hpp"
#include "cpe/spherical.hpp"
#include "cpe/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace cpe {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

long theta_halfwidth(double t) {
  return static_cast<long>(std::ceil(std::sqrt(std::log(1e18) / t)));
}

}  // namespace

FrequencyCandidate make_dlvp_candidate() {
  FrequencyCandidate c;
  c.name = "dlvp";
  c.g = [](int n, double d) -> cplx {
    int M = n / 2;
    double base = 2.0 * std::cos(0.5 * d);
    if (n % 2 == 1) return cplx(std::pow(base, 2 * M), 0.0);
    return std::pow(base, 2 * M - 1) * std::polar(1.0, -0.5 * d);
  };
  c.series_coeff = [](int n, long k) -> cplx {
    int M = n / 2;
    long top = n - 1;
    long idx = n % 2 == 1 ? M - k : M - 1 - k;
    if (idx < 0 || idx > top) return cplx(0.0, 0.0);
    return cplx(std::exp(log_binomial(top, idx)), 0.0);
  };
  c.series_halfwidth = [](int) { return 0L; };
  c.series_tail = [](int) { return 0.0; };
  return c;
}

FrequencyCandidate make_theta_candidate(double t) {
  require(t > 0.0, "make_theta_candidate: needs t > 0");
  FrequencyCandidate c;
  c.name = "theta";
  long J = theta_halfwidth(t);
  c.g = [t, J](int n, double d) -> cplx {
    if (n % 2 == 1) {
      double acc = 1.0;
      for (long j = 1; j <= J; ++j)
        acc += 2.0 * std::exp(-t * static_cast<double>(j) * j) *
               std::cos(static_cast<double>(j) * d);
      return cplx(acc, 0.0);
    }
    double acc = 0.0;
    for (long j = 1; j <= J; ++j) {
      double h = static_cast<double>(j) - 0.5;
      acc += 2.0 * std::exp(-t * h * h) * std::cos(h * d);
    }
    return acc * std::polar(1.0, -0.5 * d);
  };
  c.series_coeff = [t](int n, long k) -> cplx {
    // g = sum_j e^{-t j^2} z^{-j} (odd) or sum_j e^{-t (j-1/2)^2} z^{-j}
    // (even), so c_k is the j = -k term.
    double j = static_cast<double>(-k) - (n % 2 == 1 ? 0.0 : 0.5);
    return cplx(std::exp(-t * j * j), 0.0);
  };
  c.series_halfwidth = [t](int) {
    return static_cast<long>(std::ceil(std::sqrt(std::log(1e14) / t))) + 1;
  };
  c.series_tail = [t](int n) {
    long K = static_cast<long>(std::ceil(std::sqrt(std::log(1e14) / t))) + 1;
    double D = static_cast<double>(K + 1) + 0.5 * (n - 1);
    return 2.0 * std::exp(-t * D * D) / (1.0 - std::exp(-t * (2.0 * D + 1.0)));
  };
  return c;
}

FrequencyCandidate make_rank1_candidate(double gamma) {
  FrequencyCandidate c;
  c.name = "rank1";
  c.g = [gamma](int n, double d) -> cplx {
    require(std::abs(d) < 2.0 * pi,
            "rank1 candidate: angle difference must be unreduced");
    double ch = std::cosh(gamma * pi), sh = std::sinh(gamma * pi);
    if (n % 2 == 1)
      return cplx(std::exp(gamma * d) * (ch - sh * sgn(d)), 0.0);
    return std::exp(gamma * d) * std::polar(1.0, -0.5 * d) *
           (sh + ch * sgn(d));
  };
  return c;
}

FrequencyCandidate make_corrupted_dlvp_candidate() {
  FrequencyCandidate base = make_dlvp_candidate();
  FrequencyCandidate c;
  c.name = "dlvp-corrupted";
  auto flip = [](int n, long k) -> double {
    // Flip the central coefficient of the odd orders. It is its own
    // conjugate partner, so the kernel stays real on the circle, but the
    // coefficient product goes negative and the order-n form with it:
    // flipping a symmetric pair instead would cancel out of the single
    // Cauchy-Binet term a length-n window admits.
    return (n % 2 == 1 && k == 0) ? -1.0 : 1.0;
  };
  c.series_coeff = [base, flip](int n, long k) {
    return flip(n, k) * base.series_coeff(n, k);
  };
  c.series_halfwidth = base.series_halfwidth;
  c.series_tail = base.series_tail;
  c.g = [base, flip](int n, double d) -> cplx {
    cplx acc = base.g(n, d);
    // Subtract twice the flipped terms.
    for (long k : {-1L, 0L, 1L}) {
      if (flip(n, k) > 0.0) continue;
      acc -= 2.0 * base.series_coeff(n, k) *
             std::polar(1.0, static_cast<double>(k) * d);
    }
    return acc;
  };
  return c;
}

LaurentWeight candidate_weight(const FrequencyCandidate& c, int n) {
  require(static_cast<bool>(c.series_coeff) && c.series_halfwidth,
          "candidate_weight: candidate has no integer-power series");
  long M = n / 2;
  long chi = n % 2;
  long K = c.series_halfwidth(n);
  LaurentWeight w;
  w.N = n;
  w.s_lo = -K;
  w.u.resize(static_cast<std::size_t>(n + 2 * K));
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    w.u[static_cast<std::size_t>(s - w.s_lo)] =
        c.series_coeff(n, M + chi - 1 - s);
  w.tail_bound = c.series_tail ? c.series_tail(n) : 0.0;
  return w;
}

cplx pfreq_form(const FrequencyCandidate& c, const std::vector<double>& theta,
                const std::vector<double>& phi) {
  int n = static_cast<int>(theta.size());
  require(static_cast<int>(phi.size()) == n, "pfreq_form: size mismatch");
  for (double a : theta)
    require(0.0 <= a && a < 2.0 * pi, "pfreq_form: angles must lie in [0, 2 pi)");
  for (double a : phi)
    require(0.0 <= a && a < 2.0 * pi, "pfreq_form: angles must lie in [0, 2 pi)");

  std::vector<cplx> x(theta.size()), yinv(phi.size());
  double sum_diff = 0.0;
  for (int j = 0; j < n; ++j) {
    x[static_cast<std::size_t>(j)] = std::polar(1.0, theta[static_cast<std::size_t>(j)]);
    yinv[static_cast<std::size_t>(j)] = std::polar(1.0, -phi[static_cast<std::size_t>(j)]);
    sum_diff += theta[static_cast<std::size_t>(j)] - phi[static_cast<std::size_t>(j)];
  }

  Eigen::MatrixXcd G(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      G(a, b) = c.g(n, theta[static_cast<std::size_t>(a)] -
                           phi[static_cast<std::size_t>(b)]);

  long m = n / 2;
  long power = n % 2 == 1 ? m : m - 1;
  cplx det_pow = std::polar(1.0, static_cast<double>(power) * sum_diff);
  return vandermonde(x) * vandermonde(yinv) * G.determinant() / det_pow;
}

OrderCheck check_order(const FrequencyCandidate& c, int n, long trials,
                       std::uint64_t seed) {
  require(n >= 1 && n <= c.order_cap, "check_order: order outside candidate cap");
  std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
  std::uniform_int_distribution<int> coin(0, 1);

  OrderCheck res;
  res.trials = trials;
  res.pass = true;
  for (long trial = 0; trial < trials; ++trial) {
    std::vector<double> th(static_cast<std::size_t>(n)),
        ph(static_cast<std::size_t>(n));
    if (trial % 2 == 0) {
      // Interlacing configuration from 2n sorted uniforms.
      std::vector<double> all(static_cast<std::size_t>(2 * n));
      for (double& a : all) a = unif(rng);
      std::sort(all.begin(), all.end());
      for (int j = 0; j < n; ++j) {
        th[static_cast<std::size_t>(j)] = all[static_cast<std::size_t>(2 * j)];
        ph[static_cast<std::size_t>(j)] = all[static_cast<std::size_t>(2 * j + 1)];
      }
    } else {
      for (double& a : th) a = unif(rng);
      for (double& a : ph) a = unif(rng);
      std::sort(th.begin(), th.end());
      std::sort(ph.begin(), ph.end());
    }
    if (coin(rng)) std::swap(th, ph);

    // Magnitude reference: the Vandermonde factors times a Hadamard-type
    // bound on the candidate determinant.
    double gscale = 1.0;
    for (int a = 0; a < n; ++a) {
      double row = 0.0;
      for (int b = 0; b < n; ++b)
        row += std::abs(c.g(n, th[static_cast<std::size_t>(a)] -
                               ph[static_cast<std::size_t>(b)]));
      gscale *= std::max(row, 1e-300);
    }
    std::vector<cplx> x(th.size()), yinv(ph.size());
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] = std::polar(1.0, th[static_cast<std::size_t>(j)]);
      yinv[static_cast<std::size_t>(j)] = std::polar(1.0, -ph[static_cast<std::size_t>(j)]);
    }
    double scale =
        std::abs(vandermonde(x)) * std::abs(vandermonde(yinv)) * gscale;

    cplx val = pfreq_form(c, th, ph);
    double scaled = val.real() / std::max(scale, 1e-300);
    if (scaled < -1e-12) {
      res.pass = false;
      ++res.violations;
      res.worst = std::min(res.worst, scaled);
    }
  }
  return res;
}

}  // namespace cpe
