#include "cpe/kernel.hpp"

#include "cpe/gammafn.hpp"
#include "cpe/spherical.hpp"

namespace cpe {

cplx chi_polynomial(const LaurentWeight& w, cplx z) {
  cplx acc(0.0, 0.0);
  cplx zp(1.0, 0.0);
  for (long l = 0; l < w.N; ++l) {
    acc += zp / w.coeff(l);
    zp *= z;
  }
  return acc;
}

double decay_exponent(const LaurentWeight& w) {
  long W = static_cast<long>(w.u.size());
  long outer = std::max<long>(3, W / 10);
  double center = 0.5 * (w.N - 1);

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  auto feed = [&](long s) {
    double mag = std::abs(w.coeff(s));
    if (mag == 0.0) return;  // exact zeros belong to finite support
    double lx = std::log(std::abs(static_cast<double>(s) - center));
    double ly = std::log(mag);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  };
  for (long s = w.s_lo; s < w.s_lo + outer; ++s) feed(s);
  for (long s = w.s_hi() - outer + 1; s <= w.s_hi(); ++s) feed(s);
  if (n < 2) return 1e300;
  double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom <= 0.0) return 1e300;
  double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
  return -slope;
}

bool cd_eligible(const LaurentWeight& w) {
  if (w.tail_bound == 0.0) return true;
  return decay_exponent(w) > static_cast<double>(w.N) + 1.5;
}

namespace {

cplx kernel_cd(const LaurentWeight& w, cplx z1, cplx z2) {
  int N = w.N;
  // Flat part sum_{k<N} (z1/z2)^k, summed termwise so z1 == z2 is exact.
  cplx r = z1 / z2;
  cplx acc(0.0, 0.0), rp(1.0, 0.0);
  for (int k = 0; k < N; ++k) {
    acc += rp;
    rp *= r;
  }

  // Correction involving only the two boundary objects of the family:
  // the degree-(N-1) polynomial coefficients and the N-step falling
  // factorial Laurent coefficients.
  std::vector<cplx> p(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k)
    p[static_cast<std::size_t>(k)] =
        cplx(k % 2 == 0 ? 1.0 : -1.0, 0.0) /
        (std::exp(log_factorial(N - 1 - k) + log_factorial(k)) * w.coeff(k));

  cplx z1p(1.0, 0.0);
  for (int k = 0; k < N; ++k) {
    cplx inner(0.0, 0.0);
    for (long l = w.s_lo; l <= w.s_hi(); ++l) {
      if (l >= 0 && l <= N - 1) continue;  // falling factorial vanishes
      double fall = 1.0;
      for (int m = 0; m < N; ++m) fall *= static_cast<double>(m - l);
      cplx q = fall * w.coeff(l);
      inner += q * std::pow(z2, cplx(static_cast<double>(-l), 0.0)) /
               static_cast<double>(k - l);
    }
    acc += p[static_cast<std::size_t>(k)] * z1p * inner;
    z1p *= z1;
  }
  return acc;
}

}  // namespace

cplx kernel_eval(const LaurentWeight& w, cplx z1, cplx z2,
                 KernelMethod method) {
  if (method == KernelMethod::ChristoffelDarboux) {
    require(cd_eligible(w),
            "kernel_eval: coefficients decay too slowly for the telescoped "
            "form; use the series method");
    return kernel_cd(w, z1, z2);
  }
  BiorthSystem sys = biorth_polya(w);
  return sys.kernel(z1, z2);
}

namespace {

// Coefficients of prod_{l != skip} (z - x_l).
std::vector<cplx> nodal_coeffs(const std::vector<cplx>& x, int skip) {
  std::vector<cplx> c{cplx(1.0, 0.0)};
  for (int l = 0; l < static_cast<int>(x.size()); ++l) {
    if (l == skip) continue;
    std::vector<cplx> next(c.size() + 1, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < c.size(); ++m) {
      next[m + 1] += c[m];
      next[m] -= c[m] * x[static_cast<std::size_t>(l)];
    }
    c = std::move(next);
  }
  return c;
}

cplx kernel_fixed_series(const LaurentWeight& w, const EigenAngles& x,
                         cplx z1, cplx z2) {
  int N = w.N;
  std::vector<cplx> xz = x.points();
  cplx acc(0.0, 0.0);
  for (int j = 0; j < N; ++j) {
    std::vector<cplx> c = nodal_coeffs(xz, j);
    cplx denom(1.0, 0.0);
    for (int l = 0; l < N; ++l)
      if (l != j) denom *= xz[static_cast<std::size_t>(j)] - xz[static_cast<std::size_t>(l)];
    cplx pj(0.0, 0.0), zp(1.0, 0.0);
    for (int k = 0; k < N; ++k) {
      pj += c[static_cast<std::size_t>(k)] * zp / w.coeff(k);
      zp *= z1;
    }
    acc += (pj / denom) * eval_weight(w, z2 / xz[static_cast<std::size_t>(j)]);
  }
  return acc;
}

cplx kernel_fixed_contour(const LaurentWeight& w, const EigenAngles& x,
                          cplx z1, cplx z2) {
  constexpr double R = 1.25;
  constexpr double rho = 1.125;
  constexpr int M = 512;

  // The weight is evaluated off the unit circle at radius rho; a wide
  // window amplifies the far coefficients beyond what the quadrature can
  // cancel, so certify the amplification first.
  double amp = 0.0;
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    amp = std::max(amp,
                   std::abs(w.coeff(s)) *
                       std::pow(rho, std::abs(static_cast<double>(s))));
  require(amp <= 1e8,
          "kernel_fixed: window too wide for the contour quadrature");

  int N = w.N;
  std::vector<cplx> xz = x.points();

  // Inner-variable tabulation on both circles of the annulus boundary.
  std::vector<cplx> bq_out(M), bq_in(M), f_out(M), f_in(M);
  for (int q = 0; q < M; ++q) {
    double ang = 2.0 * pi * q / M;
    for (int side = 0; side < 2; ++side) {
      cplx b = std::polar(side == 0 ? rho : 1.0 / rho, ang);
      cplx nodal(1.0, 0.0);
      for (int l = 0; l < N; ++l) nodal *= b - xz[static_cast<std::size_t>(l)];
      cplx val = b * eval_weight(w, z2 / b) / nodal;
      if (side == 0) {
        bq_out[static_cast<std::size_t>(q)] = b;
        f_out[static_cast<std::size_t>(q)] = val;
      } else {
        bq_in[static_cast<std::size_t>(q)] = b;
        f_in[static_cast<std::size_t>(q)] = val;
      }
    }
  }

  cplx total(0.0, 0.0);
  for (int p = 0; p < M; ++p) {
    cplx a = std::polar(R, 2.0 * pi * p / M);
    cplx pole = a * z1;  // R a_p z1
    cplx outer = chi_polynomial(w, 1.0 / a);
    for (int l = 0; l < N; ++l) outer *= pole - xz[static_cast<std::size_t>(l)];

    cplx inner(0.0, 0.0);
    for (int q = 0; q < M; ++q) {
      inner += f_out[static_cast<std::size_t>(q)] /
               (pole - bq_out[static_cast<std::size_t>(q)]);
      inner -= f_in[static_cast<std::size_t>(q)] /
               (pole - bq_in[static_cast<std::size_t>(q)]);
    }
    total += outer * inner / static_cast<double>(M);
  }
  return total / static_cast<double>(M);
}

}  // namespace

cplx kernel_fixed(const LaurentWeight& w, const EigenAngles& x,
                  cplx z1, cplx z2, FixedMethod method) {
  validate_weight(w);
  require(x.size() == w.N, "kernel_fixed: fixed spectrum size mismatch");
  require(x.min_gap() >= gap_tol, "kernel_fixed: fixed spectrum degenerate");
  return method == FixedMethod::Series
             ? kernel_fixed_series(w, x, z1, z2)
             : kernel_fixed_contour(w, x, z1, z2);
}

int exact_grid_size(const LaurentWeight& w) {
  long F = std::max(std::abs(static_cast<long>(w.N) - 1 - w.s_lo),
                    std::abs(w.s_hi())) +
           w.N;
  int M = 2048;
  while (M < F + 8) M *= 2;
  return M;
}

KernelGrid kernel_grid(const LaurentWeight& w, int M1, int M2,
                       KernelMethod method) {
  BiorthSystem sys = biorth_polya(w);
  int N = w.N;
  KernelGrid g;
  g.method = method;
  g.th1.resize(static_cast<std::size_t>(M1));
  g.th2.resize(static_cast<std::size_t>(M2));
  for (int i = 0; i < M1; ++i)
    g.th1[static_cast<std::size_t>(i)] = -pi + 2.0 * pi * i / M1;
  for (int i = 0; i < M2; ++i)
    g.th2[static_cast<std::size_t>(i)] = -pi + 2.0 * pi * i / M2;

  if (method == KernelMethod::Series) {
    Eigen::MatrixXcd Pm(M1, N), Qm(N, M2);
    for (int i = 0; i < M1; ++i)
      for (int j = 0; j < N; ++j)
        Pm(i, j) = sys.evalP(j, std::polar(1.0, g.th1[static_cast<std::size_t>(i)]));
    for (int i = 0; i < M2; ++i)
      for (int j = 0; j < N; ++j)
        Qm(j, i) = sys.evalQ(j, std::polar(1.0, g.th2[static_cast<std::size_t>(i)]));
    g.K = Pm * Qm;
    return g;
  }

  require(cd_eligible(w),
          "kernel_grid: coefficients decay too slowly for the telescoped form");
  g.K.resize(M1, M2);
  for (int i1 = 0; i1 < M1; ++i1)
    for (int i2 = 0; i2 < M2; ++i2)
      g.K(i1, i2) = kernel_eval(w, std::polar(1.0, g.th1[static_cast<std::size_t>(i1)]),
                                std::polar(1.0, g.th2[static_cast<std::size_t>(i2)]),
                                KernelMethod::ChristoffelDarboux);
  return g;
}

}  // namespace cpe
