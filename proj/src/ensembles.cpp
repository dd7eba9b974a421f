#include "cpe/ensembles.hpp"

#include "cpe/gammafn.hpp"

#include <algorithm>

namespace cpe {

namespace {

constexpr double window_target = 1e-14;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Symmetric window [-K, N-1+K].
LaurentWeight blank_window(int N, long K) {
  LaurentWeight w;
  w.N = N;
  w.s_lo = -K;
  w.u.assign(static_cast<std::size_t>(N + 2 * K), cplx(0.0, 0.0));
  return w;
}

cplx jacobi_coeff(int N, double alpha, double gamma, long s) {
  cplx d1(N + alpha / 2.0 - static_cast<double>(s), gamma);
  cplx d2(alpha / 2.0 + static_cast<double>(s) + 1.0, -gamma);
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2))
    return cplx(0.0, 0.0);
  cplx lg = log_gamma_complex(cplx(N + alpha, 0.0)) - log_gamma_complex(d1) -
            log_gamma_complex(d2);
  return std::exp(lg);
}

LaurentWeight resolve_jacobi(int N, double alpha, double gamma) {
  require(alpha > -1.0, "resolve_weight: Jacobi needs alpha > -1");
  bool finite = gamma == 0.0 && alpha >= 0.0 &&
                alpha == 2.0 * std::floor(alpha / 2.0);
  long K = finite ? static_cast<long>(alpha / 2.0) : 256;
  LaurentWeight w = blank_window(N, K);
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    w.u[static_cast<std::size_t>(s - w.s_lo)] = jacobi_coeff(N, alpha, gamma, s);
  if (finite) {
    w.tail_bound = 0.0;
  } else {
    // |u_s| falls off like |s|^{-(N+alpha)}; an integral comparison gives
    // the discarded mass from the first dropped coefficient onward.
    double edge = std::max(std::abs(jacobi_coeff(N, alpha, gamma, w.s_lo - 1)),
                           std::abs(jacobi_coeff(N, alpha, gamma, w.s_hi() + 1)));
    w.tail_bound = 2.0 * edge * static_cast<double>(K) / (N + alpha - 1.0);
  }
  return trim_weight(w);
}

LaurentWeight resolve_gauss(int N, double t) {
  require(t > 0.0, "resolve_weight: Gauss needs t > 0");
  long K = static_cast<long>(std::ceil(std::sqrt(std::log(1e14) / t))) + 1;
  LaurentWeight w = blank_window(N, K);
  double c = 0.5 * (N - 1);
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    double d = static_cast<double>(s) - c;
    w.u[static_cast<std::size_t>(s - w.s_lo)] = cplx(std::exp(-t * d * d), 0.0);
  }
  double D = static_cast<double>(K + 1) + c;
  w.tail_bound = 2.0 * std::exp(-t * D * D) / (1.0 - std::exp(-t * (2.0 * D + 1.0)));
  return w;
}

LaurentWeight resolve_ginibre(int N, double nu) {
  require(nu > -1.0, "resolve_weight: Ginibre needs nu > -1");
  double log_scale = log_gamma_complex(cplx(nu + 1.0, 0.0)).real();
  double c = 0.5 * (N - 1);
  auto coeff = [&](long s) {
    cplx z(nu + 1.0, static_cast<double>(s) - c);
    return std::exp(log_gamma_complex(z) - log_scale);
  };
  // |Gamma(nu+1+iy)| decays like e^{-pi |y| / 2}; grow the window until
  // the edge is negligible, then certify the rest as a geometric tail
  // with ratio 1/4 > e^{-pi/2}.
  long K = N;
  while (K < 4096 && std::abs(coeff(-K)) > 1e-15) ++K;
  LaurentWeight w = blank_window(N, K);
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    w.u[static_cast<std::size_t>(s - w.s_lo)] = coeff(s);
  w.tail_bound = 2.0 * std::abs(coeff(-K - 1)) * (0.25 / 0.75);
  return w;
}

cplx rank1_raw_coeff(int N, const std::vector<double>& gammas, long s) {
  double c = 0.5 * (N - 1);
  cplx prod(1.0, 0.0);
  for (double g : gammas) prod /= cplx(static_cast<double>(s) - c, -g);
  return prod;
}

LaurentWeight resolve_rank1(int N, const std::vector<double>& gammas) {
  long L = static_cast<long>(gammas.size());
  require(L >= N + 2,
          "resolve_weight: Rank1Product needs at least N+2 factors for an "
          "integrable coefficient window");
  if (N % 2 == 1)
    for (double g : gammas)
      require(g != 0.0,
              "resolve_weight: Rank1Product with odd N needs nonzero gammas");

  double tol = window_target;
  double Kd = std::pow(tol * static_cast<double>(L - 1), -1.0 / (L - 1));
  long K = std::min<long>(4096, static_cast<long>(std::ceil(Kd)) + N);
  LaurentWeight w = blank_window(N, K);
  for (long s = w.s_lo; s <= w.s_hi(); ++s)
    w.u[static_cast<std::size_t>(s - w.s_lo)] = rank1_raw_coeff(N, gammas, s);
  double D = static_cast<double>(K) + 1.0;
  w.tail_bound = 2.0 * std::pow(D, 1.0 - L) / (L - 1.0);
  return w;
}

// Unit-modulus constant making the coefficient family satisfy the
// reality constraint with a real positive middle entry (odd N) or a
// conjugate middle pair with Re >= 0 (even N). Only the middle one or two
// coefficients pin the phase; the families this applies to break reality
// by a single global constant, so fixing the middle fixes everything.
cplx canonical_phase_from_middle(int N, cplx lo, cplx hi) {
  require(std::abs(lo) > 0.0 && std::abs(hi) > 0.0,
          "canonical scaling: vanishing middle coefficient");
  if (N % 2 == 1) return std::conj(hi) / std::abs(hi);
  // Need arg(c) = -(arg lo + arg hi)/2 so that c*lo and c*hi conjugate.
  double phase = -0.5 * (std::arg(lo) + std::arg(hi));
  cplx c = std::polar(1.0, phase);
  cplx fixed = c * lo;
  if (fixed.real() < 0.0 || (fixed.real() == 0.0 && fixed.imag() < 0.0))
    c = -c;
  return c;
}

cplx rank1_scale(int N, const std::vector<double>& gammas) {
  long mid_hi = N / 2;
  return canonical_phase_from_middle(
      N, rank1_raw_coeff(N, gammas, mid_hi - (N % 2 == 0)),
      rank1_raw_coeff(N, gammas, mid_hi));
}

}  // namespace

cplx canonical_phase(const LaurentWeight& w) {
  long mid_hi = w.N / 2;
  return canonical_phase_from_middle(w.N, w.coeff(mid_hi - (w.N % 2 == 0)),
                                     w.coeff(mid_hi));
}

EnsembleSpec make_haar(HaarVariant v) {
  require(v != HaarVariant::Custom, "make_haar: custom variant needs a weight");
  EnsembleSpec e;
  e.kind = EnsembleKind::Haar;
  e.variant = v;
  return e;
}

EnsembleSpec make_custom_haar(LaurentWeight w) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Haar;
  e.variant = HaarVariant::Custom;
  e.custom = std::move(w);
  return e;
}

EnsembleSpec make_jacobi(double alpha, double gamma) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Jacobi;
  e.alpha = alpha;
  e.gamma = gamma;
  return e;
}

EnsembleSpec make_gauss(double t) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Gauss;
  e.t = t;
  return e;
}

EnsembleSpec make_rank1(std::vector<double> gammas) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Rank1Product;
  e.gammas = std::move(gammas);
  return e;
}

EnsembleSpec make_ginibre(double nu) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Ginibre;
  e.nu = nu;
  return e;
}

EnsembleSpec make_phase_shift(cplx z0, EnsembleSpec inner) {
  EnsembleSpec e;
  e.kind = EnsembleKind::PhaseShift;
  e.z0 = z0;
  e.inner.push_back(std::move(inner));
  return e;
}

EnsembleSpec make_inverse(EnsembleSpec inner) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Inverse;
  e.inner.push_back(std::move(inner));
  return e;
}

EnsembleSpec make_product(std::vector<EnsembleSpec> factors) {
  require(!factors.empty(), "make_product: needs at least one factor");
  EnsembleSpec e;
  e.kind = EnsembleKind::Product;
  e.inner = std::move(factors);
  return e;
}

EnsembleSpec make_fixed_times(std::vector<double> angles, EnsembleSpec inner) {
  EnsembleSpec e;
  e.kind = EnsembleKind::FixedTimes;
  e.fixed_angles = std::move(angles);
  e.inner.push_back(std::move(inner));
  return e;
}

LaurentWeight theta_coeffs(double t, int N) { return resolve_gauss(N, t); }

LaurentWeight resolve_weight(const EnsembleSpec& spec, int N) {
  require(N >= 1, "resolve_weight: N must be positive");
  LaurentWeight w;
  switch (spec.kind) {
    case EnsembleKind::Haar: {
      if (spec.variant == HaarVariant::Custom) {
        w = spec.custom;
        require(w.N == N, "resolve_weight: custom weight has wrong N");
        require(w.s_lo == 0 && w.s_hi() == N - 1,
                "resolve_weight: custom flat-spectrum weight must be "
                "supported exactly on [0, N-1]");
      } else {
        w.N = N;
        w.s_lo = 0;
        w.u.resize(static_cast<std::size_t>(N));
        for (long s = 0; s < N; ++s)
          w.u[static_cast<std::size_t>(s)] =
              spec.variant == HaarVariant::Binomial
                  ? cplx(std::exp(log_binomial(N - 1, s)), 0.0)
                  : cplx(1.0, 0.0);
      }
      break;
    }
    case EnsembleKind::Jacobi:
      w = resolve_jacobi(N, spec.alpha, spec.gamma);
      break;
    case EnsembleKind::Gauss:
      w = resolve_gauss(N, spec.t);
      break;
    case EnsembleKind::Ginibre:
      w = resolve_ginibre(N, spec.nu);
      break;
    case EnsembleKind::Rank1Product: {
      w = resolve_rank1(N, spec.gammas);
      cplx c = canonical_phase(w);
      for (cplx& x : w.u) x *= c;
      break;
    }
    case EnsembleKind::PhaseShift:
      w = phase_shift_weight(resolve_weight(spec.inner.at(0), N), spec.z0);
      break;
    case EnsembleKind::Inverse:
      w = inverse_weight(resolve_weight(spec.inner.at(0), N));
      break;
    case EnsembleKind::Product: {
      w = resolve_weight(spec.inner.at(0), N);
      for (std::size_t k = 1; k < spec.inner.size(); ++k)
        w = convolve(w, resolve_weight(spec.inner[k], N));
      break;
    }
    case EnsembleKind::FixedTimes:
      fail("resolve_weight: FixedTimes conditions on a fixed spectrum and "
           "has no circle weight; use the fixed-argument kernel");
  }
  validate_weight(w);
  return w;
}

cplx closed_form_transform(const EnsembleSpec& spec, int N, long s) {
  switch (spec.kind) {
    case EnsembleKind::Haar: {
      if (spec.variant == HaarVariant::Custom) return spec.custom.coeff(s);
      if (s < 0 || s > N - 1) return cplx(0.0, 0.0);
      if (spec.variant == HaarVariant::Binomial)
        return cplx(std::exp(log_binomial(N - 1, s)), 0.0);
      return cplx(1.0, 0.0);
    }
    case EnsembleKind::Jacobi:
      return jacobi_coeff(N, spec.alpha, spec.gamma, s);
    case EnsembleKind::Gauss: {
      double d = static_cast<double>(s) - 0.5 * (N - 1);
      return cplx(std::exp(-spec.t * d * d), 0.0);
    }
    case EnsembleKind::Ginibre: {
      cplx z(spec.nu + 1.0, static_cast<double>(s) - 0.5 * (N - 1));
      return std::exp(log_gamma_complex(z) -
                      log_gamma_complex(cplx(spec.nu + 1.0, 0.0)));
    }
    case EnsembleKind::Rank1Product:
      return rank1_scale(N, spec.gammas) *
             rank1_raw_coeff(N, spec.gammas, s);
    case EnsembleKind::PhaseShift: {
      double expo = static_cast<double>(s) - 0.5 * (N - 1);
      return closed_form_transform(spec.inner.at(0), N, s) *
             std::polar(1.0, std::arg(spec.z0) * expo);
    }
    case EnsembleKind::Inverse:
      return closed_form_transform(spec.inner.at(0), N, N - 1 - s);
    case EnsembleKind::Product: {
      cplx prod(1.0, 0.0);
      for (const EnsembleSpec& f : spec.inner)
        prod *= closed_form_transform(f, N, s);
      return prod;
    }
    case EnsembleKind::FixedTimes:
      fail("closed_form_transform: FixedTimes has no circle weight");
  }
  fail("closed_form_transform: unknown kind");
}

double rank1_angle_density(int N, double gamma, double theta) {
  require(N >= 1, "rank1_angle_density: N must be positive");
  cplx g = log_gamma_complex(cplx(0.5 * (N + 1), gamma));
  double log_norm = (N - 1) * std::log(2.0) + 2.0 * g.real() - log_factorial(N - 1);
  double c = std::cos(0.5 * theta);
  if (c <= 0.0) return 0.0;
  return std::exp(log_norm + (N - 1) * std::log(c) + gamma * theta);
}

cplx jacobi_closed_form_value(int N, double alpha, double gamma, double theta) {
  double c = 2.0 * std::cos(0.5 * theta);
  if (c <= 0.0) {
    // The weight extends continuously by 0 to theta = +-pi whenever the
    // exponent is positive; otherwise the endpoint is a genuine singularity.
    require(alpha + N - 1 > 0.0,
            "jacobi_closed_form_value: divergent at theta = +-pi");
    return cplx(0.0, 0.0);
  }
  double mag = std::pow(c, alpha + N - 1) * std::exp(gamma * theta);
  return mag * std::polar(1.0, 0.5 * theta * (1.0 - N));
}

}  // namespace cpe
