#include "cpe/kernel.hpp"

#include "cpe/gammafn.hpp"

namespace cpe {

namespace {

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx BiorthSystem::evalP(int j, cplx z) const {
  const auto& c = P[static_cast<std::size_t>(j)];
  cplx acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

cplx BiorthSystem::evalQ(int j, cplx z) const {
  const auto& c = Q[static_cast<std::size_t>(j)];
  cplx zi = 1.0 / z;
  cplx acc(0.0, 0.0);
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * zi + c[m];
  return acc * std::pow(z, cplx(static_cast<double>(-q_lo), 0.0));
}

cplx BiorthSystem::kernel(cplx z1, cplx z2) const {
  cplx acc(0.0, 0.0);
  for (int j = 0; j < N; ++j) acc += evalP(j, z1) * evalQ(j, z2);
  return acc;
}

Eigen::MatrixXcd gram_matrix(const BiorthSystem& sys) {
  int N = sys.N;
  Eigen::MatrixXcd G(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      cplx acc(0.0, 0.0);
      const auto& p = sys.P[static_cast<std::size_t>(a)];
      const auto& q = sys.Q[static_cast<std::size_t>(b)];
      for (std::size_t k = 0; k < p.size(); ++k) {
        long l = static_cast<long>(k) - sys.q_lo;
        if (l >= 0 && l < static_cast<long>(q.size()))
          acc += p[k] * q[static_cast<std::size_t>(l)];
      }
      G(a, b) = acc;
    }
  return G;
}

namespace {

// Apply P <- G^{-1} P when the Gram defect is small but resolvable;
// reject anything that signals a genuinely broken construction.
void repair_gram(BiorthSystem& sys, double tol) {
  Eigen::MatrixXcd G = gram_matrix(sys);
  int N = sys.N;
  double defect = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      cplx want = a == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      defect = std::max(defect, std::abs(G(a, b) - want));
    }
  if (defect <= tol) return;
  require(defect <= 1e-6,
          "biorth system: Gram defect too large to correct");

  Eigen::MatrixXcd Pm = Eigen::MatrixXcd::Zero(N, N);
  for (int a = 0; a < N; ++a)
    for (std::size_t k = 0; k < sys.P[static_cast<std::size_t>(a)].size(); ++k)
      Pm(a, static_cast<int>(k)) = sys.P[static_cast<std::size_t>(a)][k];
  Eigen::MatrixXcd fixed = G.partialPivLu().solve(Pm);
  for (int a = 0; a < N; ++a)
    for (std::size_t k = 0; k < sys.P[static_cast<std::size_t>(a)].size(); ++k)
      sys.P[static_cast<std::size_t>(a)][k] = fixed(a, static_cast<int>(k));
  sys.repair_norm = defect;
}

}  // namespace

BiorthSystem biorth_polya(const LaurentWeight& w, double tol) {
  validate_weight(w);
  int N = w.N;
  BiorthSystem sys;
  sys.N = N;
  sys.q_lo = w.s_lo;
  sys.P.resize(static_cast<std::size_t>(N));
  sys.Q.resize(static_cast<std::size_t>(N));

  for (int j = 0; j < N; ++j) {
    auto& p = sys.P[static_cast<std::size_t>(j)];
    p.resize(static_cast<std::size_t>(j + 1));
    for (int k = 0; k <= j; ++k) {
      double fact =
          std::exp(log_factorial(j - k) + log_factorial(k));
      cplx val = cplx(k % 2 == 0 ? 1.0 : -1.0, 0.0) /
                 (fact * w.coeff(k));
      p[static_cast<std::size_t>(k)] = val;
    }

    auto& q = sys.Q[static_cast<std::size_t>(j)];
    q.resize(w.u.size());
    for (long l = w.s_lo; l <= w.s_hi(); ++l) {
      double fall = 1.0;
      for (int m = 0; m < j; ++m)
        fall *= static_cast<double>(m - l);
      q[static_cast<std::size_t>(l - w.s_lo)] = fall * w.coeff(l);
    }
  }

  repair_gram(sys, tol);
  return sys;
}

BiorthSystem jacobi_biorth_closed(int N, double alpha, double gamma,
                                  long window_half) {
  require(alpha > -1.0, "jacobi_biorth_closed: needs alpha > -1");
  cplx lg_top = log_gamma_complex(cplx(N + alpha, 0.0));
  auto log_u = [&](long s) {
    // log of Gamma(N+alpha) / (Gamma(N+alpha/2-s+i gamma)
    //                          Gamma(alpha/2+s-i gamma+1)).
    cplx d1(N + alpha / 2.0 - static_cast<double>(s), gamma);
    cplx d2(alpha / 2.0 + static_cast<double>(s) + 1.0, -gamma);
    require(!is_nonpositive_integer(d1) && !is_nonpositive_integer(d2),
            "jacobi_biorth_closed: coefficient vanishes inside the window");
    return lg_top - log_gamma_complex(d1) - log_gamma_complex(d2);
  };

  BiorthSystem sys;
  sys.N = N;
  sys.q_lo = -window_half;
  sys.P.resize(static_cast<std::size_t>(N));
  sys.Q.resize(static_cast<std::size_t>(N));
  long q_hi = N - 1 + window_half;

  for (int j = 0; j < N; ++j) {
    auto& p = sys.P[static_cast<std::size_t>(j)];
    p.resize(static_cast<std::size_t>(j + 1));
    for (long k = 0; k <= j; ++k) {
      cplx lg = -log_u(k) - log_factorial(j - k) - log_factorial(k);
      p[static_cast<std::size_t>(k)] =
          (k % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }

    auto& q = sys.Q[static_cast<std::size_t>(j)];
    q.assign(static_cast<std::size_t>(q_hi - sys.q_lo + 1), cplx(0.0, 0.0));
    for (long l = sys.q_lo; l <= q_hi; ++l) {
      cplx val(0.0, 0.0);
      if (l < 0) {
        // prod_{m<j}(m - l) = Gamma(j - l) / Gamma(-l), all factors positive.
        val = std::exp(log_gamma_complex(cplx(static_cast<double>(j - l), 0.0)) -
                       log_gamma_complex(cplx(static_cast<double>(-l), 0.0)) +
                       log_u(l));
      } else if (l >= j) {
        // prod_{m<j}(m - l) = (-1)^j l! / (l - j)!.
        val = (j % 2 == 0 ? 1.0 : -1.0) *
              std::exp(log_factorial(l) - log_factorial(l - j) + log_u(l));
      }
      q[static_cast<std::size_t>(l - sys.q_lo)] = val;
    }
  }
  return sys;
}

BiorthSystem kernel_convolved(const LaurentWeight& w,
                              const BiorthSystem& inner) {
  require(w.N == inner.N, "kernel_convolved: dimension mismatch");
  long lo = std::max(w.s_lo, inner.q_lo);
  long inner_hi = inner.q_lo + static_cast<long>(inner.Q[0].size()) - 1;
  long hi = std::min(w.s_hi(), inner_hi);
  require(lo <= 0 && hi >= w.N - 1,
          "kernel_convolved: window intersection too small");

  BiorthSystem sys;
  sys.N = w.N;
  sys.q_lo = lo;
  sys.repair_norm = inner.repair_norm;
  sys.P.resize(inner.P.size());
  sys.Q.resize(inner.Q.size());
  for (std::size_t j = 0; j < inner.P.size(); ++j) {
    sys.P[j].resize(inner.P[j].size());
    for (std::size_t k = 0; k < inner.P[j].size(); ++k)
      sys.P[j][k] = inner.P[j][k] / w.coeff(static_cast<long>(k));
    sys.Q[j].resize(static_cast<std::size_t>(hi - lo + 1));
    for (long l = lo; l <= hi; ++l)
      sys.Q[j][static_cast<std::size_t>(l - lo)] =
          w.coeff(l) * inner.Q[j][static_cast<std::size_t>(l - inner.q_lo)];
  }
  return sys;
}

BiorthSystem convolution_identity_system(int N, long s_lo, long s_hi) {
  require(s_lo <= 0 && s_hi >= N - 1,
          "convolution_identity_system: window must cover [0, N-1]");
  BiorthSystem sys;
  sys.N = N;
  sys.q_lo = s_lo;
  sys.P.resize(static_cast<std::size_t>(N));
  sys.Q.resize(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    auto& p = sys.P[static_cast<std::size_t>(j)];
    p.resize(static_cast<std::size_t>(j + 1));
    for (int k = 0; k <= j; ++k)
      p[static_cast<std::size_t>(k)] =
          cplx(k % 2 == 0 ? 1.0 : -1.0, 0.0) /
          std::exp(log_factorial(j - k) + log_factorial(k));
    auto& q = sys.Q[static_cast<std::size_t>(j)];
    q.resize(static_cast<std::size_t>(s_hi - s_lo + 1));
    for (long l = s_lo; l <= s_hi; ++l) {
      double fall = 1.0;
      for (int m = 0; m < j; ++m) fall *= static_cast<double>(m - l);
      q[static_cast<std::size_t>(l - s_lo)] = fall;
    }
  }
  return sys;
}

}  // namespace cpe
