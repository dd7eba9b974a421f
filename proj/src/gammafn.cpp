#include "cpe/gammafn.hpp"

#include <array>

namespace cpe {

namespace {

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
// Relative error below 1e-13 on the half-plane Re z >= 0.5.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

constexpr double log_sqrt_2pi = 0.91893853320467274178;

// Valid for Re z >= 0.5.
cplx log_gamma_half_plane(cplx z) {
  cplx a(lanczos_c[0], 0.0);
  for (int k = 1; k < 15; ++k) a += lanczos_c[k] / (z + cplx(k - 1, 0.0));
  cplx t = z + cplx(lanczos_g - 0.5, 0.0);
  return log_sqrt_2pi + (z - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

cplx log_gamma_complex(cplx z) {
  // Enforce conjugate symmetry exactly: evaluate in the upper half plane.
  if (z.imag() < 0.0) return std::conj(log_gamma_complex(std::conj(z)));

  if (z.real() >= 0.5) return log_gamma_half_plane(z);

  // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
  // Use log sin in a form stable for large |Im z|.
  cplx w = 1.0 - z;
  cplx lg1mz = log_gamma_half_plane(w);
  // log sin(pi z) with the branch that keeps the principal value: write
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i) and factor the growing
  // exponential. For Im z >= 0 the dominant term is e^{-i pi z}.
  cplx ipz = cplx(0.0, pi) * z;
  cplx log_sin = -ipz + std::log((std::exp(2.0 * ipz) - 1.0) / cplx(0.0, 2.0));
  cplx result = std::log(cplx(pi, 0.0)) - log_sin - lg1mz;
  // The subtraction can land on a neighbouring branch of the principal
  // log; repair by comparing exp(result) phases is overkill here because
  // all downstream use is through exp() of sums. Keep the value as is.
  return result;
}

cplx gamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    fail("gamma_complex: pole at non-positive integer");
  return std::exp(log_gamma_complex(z));
}

cplx reciprocal_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    return cplx(0.0, 0.0);
  return std::exp(-log_gamma_complex(z));
}

double log_factorial(long n) {
  require(n >= 0, "log_factorial: negative argument");
  static const std::array<double, 21> small = [] {
    std::array<double, 21> t{};
    t[0] = 0.0;
    double acc = 0.0;
    for (int k = 1; k <= 20; ++k) {
      acc += std::log(static_cast<double>(k));
      t[k] = acc;
    }
    return t;
  }();
  if (n <= 20) return small[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long n, long k) {
  require(0 <= k && k <= n, "log_binomial: out of range");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace cpe
