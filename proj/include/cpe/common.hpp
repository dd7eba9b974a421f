#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>
#include <cmath>

namespace cpe {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Shared numeric policy. Mixed absolute/relative comparisons use
// |a-b| <= atol + rtol*max(|a|,|b|) unless a caller overrides.
inline constexpr double default_atol = 1e-12;
inline constexpr double default_rtol = 1e-10;

// Minimal angular separation below which eigenvalue configurations are
// treated as degenerate and rejected.
inline constexpr double gap_tol = 1e-8;

inline bool close(double a, double b,
                  double atol = default_atol, double rtol = default_rtol) {
  return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
}

inline bool close(cplx a, cplx b,
                  double atol = default_atol, double rtol = default_rtol) {
  return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double th) {
  th = std::fmod(th, 2.0 * pi);
  if (th <= -pi) th += 2.0 * pi;
  if (th > pi) th -= 2.0 * pi;
  return th;
}

// Eigenvalue configuration on the unit circle, stored as angles in (-pi, pi].
struct EigenAngles {
  std::vector<double> theta;

  EigenAngles() = default;
  explicit EigenAngles(std::vector<double> th) : theta(std::move(th)) {
    for (double& t : theta) t = wrap_angle(t);
  }

  int size() const { return static_cast<int>(theta.size()); }

  cplx point(int j) const { return std::polar(1.0, theta[j]); }

  std::vector<cplx> points() const {
    std::vector<cplx> z(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) z[j] = std::polar(1.0, theta[j]);
    return z;
  }

  // Smallest pairwise circular distance; 2*pi for fewer than two angles.
  double min_gap() const {
    double g = 2.0 * pi;
    for (std::size_t a = 0; a < theta.size(); ++a)
      for (std::size_t b = a + 1; b < theta.size(); ++b) {
        double d = std::abs(wrap_angle(theta[a] - theta[b]));
        g = std::min(g, d);
      }
    return g;
  }
};

// Strictly integer spectral multi-index; validity means pairwise distinct.
struct MultiIndex {
  std::vector<long> s;

  int size() const { return static_cast<int>(s.size()); }

  bool distinct() const {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (s[a] == s[b]) return false;
    return true;
  }
};

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

}  // namespace cpe
