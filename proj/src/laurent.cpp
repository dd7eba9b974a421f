#include "cpe/laurent.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace cpe {

void validate_weight(const LaurentWeight& w, double tol) {
  require(w.N >= 1, "validate_weight: N must be positive");
  require(!w.u.empty(), "validate_weight: empty coefficient window");
  require(w.s_lo <= 0, "validate_weight: window must start at or below 0");
  require(w.s_hi() >= w.N - 1, "validate_weight: window must reach N-1");
  // Symmetry of the window about (N-1)/2: s_lo + s_hi == N-1.
  require(w.s_lo + w.s_hi() == w.N - 1,
          "validate_weight: window not symmetric about (N-1)/2");
  require(w.tail_bound >= 0.0, "validate_weight: negative tail bound");

  double scale = 0.0;
  for (const cplx& c : w.u) scale = std::max(scale, std::abs(c));
  require(scale > 0.0, "validate_weight: all coefficients vanish");

  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    cplx mirror = std::conj(w.coeff(w.N - 1 - s));
    if (std::abs(w.coeff(s) - mirror) > tol * scale)
      fail("validate_weight: reality constraint u_s = conj(u_{N-1-s}) violated");
  }
  for (long s = 0; s < w.N; ++s)
    if (std::abs(w.coeff(s)) == 0.0)
      fail("validate_weight: zero coefficient inside [0, N-1]");
  if (w.N % 2 == 1) {
    cplx mid = w.coeff((w.N - 1) / 2);
    if (std::abs(mid.imag()) > tol * scale || mid.real() <= 0.0)
      fail("validate_weight: odd N requires a real positive middle coefficient");
  }
}

cplx eval_weight(const LaurentWeight& w, cplx z) {
  // Horner in 1/z from the top of the window, then multiply by z^{-s_lo}.
  cplx zi = 1.0 / z;
  cplx acc(0.0, 0.0);
  for (std::size_t k = w.u.size(); k-- > 0;) acc = acc * zi + w.u[k];
  return acc * std::pow(z, cplx(static_cast<double>(-w.s_lo), 0.0));
}

LaurentWeight derivative_coeffs(const LaurentWeight& w, int b) {
  require(1 <= b && b <= w.N,
          "derivative_coeffs: order must lie in [1, N]");
  LaurentWeight d = w;
  for (long s = w.s_lo; s <= w.s_hi(); ++s) {
    double f = std::pow(static_cast<double>(s), b - 1);
    if (b == 1) f = 1.0;  // 0^0
    d.u[static_cast<std::size_t>(s - w.s_lo)] *= f;
  }
  return d;
}

LaurentWeight convolve(const LaurentWeight& a, const LaurentWeight& b) {
  require(a.N == b.N, "convolve: dimension mismatch");
  long lo = std::max(a.s_lo, b.s_lo);
  long hi = std::min(a.s_hi(), b.s_hi());
  require(lo <= 0 && hi >= a.N - 1, "convolve: window intersection too small");

  LaurentWeight c;
  c.N = a.N;
  c.s_lo = lo;
  c.u.resize(static_cast<std::size_t>(hi - lo + 1));
  for (long s = lo; s <= hi; ++s)
    c.u[static_cast<std::size_t>(s - lo)] = a.coeff(s) * b.coeff(s);

  double amax = 0.0, bmax = 0.0;
  for (const cplx& x : a.u) amax = std::max(amax, std::abs(x));
  for (const cplx& x : b.u) bmax = std::max(bmax, std::abs(x));
  c.tail_bound = a.tail_bound * bmax + b.tail_bound * amax;
  return trim_weight(c);
}

LaurentWeight inverse_weight(const LaurentWeight& w) {
  LaurentWeight r = w;
  for (long s = r.s_lo; s <= r.s_hi(); ++s)
    r.u[static_cast<std::size_t>(s - r.s_lo)] = w.coeff(w.N - 1 - s);
  return r;
}

LaurentWeight phase_shift_weight(const LaurentWeight& w, cplx z0) {
  require(close(std::abs(z0), 1.0, 1e-12, 1e-12),
          "phase_shift_weight: z0 must lie on the unit circle");
  double phi = std::arg(z0);
  LaurentWeight r = w;
  double half = 0.5 * static_cast<double>(w.N - 1);
  for (long s = r.s_lo; s <= r.s_hi(); ++s) {
    double expo = static_cast<double>(s) - half;
    r.u[static_cast<std::size_t>(s - r.s_lo)] *= std::polar(1.0, phi * expo);
  }
  return r;
}

LaurentWeight trim_weight(LaurentWeight w) {
  // Keep the window symmetric: drop edge pairs only when both vanish.
  while (w.u.size() >= 2 && w.s_lo < 0 && w.s_hi() > w.N - 1 &&
         std::abs(w.u.front()) == 0.0 && std::abs(w.u.back()) == 0.0) {
    w.u.erase(w.u.begin());
    w.u.pop_back();
    ++w.s_lo;
  }
  return w;
}

std::string weight_to_json(const LaurentWeight& w) {
  nlohmann::json j;
  j["N"] = w.N;
  j["s_lo"] = w.s_lo;
  auto coeffs = nlohmann::json::array();
  for (const cplx& c : w.u) coeffs.push_back({c.real(), c.imag()});
  j["coeffs"] = std::move(coeffs);
  j["tail_bound"] = w.tail_bound;
  return j.dump();
}

LaurentWeight weight_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LaurentWeight w;
  w.N = j.at("N").get<int>();
  w.s_lo = j.at("s_lo").get<long>();
  for (const auto& pair : j.at("coeffs"))
    w.u.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  w.tail_bound = j.at("tail_bound").get<double>();
  validate_weight(w);
  return w;
}

}  // namespace cpe
