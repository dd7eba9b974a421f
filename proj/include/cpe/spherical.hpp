#pragma once

#include "cpe/ensembles.hpp"

namespace cpe {

// Vandermonde product prod_{a<b} (v_b - v_a).
cplx vandermonde(const std::vector<cplx>& v);

// Same product for unit-circle points given by angles, computed in the
// numerically friendly factored form 2i sin((th_b - th_a)/2) e^{i(th_a+th_b)/2}.
cplx vandermonde_circle(const std::vector<double>& theta);

// Normalized character ratio
//   Phi(z; s) = (prod_{j=0}^{N-1} j!) det[z_a^{s_b}] / (Delta(z) Delta(s)),
// symmetric in both arguments, equal to 1 at s = (0, 1, ..., N-1).
// Throws on repeated s entries or angle gaps below gap_tol.
cplx spherical_function(const EigenAngles& x, const MultiIndex& s);

// Whether the spec resolves to a plain circle weight (everything except a
// FixedTimes conditioning anywhere in the tree).
bool has_circle_weight(const EnsembleSpec& spec);

// Transform of the ensemble's spectral density, normalized to 1 at
// s = (0, ..., N-1). For weight-backed specs this is
// prod_j Sw(s_j) / Sw(j-1); a FixedTimes node contributes the extra
// factor Phi(x; s).
cplx ensemble_transform(const EnsembleSpec& spec, int N, const MultiIndex& s);

// Reconstruct the joint spectral density from transform values by summing
// over strictly increasing integer tuples in the window
// |s_j - (N-1)/2| <= window_half:
//   p(z) = |Delta(z)|^2 / (N! prod (j!)^2)
//          * sum_s Delta(s)^2 T(s) Phi(z^{-1}; s) regulator(s),
// with regulator exp[-t_reg sum (s_j + (1-N)/2)^2 + t_reg sum (j + (1-N)/2)^2].
// Practical for N <= 4.
double inverse_transform_density(const EnsembleSpec& spec, int N,
                                 const EigenAngles& z,
                                 long window_half = 40, double t_reg = 0.0);

}  // namespace cpe
