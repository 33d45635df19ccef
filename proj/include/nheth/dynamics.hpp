#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nheth/spectral.hpp"
#include "nheth/types.hpp"

namespace nheth::dynamics {

struct DynamicsOptions {
  // Largest t * Im(eps) evolved without factoring out exp(2 t s_max).
  double exponent_bound = 50.0;
  // Tolerance on Hermiticity, positivity and unit trace of rho_in.
  double state_tolerance = 1e-9;
};

// rho_in expanded in the right eigenbasis:
// rho_in = sum_mn a_mn |R_m><R_n| with a_mn = <L_m|rho_in|L_n>.
struct DynamicsState {
  CMatrix rho_in;
  CMatrix a;
  CMatrix phases;  // phi_mn = eps_m - conj(eps_n)

  static DynamicsState create(const CMatrix& rho_in, const spectral::SpectralDecomposition& dec,
                              const DynamicsOptions& options = {});
};

// rho(t) = exp(log_factor) * scaled.
struct EvolvedState {
  CMatrix scaled;
  double log_factor = 0.0;

  CMatrix unnormalized() const;
  CMatrix normalized() const;
  double log_trace() const;
};

EvolvedState evolve(const DynamicsState& state, const spectral::SpectralDecomposition& dec, double t,
                    const DynamicsOptions& options = {});

struct TrajectoryPoint {
  double t = 0.0;
  cplx value;                // Tr(O rho(t)) / Tr(rho(t))
  double trace_factor = 0.0; // Tr(rho(t))
  double log_trace = 0.0;
};

// Evaluated through right-basis matrix elements <R_n|O|R_m>; rho(t) is never formed.
std::vector<TrajectoryPoint> expectation_trajectory(const CMatrix& observable, const DynamicsState& state,
                                                    const spectral::SpectralDecomposition& dec,
                                                    std::span<const double> times,
                                                    const DynamicsOptions& options = {});

enum class AsymptoteKind { SlowestDecay, DiagonalEnsemble };

struct AsymptoteOptions {
  double tie_tolerance = 1e-10;
  // Spectrum counts as real when max |Im eps| <= this * max(1, max |eps|).
  double real_spectrum_tolerance = 1e-9;
};

CMatrix asymptotic_state(const DynamicsState& state, const spectral::SpectralDecomposition& dec,
                         AsymptoteKind kind, const AsymptoteOptions& options = {});

// 0.5 * sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

// S diag(lambda) S^{-1} with real, non-degenerate lambda (pairwise gap >= min_gap)
// in [-1, 1] and a random S of condition number below max_condition.
CMatrix real_spectrum_fixture(std::size_t dim, std::uint64_t seed, double min_gap = 1e-3,
                              double max_condition = 20.0);

// |psi><psi| for a complex Gaussian psi, normalized.
CMatrix random_pure_state(std::size_t dim, std::uint64_t seed);

}  // namespace nheth::dynamics
