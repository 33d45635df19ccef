#pragma once

#include <cstddef>

#include "nheth/types.hpp"

namespace nheth::spectral {

struct DecomposeOptions {
  // Largest tolerated |<L_m|R_n> - delta_mn|.
  double pairing_threshold = 1e-8;
  // Largest tolerated eigenvalue condition number ||L_m|| ||R_m||.
  double conditioning_limit = 1e12;
};

// H = sum_m eps_m |R_m><L_m| with <R_m|R_m> = 1 and <L_m|R_n> = delta_mn.
//
// Eigenvalues are sorted by real part, then imaginary part. Each right
// eigenvector has its largest-modulus component real and positive.
struct SpectralDecomposition {
  CVector eigenvalues;
  CMatrix right;  // column m = |R_m>
  CMatrix left;   // row m = <L_m|
  double residual = 0.0;        // max_m ||(H - eps_m) R_m||_2
  double pairing_error = 0.0;   // max_{mn} |<L_m|R_n> - delta_mn|
  double max_conditioning = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  double w(std::size_t m) const { return eigenvalues(static_cast<Eigen::Index>(m)).real(); }
  double s(std::size_t m) const { return eigenvalues(static_cast<Eigen::Index>(m)).imag(); }
};

// G_mn = <R_m|R_n>.
struct OverlapGram {
  CMatrix g;
};

SpectralDecomposition decompose(const CMatrix& h, const DecomposeOptions& options = {});

// Normalizes and gauges the supplied right eigenvectors, then derives the left
// vectors and diagnostics. decompose() finishes through this.
SpectralDecomposition from_right_vectors(const CMatrix& h, CVector eigenvalues, CMatrix right,
                                         const DecomposeOptions& options = {});

OverlapGram overlap_gram(const SpectralDecomposition& dec);

CMatrix reconstruct(const SpectralDecomposition& dec);

// ||H - reconstruct(dec)||_F / ||H||_F (absolute when H = 0).
double reconstruction_error(const CMatrix& h, const SpectralDecomposition& dec);

}  // namespace nheth::spectral
