#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nheth/spectral.hpp"
#include "nheth/stats.hpp"
#include "nheth/types.hpp"

namespace nheth::eth {

enum class BasisKind { RightRight, RightLeft };

struct MatrixElementSet {
  BasisKind basis_kind = BasisKind::RightRight;
  CMatrix elements;                          // O_mn
  std::optional<spectral::OverlapGram> gram; // RightRight only
  double observable_mean = 0.0;              // Tr(O) / D
  double observable_sq_mean = 0.0;           // Tr(O^2) / D

  // sqrt(mean(O^2) / D), the scale of eigenstate-to-eigenstate fluctuations.
  double fluctuation_scale() const;
};

// RightRight: O_mn = <R_m|O|R_n>. RightLeft: O_mn = <R_m|O|L_n>.
MatrixElementSet matrix_elements(const CMatrix& observable, const spectral::SpectralDecomposition& dec,
                                 BasisKind kind);

// Diagonal untouched, off-diagonal O_mn - G_mn * Obar.
struct CorrectedElements {
  CMatrix tilde;
};

CorrectedElements corrected_elements(const MatrixElementSet& mset);

// |R_n> = alpha |R_m> + beta |R_{n perp m}>.
struct DecompositionCheck {
  cplx alpha;
  cplx beta;
  double residual = 0.0;
  CVector perpendicular;  // |R_{n perp m}>, unit norm
};

DecompositionCheck decomposition_check(const spectral::SpectralDecomposition& dec, std::size_t m,
                                       std::size_t n);

struct EnergyWindow {
  enum class Kind { Disk, AngularSlice };

  Kind kind = Kind::Disk;
  double radius = 0.2;
  double rho_min = 0.0;
  double rho_max = 1.0;
  double phi_max = 0.05;

  static EnergyWindow disk(double r);
  static EnergyWindow slice(double rho_min, double rho_max, double phi_max);

  // "disk:<r>" or "slice:<rho_min>,<rho_max>,<phi_max>"
  static EnergyWindow parse(std::string_view text);
  std::string to_string() const;

  void validate() const;
  bool contains(cplx e) const;
};

std::vector<std::size_t> select_window(const CVector& eigenvalues, const EnergyWindow& window);

enum class Reference { GlobalMean, WindowMean };

std::string_view reference_name(Reference r) noexcept;
Reference parse_reference(std::string_view text);

// What one realization contributes to the pooled statistics.
struct WindowSamples {
  std::vector<double> diagonal;    // O_mm, m in window
  std::vector<double> offdiag_re;  // Re tilde O_mn, m < n both in window
  std::vector<double> offdiag_im;
  cplx energy_sum{0.0, 0.0};
  double observable_mean = 0.0;
};

WindowSamples extract_window_samples(const MatrixElementSet& mset, const CorrectedElements& corrected,
                                     const CVector& eigenvalues, std::span<const std::size_t> window);

struct EthStatistics {
  EnergyWindow window;
  Reference reference = Reference::GlobalMean;
  double reference_value = 0.0;
  double observable_mean = 0.0;
  double diag_mean = 0.0;  // mean of raw O_mm in the window
  double diag_mean_stderr = 0.0;  // clustered by realization
  std::vector<double> diag_samples;     // O_mm - reference, ascending
  std::vector<double> offdiag_samples;  // Re tilde O_mn, ascending
  std::vector<double> offdiag_imag_samples;
  double var_diag = 0.0;
  double var_offdiag = 0.0;
  double var_offdiag_imag = 0.0;
  stats::GaussianFit diag_fit;
  stats::GaussianFit offdiag_fit;
  cplx window_mean_energy{0.0, 0.0};
  std::size_t n_realizations = 0;
  std::vector<std::size_t> per_realization_counts;

  double variance_ratio() const { return var_offdiag > 0.0 ? var_diag / var_offdiag : 0.0; }
};

// WindowMean subtracts each realization's own windowed O_mm mean, and
// reference_value is then the average of those means.
// Pools realizations in the order given; samples are sorted before any
// reduction so the result does not depend on that order.
EthStatistics pool_statistics(std::span<const WindowSamples> realizations, const EnergyWindow& window,
                              Reference reference);

struct SlopePoint {
  double dim;
  double variance;
};

// Least squares of log10(variance) against log10(dim). Decay gives a negative slope.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;

  double decay_magnitude() const { return -slope; }
};

SlopeFit slope_fit(std::span<const SlopePoint> points);

// Root mean square of |M_mn| over ordered pairs m != n drawn from `indices`.
double rms_offdiagonal(const CMatrix& m, std::span<const std::size_t> indices);

}  // namespace nheth::eth
