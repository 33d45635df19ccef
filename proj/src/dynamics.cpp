#include "nheth/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nheth/errors.hpp"
#include "nheth/random.hpp"

namespace nheth::dynamics {

namespace {

// exp(-i t phi_mn) a_mn with the common factor exp(log_factor) removed.
CMatrix weighted_coefficients(const DynamicsState& state, const spectral::SpectralDecomposition& dec,
                              double t, const DynamicsOptions& options, double& log_factor) {
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  const Eigen::Index n = dec.eigenvalues.size();
  double growth = -INFINITY;
  for (Eigen::Index m = 0; m < n; ++m) growth = std::max(growth, t * dec.eigenvalues(m).imag());
  log_factor = (n > 0 && std::abs(growth) > options.exponent_bound) ? 2.0 * growth : 0.0;

  CMatrix k(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const cplx en = dec.eigenvalues(col);
    for (Eigen::Index row = 0; row < n; ++row) {
      const cplx em = dec.eigenvalues(row);
      const double magnitude = t * (em.imag() + en.imag()) - log_factor;
      const double angle = -t * (em.real() - en.real());
      k(row, col) = std::polar(std::exp(magnitude), angle) * state.a(row, col);
    }
  }
  return k;
}

void check_dims(const DynamicsState& state, const spectral::SpectralDecomposition& dec) {
  const auto n = static_cast<Eigen::Index>(dec.dim());
  if (state.a.rows() != n || state.a.cols() != n) {
    throw InvalidArgument("dynamics state and decomposition dimensions differ");
  }
}

}  // namespace

DynamicsState DynamicsState::create(const CMatrix& rho_in, const spectral::SpectralDecomposition& dec,
                                    const DynamicsOptions& options) {
  const auto n = static_cast<Eigen::Index>(dec.dim());
  if (rho_in.rows() != n || rho_in.cols() != n) {
    throw InvalidArgument("initial state is " + std::to_string(rho_in.rows()) + "x" +
                          std::to_string(rho_in.cols()) + ", expected " + std::to_string(n));
  }
  if (n == 0) throw InvalidArgument("initial state is empty");
  const double tol = options.state_tolerance;
  if ((rho_in - rho_in.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidArgument("initial state is not Hermitian");
  }
  if (std::abs(rho_in.trace() - cplx{1.0, 0.0}) > tol) {
    throw InvalidArgument("initial state does not have unit trace");
  }
  const CMatrix herm = 0.5 * (rho_in + rho_in.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw InvalidArgument("initial state is not positive semidefinite");
  }

  DynamicsState st;
  st.rho_in = rho_in;
  st.a = dec.left * rho_in * dec.left.adjoint();
  st.phases.resize(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      st.phases(m, k) = dec.eigenvalues(m) - std::conj(dec.eigenvalues(k));
    }
  }
  return st;
}

CMatrix EvolvedState::unnormalized() const { return std::exp(log_factor) * scaled; }

CMatrix EvolvedState::normalized() const { return scaled / scaled.trace().real(); }

double EvolvedState::log_trace() const { return std::log(scaled.trace().real()) + log_factor; }

EvolvedState evolve(const DynamicsState& state, const spectral::SpectralDecomposition& dec, double t,
                    const DynamicsOptions& options) {
  check_dims(state, dec);
  EvolvedState out;
  const CMatrix k = weighted_coefficients(state, dec, t, options, out.log_factor);
  out.scaled = dec.right * k * dec.right.adjoint();
  return out;
}

std::vector<TrajectoryPoint> expectation_trajectory(const CMatrix& observable, const DynamicsState& state,
                                                    const spectral::SpectralDecomposition& dec,
                                                    std::span<const double> times,
                                                    const DynamicsOptions& options) {
  check_dims(state, dec);
  const auto n = static_cast<Eigen::Index>(dec.dim());
  if (observable.rows() != n || observable.cols() != n) {
    throw InvalidArgument("observable and decomposition dimensions differ");
  }
  // Tr(O rho) = sum_mn K_mn <R_n|O|R_m>, Tr(rho) = sum_mn K_mn <R_n|R_m>.
  const CMatrix o_rr_t = (dec.right.adjoint() * observable * dec.right).transpose();
  const CMatrix g_t = (dec.right.adjoint() * dec.right).transpose();

  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) {
    double log_factor = 0.0;
    const CMatrix k = weighted_coefficients(state, dec, t, options, log_factor);
    const cplx num = k.cwiseProduct(o_rr_t).sum();
    const double tr = k.cwiseProduct(g_t).sum().real();
    TrajectoryPoint p;
    p.t = t;
    p.value = num / tr;
    p.log_trace = std::log(tr) + log_factor;
    p.trace_factor = std::exp(p.log_trace);
    out.push_back(p);
  }
  return out;
}

CMatrix asymptotic_state(const DynamicsState& state, const spectral::SpectralDecomposition& dec,
                         AsymptoteKind kind, const AsymptoteOptions& options) {
  check_dims(state, dec);
  const auto n = static_cast<Eigen::Index>(dec.dim());
  if (n == 0) throw InvalidArgument("asymptotic_state: empty decomposition");

  if (kind == AsymptoteKind::SlowestDecay) {
    double s_max = -INFINITY;
    for (Eigen::Index m = 0; m < n; ++m) s_max = std::max(s_max, dec.eigenvalues(m).imag());
    std::vector<std::size_t> tied;
    for (Eigen::Index m = 0; m < n; ++m) {
      if (s_max - dec.eigenvalues(m).imag() <= options.tie_tolerance) tied.push_back(static_cast<std::size_t>(m));
    }
    if (tied.size() != 1) {
      throw AmbiguousAsymptoteError(tied, "slowest decay rate is shared by " + std::to_string(tied.size()) +
                                              " eigenvalues");
    }
    const auto r = dec.right.col(static_cast<Eigen::Index>(tied.front()));
    return r * r.adjoint();
  }

  double scale = 1.0, max_imag = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    scale = std::max(scale, std::abs(dec.eigenvalues(m)));
    max_imag = std::max(max_imag, std::abs(dec.eigenvalues(m).imag()));
  }
  if (max_imag > options.real_spectrum_tolerance * scale) {
    throw InvalidRegimeError("diagonal ensemble needs a real spectrum; max |Im eps| = " +
                             std::to_string(max_imag));
  }
  const CVector weights = state.a.diagonal();
  CMatrix rho = dec.right * weights.asDiagonal() * dec.right.adjoint();
  return rho / rho.trace().real();
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const CMatrix diff = a - b;
  const CMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

CMatrix real_spectrum_fixture(std::size_t dim, std::uint64_t seed, double min_gap, double max_condition) {
  if (dim == 0) throw InvalidArgument("real_spectrum_fixture: dimension must be positive");
  if (min_gap * static_cast<double>(dim - 1) >= 2.0) {
    throw InvalidArgument("real_spectrum_fixture: gap too large for [-1, 1]");
  }
  GaussianSource rng(seed);
  const auto n = static_cast<Eigen::Index>(dim);

  Eigen::VectorXd lambda(n);
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) throw NumericalError("real_spectrum_fixture: could not meet the gap");
    for (Eigen::Index k = 0; k < n; ++k) lambda(k) = 2.0 * rng.uniform_open0() - 1.0;
    std::sort(lambda.data(), lambda.data() + n);
    bool ok = true;
    for (Eigen::Index k = 1; k < n; ++k) ok = ok && (lambda(k) - lambda(k - 1) >= min_gap);
    if (ok) break;
  }

  CMatrix noise(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) noise(r, c) = cplx{rng.standard(), rng.standard()};
  }
  noise /= std::sqrt(2.0 * static_cast<double>(n));

  double strength = 0.8;
  for (int attempt = 0; attempt < 60; ++attempt, strength *= 0.7) {
    const CMatrix s = CMatrix::Identity(n, n) + strength * noise;
    Eigen::JacobiSVD<CMatrix> svd(s);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(n - 1);
    if (std::isfinite(cond) && cond < max_condition) {
      return s * lambda.cast<cplx>().asDiagonal() * s.inverse();
    }
  }
  throw NumericalError("real_spectrum_fixture: could not build a well-conditioned similarity");
}

CMatrix random_pure_state(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw InvalidArgument("random_pure_state: dimension must be positive");
  GaussianSource rng(seed);
  CVector psi(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < psi.size(); ++k) psi(k) = cplx{rng.standard(), rng.standard()};
  psi.normalize();
  return psi * psi.adjoint();
}

}  // namespace nheth::dynamics
