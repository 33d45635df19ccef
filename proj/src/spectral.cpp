#include "nheth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "nheth/errors.hpp"

namespace nheth::spectral {

namespace {

void check_input(const CMatrix& h) {
  if (h.rows() != h.cols()) {
    throw InvalidArgument("decompose: matrix is " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + ", expected square");
  }
  if (!h.allFinite()) throw InvalidArgument("decompose: matrix has non-finite entries");
}

// Unit 2-norm, largest-modulus component real positive.
void normalize_and_gauge(CMatrix& right) {
  for (Eigen::Index m = 0; m < right.cols(); ++m) {
    auto col = right.col(m);
    const double norm = col.norm();
    if (norm == 0.0) {
      throw ExceptionalPointError(static_cast<std::size_t>(m), INFINITY,
                                  "eigensolver returned a null right eigenvector at index " +
                                      std::to_string(m));
    }
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    const cplx phase = col(pivot) / std::abs(col(pivot));
    col *= std::conj(phase) / norm;
    col(pivot) = cplx{col(pivot).real(), 0.0};
  }
}

}  // namespace

SpectralDecomposition from_right_vectors(const CMatrix& h, CVector eigenvalues, CMatrix right,
                                         const DecomposeOptions& options) {
  check_input(h);
  const Eigen::Index n = h.rows();
  if (eigenvalues.size() != n || right.rows() != n || right.cols() != n) {
    throw InvalidArgument("from_right_vectors: dimension mismatch");
  }
  normalize_and_gauge(right);

  SpectralDecomposition dec;
  dec.eigenvalues = std::move(eigenvalues);
  dec.right = std::move(right);

  Eigen::PartialPivLU<CMatrix> lu(dec.right);
  dec.left = lu.inverse();

  // Right columns are unit norm, so ||L_m|| is the condition number of eps_m.
  dec.max_conditioning = 0.0;
  std::size_t worst = 0;
  for (Eigen::Index m = 0; m < n; ++m) {
    const double kappa = dec.left.row(m).norm();
    if (!std::isfinite(kappa) || kappa > dec.max_conditioning) {
      dec.max_conditioning = kappa;
      worst = static_cast<std::size_t>(m);
      if (!std::isfinite(kappa)) break;
    }
  }

  const CMatrix pairing = dec.left * dec.right - CMatrix::Identity(n, n);
  dec.pairing_error = n > 0 ? pairing.cwiseAbs().maxCoeff() : 0.0;

  const bool pairing_bad =
      !std::isfinite(dec.pairing_error) || dec.pairing_error > options.pairing_threshold;
  const bool conditioning_bad =
      !std::isfinite(dec.max_conditioning) || dec.max_conditioning > options.conditioning_limit;
  if (pairing_bad || conditioning_bad) {
    Eigen::Index row = static_cast<Eigen::Index>(worst);
    if (pairing_bad && std::isfinite(dec.pairing_error)) {
      pairing.cwiseAbs().rowwise().maxCoeff().maxCoeff(&row);
    }
    throw ExceptionalPointError(
        static_cast<std::size_t>(row), dec.max_conditioning,
        "exceptional point suspected at eigenvalue index " + std::to_string(row) +
            ": pairing error " + std::to_string(dec.pairing_error) + ", condition estimate " +
            std::to_string(dec.max_conditioning));
  }

  const CMatrix res = h * dec.right - dec.right * dec.eigenvalues.asDiagonal();
  dec.residual = n > 0 ? res.colwise().norm().maxCoeff() : 0.0;
  return dec;
}

SpectralDecomposition decompose(const CMatrix& h, const DecomposeOptions& options) {
  check_input(h);
  const Eigen::Index n = h.rows();
  if (n == 0) return {};

  CMatrix a = h;
  CVector w(n);
  CMatrix vr(n, n);
  cplx dummy_vl{};
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n), a.data(),
                    static_cast<lapack_int>(n), w.data(), &dummy_vl, 1, vr.data(),
                    static_cast<lapack_int>(n));
  if (info != 0) {
    throw NumericalError("zgeev failed with info = " + std::to_string(info));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&w](Eigen::Index x, Eigen::Index y) {
    if (w(x).real() != w(y).real()) return w(x).real() < w(y).real();
    return w(x).imag() < w(y).imag();
  });

  CVector sorted_w(n);
  CMatrix sorted_r(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sorted_w(k) = w(order[static_cast<std::size_t>(k)]);
    sorted_r.col(k) = vr.col(order[static_cast<std::size_t>(k)]);
  }
  return from_right_vectors(h, std::move(sorted_w), std::move(sorted_r), options);
}

OverlapGram overlap_gram(const SpectralDecomposition& dec) {
  return {dec.right.adjoint() * dec.right};
}

CMatrix reconstruct(const SpectralDecomposition& dec) {
  return dec.right * dec.eigenvalues.asDiagonal() * dec.left;
}

double reconstruction_error(const CMatrix& h, const SpectralDecomposition& dec) {
  const double diff = (h - reconstruct(dec)).norm();
  const double scale = h.norm();
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace nheth::spectral
