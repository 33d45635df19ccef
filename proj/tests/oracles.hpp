#pragma once
// Reference constructions used only by tests. They are written independently of
// the library so that agreement is meaningful.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Annihilation operator c_j on the full 2^N Fock space as a Kronecker product
// Z x ... x Z x a x 1 x ... x 1, with mode 0 as the least significant bit.
inline Mat annihilator(int j, int n_modes) {
  Mat z(2, 2), a(2, 2), id = Mat::Identity(2, 2);
  z << 1, 0, 0, -1;
  a << 0, 1, 0, 0;
  Mat op = Mat::Ones(1, 1);
  for (int k = 0; k < n_modes; ++k) {
    const Mat& f = k < j ? z : (k == j ? a : id);
    op = Eigen::kroneckerProduct(f, op).eval();
  }
  return op;
}

inline Mat creator(int j, int n_modes) { return annihilator(j, n_modes).adjoint(); }

// Indices of the half-filled states, ascending.
inline std::vector<int> half_filled(int n_modes) {
  std::vector<int> out;
  for (int s = 0; s < (1 << n_modes); ++s) {
    int pop = 0;
    for (int b = 0; b < n_modes; ++b) pop += (s >> b) & 1;
    if (2 * pop == n_modes) out.push_back(s);
  }
  return out;
}

inline Mat project(const Mat& full, const std::vector<int>& states) {
  const auto d = static_cast<Eigen::Index>(states.size());
  Mat out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = full(states[r], states[c]);
  return out;
}

// rho(t) = exp(-iHt) rho exp(i H^dagger t), unnormalized.
inline Mat propagate(const Mat& h, const Mat& rho, double t) {
  const Mat u = (cplx{0.0, -t} * h).exp();
  return u * rho * u.adjoint();
}

}  // namespace oracle
