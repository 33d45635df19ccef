#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace nheth {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Occupation bitstring: bit i is the occupation of mode i.
using Occupation = std::uint32_t;

}  // namespace nheth
