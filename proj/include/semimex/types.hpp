#pragma once

#include <complex>

#include <Eigen/Dense>

namespace semimex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

}  // namespace semimex
