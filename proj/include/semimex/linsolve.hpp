#pragma once

#include "semimex/types.hpp"

namespace semimex {

// Dense LU solve with partial pivoting followed by one iterative-refinement
// pass. Throws std::runtime_error on an exactly zero pivot.
Vector solve_linear(const Matrix& A, const Vector& b);

// Holds a factorization for repeated right-hand sides.
class LuSolver {
 public:
  explicit LuSolver(Matrix A);
  Vector solve(const Vector& b) const;

 private:
  Matrix a_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace semimex
