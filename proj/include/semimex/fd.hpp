#pragma once

#include <iosfwd>

#include "semimex/types.hpp"

namespace semimex {

struct Grid {
  enum class Kind { UniformInterval, SinhClustered };

  Kind kind = Kind::UniformInterval;
  Vector nodes;  // strictly increasing

  int size() const { return static_cast<int>(nodes.size()); }
  double span() const { return nodes[nodes.size() - 1] - nodes[0]; }
};

// n nodes a + j(b-a)/(n-1), both endpoints included.
Grid uniform_grid(double a, double b, int n);

// Nodes L*sinh(stretch*xi)/sinh(stretch) with xi uniform on [-1,1]:
// denser around the origin, sparser near +-L. stretch -> 0 approaches uniform.
Grid sinh_clustered_grid(double half_width, int n, double stretch);

// Finite-difference weights on arbitrary distinct nodes. Row k of the result
// holds weights c_j with sum_j c_j g(nodes_j) ~ g^(k)(x0), exact for
// polynomials up to degree nodes.size()-1. Fornberg's one-pass recurrence.
Matrix fornberg_weights(double x0, const Vector& nodes, int max_order);

struct DiffMatrix {
  int order = 0;
  int width = 0;
  Matrix entries;
};

// Row i differentiates at node i from the `width` nearest nodes; windows are
// clamped at the ends, so near-boundary rows become shifted/one-sided.
DiffMatrix diff_matrix(const Grid& grid, int order, int width);

// Like diff_matrix but stencils wrap around with the grid span as period.
// The grid is assumed to carry both endpoints of the periodic interval; the
// duplicated endpoint is skipped in wrapped images, so every row is centered.
DiffMatrix periodic_diff_matrix(const Grid& grid, int order, int width);

// Coordinate-format dump (row col value), mostly for debugging.
void dump_matrix_coordinate(std::ostream& out, const Matrix& m);

}  // namespace semimex
