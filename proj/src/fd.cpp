#include "semimex/fd.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace semimex {

Grid uniform_grid(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need n >= 2");
  if (!(b > a)) throw std::invalid_argument("uniform_grid: need b > a");
  Grid g;
  g.kind = Grid::Kind::UniformInterval;
  g.nodes = Vector::LinSpaced(n, a, b);
  // exact endpoints regardless of LinSpaced rounding
  g.nodes[0] = a;
  g.nodes[n - 1] = b;
  return g;
}

Grid sinh_clustered_grid(double half_width, int n, double stretch) {
  if (n < 2) throw std::invalid_argument("sinh_clustered_grid: need n >= 2");
  if (!(half_width > 0) || !(stretch > 0)) {
    throw std::invalid_argument("sinh_clustered_grid: need half_width > 0 and stretch > 0");
  }
  Grid g;
  g.kind = Grid::Kind::SinhClustered;
  g.nodes.resize(n);
  const double denom = std::sinh(stretch);
  for (int j = 0; j < n; ++j) {
    const double xi = -1.0 + 2.0 * j / (n - 1);
    g.nodes[j] = half_width * std::sinh(stretch * xi) / denom;
  }
  g.nodes[0] = -half_width;
  g.nodes[n - 1] = half_width;
  return g;
}

Matrix fornberg_weights(double x0, const Vector& nodes, int max_order) {
  const int w = static_cast<int>(nodes.size());
  if (max_order >= w) throw std::invalid_argument("fornberg_weights: need max_order < node count");
  for (int i = 0; i < w; ++i) {
    for (int j = i + 1; j < w; ++j) {
      if (nodes[i] == nodes[j]) {
        throw std::invalid_argument("fornberg_weights: degenerate stencil (duplicate nodes)");
      }
    }
  }

  // recurrence indices: C(j, k) = weight of node j for derivative order k
  Matrix C = Matrix::Zero(w, max_order + 1);
  C(0, 0) = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  for (int i = 1; i < w; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        }
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) {
        C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      }
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  return C.transpose();
}

DiffMatrix diff_matrix(const Grid& grid, int order, int width) {
  const int n = grid.size();
  if (width > n) throw std::invalid_argument("diff_matrix: stencil wider than grid");
  if (order >= width) throw std::invalid_argument("diff_matrix: need order < width");
  DiffMatrix d;
  d.order = order;
  d.width = width;
  d.entries = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int start = std::clamp(i - (width - 1) / 2, 0, n - width);
    const Vector local = grid.nodes.segment(start, width);
    const Matrix wts = fornberg_weights(grid.nodes[i], local, order);
    d.entries.row(i).segment(start, width) = wts.row(order);
  }
  return d;
}

DiffMatrix periodic_diff_matrix(const Grid& grid, int order, int width) {
  const int n = grid.size();
  if (width > n) throw std::invalid_argument("periodic_diff_matrix: stencil wider than grid");
  if (order >= width) throw std::invalid_argument("periodic_diff_matrix: need order < width");
  const double period = grid.span();
  DiffMatrix d;
  d.order = order;
  d.width = width;
  d.entries = Matrix::Zero(n, n);
  const int half = (width - 1) / 2;
  Vector local(width);
  std::vector<int> cols(width);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < width; ++k) {
      int j = i - half + k;
      double shift = 0.0;
      if (j < 0) {
        j += n - 1;  // node n-1 duplicates node 0
        shift = -period;
      } else if (j >= n) {
        j -= n - 1;
        shift = period;
      }
      cols[k] = j;
      local[k] = grid.nodes[j] + shift;
    }
    const Matrix wts = fornberg_weights(grid.nodes[i], local, order);
    for (int k = 0; k < width; ++k) {
      d.entries(i, cols[k]) += wts(order, k);
    }
  }
  return d;
}

void dump_matrix_coordinate(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) out << i << ' ' << j << ' ' << m(i, j) << '\n';
    }
  }
}

}  // namespace semimex
