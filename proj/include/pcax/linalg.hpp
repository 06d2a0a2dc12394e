#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pcax/error.hpp"

namespace pcax {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

enum class DivisorPolicy { population, sample };

// Dense symmetric matrix. Construction symmetrizes (both triangles end up
// holding the same stored number) and rejects non-finite entries, so
// downstream code can rely on exact a(i,j) == a(j,i).
template <class Scalar>
class SymmetricMatrix {
 public:
  template <class Derived>
  explicit SymmetricMatrix(const Eigen::MatrixBase<Derived>& values) : values_(values) {
    if (values_.rows() != values_.cols() || values_.rows() < 1) {
      fail(errc::dimension_mismatch,
           "symmetric matrix must be square and non-empty, got " + std::to_string(values_.rows()) +
               "x" + std::to_string(values_.cols()));
    }
    for (Index i = 0; i < values_.rows(); ++i) {
      for (Index j = i + 1; j < values_.cols(); ++j) {
        const Scalar s = (values_(i, j) + values_(j, i)) / Scalar(2);
        values_(i, j) = s;
        values_(j, i) = s;
      }
    }
    for (Index i = 0; i < values_.rows(); ++i) {
      for (Index j = 0; j < values_.cols(); ++j) {
        if (!std::isfinite(values_(i, j))) {
          fail(errc::non_finite_input, "non-finite entry at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
        }
      }
    }
  }

  Index order() const { return values_.rows(); }
  const Matrix<Scalar>& values() const { return values_; }

  Scalar trace() const {
    Scalar t = 0;
    for (Index i = 0; i < order(); ++i) t += values_(i, i);
    return t;
  }

 private:
  Matrix<Scalar> values_;
};

// Eigendecomposition of a symmetric PSD matrix: eigenvalues descending,
// loadings row k holding the eigenvector of eigenvalues[k], and shares the
// per-component fraction of total variance (eigenvalue / trace).
template <class Scalar>
struct EigenDecomposition {
  Vector<Scalar> eigenvalues;
  Matrix<Scalar> loadings;
  Vector<Scalar> shares;
};

// Row-wise covariance of an n x m data matrix (rows = variables, columns =
// observations). Divisor is m for population, m-1 for sample. Accumulation
// runs in fixed index order so identical inputs give identical bits.
template <class Derived>
SymmetricMatrix<typename Derived::Scalar> covariance_matrix(const Eigen::MatrixBase<Derived>& data,
                                                            DivisorPolicy policy) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> x = data;
  const Index n = x.rows();
  const Index m = x.cols();
  if (n < 1) fail(errc::dimension_mismatch, "data matrix has no rows");
  if (m < 2) {
    fail(errc::fewer_than_two_entities,
         "covariance needs at least 2 columns, got " + std::to_string(m));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (!std::isfinite(x(i, j))) {
        fail(errc::non_finite_input,
             "non-finite value at row " + std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }

  Vector<Scalar> mean(n);
  for (Index i = 0; i < n; ++i) {
    Scalar s = 0;
    for (Index j = 0; j < m; ++j) s += x(i, j);
    mean[i] = s / Scalar(m);
  }

  Matrix<Scalar> centered(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) centered(i, j) = x(i, j) - mean[i];
  }

  const Scalar divisor = policy == DivisorPolicy::population ? Scalar(m) : Scalar(m - 1);
  Matrix<Scalar> cov(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      Scalar s = 0;
      for (Index k = 0; k < m; ++k) s += centered(i, k) * centered(j, k);
      const Scalar c = s / divisor;
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  return SymmetricMatrix<Scalar>(cov);
}

// Stable descending sort of eigenpairs; ties keep their pre-sort order.
// Loadings row k must correspond positionally to eigenvalue k.
template <class Scalar>
std::pair<Vector<Scalar>, Matrix<Scalar>> sort_eigenpairs(const Vector<Scalar>& eigenvalues,
                                                          const Matrix<Scalar>& loadings) {
  if (loadings.rows() != eigenvalues.size()) {
    fail(errc::length_mismatch, std::to_string(eigenvalues.size()) + " eigenvalues vs " +
                                    std::to_string(loadings.rows()) + " loading rows");
  }
  std::vector<Index> order(static_cast<size_t>(eigenvalues.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return eigenvalues[a] > eigenvalues[b]; });

  Vector<Scalar> sorted_values(eigenvalues.size());
  Matrix<Scalar> sorted_rows(loadings.rows(), loadings.cols());
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    sorted_values[k] = eigenvalues[order[static_cast<size_t>(k)]];
    sorted_rows.row(k) = loadings.row(order[static_cast<size_t>(k)]);
  }
  return {std::move(sorted_values), std::move(sorted_rows)};
}

namespace detail {

template <class Scalar>
Scalar max_offdiagonal(const Matrix<Scalar>& a) {
  Scalar off = 0;
  for (Index p = 0; p + 1 < a.rows(); ++p) {
    for (Index q = p + 1; q < a.cols(); ++q) {
      off = std::max(off, std::abs(a(p, q)));
    }
  }
  return off;
}

}  // namespace detail

// Cyclic Jacobi eigensolver with threshold sweeps.
//
// Pivots are visited in fixed row-major order over the upper triangle and the
// rotation sign convention is fixed (sign(0) = +1), so identical input bits
// produce identical output bits. The convergence threshold is tol scaled by
// max(1, max|a_ij|): an absolute cutoff is unreachable once the matrix
// magnitude grows past ~1e4 because the final off-diagonal level bottoms out
// near machine precision times the norm.
//
// Eigenvalues come back descending with tiny negatives (rounding artifacts of
// PSD inputs) clamped to exactly zero; anything below -1e-9*trace means the
// input was not a covariance matrix and raises indefinite_matrix. Each
// loadings row is sign-fixed so its first nonzero component is positive.
template <class Scalar>
EigenDecomposition<Scalar> jacobi_eigh(const SymmetricMatrix<Scalar>& matrix,
                                       Scalar tol = Scalar(1e-12), int max_sweeps = 100) {
  if (!(tol > Scalar(0))) fail(errc::bad_argument, "jacobi tolerance must be positive");
  if (max_sweeps < 1) fail(errc::bad_argument, "max_sweeps must be at least 1");

  const Index n = matrix.order();
  Matrix<Scalar> a = matrix.values();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);  // columns accumulate eigenvectors

  Scalar scale = 1;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  const Scalar thresh = tol * scale;
  const Scalar trace = matrix.trace();

  int sweep = 0;
  for (;;) {
    const Scalar off = detail::max_offdiagonal(a);
    if (off <= thresh) break;
    if (sweep == max_sweeps) {
      fail(errc::no_convergence, "off-diagonal " + std::to_string(off) + " above threshold after " +
                                     std::to_string(max_sweeps) + " sweeps");
    }
    ++sweep;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (std::abs(apq) <= thresh) continue;  // already settled, skip this pivot

        const Scalar app = a(p, p);
        const Scalar aqq = a(q, q);
        const Scalar theta = (aqq - app) / (2 * apq);
        Scalar t;
        if (std::abs(theta) > Scalar(1e150)) {
          t = 1 / (2 * theta);  // theta^2 would overflow; use the asymptotic root
        } else {
          const Scalar sign = theta < 0 ? Scalar(-1) : Scalar(1);
          t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1));
        }
        const Scalar c = 1 / std::sqrt(t * t + 1);
        const Scalar s = t * c;
        const Scalar tau = s / (1 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0;
        a(q, p) = 0;
        for (Index r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const Scalar arp = a(r, p);
            const Scalar arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  Vector<Scalar> raw_values(n);
  for (Index i = 0; i < n; ++i) raw_values[i] = a(i, i);

  const Scalar clamp_tol = Scalar(1e-9) * std::max(trace, Scalar(0));
  for (Index i = 0; i < n; ++i) {
    if (raw_values[i] < 0) {
      if (raw_values[i] < -clamp_tol) {
        fail(errc::indefinite_matrix, "eigenvalue " + std::to_string(raw_values[i]) +
                                          " below -1e-9*trace; input is not a covariance matrix");
      }
      raw_values[i] = 0;
    }
  }

  EigenDecomposition<Scalar> result;
  std::tie(result.eigenvalues, result.loadings) = sort_eigenpairs<Scalar>(raw_values, v.transpose());

  // Fixed sign convention: first nonzero component of each eigenvector positive.
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      const Scalar e = result.loadings(k, i);
      if (e != Scalar(0)) {
        if (e < 0) result.loadings.row(k) = -result.loadings.row(k);
        break;
      }
    }
  }

  Scalar total = 0;
  for (Index k = 0; k < n; ++k) total += result.eigenvalues[k];
  result.shares.resize(n);
  if (total > 0) {
    for (Index k = 0; k < n; ++k) result.shares[k] = result.eigenvalues[k] / total;
  } else {
    // All-zero spectrum (constant data): shares are 0/0 by the defining
    // formula; use the uniform limit so weights stay on the simplex.
    for (Index k = 0; k < n; ++k) result.shares[k] = Scalar(1) / Scalar(n);
  }
  return result;
}

}  // namespace pcax
