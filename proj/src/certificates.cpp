#include "lytherm/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lytherm/error.hpp"
#include "lytherm/orders.hpp"

namespace lytherm {

namespace {

// Coordinates closer than this are treated as already matched.
constexpr double kMatchTolerance = 1e-14;

std::vector<double> padded(const Spectrum& s, std::size_t dim) {
  std::vector<double> v(s.probs().begin(), s.probs().end());
  v.resize(dim, 0.0);
  return v;
}

Matrix<double> t_matrix(const TTransform& t, std::size_t dim) {
  Matrix<double> m = Matrix<double>::identity(dim);
  m(t.i, t.i) = 1.0 - t.t;
  m(t.j, t.j) = 1.0 - t.t;
  m(t.i, t.j) = t.t;
  m(t.j, t.i) = t.t;
  return m;
}

Matrix<double> multiply(const Matrix<double>& a, const Matrix<double>& b) {
  Matrix<double> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

}  // namespace

void apply(const TTransform& t, std::vector<double>& v) {
  const double vi = v[t.i];
  const double vj = v[t.j];
  v[t.i] = (1.0 - t.t) * vi + t.t * vj;
  v[t.j] = t.t * vi + (1.0 - t.t) * vj;
}

Witness build_witness(const Spectrum& p, const Spectrum& q) {
  const std::size_t dim = std::max(p.dim(), q.dim());
  std::vector<double> x = padded(p, dim);
  const std::vector<double> y = padded(q, dim);

  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    sx += x[k];
    sy += y[k];
    if (sx < sy - kOrderTolerance) {
      throw Error(ErrorCode::NotMajorized,
                  "source partial sum falls below target at prefix " +
                      std::to_string(k + 1),
                  k + 1);
    }
  }

  Witness w;
  w.dim = dim;
  w.product = Matrix<double>::identity(dim);
  // Each step fixes one more coordinate to its target value, so the chain
  // has at most dim - 1 links. j: last coordinate with a surplus; k: first
  // coordinate after j with a deficit.
  while (w.steps.size() < dim) {
    std::size_t j = dim;
    for (std::size_t i = dim; i-- > 0;) {
      if (x[i] > y[i] + kMatchTolerance) {
        j = i;
        break;
      }
    }
    if (j == dim) break;
    std::size_t k = dim;
    for (std::size_t i = j + 1; i < dim; ++i) {
      if (x[i] < y[i] - kMatchTolerance) {
        k = i;
        break;
      }
    }
    if (k == dim) break;
    const double surplus = x[j] - y[j];
    const double deficit = y[k] - x[k];
    const double delta = std::min(surplus, deficit);
    const TTransform t{j, k, delta / (x[j] - x[k])};
    apply(t, x);
    if (surplus <= deficit) {
      x[j] = y[j];
    } else {
      x[k] = y[k];
    }
    w.steps.push_back(t);
    w.product = multiply(t_matrix(t, dim), w.product);
  }
  return w;
}

bool verify_witness(const Witness& w, const Spectrum& p, const Spectrum& q) {
  const std::size_t dim = w.dim;
  if (dim < std::max(p.dim(), q.dim())) return false;
  if (w.product.rows() != dim || w.product.cols() != dim) return false;
  if (dim > 0 && w.steps.size() > dim - 1) return false;
  for (std::size_t i = 0; i < dim; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      if (w.product(i, j) < -kWitnessTolerance) return false;
      row += w.product(i, j);
      col += w.product(j, i);
    }
    if (std::abs(row - 1.0) > kWitnessTolerance) return false;
    if (std::abs(col - 1.0) > kWitnessTolerance) return false;
  }
  const std::vector<double> x = padded(p, dim);
  const std::vector<double> y = padded(q, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += w.product(i, j) * x[j];
    if (std::abs(s - y[i]) > kWitnessTolerance) return false;
  }
  // Hand-built witnesses may carry a product without a chain.
  if (w.steps.empty()) return true;
  Matrix<double> chain = Matrix<double>::identity(dim);
  for (const TTransform& t : w.steps) {
    if (t.i >= dim || t.j >= dim || t.t < 0.0 || t.t > 1.0) return false;
    chain = multiply(t_matrix(t, dim), chain);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (std::abs(chain(i, j) - w.product(i, j)) > kWitnessTolerance) return false;
    }
  }
  return true;
}

}  // namespace lytherm
