#include "lytherm/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lytherm/error.hpp"

namespace lytherm {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  }
  return std::sqrt(s);
}

// One unitary rotation J in the (p, q) plane such that (J^dagger A J)_pq = 0.
// J = D R with D = diag(..., conj(u) at q, ...) making a_pq real and R the
// real Jacobi rotation of the resulting 2x2 block.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex u = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(u);
  const Complex jqq = c * std::conj(u);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

namespace detail {

Eigensystem jacobi_eigen(ComplexMatrix a) {
  const std::size_t n = a.rows();
  Eigensystem es;
  es.vectors = ComplexMatrix::identity(n);
  const double target = kOffDiagonalTarget * std::max(1.0, frobenius_norm(a));
  while (es.sweeps < kMaxSweeps && off_diagonal_norm(a) >= target) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, es.vectors, p, q);
    }
    ++es.sweeps;
  }
  es.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) es.values[i] = a(i, i).real();
  return es;
}

double reconstruction_residual(const ComplexMatrix& a, const Eigensystem& es) {
  const std::size_t n = a.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
      }
      worst = std::max(worst, std::abs(s - a(i, j)));
    }
  }
  return worst;
}

}  // namespace detail

DensityMatrix DensityMatrix::from_entries(ComplexMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) {
    throw Error(ErrorCode::InvalidInput, "density matrix must be square and nonempty");
  }
  Complex trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += m(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTolerance) {
        throw Error(ErrorCode::NotHermitian,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (std::abs(trace - 1.0) > kHermitianTolerance) {
    throw Error(ErrorCode::NotUnitTrace, "trace is " + std::to_string(trace.real()));
  }
  const detail::Eigensystem es = detail::jacobi_eigen(m);
  for (double ev : es.values) {
    if (ev < -kHermitianTolerance) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(ev));
    }
  }
  return DensityMatrix(std::move(m));
}

Spectrum eigen_spectrum(const DensityMatrix& rho) {
  detail::Eigensystem es = detail::jacobi_eigen(rho.entries());
  for (double& ev : es.values) {
    if (ev <= kZeroThreshold) ev = 0.0;
  }
  return spectrum_from_probs(es.values);
}

DensityMatrix decohere(const DensityMatrix& rho, std::span<const double> labels) {
  if (labels.size() != rho.dim()) {
    throw Error(ErrorCode::LengthMismatch, "labels length does not match dimension");
  }
  ComplexMatrix out = rho.entries();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (labels[i] != labels[j]) out(i, j) = 0.0;
    }
  }
  return DensityMatrix::from_entries(std::move(out));
}

}  // namespace lytherm
