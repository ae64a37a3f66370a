#pragma once

// Density matrices: validation, spectra by cyclic Jacobi diagonalization,
// and decoherence in a conserved-quantity eigenbasis.

#include <complex>
#include <span>
#include <vector>

#include "lytherm/matrix.hpp"
#include "lytherm/spectra.hpp"

namespace lytherm {

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;

inline constexpr double kHermitianTolerance = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Throws NotHermitian, NotUnitTrace or NotPSD.
  static DensityMatrix from_entries(ComplexMatrix entries);

  std::size_t dim() const noexcept { return entries_.rows(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }

 private:
  explicit DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}
  ComplexMatrix entries_;
};

/// Eigenvalues sorted descending, PSD noise clipped to zero, renormalized.
Spectrum eigen_spectrum(const DensityMatrix& rho);

/// Zeroes every entry (i, j) with labels[i] != labels[j].
/// Throws LengthMismatch.
DensityMatrix decohere(const DensityMatrix& rho, std::span<const double> labels);

namespace detail {

struct Eigensystem {
  std::vector<double> values;
  /// Columns are eigenvectors: A = V diag(values) V^dagger.
  ComplexMatrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi on a Hermitian matrix. Stops when the off-diagonal
/// Frobenius norm drops below 1e-14 (relative to the matrix norm when that
/// exceeds 1) or after 100 sweeps.
Eigensystem jacobi_eigen(ComplexMatrix a);

/// max |(V diag(values) V^dagger - a)_ij|
double reconstruction_residual(const ComplexMatrix& a, const Eigensystem& es);

}  // namespace detail

}  // namespace lytherm
