#pragma once

// Constructive convertibility witnesses for plain majorization: a chain of
// T-transforms whose product is a doubly stochastic matrix mapping the
// source spectrum onto the target.

#include <cstddef>
#include <vector>

#include "lytherm/matrix.hpp"
#include "lytherm/spectra.hpp"

namespace lytherm {

/// (1 - t) Id + t P_ij where P_ij swaps coordinates i and j.
struct TTransform {
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 0.0;
};

struct Witness {
  std::size_t dim = 0;
  std::vector<TTransform> steps;
  Matrix<double> product;
};

inline constexpr double kWitnessTolerance = 1e-12;

/// Requires p to precede q (p can be transformed into q); both are zero
/// padded to a common dimension. Throws NotMajorized carrying the first
/// violated prefix length.
Witness build_witness(const Spectrum& p, const Spectrum& q);

/// Re-checks the witness from scratch: double stochasticity, nonnegativity,
/// product p = q, chain length at most dim - 1, and (when a chain is
/// present) that the product equals the chain of T-transforms.
bool verify_witness(const Witness& w, const Spectrum& p, const Spectrum& q);

/// Applies the T-transform to a vector in place.
void apply(const TTransform& t, std::vector<double>& v);

}  // namespace lytherm
