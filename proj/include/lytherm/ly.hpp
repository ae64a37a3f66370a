#pragma once

// Axiomatic entropy functions obtained by comparing a state against scaled
// compositions ((1 - lambda) X0, lambda X1) of two flat reference states.
// S~_- is the largest lambda whose reference still precedes the state,
// S~_+ the smallest lambda whose reference the state precedes.

#include <optional>

#include "lytherm/orders.hpp"
#include "lytherm/spectra.hpp"

namespace lytherm {

enum class LogBase { Log2, Ln };

/// Reference pair (X0, X1) given by support weights z0 < z1. The entropy
/// scale is lambda = c1 log(W) + c0 for a flat reference of width W.
class Gauge {
 public:
  /// Throws GaugeDegenerate unless 0 < z0 < z1.
  Gauge(double z0, double z1, LogBase base = LogBase::Log2);

  double z0() const noexcept { return z0_; }
  double z1() const noexcept { return z1_; }
  LogBase base() const noexcept { return base_; }

  double c1() const noexcept;
  double c0() const noexcept;
  double log(double x) const noexcept;
  /// c1 log(w) + c0
  double lambda_for_width(double w) const noexcept { return c1() * log(w) + c0(); }
  /// Inverse of lambda_for_width, in natural-log units: ln w.
  double ln_width_for_lambda(double lambda) const noexcept;

 private:
  double z0_;
  double z1_;
  LogBase base_;
};

/// (1, 2, log2) for majorization. For reservoir relations: z0 the smallest
/// single-level weight of the labeled space, z1 its full partition
/// function, natural log. Throws GaugeDegenerate for one-level spaces.
Gauge default_gauge(OrderTag tag, std::span<const double> level_weights);

struct LyResult {
  double lambda_star = 0.0;
  double closed_form = 0.0;
  int search_iterations = 0;
  double residual = 0.0;
};

/// Search bracket [-64, 64], narrowed when strongly non-uniform weights
/// would push reference widths outside the double range.
inline constexpr double kLambdaBracket = 64.0;
inline constexpr double kLambdaResolution = 1e-12;
inline constexpr int kMaxBisections = 200;

/// Reference composition for a given lambda, already rewritten so that
/// only nonnegative scale factors appear: the returned pair (lhs, rhs)
/// encodes "((1-lambda) X0, lambda X1) precedes x" as precedes(lhs, rhs).
struct ScaledComparison {
  WeightedSpectrum lhs;
  WeightedSpectrum rhs;
};

/// Builds the comparison "reference precedes x" (`reference_first`) or
/// "x precedes reference" for any real lambda.
ScaledComparison scaled_comparison(const WeightedSpectrum& x, const Gauge& g,
                                   double lambda, bool reference_first);

/// Bisection on precedes_exact; closed form c1 log(1/p_max^res)
/// + c0.
LyResult s_tilde_minus(const WeightedSpectrum& x, const Gauge& g);
/// Bisection on precedes_exact; closed form c1 log(Z_x) + c0.
LyResult s_tilde_plus(const WeightedSpectrum& x, const Gauge& g);

/// The lambda with ((1-lambda) X0, lambda X1) equivalent to a flat x; both
/// searches must agree within 1e-9. Throws NotFlat.
LyResult s_equilibrium(const WeightedSpectrum& x, const Gauge& g);

/// log2 floor(1 / p_max): best entropy of an integer-rank flat state that
/// precedes x. Unit weights only.
double s_minus_integer(const WeightedSpectrum& x);
/// log2 rank.
double s_plus_integer(const WeightedSpectrum& x);

inline constexpr double kAgreementTolerance = 1e-9;

struct PropositionReport {
  LyResult minus;
  LyResult plus;
  std::optional<LyResult> equilibrium;
  /// Search results mapped back to the relation's physical quantity:
  /// (H_min, H_max) in bits for M, (F_max, F_min) for T, (Omega_max,
  /// Omega_min) for NT, (S_J-, S_J+) in nats for J.
  double mapped_minus = 0.0;
  double mapped_plus = 0.0;
  bool agree = false;
};

/// Undoes the gauge: lambda -> ln w, then bits for M, -k_B T ln w for T
/// and NT, ln w for J.
double map_to_potential(const Relation& rel, const Gauge& g, double lambda);

/// Runs both searches (and the equilibrium search for flat x), checks them
/// against the closed forms within kAgreementTolerance and maps them to the
/// physical quantities. Note the orientation for reservoirs: S~_- maps to
/// the upper bound (F_max) and S~_+ to the lower one (F_min), because the
/// potential decreases along the order while lambda increases.
PropositionReport verify_proposition(const WeightedSpectrum& x,
                                     const Relation& rel, const Gauge& g);

}  // namespace lytherm
