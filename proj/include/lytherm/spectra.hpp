#pragma once

// State spectra as (rescaled) step functions and their Lorenz curves.
//
// Every order relation in this library reduces to the same picture: a state
// is a list of blocks (p_i, g_i) of height p_i / g_i and width g_i, sorted
// by height. Plain majorization uses g_i = 1; the reservoir relations use
// Boltzmann-type weights. The cumulative integral of that step function is
// the Lorenz curve, and curve dominance is the order.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lytherm {

/// Entries at or below this are exact zeros for rank and support purposes.
inline constexpr double kZeroThreshold = 1e-12;
/// Inputs whose sum deviates from 1 by at most this are renormalized.
inline constexpr double kNormTolerance = 1e-9;

/// Sorted (non-increasing) probability vector summing to 1.
class Spectrum {
 public:
  Spectrum() : probs_{1.0} {}

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t dim() const noexcept { return probs_.size(); }
  /// Number of entries above kZeroThreshold.
  std::size_t rank() const noexcept;
  double max() const noexcept { return probs_.front(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  friend Spectrum spectrum_from_probs(std::span<const double> values);
  explicit Spectrum(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// Validates, sorts descending and renormalizes. Throws NegativeEntry or
/// NotNormalized.
Spectrum spectrum_from_probs(std::span<const double> values);

/// Flat spectrum of the given rank padded with zeros up to `dim`.
Spectrum flat_spectrum(std::size_t rank, std::size_t dim = 0);

enum class ReservoirKind { None, Heat, HeatParticle, AngularMomentum };

/// Conserved-quantity labels and bath parameters. Label vectors are aligned
/// with the entries of the spectrum they annotate.
struct ReservoirSpec {
  ReservoirKind kind = ReservoirKind::None;
  double beta = 1.0;
  std::vector<double> energies;
  double mu = 0.0;
  std::vector<double> particles;
  double gamma = 0.0;
  std::vector<double> jz;
  double k_b = 1.0;

  double temperature() const noexcept { return 1.0 / (k_b * beta); }

  /// Per-level weights g_i for a system of dimension `dim`.
  /// Throws MissingLabels or LengthMismatch.
  std::vector<double> weights(std::size_t dim) const;
};

/// Identifies the bath whose weights a WeightedSpectrum carries. Two spectra
/// are only comparable when their baths agree.
struct Bath {
  ReservoirKind kind = ReservoirKind::None;
  double beta = 0.0;
  double mu = 0.0;
  double gamma = 0.0;

  friend bool operator==(const Bath&, const Bath&) = default;
};

Bath bath_of(const ReservoirSpec& res);

/// A spectrum together with labels aligned to its sorted entries.
struct LabeledState {
  Spectrum spectrum;
  ReservoirSpec reservoir;
};

/// Sorts `values` descending and permutes every label list of `res` along
/// with it (stable for ties). Throws as spectrum_from_probs plus
/// LengthMismatch.
LabeledState make_labeled_state(std::span<const double> values,
                                ReservoirSpec res);

struct Block {
  double p = 0.0;
  double g = 1.0;

  double ratio() const noexcept { return p / g; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Blocks sorted by p/g non-increasing, ties broken by larger g first.
class WeightedSpectrum {
 public:
  /// Validates (sum 1 within 1e-12 after rounding noise, g > 0, p >= 0) and
  /// sorts. `bath` = nullopt marks a reference that is compatible with any
  /// bath (the abstract flat gauge states).
  static WeightedSpectrum from_blocks(std::vector<Block> blocks,
                                      std::optional<Bath> bath = std::nullopt,
                                      bool abstract = false);

  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::optional<Bath>& bath() const noexcept { return bath_; }
  /// True for flat functions whose width is not an achievable dimension.
  bool is_abstract() const noexcept { return abstract_; }

  /// Sum of g over blocks with p above kZeroThreshold (rank / partition
  /// function of the support).
  double support_weight() const noexcept;
  double total_weight() const noexcept;
  /// Largest rescaled eigenvalue p/g.
  double max_ratio() const noexcept { return blocks_.front().ratio(); }
  /// All occupied blocks share one height (relative tolerance `tol`).
  bool is_flat(double tol = 1e-9) const noexcept;

 private:
  WeightedSpectrum() = default;

  std::vector<Block> blocks_;
  std::optional<Bath> bath_;
  bool abstract_ = false;
};

/// Attaches the reservoir weights to a spectrum. Throws LengthMismatch or
/// MissingLabels.
WeightedSpectrum weighted(const Spectrum& spec, const ReservoirSpec& res);
WeightedSpectrum weighted(const LabeledState& state);

/// Equilibrium state on the levels selected by `support` (all levels when
/// empty): p_i proportional to g_i there, zero elsewhere.
WeightedSpectrum equilibrium(std::span<const double> weights,
                             std::optional<Bath> bath,
                             std::span<const std::size_t> support = {});

struct LorenzPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Concave piecewise-linear cumulative integral of the step function.
/// Beyond its last breakpoint the curve stays at its terminal value.
class LorenzCurve {
 public:
  explicit LorenzCurve(std::vector<LorenzPoint> points)
      : points_(std::move(points)) {}

  std::span<const LorenzPoint> points() const noexcept { return points_; }
  double width() const noexcept { return points_.back().x; }
  double operator()(double k) const noexcept;

 private:
  std::vector<LorenzPoint> points_;
};

LorenzCurve lorenz(const WeightedSpectrum& ws);

/// Tensor product: all blocks (p_i p'_j, g_i g'_j). Throws WeightMismatch if
/// both operands carry different baths.
WeightedSpectrum compose(const WeightedSpectrum& a, const WeightedSpectrum& b);

/// Flat function of width z^lam and height z^-lam, i.e. lam copies of a flat
/// state with support weight z. Throws NonpositiveBase for z <= 0.
WeightedSpectrum scale_flat(double z, double lam);

/// n-fold self composition, n >= 1.
WeightedSpectrum scale_integer(const WeightedSpectrum& ws, int n);

/// Probabilities of the blocks as a sorted spectrum.
Spectrum as_spectrum(const WeightedSpectrum& ws);

}  // namespace lytherm
