#pragma once

// Randomized harness that checks the order relations against the axioms of
// the axiomatic entropy construction (reflexivity through stability, the
// comparison hypothesis on flat compositions, the N1 bracketing axiom and the
// cancellation law) and against the two sufficient/necessary conditions
// linking S~_- and S~_+ to convertibility.
//
// Every run is reproducible from (seed, config): each trial of each check
// draws from its own sub-seed, and spectra and labels come from separate
// streams so that label reductions (constant energies, mu = 0, gamma = 0)
// see exactly the same spectra as the plain relation.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lytherm/ly.hpp"
#include "lytherm/orders.hpp"
#include "lytherm/spectra.hpp"

namespace lytherm {

/// How reservoir labels are drawn. Unset parameters are sampled per trial:
/// beta log-uniform in [0.1, 5], energies uniform in [0, 1], mu uniform in
/// [-1, 1], particle numbers uniform in {0..3}, gamma uniform in [0.1, 2],
/// jz uniform in {-2, -1.5, ..., 2}.
struct LabelModel {
  std::optional<double> beta;
  std::optional<double> mu;
  std::optional<double> gamma;
  /// Degenerate labels: one common energy (T), mu = 0 (NT), gamma = 0 (J).
  bool trivial = false;
};

struct TrialConfig {
  OrderTag tag = OrderTag::M;
  int trials = 1000;
  std::uint64_t seed = 42;
  int dim_max = 8;
  std::vector<double> epsilon_ladder = default_epsilon_ladder();
  LabelModel labels;
  /// Replace the order predicate by one with a flipped comparison.
  bool corrupt = false;

  static std::vector<double> default_epsilon_ladder();
  /// Throws InvalidInput for trials < 1, dim_max outside [2, 8] or a ladder
  /// that is empty, non-positive or not descending.
  void validate() const;
};

struct AxiomStat {
  std::string name;
  int checked = 0;
  int violations = 0;
  /// Trials where the implication's antecedent never held (or no comparable
  /// instance was found within the rejection budget).
  int vacuous = 0;
  std::optional<std::string> first_counterexample;
  /// FNV-1a digest of every predicate outcome evaluated by the check.
  std::uint64_t digest = 14695981039346656037ull;

  double coverage() const noexcept {
    return checked == 0 ? 0.0 : double(checked - vacuous) / double(checked);
  }
};

struct AxiomReport {
  OrderTag tag = OrderTag::M;
  std::vector<AxiomStat> stats;

  int total_violations() const noexcept;
  bool clean() const noexcept { return total_violations() == 0; }
  const AxiomStat* find(std::string_view name) const noexcept;
  /// Merge per-check counts of another report (same check list).
  void merge(const AxiomReport& other);
};

/// A labeled finite system: level weights and the bath they belong to.
struct LabeledSpace {
  ReservoirSpec reservoir;
  std::vector<double> weights;
  Bath bath;

  std::size_t dim() const noexcept { return weights.size(); }
  /// Blocks (p_i, g_i) for a level-indexed probability vector.
  WeightedSpectrum state(std::span<const double> p) const;
  WeightedSpectrum equilibrium_state() const;
};

/// Random states and labeled spaces for the harness and the test suites.
class StateSampler {
 public:
  StateSampler(OrderTag tag, LabelModel model, std::uint64_t seed);

  std::mt19937_64& engine() noexcept { return spectra_; }

  /// Draws the bath parameters shared by every space of one trial.
  void new_bath();
  LabeledSpace space(std::size_t dim);
  std::size_t dim(std::size_t lo, std::size_t hi);
  double uniform(double lo, double hi);

  /// Uniform on the probability simplex (normalized exponential gaps).
  std::vector<double> simplex(std::size_t dim);
  /// Simplex sample on `rank` random levels, zero elsewhere.
  std::vector<double> sparse(std::size_t dim, std::size_t rank);
  /// Equilibrium on a random nonempty subset of levels.
  WeightedSpectrum flat(const LabeledSpace& s);

  /// A state that the input can be transformed into: one to three
  /// weight-preserving two-level exchanges, or a partial mix with the
  /// equilibrium state.
  std::vector<double> successor(const LabeledSpace& s, std::span<const double> p);

 private:
  OrderTag tag_;
  LabelModel model_;
  std::mt19937_64 spectra_;
  std::mt19937_64 labels_;
  double beta_ = 1.0;
  double mu_ = 0.0;
  double gamma_ = 0.0;
  double common_energy_ = 0.0;
};

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

/// E1-E6, comparison hypothesis, N1 and the cancellation law.
AxiomReport run_axiom_suite(const TrialConfig& cfg);

/// Conditions linking S~_+/S~_- to the order. With no gauge the default
/// gauge of each sampled space is used.
AxiomReport run_lemma1_suite(const TrialConfig& cfg,
                             std::optional<Gauge> gauge = std::nullopt);

}  // namespace lytherm
