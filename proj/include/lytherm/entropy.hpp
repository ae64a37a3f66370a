#pragma once

// Closed-form entropies (bits) and reservoir potentials (energy units,
// natural log scaled by k_B T).

#include <limits>
#include <map>
#include <optional>
#include <span>

#include "lytherm/spectra.hpp"

namespace lytherm {

inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

/// -sum p log2 p with 0 log 0 = 0.
double von_neumann(const Spectrum& s);

/// Renyi entropy in bits. alpha = 0 gives log2 rank, alpha = 1 the von
/// Neumann entropy, alpha = infinity gives -log2 p_max.
double renyi(const Spectrum& s, double alpha);

inline double h_min(const Spectrum& s) { return renyi(s, kAlphaInfinity); }
inline double h_max(const Spectrum& s) { return renyi(s, 0.0); }

/// Lower/upper one-shot bounds and the average potential for one reservoir.
/// For Heat these are (F_min, F_max, F); for HeatParticle (Omega_min,
/// Omega_max, Omega). `max_ratio` is p_max^res and `support_weight` the
/// partition function of the occupied levels.
struct PotentialBounds {
  double lower = 0.0;
  double upper = 0.0;
  double average = 0.0;
  double max_ratio = 0.0;
  double support_weight = 0.0;
  double partition = 0.0;
  /// Renyi divergences to the equilibrium state, in bits.
  double d0 = 0.0;
  double dinf = 0.0;
};

/// F_min = -kT ln Z_rho, F_max = kT ln p_max^res, F = U - TS.
/// Labels in `res` are aligned with `s`. Throws MissingLabels /
/// LengthMismatch.
PotentialBounds free_energies(const Spectrum& s, const ReservoirSpec& res);

/// Grand-canonical analogue with weights exp(-beta (E - mu N)).
PotentialBounds grand_potential(const Spectrum& s, const ReservoirSpec& res);

/// Angular-momentum reservoir quantities in nats.
struct JPotential {
  /// ln(1 / p_max^res)
  double sj_minus = 0.0;
  /// ln Z_J of the occupied levels
  double sj_plus = 0.0;
  /// ln Z_J - D(rho || tau_J) (nats)
  double s_j = 0.0;
  double partition = 0.0;
};

JPotential j_potential(const Spectrum& s, const ReservoirSpec& res);

struct EntropyReport {
  double h = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  std::map<double, double> renyi;
  std::optional<PotentialBounds> free_energy;
  std::optional<PotentialBounds> grand;
  std::optional<JPotential> j;
};

/// Every functional applicable to the labels present on `state`. `beta`
/// selects the heat-bath quantities, particle labels add the grand
/// potential, jz labels add the J quantities.
EntropyReport entropy_report(const LabeledState& state,
                             std::span<const double> alphas = {});

}  // namespace lytherm
