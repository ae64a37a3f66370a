#include "lytherm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lytherm/error.hpp"

namespace lytherm {

namespace {

void require_labels(const std::vector<double>& labels, std::size_t dim,
                    const char* name) {
  if (labels.empty()) {
    throw Error(ErrorCode::MissingLabels, std::string(name) + " required");
  }
  if (labels.size() != dim) {
    throw Error(ErrorCode::LengthMismatch,
                std::string(name) + " length does not match spectrum");
  }
}

// Reduced forms: D_0 through the support partition function, D_inf through
// the largest rescaled eigenvalue.
PotentialBounds bounds_from_weights(const Spectrum& s,
                                    std::span<const double> g, double kt) {
  PotentialBounds out;
  double rel = 0.0;  // sum p ln(p / g)
  for (std::size_t i = 0; i < s.dim(); ++i) {
    out.partition += g[i];
    if (s[i] <= kZeroThreshold) continue;
    out.support_weight += g[i];
    out.max_ratio = std::max(out.max_ratio, s[i] / g[i]);
    rel += s[i] * std::log(s[i] / g[i]);
  }
  out.lower = -kt * std::log(out.support_weight);
  out.upper = kt * std::log(out.max_ratio);
  out.average = kt * rel;
  out.d0 = -std::log2(out.support_weight / out.partition);
  out.dinf = std::log2(out.max_ratio * out.partition);
  return out;
}

}  // namespace

double von_neumann(const Spectrum& s) {
  double h = 0.0;
  for (double p : s.probs()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double renyi(const Spectrum& s, double alpha) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::InvalidInput, "Renyi order must be nonnegative");
  }
  if (alpha == 0.0) return std::log2(static_cast<double>(s.rank()));
  if (alpha == 1.0) return von_neumann(s);
  if (std::isinf(alpha)) return -std::log2(s.max());
  double sum = 0.0;
  for (double p : s.probs()) {
    if (p > kZeroThreshold) sum += std::pow(p, alpha);
  }
  return std::log2(sum) / (1.0 - alpha);
}

PotentialBounds free_energies(const Spectrum& s, const ReservoirSpec& res) {
  require_labels(res.energies, s.dim(), "energies");
  std::vector<double> g(s.dim());
  double u = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    g[i] = std::exp(-res.beta * res.energies[i]);
    u += s[i] * res.energies[i];
  }
  const double kt = res.k_b * res.temperature();
  PotentialBounds out = bounds_from_weights(s, g, kt);
  // F = U - T S with S = k_B ln 2 H.
  out.average = u - res.temperature() * res.k_b * std::log(2.0) * von_neumann(s);
  return out;
}

PotentialBounds grand_potential(const Spectrum& s, const ReservoirSpec& res) {
  require_labels(res.energies, s.dim(), "energies");
  require_labels(res.particles, s.dim(), "particles");
  std::vector<double> g(s.dim());
  double u = 0.0;
  double n = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    g[i] = std::exp(-res.beta * (res.energies[i] - res.mu * res.particles[i]));
    u += s[i] * res.energies[i];
    n += s[i] * res.particles[i];
  }
  const double kt = res.k_b * res.temperature();
  PotentialBounds out = bounds_from_weights(s, g, kt);
  out.average = u - res.mu * n -
                res.temperature() * res.k_b * std::log(2.0) * von_neumann(s);
  return out;
}

JPotential j_potential(const Spectrum& s, const ReservoirSpec& res) {
  require_labels(res.jz, s.dim(), "jz");
  std::vector<double> g(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) g[i] = std::exp(-res.gamma * res.jz[i]);
  const PotentialBounds b = bounds_from_weights(s, g, 1.0);
  JPotential out;
  out.sj_minus = -std::log(b.max_ratio);
  out.sj_plus = std::log(b.support_weight);
  out.s_j = -b.average;
  out.partition = b.partition;
  return out;
}

EntropyReport entropy_report(const LabeledState& state,
                             std::span<const double> alphas) {
  const Spectrum& s = state.spectrum;
  const ReservoirSpec& res = state.reservoir;
  EntropyReport r;
  r.h = von_neumann(s);
  r.h_min = h_min(s);
  r.h_max = h_max(s);
  for (double a : alphas) r.renyi[a] = renyi(s, a);
  if (!res.energies.empty()) r.free_energy = free_energies(s, res);
  if (!res.energies.empty() && !res.particles.empty()) {
    r.grand = grand_potential(s, res);
  }
  if (!res.jz.empty()) r.j = j_potential(s, res);
  return r;
}

}  // namespace lytherm
