#include "lytherm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lytherm/error.hpp"

namespace lytherm {

namespace {

// Composition of up to a few thousand blocks accumulates rounding in the
// probability sum well below this.
constexpr double kBlockSumTolerance = 1e-12;

bool block_order(const Block& a, const Block& b) {
  const double ra = a.ratio();
  const double rb = b.ratio();
  if (ra != rb) return ra > rb;
  return a.g > b.g;
}

std::optional<Bath> merge_baths(const std::optional<Bath>& a,
                                const std::optional<Bath>& b) {
  if (a && b && !(*a == *b)) {
    throw Error(ErrorCode::WeightMismatch,
                "cannot compose spectra annotated with different reservoirs");
  }
  return a ? a : b;
}

void check_labels(const std::vector<double>& labels, std::size_t dim,
                  const char* name) {
  if (labels.empty()) {
    throw Error(ErrorCode::MissingLabels, std::string(name) + " required");
  }
  if (labels.size() != dim) {
    throw Error(ErrorCode::LengthMismatch,
                std::string(name) + " has " + std::to_string(labels.size()) +
                    " entries, spectrum has " + std::to_string(dim));
  }
}

}  // namespace

std::size_t Spectrum::rank() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      probs_.begin(), probs_.end(), [](double p) { return p > kZeroThreshold; }));
}

Spectrum spectrum_from_probs(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::NotNormalized, "empty spectrum");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw Error(ErrorCode::NegativeEntry,
                  "entry " + std::to_string(i) + " is negative or not finite", i);
    }
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::NotNormalized,
                "entries sum to " + std::to_string(sum));
  }
  std::vector<double> probs(values.begin(), values.end());
  std::sort(probs.begin(), probs.end(), std::greater<>());
  for (double& p : probs) p /= sum;
  return Spectrum(std::move(probs));
}

Spectrum flat_spectrum(std::size_t rank, std::size_t dim) {
  if (rank == 0) throw Error(ErrorCode::InvalidInput, "rank must be positive");
  std::vector<double> v(std::max(rank, dim), 0.0);
  std::fill_n(v.begin(), rank, 1.0 / static_cast<double>(rank));
  return spectrum_from_probs(v);
}

std::vector<double> ReservoirSpec::weights(std::size_t dim) const {
  std::vector<double> g(dim, 1.0);
  switch (kind) {
    case ReservoirKind::None:
      break;
    case ReservoirKind::Heat:
      check_labels(energies, dim, "energies");
      for (std::size_t i = 0; i < dim; ++i) g[i] = std::exp(-beta * energies[i]);
      break;
    case ReservoirKind::HeatParticle:
      check_labels(energies, dim, "energies");
      check_labels(particles, dim, "particles");
      for (std::size_t i = 0; i < dim; ++i) {
        g[i] = std::exp(-beta * (energies[i] - mu * particles[i]));
      }
      break;
    case ReservoirKind::AngularMomentum:
      check_labels(jz, dim, "jz");
      for (std::size_t i = 0; i < dim; ++i) g[i] = std::exp(-gamma * jz[i]);
      break;
  }
  return g;
}

Bath bath_of(const ReservoirSpec& res) {
  switch (res.kind) {
    case ReservoirKind::None: return {ReservoirKind::None, 0.0, 0.0, 0.0};
    case ReservoirKind::Heat: return {ReservoirKind::Heat, res.beta, 0.0, 0.0};
    case ReservoirKind::HeatParticle:
      return {ReservoirKind::HeatParticle, res.beta, res.mu, 0.0};
    case ReservoirKind::AngularMomentum:
      return {ReservoirKind::AngularMomentum, 0.0, 0.0, res.gamma};
  }
  return {};
}

LabeledState make_labeled_state(std::span<const double> values,
                                ReservoirSpec res) {
  Spectrum spec = spectrum_from_probs(values);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  auto permute = [&](std::vector<double>& labels, const char* name) {
    if (labels.empty()) return;
    if (labels.size() != values.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  std::string(name) + " length does not match spectrum");
    }
    std::vector<double> out(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[i] = labels[order[i]];
    labels = std::move(out);
  };
  permute(res.energies, "energies");
  permute(res.particles, "particles");
  permute(res.jz, "jz");
  return {std::move(spec), std::move(res)};
}

WeightedSpectrum WeightedSpectrum::from_blocks(std::vector<Block> blocks,
                                               std::optional<Bath> bath,
                                               bool abstract) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidInput, "no blocks");
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (!(b.p >= 0.0)) {
      throw Error(ErrorCode::NegativeEntry, "negative block probability", i);
    }
    if (!(b.g > 0.0) || !std::isfinite(b.g)) {
      throw Error(ErrorCode::InvalidInput, "block weight must be positive", i);
    }
    sum += b.p;
  }
  if (std::abs(sum - 1.0) > kBlockSumTolerance * static_cast<double>(blocks.size())) {
    throw Error(ErrorCode::NotNormalized,
                "block probabilities sum to " + std::to_string(sum));
  }
  std::sort(blocks.begin(), blocks.end(), block_order);
  WeightedSpectrum ws;
  ws.blocks_ = std::move(blocks);
  ws.bath_ = bath;
  ws.abstract_ = abstract;
  return ws;
}

double WeightedSpectrum::support_weight() const noexcept {
  double z = 0.0;
  for (const Block& b : blocks_) {
    if (b.p > kZeroThreshold) z += b.g;
  }
  return z;
}

double WeightedSpectrum::total_weight() const noexcept {
  double z = 0.0;
  for (const Block& b : blocks_) z += b.g;
  return z;
}

bool WeightedSpectrum::is_flat(double tol) const noexcept {
  const double top = max_ratio();
  for (const Block& b : blocks_) {
    if (b.p <= kZeroThreshold) continue;
    if (std::abs(b.ratio() - top) > tol * top) return false;
  }
  return true;
}

WeightedSpectrum weighted(const Spectrum& spec, const ReservoirSpec& res) {
  const std::vector<double> g = res.weights(spec.dim());
  std::vector<Block> blocks(spec.dim());
  for (std::size_t i = 0; i < spec.dim(); ++i) blocks[i] = {spec[i], g[i]};
  return WeightedSpectrum::from_blocks(std::move(blocks), bath_of(res));
}

WeightedSpectrum weighted(const LabeledState& state) {
  return weighted(state.spectrum, state.reservoir);
}

WeightedSpectrum equilibrium(std::span<const double> weights,
                             std::optional<Bath> bath,
                             std::span<const std::size_t> support) {
  std::vector<bool> occupied(weights.size(), support.empty());
  for (std::size_t i : support) {
    if (i >= weights.size()) {
      throw Error(ErrorCode::InvalidInput, "support index out of range", i);
    }
    occupied[i] = true;
  }
  double z = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (occupied[i]) z += weights[i];
  }
  std::vector<Block> blocks(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    blocks[i] = {occupied[i] ? weights[i] / z : 0.0, weights[i]};
  }
  return WeightedSpectrum::from_blocks(std::move(blocks), bath);
}

double LorenzCurve::operator()(double k) const noexcept {
  if (k <= 0.0) return 0.0;
  if (k >= points_.back().x) return points_.back().y;
  // First breakpoint with x >= k; k lies in the segment ending there.
  auto it = std::lower_bound(
      points_.begin(), points_.end(), k,
      [](const LorenzPoint& pt, double v) { return pt.x < v; });
  const LorenzPoint& hi = *it;
  const LorenzPoint& lo = *(it - 1);
  if (hi.x == lo.x) return hi.y;
  const double t = (k - lo.x) / (hi.x - lo.x);
  return lo.y + t * (hi.y - lo.y);
}

LorenzCurve lorenz(const WeightedSpectrum& ws) {
  std::vector<LorenzPoint> pts;
  pts.reserve(ws.size() + 1);
  pts.push_back({0.0, 0.0});
  double x = 0.0;
  double y = 0.0;
  for (const Block& b : ws.blocks()) {
    x += b.g;
    y += b.p;
    pts.push_back({x, y});
  }
  return LorenzCurve(std::move(pts));
}

WeightedSpectrum compose(const WeightedSpectrum& a, const WeightedSpectrum& b) {
  std::optional<Bath> bath = merge_baths(a.bath(), b.bath());
  std::vector<Block> blocks;
  blocks.reserve(a.size() * b.size());
  for (const Block& x : a.blocks()) {
    for (const Block& y : b.blocks()) blocks.push_back({x.p * y.p, x.g * y.g});
  }
  return WeightedSpectrum::from_blocks(std::move(blocks), bath,
                                       a.is_abstract() || b.is_abstract());
}

WeightedSpectrum scale_flat(double z, double lam) {
  if (!(z > 0.0)) {
    throw Error(ErrorCode::NonpositiveBase, "flat support weight must be positive");
  }
  const double width = std::pow(z, lam);
  const bool abstract = std::abs(width - std::round(width)) > 1e-9;
  return WeightedSpectrum::from_blocks({{1.0, width}}, std::nullopt, abstract);
}

WeightedSpectrum scale_integer(const WeightedSpectrum& ws, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "integer scale must be >= 1");
  WeightedSpectrum out = ws;
  for (int i = 1; i < n; ++i) out = compose(out, ws);
  return out;
}

Spectrum as_spectrum(const WeightedSpectrum& ws) {
  std::vector<double> p;
  p.reserve(ws.size());
  for (const Block& b : ws.blocks()) p.push_back(b.p);
  return spectrum_from_probs(p);
}

}  // namespace lytherm
