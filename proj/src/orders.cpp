#include "lytherm/orders.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "lytherm/error.hpp"

namespace lytherm {

namespace {

std::vector<double> breakpoint_union(const LorenzCurve& a, const LorenzCurve& b) {
  std::vector<double> xs;
  xs.reserve(a.points().size() + b.points().size());
  for (const LorenzPoint& p : a.points()) xs.push_back(p.x);
  for (const LorenzPoint& p : b.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Breakpoints with prefix and suffix sums kept separately.
struct TwoSided {
  std::vector<double> x;
  std::vector<double> head;
  std::vector<double> tail;

  explicit TwoSided(const WeightedSpectrum& ws) {
    // Sub-threshold entries count as exact zeros, as for the support.
    std::vector<Block> blocks;
    for (const Block& b : ws.blocks()) {
      if (b.p > kZeroThreshold) blocks.push_back(b);
    }
    const std::size_t n = blocks.size();
    x.assign(n + 1, 0.0);
    head.assign(n + 1, 0.0);
    tail.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      x[i + 1] = x[i] + blocks[i].g;
      head[i + 1] = head[i] + blocks[i].p;
    }
    for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + blocks[i].p;
  }

  // (L(k), 1 - L(k)) by linear interpolation, saturated past the width.
  std::pair<double, double> at(double k) const {
    if (k >= x.back()) return {head.back(), 0.0};
    const auto it = std::upper_bound(x.begin(), x.end(), k);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double t = (k - x[i]) / (x[i + 1] - x[i]);
    const double p = head[i + 1] - head[i];
    const double seg = tail[i] - tail[i + 1];
    return {head[i] + t * p, tail[i + 1] + (1.0 - t) * seg};
  }
};

void check_relation_bath(const Relation& rel, const WeightedSpectrum& ws) {
  if (ws.bath() && !(*ws.bath() == rel.bath())) {
    throw Error(ErrorCode::WeightMismatch,
                "spectrum weights do not match relation " +
                    std::string(to_string(rel.tag)));
  }
}

}  // namespace

std::string_view to_string(OrderTag tag) noexcept {
  switch (tag) {
    case OrderTag::M: return "m";
    case OrderTag::T: return "t";
    case OrderTag::NT: return "nt";
    case OrderTag::J: return "j";
  }
  return "?";
}

OrderTag parse_order_tag(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "m") return OrderTag::M;
  if (s == "t") return OrderTag::T;
  if (s == "nt") return OrderTag::NT;
  if (s == "j") return OrderTag::J;
  throw Error(ErrorCode::InvalidInput, "unknown relation '" + s + "'");
}

ReservoirKind kind_for(OrderTag tag) noexcept {
  switch (tag) {
    case OrderTag::M: return ReservoirKind::None;
    case OrderTag::T: return ReservoirKind::Heat;
    case OrderTag::NT: return ReservoirKind::HeatParticle;
    case OrderTag::J: return ReservoirKind::AngularMomentum;
  }
  return ReservoirKind::None;
}

Relation make_relation(OrderTag tag, ReservoirSpec reservoir) {
  reservoir.kind = kind_for(tag);
  return {tag, std::move(reservoir)};
}

std::string_view to_string(Comparison c) noexcept {
  switch (c) {
    case Comparison::ABeforeB: return "ABeforeB";
    case Comparison::BBeforeA: return "BBeforeA";
    case Comparison::Equivalent: return "Equivalent";
    case Comparison::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace detail {

bool dominates(const LorenzCurve& a, const LorenzCurve& b) {
  for (double k : breakpoint_union(a, b)) {
    if (a(k) < b(k) - kOrderTolerance) return false;
  }
  return true;
}

bool dominates_corrupted(const LorenzCurve& a, const LorenzCurve& b) {
  bool flipped = false;
  for (double k : breakpoint_union(a, b)) {
    if (k > 0.0 && !flipped) {
      flipped = true;
      if (a(k) > b(k) + kOrderTolerance) return false;
      continue;
    }
    if (a(k) < b(k) - kOrderTolerance) return false;
  }
  return true;
}

void check_baths(const WeightedSpectrum& a, const WeightedSpectrum& b) {
  if (a.bath() && b.bath() && !(*a.bath() == *b.bath())) {
    throw Error(ErrorCode::WeightMismatch,
                "spectra are annotated with different reservoirs");
  }
}

}  // namespace detail

bool precedes(const Relation& rel, const WeightedSpectrum& a,
              const WeightedSpectrum& b) {
  check_relation_bath(rel, a);
  check_relation_bath(rel, b);
  return detail::dominates(lorenz(a), lorenz(b));
}

bool precedes(const WeightedSpectrum& a, const WeightedSpectrum& b) {
  detail::check_baths(a, b);
  return detail::dominates(lorenz(a), lorenz(b));
}

bool precedes_exact(const WeightedSpectrum& a, const WeightedSpectrum& b) {
  detail::check_baths(a, b);
  const TwoSided ca(a);
  const TwoSided cb(b);
  std::vector<double> xs(ca.x);
  xs.insert(xs.end(), cb.x.begin(), cb.x.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double k : xs) {
    const auto [la, ta] = ca.at(k);
    const auto [lb, tb] = cb.at(k);
    if (lb > 0.5 ? ta > tb : la < lb) return false;
  }
  return true;
}

bool precedes_flat(const Relation&, double z_a, double z_b) {
  if (!(z_a > 0.0) || !(z_b > 0.0)) {
    throw Error(ErrorCode::NonpositiveBase, "support weights must be positive");
  }
  return z_b >= z_a - kOrderTolerance;
}

Comparison comparable(const Relation& rel, const WeightedSpectrum& a,
                      const WeightedSpectrum& b) {
  const bool ab = precedes(rel, a, b);
  const bool ba = precedes(rel, b, a);
  if (ab && ba) return Comparison::Equivalent;
  if (ab) return Comparison::ABeforeB;
  if (ba) return Comparison::BBeforeA;
  return Comparison::Incomparable;
}

OrderFn corrupted_order() {
  return [](const WeightedSpectrum& a, const WeightedSpectrum& b) {
    detail::check_baths(a, b);
    return detail::dominates_corrupted(lorenz(a), lorenz(b));
  };
}

}  // namespace lytherm
