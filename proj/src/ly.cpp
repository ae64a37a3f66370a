#include "lytherm/ly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lytherm/error.hpp"

namespace lytherm {

namespace {

// Shared bisection: `pred` is monotone in lambda, true below the threshold
// when `true_below`, true above it otherwise.
LyResult bisect(const std::function<bool(double)>& pred, bool true_below,
                double closed_form, double bracket) {
  double lo = -bracket;
  double hi = bracket;
  LyResult r;
  r.closed_form = closed_form;
  const bool at_lo = pred(lo);
  const bool at_hi = pred(hi);
  if (true_below ? at_hi : at_lo) {
    r.lambda_star = true_below ? hi : lo;
  } else if (true_below ? !at_lo : !at_hi) {
    r.lambda_star = true_below ? lo : hi;
  } else {
    while (hi - lo > kLambdaResolution && r.search_iterations < kMaxBisections) {
      const double mid = 0.5 * (lo + hi);
      const bool ok = pred(mid);
      if (ok == true_below) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++r.search_iterations;
    }
    r.lambda_star = 0.5 * (lo + hi);
  }
  r.residual = std::abs(r.lambda_star - r.closed_form);
  return r;
}

// Largest |lambda| <= kLambdaBracket for which every weight of both sides of
// the scaled comparison stays a normal double.
double search_bracket(const WeightedSpectrum& x, const Gauge& g) {
  constexpr double kLogBudget = 600.0;
  double ln_gx = 0.0;
  for (const Block& b : x.blocks()) ln_gx = std::max(ln_gx, std::abs(std::log(b.g)));
  const double ln_z = std::max(std::abs(std::log(g.z0())), std::abs(std::log(g.z1())));
  if (ln_z == 0.0) return kLambdaBracket;
  return std::min(kLambdaBracket, (kLogBudget - ln_gx) / (2.0 * ln_z));
}

bool is_unit_weight(const WeightedSpectrum& x) {
  if (x.bath() && x.bath()->kind != ReservoirKind::None) return false;
  return std::all_of(x.blocks().begin(), x.blocks().end(),
                     [](const Block& b) { return b.g == 1.0; });
}

}  // namespace

Gauge::Gauge(double z0, double z1, LogBase base) : z0_(z0), z1_(z1), base_(base) {
  if (!(z0 > 0.0) || !(z1 > z0)) {
    throw Error(ErrorCode::GaugeDegenerate,
                "gauge requires 0 < z0 < z1 (got " + std::to_string(z0) + ", " +
                    std::to_string(z1) + ")");
  }
}

double Gauge::log(double x) const noexcept {
  return base_ == LogBase::Log2 ? std::log2(x) : std::log(x);
}

double Gauge::c1() const noexcept { return 1.0 / log(z1_ / z0_); }
double Gauge::c0() const noexcept { return -c1() * log(z0_); }

double Gauge::ln_width_for_lambda(double lambda) const noexcept {
  const double in_base = (lambda - c0()) / c1();
  return base_ == LogBase::Log2 ? in_base * std::log(2.0) : in_base;
}

Gauge default_gauge(OrderTag tag, std::span<const double> level_weights) {
  if (tag == OrderTag::M) return Gauge(1.0, 2.0, LogBase::Log2);
  if (level_weights.size() < 2) {
    throw Error(ErrorCode::GaugeDegenerate, "labeled space has a single level");
  }
  const double z0 = *std::min_element(level_weights.begin(), level_weights.end());
  double z1 = 0.0;
  for (double g : level_weights) z1 += g;
  return Gauge(z0, z1, LogBase::Ln);
}

ScaledComparison scaled_comparison(const WeightedSpectrum& x, const Gauge& g,
                                   double lambda, bool reference_first) {
  // Negative coefficients are moved to the other side of the relation so
  // every scale factor stays nonnegative.
  ScaledComparison c{x, x};
  if (lambda < 0.0) {
    c.lhs = scale_flat(g.z0(), 1.0 - lambda);
    c.rhs = compose(x, scale_flat(g.z1(), -lambda));
  } else if (lambda > 1.0) {
    c.lhs = scale_flat(g.z1(), lambda);
    c.rhs = compose(scale_flat(g.z0(), lambda - 1.0), x);
  } else {
    c.lhs = compose(scale_flat(g.z0(), 1.0 - lambda), scale_flat(g.z1(), lambda));
    c.rhs = x;
  }
  if (!reference_first) std::swap(c.lhs, c.rhs);
  return c;
}

LyResult s_tilde_minus(const WeightedSpectrum& x, const Gauge& g) {
  auto pred = [&](double lambda) {
    const ScaledComparison c = scaled_comparison(x, g, lambda, true);
    return precedes_exact(c.lhs, c.rhs);
  };
  return bisect(pred, true, g.lambda_for_width(1.0 / x.max_ratio()), search_bracket(x, g));
}

LyResult s_tilde_plus(const WeightedSpectrum& x, const Gauge& g) {
  auto pred = [&](double lambda) {
    const ScaledComparison c = scaled_comparison(x, g, lambda, false);
    return precedes_exact(c.lhs, c.rhs);
  };
  return bisect(pred, false, g.lambda_for_width(x.support_weight()), search_bracket(x, g));
}

LyResult s_equilibrium(const WeightedSpectrum& x, const Gauge& g) {
  if (!x.is_flat()) throw Error(ErrorCode::NotFlat, "state is not flat");
  const LyResult lo = s_tilde_minus(x, g);
  const LyResult hi = s_tilde_plus(x, g);
  LyResult r;
  r.lambda_star = 0.5 * (lo.lambda_star + hi.lambda_star);
  r.closed_form = g.lambda_for_width(x.support_weight());
  r.search_iterations = lo.search_iterations + hi.search_iterations;
  r.residual = std::max({std::abs(r.lambda_star - r.closed_form),
                         std::abs(lo.lambda_star - hi.lambda_star)});
  return r;
}

double s_minus_integer(const WeightedSpectrum& x) {
  if (!is_unit_weight(x)) {
    throw Error(ErrorCode::WeightMismatch, "integer entropies need unit weights");
  }
  // Relative slack so exact reciprocals (p_max = 1/n) are not rounded down.
  const double n = std::floor((1.0 / x.max_ratio()) * (1.0 + 1e-12));
  return std::log2(n);
}

double s_plus_integer(const WeightedSpectrum& x) {
  if (!is_unit_weight(x)) {
    throw Error(ErrorCode::WeightMismatch, "integer entropies need unit weights");
  }
  return std::log2(std::round(x.support_weight()));
}

double map_to_potential(const Relation& rel, const Gauge& g, double lambda) {
  const double ln_w = g.ln_width_for_lambda(lambda);
  switch (rel.tag) {
    case OrderTag::M:
      return ln_w / std::log(2.0);
    case OrderTag::T:
    case OrderTag::NT:
      return -rel.reservoir.k_b * rel.reservoir.temperature() * ln_w;
    case OrderTag::J:
      return ln_w;
  }
  return ln_w;
}

PropositionReport verify_proposition(const WeightedSpectrum& x,
                                     const Relation& rel, const Gauge& g) {
  if (x.bath() && !(*x.bath() == rel.bath())) {
    throw Error(ErrorCode::WeightMismatch, "state weights do not match relation");
  }
  PropositionReport rep;
  rep.minus = s_tilde_minus(x, g);
  rep.plus = s_tilde_plus(x, g);
  bool ok = rep.minus.residual <= kAgreementTolerance &&
            rep.plus.residual <= kAgreementTolerance;
  if (x.is_flat()) {
    rep.equilibrium = s_equilibrium(x, g);
    ok = ok && rep.equilibrium->residual <= kAgreementTolerance;
  }
  rep.agree = ok;

  rep.mapped_minus = map_to_potential(rel, g, rep.minus.lambda_star);
  rep.mapped_plus = map_to_potential(rel, g, rep.plus.lambda_star);
  return rep;
}

}  // namespace lytherm
