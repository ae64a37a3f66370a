#include "lytherm/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "json.hpp"
#include "lytherm/error.hpp"

namespace lytherm {

namespace {

constexpr int kRejectionBudget = 100;
constexpr std::size_t kMaxScaledBlocks = 512;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Portable draws on top of the engine; the standard distributions are
// implementation-defined.
double unit(std::mt19937_64& e) {
  return static_cast<double>(e() >> 11) * 0x1.0p-53;
}

std::size_t below(std::mt19937_64& e, std::size_t n) {
  return static_cast<std::size_t>(e() % n);
}

nlohmann::json blocks_json(const WeightedSpectrum& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Block& b : ws.blocks()) arr.push_back({b.p, b.g});
  return arr;
}

// Accumulates one check's counts while the trial runs.
class Check {
 public:
  explicit Check(std::string name) { stat_.name = std::move(name); }

  bool record(bool outcome) {
    stat_.digest ^= outcome ? 0x9bu : 0x35u;
    stat_.digest *= 1099511628211ull;
    return outcome;
  }

  void vacuous() {
    ++stat_.checked;
    ++stat_.vacuous;
  }

  void verdict(bool holds, const nlohmann::json& instance) {
    ++stat_.checked;
    record(holds);
    if (!holds) {
      ++stat_.violations;
      if (!stat_.first_counterexample) stat_.first_counterexample = instance.dump();
    }
  }

  AxiomStat take() { return std::move(stat_); }

 private:
  AxiomStat stat_;
};

struct Harness {
  const TrialConfig& cfg;
  OrderFn order;

  explicit Harness(const TrialConfig& c)
      : cfg(c),
        order(c.corrupt ? corrupted_order()
                        : OrderFn([](const WeightedSpectrum& a, const WeightedSpectrum& b) {
                            return precedes(a, b);
                          })) {}

  StateSampler sampler(std::uint64_t stream, int trial) const {
    StateSampler s(cfg.tag, cfg.labels,
                   sub_seed(cfg.seed, stream, static_cast<std::uint64_t>(trial)));
    s.new_bath();
    return s;
  }

  LabeledSpace space(StateSampler& s) const {
    return s.space(s.dim(2, static_cast<std::size_t>(cfg.dim_max)));
  }

  bool ordered(Check& c, const WeightedSpectrum& a, const WeightedSpectrum& b) const {
    return c.record(order(a, b));
  }

  // A state the order places after p, found by rejection sampling among
  // independent draws and derived candidates.
  std::optional<std::vector<double>> successor_of(Check& c, StateSampler& s,
                                                  const LabeledSpace& sp,
                                                  std::span<const double> p) const {
    const WeightedSpectrum wp = sp.state(p);
    for (int i = 0; i < kRejectionBudget; ++i) {
      std::vector<double> cand =
          s.uniform(0.0, 1.0) < 0.5 ? s.successor(sp, p) : s.simplex(sp.dim());
      if (ordered(c, wp, sp.state(cand))) return cand;
    }
    return std::nullopt;
  }

  // A comparable pair (first precedes second).
  std::optional<std::pair<std::vector<double>, std::vector<double>>> comparable_pair(
      Check& c, StateSampler& s, const LabeledSpace& sp) const {
    for (int i = 0; i < kRejectionBudget; ++i) {
      std::vector<double> x = s.simplex(sp.dim());
      std::vector<double> y =
          s.uniform(0.0, 1.0) < 0.5 ? s.successor(sp, x) : s.simplex(sp.dim());
      const WeightedSpectrum wx = sp.state(x);
      const WeightedSpectrum wy = sp.state(y);
      if (ordered(c, wx, wy)) return std::pair{std::move(x), std::move(y)};
      if (ordered(c, wy, wx)) return std::pair{std::move(y), std::move(x)};
    }
    return std::nullopt;
  }

  AxiomStat reflexivity() const {
    Check c("E1_reflexivity");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(1, t);
      const LabeledSpace sp = space(s);
      const WeightedSpectrum x = sp.state(s.simplex(sp.dim()));
      c.verdict(ordered(c, x, x), {{"x", blocks_json(x)}});
    }
    return c.take();
  }

  AxiomStat transitivity() const {
    Check c("E2_transitivity");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(2, t);
      const LabeledSpace sp = space(s);
      const std::vector<double> x = s.simplex(sp.dim());
      auto y = successor_of(c, s, sp, x);
      if (!y) { c.vacuous(); continue; }
      auto z = successor_of(c, s, sp, *y);
      if (!z) { c.vacuous(); continue; }
      const WeightedSpectrum wx = sp.state(x);
      const WeightedSpectrum wz = sp.state(*z);
      c.verdict(ordered(c, wx, wz),
                {{"x", blocks_json(wx)}, {"y", blocks_json(sp.state(*y))},
                 {"z", blocks_json(wz)}});
    }
    return c.take();
  }

  AxiomStat consistent_composition() const {
    Check c("E3_consistent_composition");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(3, t);
      const LabeledSpace sp1 = space(s);
      const LabeledSpace sp2 = space(s);
      auto p1 = comparable_pair(c, s, sp1);
      auto p2 = comparable_pair(c, s, sp2);
      if (!p1 || !p2) { c.vacuous(); continue; }
      const WeightedSpectrum lhs = compose(sp1.state(p1->first), sp2.state(p2->first));
      const WeightedSpectrum rhs = compose(sp1.state(p1->second), sp2.state(p2->second));
      c.verdict(ordered(c, lhs, rhs),
                {{"lhs", blocks_json(lhs)}, {"rhs", blocks_json(rhs)}});
    }
    return c.take();
  }

  AxiomStat scaling_invariance() const {
    Check c("E4_scaling_invariance");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(4, t);
      const LabeledSpace sp = space(s);
      // Integer scaling of general states.
      auto pr = comparable_pair(c, s, sp);
      int n = 2 + static_cast<int>(below(s.engine(), 2));
      if (std::pow(double(sp.dim()), n) > double(kMaxScaledBlocks)) n = 2;
      // Real scaling of flat states.
      const WeightedSpectrum fa = s.flat(sp);
      const WeightedSpectrum fb = s.flat(sp);
      const double lam = s.uniform(0.05, 4.0);
      if (!pr) { c.vacuous(); continue; }
      const WeightedSpectrum x = sp.state(pr->first);
      const WeightedSpectrum y = sp.state(pr->second);
      const bool general = ordered(c, scale_integer(x, n), scale_integer(y, n));
      const bool fab = ordered(c, fa, fb);
      const WeightedSpectrum& lo = fab ? fa : fb;
      const WeightedSpectrum& hi = fab ? fb : fa;
      const bool flat = ordered(c, scale_flat(lo.support_weight(), lam),
                                scale_flat(hi.support_weight(), lam));
      c.verdict(general && flat,
                {{"x", blocks_json(x)}, {"y", blocks_json(y)}, {"n", n},
                 {"flat_lo", lo.support_weight()}, {"flat_hi", hi.support_weight()},
                 {"lambda", lam}});
    }
    return c.take();
  }

  AxiomStat splitting() const {
    Check c("E5_splitting_recombination");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(5, t);
      const LabeledSpace sp = space(s);
      const WeightedSpectrum x = s.flat(sp);
      const double lam = s.uniform(0.01, 0.99);
      const double z = x.support_weight();
      const WeightedSpectrum split = compose(scale_flat(z, lam), scale_flat(z, 1.0 - lam));
      const bool fwd = ordered(c, x, split);
      const bool back = ordered(c, split, x);
      c.verdict(fwd && back, {{"x", blocks_json(x)}, {"lambda", lam}});
    }
    return c.take();
  }

  AxiomStat stability() const {
    Check c("E6_stability");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(6, t);
      const LabeledSpace sp = space(s);
      auto pr = comparable_pair(c, s, sp);
      if (!pr) { c.vacuous(); continue; }
      if (s.uniform(0.0, 1.0) < 0.5) std::swap(pr->first, pr->second);
      const WeightedSpectrum x = sp.state(pr->first);
      const WeightedSpectrum y = sp.state(pr->second);
      const double z0 = *std::min_element(sp.weights.begin(), sp.weights.end());
      const double z1 = std::accumulate(sp.weights.begin(), sp.weights.end(), 0.0);
      // The smallest rung stands in for the limit.
      const double eps = cfg.epsilon_ladder.back();
      if (!ordered(c, compose(x, scale_flat(z0, eps)), compose(y, scale_flat(z1, eps)))) {
        c.vacuous();
        continue;
      }
      c.verdict(ordered(c, x, y), {{"x", blocks_json(x)}, {"y", blocks_json(y)},
                                   {"z0", z0}, {"z1", z1}});
    }
    return c.take();
  }

  AxiomStat comparison_hypothesis() const {
    Check c("CH_flat_compositions");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(7, t);
      double z[4];
      for (double& zi : z) {
        const LabeledSpace sp = space(s);
        zi = s.flat(sp).support_weight();
      }
      const double lam = s.uniform(0.0, 1.0);
      const WeightedSpectrum a = compose(scale_flat(z[0], 1.0 - lam), scale_flat(z[1], lam));
      const WeightedSpectrum b = compose(scale_flat(z[2], 1.0 - lam), scale_flat(z[3], lam));
      const bool ab = ordered(c, a, b);
      const bool ba = ordered(c, b, a);
      c.verdict(ab || ba, {{"z", {z[0], z[1], z[2], z[3]}}, {"lambda", lam}});
    }
    return c.take();
  }

  AxiomStat bracketing() const {
    Check c("N1_bracketing");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(8, t);
      const LabeledSpace sp = space(s);
      const WeightedSpectrum x = sp.state(s.simplex(sp.dim()));
      std::vector<double> pure(sp.dim(), 0.0);
      pure[static_cast<std::size_t>(
          std::min_element(sp.weights.begin(), sp.weights.end()) - sp.weights.begin())] = 1.0;
      const WeightedSpectrum x0 = sp.state(pure);
      const WeightedSpectrum x1 = sp.equilibrium_state();
      const bool lower = ordered(c, x0, x);
      const bool upper = ordered(c, x, x1);
      const bool strict = !ordered(c, x1, x0);
      c.verdict(lower && upper && strict, {{"x", blocks_json(x)}});
    }
    return c.take();
  }

  AxiomStat cancellation() const {
    Check c("cancellation_law");
    for (int t = 0; t < cfg.trials; ++t) {
      StateSampler s = sampler(9, t);
      const LabeledSpace sp = space(s);
      const LabeledSpace ancilla = space(s);
      std::vector<double> a;
      std::vector<double> b;
      if (s.uniform(0.0, 1.0) < 0.5) {
        a = s.simplex(sp.dim());
        b = s.simplex(sp.dim());
      } else {
        auto pr = comparable_pair(c, s, sp);
        if (!pr) { c.vacuous(); continue; }
        a = std::move(pr->second);
        b = std::move(pr->first);
        if (s.uniform(0.0, 1.0) < 0.5) std::swap(a, b);
      }
      const WeightedSpectrum z = s.flat(ancilla);
      const WeightedSpectrum wa = sp.state(a);
      const WeightedSpectrum wb = sp.state(b);
      if (!ordered(c, compose(wa, z), compose(wb, z))) { c.vacuous(); continue; }
      c.verdict(ordered(c, wa, wb), {{"a", blocks_json(wa)}, {"b", blocks_json(wb)},
                                     {"z", blocks_json(z)}});
    }
    return c.take();
  }
};

}  // namespace

std::vector<double> TrialConfig::default_epsilon_ladder() {
  std::vector<double> ladder;
  for (int k = 1; k <= 20; ++k) ladder.push_back(std::ldexp(1.0, -k));
  return ladder;
}

void TrialConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
  if (dim_max < 2 || dim_max > 8) {
    throw Error(ErrorCode::InvalidInput, "dim_max must lie in [2, 8]");
  }
  if (epsilon_ladder.empty()) throw Error(ErrorCode::InvalidInput, "empty epsilon ladder");
  for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
    if (!(epsilon_ladder[i] > 0.0) ||
        (i > 0 && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))) {
      throw Error(ErrorCode::InvalidInput,
                  "epsilon ladder must be positive and strictly descending", i);
    }
  }
}

int AxiomReport::total_violations() const noexcept {
  int v = 0;
  for (const AxiomStat& s : stats) v += s.violations;
  return v;
}

const AxiomStat* AxiomReport::find(std::string_view name) const noexcept {
  for (const AxiomStat& s : stats) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void AxiomReport::merge(const AxiomReport& other) {
  for (const AxiomStat& o : other.stats) {
    auto it = std::find_if(stats.begin(), stats.end(),
                           [&](const AxiomStat& s) { return s.name == o.name; });
    if (it == stats.end()) {
      stats.push_back(o);
      continue;
    }
    it->checked += o.checked;
    it->violations += o.violations;
    it->vacuous += o.vacuous;
    if (!it->first_counterexample) it->first_counterexample = o.first_counterexample;
    it->digest = (it->digest ^ o.digest) * 1099511628211ull;
  }
}

WeightedSpectrum LabeledSpace::state(std::span<const double> p) const {
  std::vector<Block> blocks(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) blocks[i] = {p[i], weights[i]};
  return WeightedSpectrum::from_blocks(std::move(blocks), bath);
}

WeightedSpectrum LabeledSpace::equilibrium_state() const {
  return equilibrium(weights, bath);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ trial);
}

StateSampler::StateSampler(OrderTag tag, LabelModel model, std::uint64_t seed)
    : tag_(tag),
      model_(model),
      spectra_(splitmix64(seed)),
      labels_(splitmix64(seed ^ 0x6c6162656c73ull)) {}

void StateSampler::new_bath() {
  // Every parameter is drawn regardless of tag so that different relations
  // on the same seed see the same labels.
  const double beta = std::exp(std::log(0.1) + unit(labels_) * (std::log(5.0) - std::log(0.1)));
  const double mu = -1.0 + 2.0 * unit(labels_);
  const double gamma = 0.1 + 1.9 * unit(labels_);
  common_energy_ = unit(labels_);
  beta_ = model_.beta.value_or(beta);
  mu_ = model_.trivial ? 0.0 : model_.mu.value_or(mu);
  gamma_ = model_.trivial ? 0.0 : model_.gamma.value_or(gamma);
}

LabeledSpace StateSampler::space(std::size_t dim) {
  std::vector<double> energies(dim);
  std::vector<double> particles(dim);
  std::vector<double> jz(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    energies[i] = unit(labels_);
    particles[i] = static_cast<double>(below(labels_, 4));
    jz[i] = -2.0 + 0.5 * static_cast<double>(below(labels_, 9));
  }
  LabeledSpace s;
  s.reservoir.kind = kind_for(tag_);
  s.reservoir.beta = beta_;
  switch (tag_) {
    case OrderTag::M:
      break;
    case OrderTag::T:
      if (model_.trivial) std::fill(energies.begin(), energies.end(), common_energy_);
      s.reservoir.energies = std::move(energies);
      break;
    case OrderTag::NT:
      s.reservoir.energies = std::move(energies);
      s.reservoir.particles = std::move(particles);
      s.reservoir.mu = mu_;
      break;
    case OrderTag::J:
      s.reservoir.jz = std::move(jz);
      s.reservoir.gamma = gamma_;
      break;
  }
  s.weights = s.reservoir.weights(dim);
  s.bath = bath_of(s.reservoir);
  return s;
}

std::size_t StateSampler::dim(std::size_t lo, std::size_t hi) {
  return lo + below(spectra_, hi - lo + 1);
}

double StateSampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * unit(spectra_);
}

std::vector<double> StateSampler::simplex(std::size_t dim) {
  std::vector<double> v(dim);
  double sum = 0.0;
  for (double& x : v) {
    x = -std::log1p(-unit(spectra_));
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

std::vector<double> StateSampler::sparse(std::size_t dim, std::size_t rank) {
  std::vector<std::size_t> idx(dim);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = dim; i > 1; --i) std::swap(idx[i - 1], idx[below(spectra_, i)]);
  const std::vector<double> head = simplex(rank);
  std::vector<double> v(dim, 0.0);
  for (std::size_t i = 0; i < rank; ++i) v[idx[i]] = head[i];
  return v;
}

WeightedSpectrum StateSampler::flat(const LabeledSpace& s) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (spectra_() & 1u) support.push_back(i);
  }
  if (support.empty()) support.push_back(below(spectra_, s.dim()));
  return equilibrium(s.weights, s.bath, support);
}

std::vector<double> StateSampler::successor(const LabeledSpace& s,
                                            std::span<const double> p) {
  std::vector<double> q(p.begin(), p.end());
  const std::size_t d = s.dim();
  if (unit(spectra_) < 0.5) {
    // Two-level exchanges that keep the weight vector fixed.
    const int steps = 1 + static_cast<int>(below(spectra_, 3));
    for (int k = 0; k < steps; ++k) {
      const std::size_t i = below(spectra_, d);
      std::size_t j = below(spectra_, d - 1);
      if (j >= i) ++j;
      const double gi = s.weights[i];
      const double gj = s.weights[j];
      const double a = unit(spectra_) * std::min(1.0, gj / gi);
      const double b = a * gi / gj;
      const double qi = q[i];
      const double qj = q[j];
      q[i] = (1.0 - a) * qi + b * qj;
      q[j] = a * qi + (1.0 - b) * qj;
    }
  } else {
    const double t = 0.05 + 0.9 * unit(spectra_);
    const double z = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) q[i] = (1.0 - t) * q[i] + t * s.weights[i] / z;
  }
  return q;
}

AxiomReport run_axiom_suite(const TrialConfig& cfg) {
  cfg.validate();
  const Harness h(cfg);
  AxiomReport r;
  r.tag = cfg.tag;
  r.stats.push_back(h.reflexivity());
  r.stats.push_back(h.transitivity());
  r.stats.push_back(h.consistent_composition());
  r.stats.push_back(h.scaling_invariance());
  r.stats.push_back(h.splitting());
  r.stats.push_back(h.stability());
  r.stats.push_back(h.comparison_hypothesis());
  r.stats.push_back(h.bracketing());
  r.stats.push_back(h.cancellation());
  return r;
}

AxiomReport run_lemma1_suite(const TrialConfig& cfg, std::optional<Gauge> gauge) {
  cfg.validate();
  const Harness h(cfg);
  Check sufficient("lemma1_sufficient");
  Check necessary("lemma1_necessary");
  for (int t = 0; t < cfg.trials; ++t) {
    StateSampler s = h.sampler(10, t);
    const LabeledSpace sp = h.space(s);
    const Gauge g = gauge ? *gauge : default_gauge(cfg.tag, sp.weights);
    std::vector<double> x;
    std::vector<double> y;
    if (s.uniform(0.0, 1.0) < 0.5) {
      auto pr = h.comparable_pair(necessary, s, sp);
      if (!pr) {
        sufficient.vacuous();
        necessary.vacuous();
        continue;
      }
      x = std::move(pr->first);
      y = std::move(pr->second);
      if (s.uniform(0.0, 1.0) < 0.5) std::swap(x, y);
    } else {
      // Low-rank source against a nearly equilibrated target.
      const std::size_t rank = 1 + below(s.engine(), std::max<std::size_t>(1, sp.dim() / 2));
      x = s.sparse(sp.dim(), rank);
      y = s.simplex(sp.dim());
      const double mix = s.uniform(0.5, 1.0);
      const double z = std::accumulate(sp.weights.begin(), sp.weights.end(), 0.0);
      for (std::size_t i = 0; i < sp.dim(); ++i) {
        y[i] = (1.0 - mix) * y[i] + mix * sp.weights[i] / z;
      }
    }
    const WeightedSpectrum wx = sp.state(x);
    const WeightedSpectrum wy = sp.state(y);
    const LyResult minus_x = s_tilde_minus(wx, g);
    const LyResult plus_x = s_tilde_plus(wx, g);
    const LyResult minus_y = s_tilde_minus(wy, g);
    const LyResult plus_y = s_tilde_plus(wy, g);
    const nlohmann::json instance = {
        {"x", blocks_json(wx)}, {"y", blocks_json(wy)},
        {"s_minus", {minus_x.lambda_star, minus_y.lambda_star}},
        {"s_plus", {plus_x.lambda_star, plus_y.lambda_star}}};

    if (plus_x.lambda_star < minus_y.lambda_star - kAgreementTolerance) {
      sufficient.verdict(h.ordered(sufficient, wx, wy), instance);
    } else {
      sufficient.vacuous();
    }
    if (h.ordered(necessary, wx, wy)) {
      necessary.verdict(minus_x.lambda_star <= minus_y.lambda_star + kOrderTolerance &&
                            plus_x.lambda_star <= plus_y.lambda_star + kOrderTolerance,
                        instance);
    } else {
      necessary.vacuous();
    }
  }
  AxiomReport r;
  r.tag = cfg.tag;
  r.stats.push_back(sufficient.take());
  r.stats.push_back(necessary.take());
  return r;
}

}  // namespace lytherm
