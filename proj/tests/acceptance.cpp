// Acceptance run: one PASS/FAIL line per criterion. Reference values are
// computed here from closed forms or brute force, never from the library
// routine under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lytherm/axioms.hpp"
#include "lytherm/certificates.hpp"
#include "lytherm/entropy.hpp"
#include "lytherm/hermitian.hpp"
#include "lytherm/ly.hpp"
#include "lytherm/orders.hpp"
#include "oracles.hpp"

using namespace lytherm;

namespace {

// Pinned tolerances.
constexpr double kLambdaTol = 1e-9;
constexpr double kCollapseTol = 1e-12;
constexpr double kWitnessTol = 1e-12;
constexpr double kMonotoneTol = 1e-12;
constexpr double kAdditiveTol = 1e-9;
constexpr double kResidualTol = 1e-10;
constexpr double kRotationTol = 1e-9;
constexpr double kPositive = 1e-12;
constexpr double kMinCoverage = 0.10;

const OrderTag kTags[] = {OrderTag::M, OrderTag::T, OrderTag::NT, OrderTag::J};
const Gauge kBits(1.0, 2.0, LogBase::Log2);

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

WeightedSpectrum unit(const std::vector<double>& p) {
  return weighted(spectrum_from_probs(p), ReservoirSpec{});
}

// Simplex vector with some entries forced to zero.
std::vector<double> sparse_simplex(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> p = oracle::random_simplex(rng, n);
  const std::size_t zeros = rng() % n;
  for (std::size_t k = 0; k < zeros; ++k) p[rng() % n] = 0.0;
  if (std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; })) p[0] = 1.0;
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

std::size_t rank_of(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](double x) { return x > kPositive; }));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Labels and weights drawn here, with weights written out per tag.
struct Labels {
  ReservoirSpec res;
  std::vector<double> g;
};

Labels draw_labels(std::mt19937_64& rng, OrderTag tag, std::size_t n) {
  Labels l;
  l.res.kind = kind_for(tag);
  l.res.beta = std::exp(uniform(rng, std::log(0.1), std::log(5.0)));
  l.g.assign(n, 1.0);
  switch (tag) {
    case OrderTag::M:
      break;
    case OrderTag::T:
      for (std::size_t i = 0; i < n; ++i) l.res.energies.push_back(uniform(rng, 0.0, 1.0));
      for (std::size_t i = 0; i < n; ++i) l.g[i] = std::exp(-l.res.beta * l.res.energies[i]);
      break;
    case OrderTag::NT:
      l.res.mu = uniform(rng, -1.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        l.res.energies.push_back(uniform(rng, 0.0, 1.0));
        l.res.particles.push_back(static_cast<double>(rng() % 4));
        l.g[i] = std::exp(-l.res.beta * (l.res.energies[i] - l.res.mu * l.res.particles[i]));
      }
      break;
    case OrderTag::J:
      l.res.gamma = uniform(rng, 0.1, 2.0);
      for (std::size_t i = 0; i < n; ++i) {
        l.res.jz.push_back(-2.0 + 0.5 * static_cast<double>(rng() % 9));
        l.g[i] = std::exp(-l.res.gamma * l.res.jz[i]);
      }
      break;
  }
  return l;
}

WeightedSpectrum labeled(const std::vector<double>& p, const Labels& l) {
  return weighted(make_labeled_state(p, l.res));
}

// Mixing toward the equilibrium distribution never leaves the order cone.
std::vector<double> toward_equilibrium(std::mt19937_64& rng, const std::vector<double>& p,
                                       const std::vector<double>& g) {
  const double z = std::accumulate(g.begin(), g.end(), 0.0);
  const double m = uniform(rng, 0.0, 1.0);
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = (1.0 - m) * p[i] + m * g[i] / z;
  return q;
}

// Random chain of T-transforms applied by hand.
std::vector<double> t_chain(std::mt19937_64& rng, std::vector<double> v) {
  const int steps = 1 + static_cast<int>(rng() % 6);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % v.size();
    const std::size_t j = rng() % v.size();
    const double t = uniform(rng, 0.0, 1.0);
    const double a = v[i];
    const double b = v[j];
    v[i] = (1.0 - t) * a + t * b;
    v[j] = (1.0 - t) * b + t * a;
  }
  return v;
}

// 1. Noisy-operation entropies equal H_min and H_max.
void criterion_noisy() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 63;
    const std::vector<double> p = t % 2 ? sparse_simplex(rng, n) : oracle::random_simplex(rng, n);
    const double pmax = *std::max_element(p.begin(), p.end());
    const double want_minus = -std::log2(pmax);
    const double want_plus = std::log2(static_cast<double>(rank_of(p)));
    const WeightedSpectrum x = unit(p);
    const double e1 = std::abs(s_tilde_minus(x, kBits).lambda_star - want_minus);
    const double e2 = std::abs(s_tilde_plus(x, kBits).lambda_star - want_plus);
    worst = std::max({worst, e1, e2});
    bad += e1 > kLambdaTol || e2 > kLambdaTol;
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 63;
    const std::size_t r = 1 + rng() % n;
    std::vector<double> p(n, 0.0);
    std::fill(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(r), 1.0 / static_cast<double>(r));
    std::shuffle(p.begin(), p.end(), rng);
    const double e = std::abs(s_equilibrium(unit(p), kBits).lambda_star - std::log2(static_cast<double>(r)));
    worst = std::max(worst, e);
    bad += e > kLambdaTol;
  }
  report(1, "noisy S~-/S~+/S equal H_min/H_max/log2 rank", bad == 0,
         std::to_string(bad) + " misses of 700, max err " + fmt("%.3g", worst) + " (tol 1e-9)");
}

// 2. Qubit anchors.
void criterion_qubit() {
  const double a = s_tilde_minus(unit({0.75, 0.25}), kBits).lambda_star;
  const double s = s_minus_integer(unit({0.75, 0.25}));
  const double b = s_tilde_minus(unit({2.0 / 3.0, 1.0 / 3.0}), kBits).lambda_star;
  const double ea = std::abs(a - std::log2(4.0 / 3.0));
  const double ea_quoted = std::abs(a - 0.415037499);
  const double eb = std::abs(b - std::log2(1.5));
  const bool ok = ea <= kLambdaTol && ea_quoted <= kLambdaTol && s == 0.0 && eb <= kLambdaTol;
  report(2, "qubit anchors", ok,
         "S~-(.75,.25)=" + fmt("%.12f", a) + " S-=" + fmt("%g", s) + " S~-(2/3,1/3)=" + fmt("%.12f", b));
}

// 3. Thermal closed forms and the map to free energies.
void criterion_thermal() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 15;
    const Labels l = draw_labels(rng, OrderTag::T, n);
    const std::vector<double> p = t % 3 == 0 ? sparse_simplex(rng, n) : oracle::random_simplex(rng, n);
    double pres = 0.0;
    double zrho = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] > kPositive) {
        pres = std::max(pres, p[i] / l.g[i]);
        zrho += l.g[i];
      }
    }
    const double z0 = *std::min_element(l.g.begin(), l.g.end());
    const double z1 = std::accumulate(l.g.begin(), l.g.end(), 0.0);
    const double a_t = 1.0 / std::log(z1 / z0);
    const double b_t = -a_t * std::log(z0);
    const double kt = 1.0 / l.res.beta;

    const WeightedSpectrum x = labeled(p, l);
    const Gauge gauge = default_gauge(OrderTag::T, l.g);
    const double lm = s_tilde_minus(x, gauge).lambda_star;
    const double lp = s_tilde_plus(x, gauge).lambda_star;
    const double f_max = -kt * (lm - b_t) / a_t;
    const double f_min = -kt * (lp - b_t) / a_t;
    const double errs[] = {std::abs(lm - (a_t * std::log(1.0 / pres) + b_t)),
                           std::abs(lp - (a_t * std::log(zrho) + b_t)),
                           std::abs(f_max - kt * std::log(pres)),
                           std::abs(f_min + kt * std::log(zrho))};
    for (double e : errs) {
      worst = std::max(worst, e);
      bad += e > kLambdaTol;
    }
  }
  report(3, "thermal closed forms and F_max/F_min", bad == 0,
         std::to_string(bad) + " misses of 1200, max err " + fmt("%.3g", worst) + " (tol 1e-9)");
}

// 4. All free energies coincide on the thermal state.
void criterion_collapse() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 15;
    const Labels l = draw_labels(rng, OrderTag::T, n);
    const double z = std::accumulate(l.g.begin(), l.g.end(), 0.0);
    std::vector<double> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = l.g[i] / z;
    const LabeledState st = make_labeled_state(tau, l.res);
    const PotentialBounds f = free_energies(st.spectrum, st.reservoir);
    const double want = -std::log(z) / l.res.beta;
    worst = std::max({worst, std::abs(f.upper - f.lower), std::abs(f.upper - want),
                      std::abs(f.lower - want)});
  }
  report(4, "thermal state: F_min = F_max = -kT ln Z", worst <= kCollapseTol,
         "max deviation " + fmt("%.3g", worst) + " (tol 1e-12)");
}

// 5. Curve dominance against brute-force knapsack evaluation.
void criterion_oracle() {
  std::mt19937_64 rng(1005);
  std::string detail;
  bool ok = true;
  for (OrderTag tag : kTags) {
    int dis = 0;
    int pos = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 1 + rng() % 8;
      const Labels l = draw_labels(rng, tag, n);
      const std::vector<double> a = t % 4 == 0 ? sparse_simplex(rng, n) : oracle::random_simplex(rng, n);
      const std::vector<double> b = t % 2 ? toward_equilibrium(rng, a, l.g) : oracle::random_simplex(rng, n);
      const Relation rel = make_relation(tag, l.res);
      const bool got = precedes(rel, labeled(a, l), labeled(b, l));
      const bool want = tag == OrderTag::M ? oracle::prefix_dominates(a, b)
                                           : oracle::knapsack_dominates(a, l.g, b, l.g);
      dis += got != want;
      pos += got;
    }
    ok = ok && dis == 0;
    detail += std::string(to_string(tag)) + " " + std::to_string(dis) + "/1000 (" +
              std::to_string(pos) + " true) ";
  }
  report(5, "precedes agrees with brute-force oracle", ok, detail + "disagreements");
}

// 6. Flat states: rank / partition function criterion.
void criterion_flat() {
  std::mt19937_64 rng(1006);
  std::string detail;
  bool ok = true;
  for (OrderTag tag : kTags) {
    int dis = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 8;
      const Labels l = draw_labels(rng, tag, n);
      const Relation rel = make_relation(tag, l.res);
      const auto draw_support = [&] {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i) {
          if (rng() & 1u) s.push_back(i);
        }
        if (s.empty()) s.push_back(rng() % n);
        return s;
      };
      const std::vector<std::size_t> sa = draw_support();
      const std::vector<std::size_t> sb = t % 5 == 0 ? sa : draw_support();
      double za = 0.0;
      double zb = 0.0;
      for (std::size_t i : sa) za += l.g[i];
      for (std::size_t i : sb) zb += l.g[i];
      const WeightedSpectrum fa = equilibrium(l.g, rel.bath(), sa);
      const WeightedSpectrum fb = equilibrium(l.g, rel.bath(), sb);
      dis += precedes_flat(rel, za, zb) != precedes(rel, fa, fb);
      dis += precedes_flat(rel, zb, za) != precedes(rel, fb, fa);
    }
    ok = ok && dis == 0;
    detail += std::string(to_string(tag)) + " " + std::to_string(dis) + " ";
  }
  report(6, "flat-state criterion agrees with precedes", ok, detail + "disagreements of 1000 each");
}

// 7. Randomized axiom suites.
void criterion_axioms() {
  bool ok = true;
  std::string detail;
  for (OrderTag tag : kTags) {
    TrialConfig cfg;
    cfg.tag = tag;
    cfg.trials = 1000;
    AxiomReport r = run_axiom_suite(cfg);
    r.merge(run_lemma1_suite(cfg));
    AxiomReport again = run_axiom_suite(cfg);
    again.merge(run_lemma1_suite(cfg));
    bool same = r.stats.size() == again.stats.size();
    for (std::size_t i = 0; same && i < r.stats.size(); ++i) same = r.stats[i].digest == again.stats[i].digest;
    bool counts = true;
    for (const AxiomStat& s : r.stats) counts = counts && s.checked == 1000;
    const double cov = std::min(r.find("lemma1_sufficient")->coverage(),
                                r.find("lemma1_necessary")->coverage());
    ok = ok && r.clean() && same && counts && cov >= kMinCoverage && r.stats.size() == 11;
    detail += std::string(to_string(tag)) + " v=" + std::to_string(r.total_violations()) +
              " cov=" + fmt("%.2f", cov) + (same ? "" : " NONDETERMINISTIC") + " ";
  }
  report(7, "axiom suites, 1000 trials per check per tag", ok, detail);
}

// 8. Witness construction and mutation self-test.
void criterion_witness() {
  std::mt19937_64 rng(1008);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 15;
    const std::vector<double> p = oracle::random_simplex(rng, n);
    const std::vector<double> q = t_chain(rng, p);
    const Spectrum ps = spectrum_from_probs(p);
    const Spectrum qs = spectrum_from_probs(q);
    const Witness w = build_witness(ps, qs);
    bool good = w.steps.size() <= w.dim - 1 && w.product.rows() == w.dim;
    for (std::size_t i = 0; good && i < w.dim; ++i) {
      double row = 0.0;
      double col = 0.0;
      double img = 0.0;
      for (std::size_t j = 0; j < w.dim; ++j) {
        row += w.product(i, j);
        col += w.product(j, i);
        good = good && w.product(i, j) >= -kWitnessTol;
        img += w.product(i, j) * (j < ps.dim() ? ps[j] : 0.0);
      }
      const double target = i < qs.dim() ? qs[i] : 0.0;
      const double e = std::max({std::abs(row - 1.0), std::abs(col - 1.0), std::abs(img - target)});
      worst = std::max(worst, e);
      good = good && e <= kWitnessTol;
    }
    bad += !good;
  }
  // Mutations: a corrupted comparator must trip the axiom harness, and a
  // perturbed witness must be rejected.
  TrialConfig cfg;
  cfg.trials = 200;
  cfg.corrupt = true;
  const int caught = run_axiom_suite(cfg).total_violations();
  const Spectrum p = spectrum_from_probs(std::vector<double>{0.6, 0.3, 0.1});
  const Spectrum q = spectrum_from_probs(std::vector<double>{0.4, 0.35, 0.25});
  Witness w = build_witness(p, q);
  w.product(0, 0) -= 1e-6;
  w.product(0, 1) += 1e-6;
  const bool rejected = !verify_witness(w, p, q);
  report(8, "witness chains and mutation self-test", bad == 0 && caught > 0 && rejected,
         std::to_string(bad) + " bad of 300, max err " + fmt("%.3g", worst) +
             " (tol 1e-12), corrupted comparator violations " + std::to_string(caught) +
             ", perturbed witness " + (rejected ? "rejected" : "ACCEPTED"));
}

// 9. Monotones along the order.
void criterion_monotone() {
  std::mt19937_64 rng(1009);
  const double alphas[] = {0.0, 0.5, 1.0, 2.0, kAlphaInfinity};
  int pairs_m = 0;
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng() % 10;
    const std::vector<double> a = sparse_simplex(rng, n);
    const std::vector<double> b = t % 2 ? t_chain(rng, a) : oracle::random_simplex(rng, n);
    const Spectrum sa = spectrum_from_probs(a);
    const Spectrum sb = spectrum_from_probs(b);
    const Comparison c = comparable(make_relation(OrderTag::M), unit(a), unit(b));
    if (c == Comparison::Incomparable) continue;
    const Spectrum& lo = c == Comparison::BBeforeA ? sb : sa;
    const Spectrum& hi = c == Comparison::BBeforeA ? sa : sb;
    ++pairs_m;
    for (double al : alphas) bad += renyi(hi, al) < renyi(lo, al) - kMonotoneTol;
  }
  int pairs_t = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng() % 10;
    const Labels l = draw_labels(rng, OrderTag::T, n);
    const std::vector<double> a = sparse_simplex(rng, n);
    const std::vector<double> b = t % 2 ? toward_equilibrium(rng, a, l.g) : oracle::random_simplex(rng, n);
    const Comparison c = comparable(make_relation(OrderTag::T, l.res), labeled(a, l), labeled(b, l));
    if (c == Comparison::Incomparable) continue;
    const LabeledState la = make_labeled_state(a, l.res);
    const LabeledState lb = make_labeled_state(b, l.res);
    const PotentialBounds fa = free_energies(la.spectrum, la.reservoir);
    const PotentialBounds fb = free_energies(lb.spectrum, lb.reservoir);
    const PotentialBounds& lo = c == Comparison::BBeforeA ? fb : fa;
    const PotentialBounds& hi = c == Comparison::BBeforeA ? fa : fb;
    ++pairs_t;
    bad += hi.lower > lo.lower + kMonotoneTol;
    bad += hi.upper > lo.upper + kMonotoneTol;
  }
  report(9, "H_alpha and F_alpha monotone along the order", bad == 0 && pairs_m > 300 && pairs_t > 300,
         std::to_string(bad) + " violations over " + std::to_string(pairs_m) + " M pairs and " +
             std::to_string(pairs_t) + " T pairs (tol 1e-12)");
}

// 10. Additivity over composition.
void criterion_additivity() {
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> a = sparse_simplex(rng, 2 + rng() % 7);
    const std::vector<double> b = sparse_simplex(rng, 2 + rng() % 7);
    const WeightedSpectrum x = unit(a);
    const WeightedSpectrum y = unit(b);
    const WeightedSpectrum xy = compose(x, y);
    const Spectrum s_xy = as_spectrum(xy);
    const Spectrum s_a = spectrum_from_probs(a);
    const Spectrum s_b = spectrum_from_probs(b);
    const double errs[] = {
        von_neumann(s_xy) - von_neumann(s_a) - von_neumann(s_b),
        h_min(s_xy) - h_min(s_a) - h_min(s_b),
        h_max(s_xy) - h_max(s_a) - h_max(s_b),
        oracle::shannon_bits(oracle::kron(a, b)) - oracle::shannon_bits(a) - oracle::shannon_bits(b),
        s_tilde_minus(xy, kBits).lambda_star - s_tilde_minus(x, kBits).lambda_star -
            s_tilde_minus(y, kBits).lambda_star,
        s_tilde_plus(xy, kBits).lambda_star - s_tilde_plus(x, kBits).lambda_star -
            s_tilde_plus(y, kBits).lambda_star};
    for (double e : errs) worst = std::max(worst, std::abs(e));
  }
  report(10, "additivity of H, H_min, H_max, S~-, S~+", worst <= kAdditiveTol,
         "max defect " + fmt("%.3g", worst) + " over 200 pairs (tol 1e-9)");
}

// 11. Hermitian eigensolver.
void criterion_eigen() {
  std::mt19937_64 rng(1011);
  std::normal_distribution<double> nd;
  double worst_res = 0.0;
  double worst_rot = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 16;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = nd(rng);
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = Complex(nd(rng), nd(rng));
        a(j, i) = std::conj(a(i, j));
      }
    }
    const detail::Eigensystem es = detail::jacobi_eigen(a);
    // Residual max |A - V diag(values) V^H| computed entrywise here.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex r = a(i, j);
        for (std::size_t k = 0; k < n; ++k) r -= es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
        worst_res = std::max(worst_res, std::abs(r));
      }
    }
    // Random unitary from a product of complex Givens rotations.
    ComplexMatrix u = ComplexMatrix::identity(n);
    for (int g = 0; n > 1 && g < static_cast<int>(3 * n); ++g) {
      const std::size_t p = rng() % n;
      std::size_t q = rng() % (n - 1);
      if (q >= p) ++q;
      const double th = uniform(rng, 0.0, 6.283185307179586);
      const Complex ph = std::polar(1.0, uniform(rng, 0.0, 6.283185307179586));
      for (std::size_t k = 0; k < n; ++k) {
        const Complex up = u(p, k);
        const Complex uq = u(q, k);
        u(p, k) = std::cos(th) * up - std::sin(th) * ph * uq;
        u(q, k) = std::sin(th) * std::conj(ph) * up + std::cos(th) * uq;
      }
    }
    ComplexMatrix ua(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) s += u(i, k) * a(k, l) * std::conj(u(j, l));
        }
        ua(i, j) = s;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex m = 0.5 * (ua(i, j) + std::conj(ua(j, i)));
        ua(i, j) = m;
        ua(j, i) = std::conj(m);
      }
      ua(i, i) = ua(i, i).real();
    }
    std::vector<double> v0 = es.values;
    std::vector<double> v1 = detail::jacobi_eigen(ua).values;
    std::sort(v0.begin(), v0.end());
    std::sort(v1.begin(), v1.end());
    for (std::size_t i = 0; i < n; ++i) worst_rot = std::max(worst_rot, std::abs(v0[i] - v1[i]));
  }
  report(11, "Jacobi eigensolver residual and unitary invariance",
         worst_res <= kResidualTol && worst_rot <= kRotationTol,
         "max residual " + fmt("%.3g", worst_res) + " (tol 1e-10), max rotation drift " +
             fmt("%.3g", worst_rot) + " (tol 1e-9)");
}

// 12. Label reductions give identical verdicts.
void criterion_reductions() {
  const auto digests = [](OrderTag tag, LabelModel labels) {
    TrialConfig cfg;
    cfg.tag = tag;
    cfg.trials = 200;
    cfg.labels = labels;
    AxiomReport r = run_axiom_suite(cfg);
    r.merge(run_lemma1_suite(cfg));
    std::vector<std::uint64_t> out;
    for (const AxiomStat& s : r.stats) out.push_back(s.digest);
    return out;
  };
  LabelModel constant_e;
  constant_e.trivial = true;
  LabelModel zero_mu;
  zero_mu.mu = 0.0;
  LabelModel zero_gamma;
  zero_gamma.gamma = 0.0;
  const bool t_m = digests(OrderTag::T, constant_e) == digests(OrderTag::M, {});
  const bool nt_t = digests(OrderTag::NT, zero_mu) == digests(OrderTag::T, {});
  const bool j_m = digests(OrderTag::J, zero_gamma) == digests(OrderTag::M, {});

  // Direct pairwise agreement on the same spectra.
  std::mt19937_64 rng(1012);
  int dis = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const std::vector<double> a = oracle::random_simplex(rng, n);
    const std::vector<double> b = t % 2 ? t_chain(rng, a) : oracle::random_simplex(rng, n);
    Labels nt = draw_labels(rng, OrderTag::NT, n);
    const bool m = precedes(make_relation(OrderTag::M), unit(a), unit(b));
    Labels tc = draw_labels(rng, OrderTag::T, n);
    std::fill(tc.res.energies.begin(), tc.res.energies.end(), tc.res.energies[0]);
    dis += precedes(make_relation(OrderTag::T, tc.res), labeled(a, tc), labeled(b, tc)) != m;
    Labels jz = draw_labels(rng, OrderTag::J, n);
    jz.res.gamma = 0.0;
    dis += precedes(make_relation(OrderTag::J, jz.res), labeled(a, jz), labeled(b, jz)) != m;
    Labels th = nt;
    th.res.kind = ReservoirKind::Heat;
    th.res.particles.clear();
    nt.res.mu = 0.0;
    dis += precedes(make_relation(OrderTag::NT, nt.res), labeled(a, nt), labeled(b, nt)) !=
           precedes(make_relation(OrderTag::T, th.res), labeled(a, th), labeled(b, th));
  }
  report(12, "reductions T(const E)=M, NT(mu=0)=T, J(gamma=0)=M", t_m && nt_t && j_m && dis == 0,
         std::string("digests ") + (t_m ? "=" : "!=") + "/" + (nt_t ? "=" : "!=") + "/" +
             (j_m ? "=" : "!=") + " over 200 trials, " + std::to_string(dis) +
             " pairwise disagreements of 600");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_noisy();
  criterion_qubit();
  criterion_thermal();
  criterion_collapse();
  criterion_oracle();
  criterion_flat();
  criterion_axioms();
  criterion_witness();
  criterion_monotone();
  criterion_additivity();
  criterion_eigen();
  criterion_reductions();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 12 criteria failed (%.1f s)\n", g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
