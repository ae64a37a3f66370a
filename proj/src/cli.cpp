#include "lytherm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lytherm/axioms.hpp"
#include "lytherm/certificates.hpp"
#include "lytherm/entropy.hpp"
#include "lytherm/error.hpp"
#include "lytherm/io.hpp"
#include "lytherm/ly.hpp"
#include "lytherm/orders.hpp"

namespace lytherm::cli {

namespace {

using nlohmann::json;
using io::round12;

// Usage problems detected after parsing (missing bath parameters etc).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<double> beta;
  std::optional<double> mu;
  std::optional<double> gamma;
  double kb = 1.0;
  std::uint64_t seed = 42;
  std::string output;
};

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ReservoirSpec bath_params(const Globals& g, OrderTag tag) {
  ReservoirSpec r;
  r.kind = kind_for(tag);
  r.k_b = g.kb;
  if (tag == OrderTag::T || tag == OrderTag::NT) {
    if (!g.beta) throw UsageError("--beta is required for relation " + std::string(to_string(tag)));
    r.beta = *g.beta;
  }
  if (tag == OrderTag::NT) r.mu = g.mu.value_or(0.0);
  if (tag == OrderTag::J) {
    if (!g.gamma) throw UsageError("--gamma is required for relation j");
    r.gamma = *g.gamma;
  }
  return r;
}

LabeledState load(const std::string& path, const ReservoirSpec& bath, bool decohere) {
  return io::parse_state(io::read_json_file(path), bath, decohere);
}

json ly_json(const LyResult& r) {
  return {{"lambda_star", round12(r.lambda_star)},
          {"closed_form", round12(r.closed_form)},
          {"search_iterations", r.search_iterations},
          {"residual", round12(r.residual)}};
}

json bounds_json(const PotentialBounds& b, const char* lo, const char* hi, const char* avg) {
  return {{lo, round12(b.lower)},
          {hi, round12(b.upper)},
          {avg, round12(b.average)},
          {"p_max_res", round12(b.max_ratio)},
          {"z_support", round12(b.support_weight)},
          {"z", round12(b.partition)},
          {"d0", round12(b.d0)},
          {"dinf", round12(b.dinf)}};
}

// Flattens a JSON object into "key value" rows.
void print_table(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_table(out, *it, key);
    } else if (it->is_number_float()) {
      out << std::left << std::setw(28) << key << fmt12(it->get<double>()) << '\n';
    } else {
      out << std::left << std::setw(28) << key << it->dump() << '\n';
    }
  }
}

void emit(std::ostream& out, const Globals& g, const json& j) {
  if (g.output == "table") {
    print_table(out, j);
  } else {
    out << j.dump() << '\n';
  }
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "infinity") {
      out.push_back(kAlphaInfinity);
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad --alpha entry '" + item + "'");
    }
  }
  return out;
}

std::string alpha_key(double a) { return std::isinf(a) ? "inf" : fmt12(a); }

int cmd_entropy(const Globals& g, const std::string& state, const std::string& alphas,
                bool decohere, std::ostream& out) {
  ReservoirSpec bath;
  bath.k_b = g.kb;
  bath.beta = g.beta.value_or(1.0);
  bath.mu = g.mu.value_or(0.0);
  bath.gamma = g.gamma.value_or(0.0);
  LabeledState st = load(state, bath, decohere);
  // Reservoir quantities need their bath parameter on the command line.
  if (!g.beta) {
    st.reservoir.energies.clear();
    st.reservoir.particles.clear();
  }
  if (!g.gamma) st.reservoir.jz.clear();
  const std::vector<double> alpha = alphas.empty() ? std::vector<double>{} : parse_alpha_list(alphas);
  const EntropyReport r = entropy_report(st, alpha);
  json j = {{"h", round12(r.h)}, {"h_min", round12(r.h_min)}, {"h_max", round12(r.h_max)}};
  json renyi = json::object();
  for (const auto& [a, v] : r.renyi) renyi[alpha_key(a)] = round12(v);
  j["renyi"] = renyi;
  if (r.free_energy) j["free_energy"] = bounds_json(*r.free_energy, "f_min", "f_max", "f");
  if (r.grand) j["grand"] = bounds_json(*r.grand, "omega_min", "omega_max", "omega");
  if (r.j) {
    j["j"] = {{"sj_minus", round12(r.j->sj_minus)},
              {"sj_plus", round12(r.j->sj_plus)},
              {"s_j", round12(r.j->s_j)},
              {"z_j", round12(r.j->partition)}};
  }
  emit(out, g, j);
  return 0;
}

int cmd_order(const Globals& g, const std::string& rel_text, const std::string& from,
              const std::string& to, bool decohere, std::ostream& out) {
  const OrderTag tag = parse_order_tag(rel_text);
  const Relation rel = make_relation(tag, bath_params(g, tag));
  const WeightedSpectrum a = weighted(load(from, rel.reservoir, decohere));
  const WeightedSpectrum b = weighted(load(to, rel.reservoir, decohere));
  const Comparison c = comparable(rel, a, b);
  const bool fwd = c == Comparison::ABeforeB || c == Comparison::Equivalent;
  const bool rev = c == Comparison::BBeforeA || c == Comparison::Equivalent;
  emit(out, g, {{"precedes", fwd}, {"reverse", rev}, {"class", std::string(to_string(c))}});
  return 0;
}

std::vector<double> level_weights(const LabeledState& st) {
  return st.reservoir.weights(st.spectrum.dim());
}

int cmd_ly(const Globals& g, const std::string& state, const std::string& rel_text,
           const std::string& gauge_text, const std::string& which, bool decohere,
           std::ostream& out) {
  const OrderTag tag = parse_order_tag(rel_text);
  const Relation rel = make_relation(tag, bath_params(g, tag));
  const LabeledState st = load(state, rel.reservoir, decohere);
  const WeightedSpectrum x = weighted(st);
  std::optional<Gauge> gauge;
  if (!gauge_text.empty()) {
    const auto comma = gauge_text.find(',');
    if (comma == std::string::npos) throw UsageError("--gauge expects Z0,Z1");
    double z0 = 0.0;
    double z1 = 0.0;
    try {
      z0 = std::stod(gauge_text.substr(0, comma));
      z1 = std::stod(gauge_text.substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("--gauge expects two numbers");
    }
    gauge.emplace(z0, z1, tag == OrderTag::M ? LogBase::Log2 : LogBase::Ln);
  } else {
    gauge = default_gauge(tag, level_weights(st));
  }
  LyResult r;
  if (which == "minus") {
    r = s_tilde_minus(x, *gauge);
  } else if (which == "plus") {
    r = s_tilde_plus(x, *gauge);
  } else {
    r = s_equilibrium(x, *gauge);
  }
  json j = ly_json(r);
  j["which"] = which;
  j["mapped"] = round12(map_to_potential(rel, *gauge, r.lambda_star));
  j["gauge"] = {{"z0", round12(gauge->z0())},
                {"z1", round12(gauge->z1())},
                {"base", gauge->base() == LogBase::Log2 ? "log2" : "ln"}};
  emit(out, g, j);
  return 0;
}

int cmd_verify(const Globals& g, const std::string& rel_text, int trials, int dim_max,
               std::ostream& out) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (dim_max < 2 || dim_max > 64) throw UsageError("--dim-max must lie in [2, 64]");
  const OrderTag tag = parse_order_tag(rel_text);
  LabelModel model;
  model.beta = g.beta;
  model.mu = g.mu;
  model.gamma = g.gamma;
  int passed = 0;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    StateSampler s(tag, model, sub_seed(g.seed, 100, static_cast<std::uint64_t>(t)));
    s.new_bath();
    const LabeledSpace sp = s.space(s.dim(2, static_cast<std::size_t>(dim_max)));
    const WeightedSpectrum x = t % 4 == 3 ? s.flat(sp) : sp.state(s.simplex(sp.dim()));
    const Relation rel = make_relation(tag, sp.reservoir);
    const PropositionReport rep = verify_proposition(x, rel, default_gauge(tag, sp.weights));
    worst = std::max({worst, rep.minus.residual, rep.plus.residual,
                      rep.equilibrium ? rep.equilibrium->residual : 0.0});
    if (rep.agree) ++passed;
  }
  const json j = {{"relation", std::string(to_string(tag))},
                  {"trials", trials},
                  {"passed", passed},
                  {"failed", trials - passed},
                  {"max_residual", round12(worst)},
                  {"tolerance", kAgreementTolerance}};
  emit(out, g, j);
  return passed == trials ? 0 : 1;
}

int cmd_witness(const Globals& g, const std::string& from, const std::string& to,
                bool decohere, std::ostream& out) {
  ReservoirSpec none;
  const Spectrum p = load(from, none, decohere).spectrum;
  const Spectrum q = load(to, none, decohere).spectrum;
  const Witness w = build_witness(p, q);
  json steps = json::array();
  for (const TTransform& t : w.steps) {
    steps.push_back({{"i", t.i}, {"j", t.j}, {"t", round12(t.t)}});
  }
  json product = json::array();
  for (std::size_t i = 0; i < w.dim; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < w.dim; ++j) row.push_back(round12(w.product(i, j)));
    product.push_back(row);
  }
  json j = {{"steps", steps}, {"product", product}, {"verified", verify_witness(w, p, q)}};
  if (g.output == "table") {
    out << "steps " << w.steps.size() << '\n';
    for (const TTransform& t : w.steps) {
      out << "  T(" << t.i << "," << t.j << ") t=" << fmt12(t.t) << '\n';
    }
    for (std::size_t i = 0; i < w.dim; ++i) {
      for (std::size_t jj = 0; jj < w.dim; ++jj) {
        out << (jj ? " " : "") << fmt12(w.product(i, jj));
      }
      out << '\n';
    }
  } else {
    out << j.dump() << '\n';
  }
  return 0;
}

json stat_json(const AxiomStat& s) {
  json j = {{"checked", s.checked},
            {"violations", s.violations},
            {"vacuous", s.vacuous},
            {"coverage", round12(s.coverage())}};
  j["first_counterexample"] =
      s.first_counterexample ? json::parse(*s.first_counterexample) : json(nullptr);
  return j;
}

int cmd_axioms(const Globals& g, const std::string& rel_text, int trials, int dim_max,
               bool self_test, std::ostream& out) {
  TrialConfig cfg;
  cfg.tag = parse_order_tag(rel_text);
  cfg.trials = trials;
  cfg.seed = g.seed;
  cfg.dim_max = dim_max;
  cfg.labels.beta = g.beta;
  cfg.labels.mu = g.mu;
  cfg.labels.gamma = g.gamma;
  cfg.corrupt = self_test;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  AxiomReport rep = run_axiom_suite(cfg);
  rep.merge(run_lemma1_suite(cfg));

  json checks = json::object();
  for (const AxiomStat& s : rep.stats) checks[s.name] = stat_json(s);
  const json j = {{"relation", std::string(to_string(cfg.tag))},
                  {"trials", trials},
                  {"seed", g.seed},
                  {"self_test", self_test},
                  {"violations", rep.total_violations()},
                  {"checks", checks}};
  if (g.output != "json") {
    out << std::left << std::setw(30) << "check" << std::setw(10) << "checked"
        << std::setw(10) << "vacuous" << "violations\n";
    for (const AxiomStat& s : rep.stats) {
      out << std::left << std::setw(30) << s.name << std::setw(10) << s.checked
          << std::setw(10) << s.vacuous << s.violations << '\n';
    }
  }
  if (g.output != "table") out << j.dump() << '\n';
  // In self-test mode the corrupted order must be caught.
  const bool ok = self_test ? rep.total_violations() > 0 : rep.clean();
  return ok ? 0 : 1;
}

int cmd_lorenz(const Globals& g, const std::string& state, const std::string& rel_text,
               bool decohere, std::ostream& out) {
  const OrderTag tag = parse_order_tag(rel_text);
  const Relation rel = make_relation(tag, bath_params(g, tag));
  const LorenzCurve curve = lorenz(weighted(load(state, rel.reservoir, decohere)));
  if (g.output == "csv") {
    out << "k,L\n";
    for (const LorenzPoint& p : curve.points()) out << fmt12(p.x) << ',' << fmt12(p.y) << '\n';
  } else if (g.output == "table") {
    for (const LorenzPoint& p : curve.points()) {
      out << std::left << std::setw(20) << fmt12(p.x) << fmt12(p.y) << '\n';
    }
  } else {
    json pts = json::array();
    for (const LorenzPoint& p : curve.points()) pts.push_back({round12(p.x), round12(p.y)});
    out << json{{"points", pts}}.dump() << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resource-theoretic orders, single-shot entropies and axiomatic entropy"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--beta", g.beta, "inverse temperature");
  app.add_option("--mu", g.mu, "chemical potential");
  app.add_option("--gamma", g.gamma, "angular-momentum field (hbar folded in)");
  app.add_option("--kb", g.kb, "Boltzmann constant")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--output", g.output, "json|table|csv")
      ->check(CLI::IsMember({"json", "table", "csv"}));

  std::string state, from, to, relation = "m", gauge, which = "minus", alphas;
  int trials = 1000;
  int dim_max = 8;
  bool decohere = false;
  bool self_test = false;

  auto* entropy = app.add_subcommand("entropy", "entropy and free-energy report");
  entropy->add_option("--state", state)->required();
  entropy->add_option("--alpha", alphas, "comma-separated Renyi orders (inf allowed)");
  entropy->add_flag("--decohere", decohere, "project matrix input onto label sectors");

  auto* order = app.add_subcommand("order", "compare two states");
  order->add_option("--relation", relation)->required();
  order->add_option("--from", from)->required();
  order->add_option("--to", to)->required();
  order->add_flag("--decohere", decohere);

  auto* ly = app.add_subcommand("ly", "axiomatic entropy by lambda search");
  ly->add_option("--state", state)->required();
  ly->add_option("--relation", relation)->required();
  ly->add_option("--gauge", gauge, "Z0,Z1 support weights of the reference states");
  ly->add_option("--which", which)->check(CLI::IsMember({"minus", "plus", "s"}));
  ly->add_flag("--decohere", decohere);

  auto* verify = app.add_subcommand("verify", "lambda search against closed forms");
  verify->add_option("--relation", relation)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--dim-max", dim_max);

  auto* witness = app.add_subcommand("witness", "T-transform chain for majorization");
  witness->add_option("--from", from)->required();
  witness->add_option("--to", to)->required();
  witness->add_flag("--decohere", decohere);

  auto* axioms = app.add_subcommand("axioms", "randomized axiom checks");
  axioms->add_option("--relation", relation)->required();
  axioms->add_option("--trials", trials);
  axioms->add_option("--dim-max", dim_max);
  axioms->add_flag("--self-test", self_test, "corrupt the order and expect violations");

  auto* lorenz_cmd = app.add_subcommand("lorenz", "Lorenz curve breakpoints");
  lorenz_cmd->add_option("--state", state)->required();
  lorenz_cmd->add_option("--relation", relation);
  lorenz_cmd->add_flag("--decohere", decohere);

  std::vector<std::string> storage{"lytherm"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (*entropy) return cmd_entropy(g, state, alphas, decohere, out);
    if (*order) return cmd_order(g, relation, from, to, decohere, out);
    if (*ly) return cmd_ly(g, state, relation, gauge, which, decohere, out);
    if (*verify) {
      if (verify->count("--dim-max") == 0) dim_max = 16;
      return cmd_verify(g, relation, trials, dim_max, out);
    }
    if (*witness) return cmd_witness(g, from, to, decohere, out);
    if (*axioms) return cmd_axioms(g, relation, trials, dim_max, self_test, out);
    if (*lorenz_cmd) return cmd_lorenz(g, state, relation, decohere, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    json j = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (e.index()) j["index"] = *e.index();
    err << j.dump() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lytherm::cli
