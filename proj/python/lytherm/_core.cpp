#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lytherm/axioms.hpp"
#include "lytherm/certificates.hpp"
#include "lytherm/entropy.hpp"
#include "lytherm/error.hpp"
#include "lytherm/hermitian.hpp"
#include "lytherm/ly.hpp"
#include "lytherm/orders.hpp"

namespace py = pybind11;
using namespace lytherm;

namespace {

using Labels = std::optional<std::vector<double>>;

// Labeled state from python arguments; labels follow the caller's order.
LabeledState labeled(const std::vector<double>& probs, const std::string& relation,
                     double beta, double mu, double gamma, double k_b,
                     const Labels& energies, const Labels& particles, const Labels& jz) {
  ReservoirSpec r;
  r.kind = kind_for(parse_order_tag(relation));
  r.beta = beta;
  r.mu = mu;
  r.gamma = gamma;
  r.k_b = k_b;
  if (energies) r.energies = *energies;
  if (particles) r.particles = *particles;
  if (jz) r.jz = *jz;
  return make_labeled_state(probs, std::move(r));
}

Relation relation_of(const LabeledState& s, const std::string& relation) {
  return make_relation(parse_order_tag(relation), s.reservoir);
}

py::dict ly_dict(const LyResult& r) {
  py::dict d;
  d["lambda_star"] = r.lambda_star;
  d["closed_form"] = r.closed_form;
  d["search_iterations"] = r.search_iterations;
  d["residual"] = r.residual;
  return d;
}

py::dict stat_dict(const AxiomStat& s) {
  py::dict d;
  d["checked"] = s.checked;
  d["violations"] = s.violations;
  d["vacuous"] = s.vacuous;
  d["coverage"] = s.coverage();
  d["digest"] = s.digest;
  d["first_counterexample"] = s.first_counterexample;
  return d;
}

#define LABEL_ARGS                                                            \
  py::arg("relation") = "m", py::arg("beta") = 1.0, py::arg("mu") = 0.0,      \
  py::arg("gamma") = 0.0, py::arg("k_b") = 1.0, py::arg("energies") = py::none(), \
  py::arg("particles") = py::none(), py::arg("jz") = py::none()

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Order relations, single-shot entropies and axiomatic entropy searches";

  // Carries the error code name and the offending index as attributes.
  static PyObject* error_type =
      PyErr_NewException("lytherm._core.LythermError", PyExc_ValueError, nullptr);
  m.attr("LythermError") = py::reinterpret_borrow<py::object>(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("index") = e.index() ? py::cast(*e.index()) : py::none();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("entropy",
        [](const std::vector<double>& probs, const std::vector<double>& alphas) {
          const Spectrum s = spectrum_from_probs(probs);
          py::dict d;
          d["h"] = von_neumann(s);
          d["h_min"] = h_min(s);
          d["h_max"] = h_max(s);
          py::dict rd;
          for (double a : alphas) rd[py::float_(a)] = renyi(s, a);
          d["renyi"] = rd;
          return d;
        },
        py::arg("probs"), py::arg("alphas") = std::vector<double>{},
        "Von Neumann, min-, max- and Renyi entropies in bits.");

  m.def("free_energies",
        [](const std::vector<double>& probs, const std::vector<double>& energies,
           double beta, double k_b) {
          const LabeledState st = labeled(probs, "t", beta, 0, 0, k_b, energies,
                                          std::nullopt, std::nullopt);
          const PotentialBounds b = free_energies(st.spectrum, st.reservoir);
          py::dict d;
          d["f_min"] = b.lower;
          d["f_max"] = b.upper;
          d["f"] = b.average;
          d["z"] = b.partition;
          return d;
        },
        py::arg("probs"), py::arg("energies"), py::arg("beta"), py::arg("k_b") = 1.0);

  m.def("lorenz",
        [](const std::vector<double>& probs, const std::string& relation, double beta,
           double mu, double gamma, double k_b, const Labels& e, const Labels& n,
           const Labels& jz) {
          const LorenzCurve c =
              lorenz(weighted(labeled(probs, relation, beta, mu, gamma, k_b, e, n, jz)));
          std::vector<std::pair<double, double>> pts;
          for (const LorenzPoint& p : c.points()) pts.emplace_back(p.x, p.y);
          return pts;
        },
        py::arg("probs"), LABEL_ARGS, "Lorenz curve breakpoints (x, y).");

  m.def("precedes",
        [](const std::vector<double>& a, const std::vector<double>& b,
           const std::string& relation, double beta, double mu, double gamma,
           double k_b, const Labels& e, const Labels& n, const Labels& jz) {
          const LabeledState sa = labeled(a, relation, beta, mu, gamma, k_b, e, n, jz);
          const LabeledState sb = labeled(b, relation, beta, mu, gamma, k_b, e, n, jz);
          return precedes(relation_of(sa, relation), weighted(sa), weighted(sb));
        },
        py::arg("a"), py::arg("b"), LABEL_ARGS,
        "True when a can be transformed into b. Both share the same labels.");

  m.def("compare",
        [](const std::vector<double>& a, const std::vector<double>& b,
           const std::string& relation, double beta, double mu, double gamma,
           double k_b, const Labels& e, const Labels& n, const Labels& jz) {
          const LabeledState sa = labeled(a, relation, beta, mu, gamma, k_b, e, n, jz);
          const LabeledState sb = labeled(b, relation, beta, mu, gamma, k_b, e, n, jz);
          return std::string(
              to_string(comparable(relation_of(sa, relation), weighted(sa), weighted(sb))));
        },
        py::arg("a"), py::arg("b"), LABEL_ARGS);

  auto ly = [](bool minus) {
    return [minus](const std::vector<double>& probs, const std::string& relation,
                   double beta, double mu, double gamma, double k_b, const Labels& e,
                   const Labels& n, const Labels& jz,
                   std::optional<std::pair<double, double>> gauge) {
      const LabeledState st = labeled(probs, relation, beta, mu, gamma, k_b, e, n, jz);
      const OrderTag tag = parse_order_tag(relation);
      const Gauge g = gauge ? Gauge(gauge->first, gauge->second,
                                    tag == OrderTag::M ? LogBase::Log2 : LogBase::Ln)
                            : default_gauge(tag, st.reservoir.weights(st.spectrum.dim()));
      const WeightedSpectrum x = weighted(st);
      return ly_dict(minus ? s_tilde_minus(x, g) : s_tilde_plus(x, g));
    };
  };
  m.def("s_tilde_minus", ly(true), py::arg("probs"), LABEL_ARGS,
        py::arg("gauge") = py::none(), "Lambda search for S~_-.");
  m.def("s_tilde_plus", ly(false), py::arg("probs"), LABEL_ARGS,
        py::arg("gauge") = py::none(), "Lambda search for S~_+.");

  m.def("build_witness",
        [](const std::vector<double>& p, const std::vector<double>& q) {
          const Spectrum sp = spectrum_from_probs(p);
          const Spectrum sq = spectrum_from_probs(q);
          const Witness w = build_witness(sp, sq);
          py::list steps;
          for (const TTransform& t : w.steps) steps.append(py::make_tuple(t.i, t.j, t.t));
          std::vector<std::vector<double>> product(w.dim, std::vector<double>(w.dim));
          for (std::size_t i = 0; i < w.dim; ++i) {
            for (std::size_t j = 0; j < w.dim; ++j) product[i][j] = w.product(i, j);
          }
          py::dict d;
          d["steps"] = steps;
          d["product"] = product;
          d["verified"] = verify_witness(w, sp, sq);
          return d;
        },
        py::arg("source"), py::arg("target"),
        "T-transform chain for sorted source and target spectra.");

  m.def("eigen_spectrum",
        [](const std::vector<std::vector<Complex>>& rows) {
          const std::size_t n = rows.size();
          ComplexMatrix a(n, n);
          for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) {
              throw Error(ErrorCode::InvalidInput, "matrix must be square");
            }
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rows[i][j];
          }
          const Spectrum s = eigen_spectrum(DensityMatrix::from_entries(std::move(a)));
          return std::vector<double>(s.probs().begin(), s.probs().end());
        },
        py::arg("rho"), "Eigenvalues of a density matrix, descending.");

  m.def("run_axioms",
        [](const std::string& relation, int trials, std::uint64_t seed, int dim_max,
           std::optional<double> beta, std::optional<double> mu,
           std::optional<double> gamma, bool corrupt) {
          TrialConfig cfg;
          cfg.tag = parse_order_tag(relation);
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.dim_max = dim_max;
          cfg.labels.beta = beta;
          cfg.labels.mu = mu;
          cfg.labels.gamma = gamma;
          cfg.corrupt = corrupt;
          cfg.validate();
          AxiomReport rep;
          {
            py::gil_scoped_release release;
            rep = run_axiom_suite(cfg);
            rep.merge(run_lemma1_suite(cfg));
          }
          py::dict d;
          for (const AxiomStat& s : rep.stats) d[py::str(s.name)] = stat_dict(s);
          return d;
        },
        py::arg("relation") = "m", py::arg("trials") = 1000, py::arg("seed") = 42,
        py::arg("dim_max") = 8, py::arg("beta") = py::none(), py::arg("mu") = py::none(),
        py::arg("gamma") = py::none(), py::arg("corrupt") = false,
        "Randomized axiom checks plus the entropy-bound conditions.");
}
