#include "lytherm/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <tuple>

#include "lytherm/error.hpp"

namespace lytherm::io {

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const nlohmann::json& a = doc.at(key);
  if (!a.is_array()) throw Error(ErrorCode::InvalidInput, std::string(key) + " must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) {
      throw Error(ErrorCode::InvalidInput, std::string(key) + " must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> number_grid(const nlohmann::json& g, const char* key) {
  if (!g.is_array()) throw Error(ErrorCode::InvalidInput, std::string(key) + " must be a 2-d array");
  std::vector<std::vector<double>> out;
  for (const auto& row : g) {
    if (!row.is_array()) throw Error(ErrorCode::InvalidInput, std::string(key) + " rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidInput, std::string(key) + " must hold numbers");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void check_length(const std::vector<double>& labels, std::size_t dim, const char* name) {
  if (!labels.empty() && labels.size() != dim) {
    throw Error(ErrorCode::LengthMismatch,
                std::string(name) + " length does not match the state dimension");
  }
}

}  // namespace

DensityMatrix parse_matrix(const nlohmann::json& m) {
  if (!m.is_object() || !m.contains("re")) {
    throw Error(ErrorCode::InvalidInput, "matrix needs a 're' component");
  }
  const auto re = number_grid(m.at("re"), "re");
  const auto im = m.contains("im") ? number_grid(m.at("im"), "im")
                                   : std::vector<std::vector<double>>{};
  const std::size_t n = re.size();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (re[i].size() != n || (!im.empty() && (im.size() != n || im[i].size() != n))) {
      throw Error(ErrorCode::InvalidInput, "matrix must be square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = Complex(re[i][j], im.empty() ? 0.0 : im[i][j]);
    }
  }
  return DensityMatrix::from_entries(std::move(a));
}

LabeledState parse_state(const nlohmann::json& doc, const ReservoirSpec& bath,
                         bool decohere_first) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "state must be a JSON object");
  ReservoirSpec res = bath;
  res.energies = number_array(doc, "energies");
  res.particles = number_array(doc, "particles");
  res.jz = number_array(doc, "jz");

  if (doc.contains("spectrum")) {
    const std::vector<double> probs = number_array(doc, "spectrum");
    check_length(res.energies, probs.size(), "energies");
    check_length(res.particles, probs.size(), "particles");
    check_length(res.jz, probs.size(), "jz");
    return make_labeled_state(probs, std::move(res));
  }
  if (!doc.contains("matrix")) {
    throw Error(ErrorCode::InvalidInput, "state needs 'spectrum' or 'matrix'");
  }
  DensityMatrix rho = parse_matrix(doc.at("matrix"));
  const std::size_t n = rho.dim();
  check_length(res.energies, n, "energies");
  check_length(res.particles, n, "particles");
  check_length(res.jz, n, "jz");
  if (res.energies.empty() && res.particles.empty() && res.jz.empty()) {
    const Spectrum s = eigen_spectrum(rho);
    return make_labeled_state(s.probs(), std::move(res));
  }

  // Sector key per basis vector: the tuple of labels present.
  auto label = [](const std::vector<double>& v, std::size_t i) {
    return v.empty() ? 0.0 : v[i];
  };
  using Key = std::tuple<double, double, double>;
  std::map<Key, std::vector<std::size_t>> sectors;
  std::vector<double> sector_id(n);
  for (std::size_t i = 0; i < n; ++i) {
    sectors[{label(res.energies, i), label(res.particles, i), label(res.jz, i)}].push_back(i);
  }
  {
    double id = 0.0;
    for (const auto& [key, members] : sectors) {
      for (std::size_t i : members) sector_id[i] = id;
      id += 1.0;
    }
  }
  if (decohere_first) {
    rho = decohere(rho, sector_id);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (sector_id[i] != sector_id[j] &&
            std::abs(rho.entries()(i, j)) > kHermitianTolerance) {
          throw Error(ErrorCode::InvalidInput,
                      "matrix has coherences between label sectors; decohere explicitly");
        }
      }
    }
  }

  std::vector<double> probs;
  ReservoirSpec out = res;
  out.energies.clear();
  out.particles.clear();
  out.jz.clear();
  for (const auto& [key, members] : sectors) {
    const std::size_t m = members.size();
    ComplexMatrix block(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) block(a, b) = rho.entries()(members[a], members[b]);
    }
    const detail::Eigensystem es = detail::jacobi_eigen(block);
    for (double ev : es.values) {
      probs.push_back(ev <= kZeroThreshold ? 0.0 : ev);
      if (!res.energies.empty()) out.energies.push_back(std::get<0>(key));
      if (!res.particles.empty()) out.particles.push_back(std::get<1>(key));
      if (!res.jz.empty()) out.jz.push_back(std::get<2>(key));
    }
  }
  return make_labeled_state(probs, std::move(out));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace lytherm::io
