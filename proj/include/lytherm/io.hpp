#pragma once

// JSON state files:
//   {"spectrum": [...], "energies": [...]?, "particles": [...]?, "jz": [...]?}
//   {"matrix": {"re": [[...]], "im": [[...]]}, "energies": [...]?, ...}
// Label arrays run parallel to the spectrum entries (or matrix basis).

#include <string>

#include "json.hpp"
#include "lytherm/hermitian.hpp"
#include "lytherm/spectra.hpp"

namespace lytherm::io {

DensityMatrix parse_matrix(const nlohmann::json& m);

/// Reads a state; `bath` supplies kind, beta, mu, gamma and k_B, the file
/// supplies labels. A labeled matrix must already be block diagonal in the
/// label sectors unless `decohere` is set, in which case it is projected
/// onto them first; each sector is diagonalized separately so its
/// eigenvalues keep the sector's labels. Throws Error (InvalidInput for
/// malformed documents).
LabeledState parse_state(const nlohmann::json& doc, const ReservoirSpec& bath,
                         bool decohere = false);

nlohmann::json read_json_file(const std::string& path);

/// Rounds to 12 significant digits so emitted JSON carries exactly those.
double round12(double v);

}  // namespace lytherm::io
