#pragma once

#include <string>

#include "minkit/states.hpp"

namespace minkit {

/// State file schema:
///   {"m": int, "n": int, "matrix": [[[re, im], ...], ...]}
/// with one inner array of [re, im] pairs per matrix row. Loading validates
/// the full density-matrix contract and throws ParseError on malformed
/// input or the specific violated invariant otherwise.
DensityMatrix load_state(const std::string& path);
void save_state(const std::string& path, const DensityMatrix& rho);

std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);

}  // namespace minkit
