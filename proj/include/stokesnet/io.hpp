#pragma once

#include <string>
#include <vector>

#include "stokesnet/network.hpp"

namespace stokesnet {

/// Component definition file (JSON). Unknown keys are rejected; identical
/// files produce bit-identical geometries.
SkeletonSpec parse_component_json(const std::string& text,
                                  const std::string& filename);
SkeletonSpec read_component_file(const std::string& path);

NetworkSpec parse_network_json(const std::string& text,
                               const std::string& filename);
NetworkSpec read_network_file(const std::string& path);

/// Scattering library file: matrix entries are serialized as decimal strings
/// with 17 significant digits and round-trip bit-exactly.
void write_scattering_library(const std::string& path,
                              const std::vector<ScatteringMatrix>& entries);
std::vector<ScatteringMatrix> read_scattering_library(const std::string& path);

/// Full round-trip double formatting (%.17g).
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stokesnet
