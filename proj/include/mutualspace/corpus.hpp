#pragma once

#include <cstdint>
#include <string>

#include "mutualspace/evaluation.hpp"

namespace mutualspace::corpus {

// The bundled evaluation corpus: four meeting rooms (one telepresence-style),
// five homes, and five offices, authored to the published room inventory.
// The seed is accepted for interface stability; the corpus is fixed.
eval::Corpus builtin_corpus(std::uint64_t seed = 0);

// Writes one "<id>.json" per plan; deterministic bytes for a given seed.
void write_corpus(const std::string& dir, std::uint64_t seed = 0);

}  // namespace mutualspace::corpus
