#pragma once

#include <string>
#include <vector>

#include "umbrella/analysis.hpp"
#include "umbrella/numerics.hpp"

namespace umbrella {

/// Phase-portrait sketch: sampled orbit polylines in grey, separatrix
/// curves highlighted, axes dotted. The viewport is the epsilon box.
std::string portrait_svg(const PolyField& field, const Portrait& portrait, double epsilon,
                         uint64_t seed);

}  // namespace umbrella
