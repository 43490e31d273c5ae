#pragma once

#include <cstddef>

namespace nbtower {

inline constexpr std::size_t kDefaultMaxDegree = 256;

/// Desk-scale bound on absolute degrees. NBTOWER_MAX_DEGREE overrides the
/// default of 256; unparsable or zero values fall back to the default.
std::size_t max_degree();

}  // namespace nbtower
