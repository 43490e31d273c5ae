#include "nbtower/config.hpp"

#include <cstdlib>
#include <string>

namespace nbtower {

std::size_t max_degree() {
  const char* env = std::getenv("NBTOWER_MAX_DEGREE");
  if (!env) return kDefaultMaxDegree;
  try {
    unsigned long v = std::stoul(env);
    return v == 0 ? kDefaultMaxDegree : static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    return kDefaultMaxDegree;
  }
}

}  // namespace nbtower
