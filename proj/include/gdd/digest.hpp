#pragma once

#include <string>
#include <string_view>

#include "gdd/design.hpp"

namespace gdd {

std::string sha256_hex(std::string_view data);

// SHA-256 of the canonical .gddx serialization.
std::string design_digest(const Design& design);

}  // namespace gdd
