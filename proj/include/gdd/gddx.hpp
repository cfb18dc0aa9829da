#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gdd/design.hpp"

namespace gdd {

// Expanded-design text format (.gddx):
//
//   # comment
//   v=<int>
//   group: <points...>      one per group
//   block: <points...>      one per block
//   hole: <points...>       optional, DGDD
//   class: <block indices>  optional, RGDD
//
// Parsing is whitespace tolerant. Serialization is canonical: groups, holes
// and classes sorted internally and ordered by least element; blocks keep
// their order with points ascending.
std::string serialize_gddx(const Design& design);
Design parse_gddx(std::string_view text);

Design read_gddx(const std::filesystem::path& path);
void write_gddx(const Design& design, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gdd
