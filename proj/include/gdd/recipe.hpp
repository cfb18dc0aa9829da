#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gdd/design.hpp"
#include "gdd/error.hpp"
#include "gdd/library.hpp"

namespace gdd {

// One parsed recipe expression. Lists hold an operator name followed by
// arguments; an argument written `name=value` carries its name in `key`.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::string key;
};

// Throws SyntaxError. `;` and `#` start comments.
SExpr parse_recipe(std::string_view text);
std::string to_string(const SExpr& e);

struct Provenance {
  std::string step;    // operator or leaf, with its scalar arguments
  std::string result;  // type of the design produced
  std::string source;  // where a leaf came from
  std::size_t blocks = 0;
  std::vector<Provenance> children;
};

std::string format_provenance(const Provenance& p);

struct RecipeResult {
  Design design;
  Provenance provenance;
};

// Failure inside a recipe; `path()` names the chain of operators from the
// root to the failing node.
class RecipeError : public Error {
 public:
  RecipeError(ErrorKind kind, std::string path, const std::string& detail);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct RecipeOptions {
  std::filesystem::path base_dir = ".";  // for `file` leaves
};

// Operators:
//   (wfc_inflate MASTER weights=W [fill=D]...)
//   (wfc_inflate_dgdd MASTER h=H u=U DGDD)
//   (fill_holes DGDD m=M [fill=D]...)      (adjoin DGDD m=M [fill=D]...)
//   (fill_group DESIGN group=I FILLER)     (inflate_uniform DESIGN r=R [fill=D]...)
//   (remove_parallel_class RGDD I)
// Leaves: (td k q) (rgdd k q) (catalog NAME) (search TYPE) (file PATH).
// Weights: `const N`, (list w...), (group-weights group=G values=(d...) rest=H),
// (set rest=N P=W ...).
RecipeResult run_recipe(const SExpr& recipe, DesignLibrary& lib, const RecipeOptions& options = {});
RecipeResult run_recipe_file(const std::filesystem::path& path, DesignLibrary& lib);

}  // namespace gdd
