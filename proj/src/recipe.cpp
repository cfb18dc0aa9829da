#include "gdd/recipe.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gdd/algebra.hpp"
#include "gdd/blockgen.hpp"
#include "gdd/catalog.hpp"
#include "gdd/constructions.hpp"
#include "gdd/gddx.hpp"
#include "gdd/search.hpp"
#include "gdd/verify.hpp"

namespace gdd {

namespace fs = std::filesystem;

RecipeError::RecipeError(ErrorKind kind, std::string path, const std::string& detail)
    : Error(kind, "in " + path + ": " + detail), path_(std::move(path)) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) { tokenize(text); }

  SExpr parse_top() {
    if (tokens_.empty()) fail(ErrorKind::SyntaxError, "empty recipe");
    SExpr e = parse();
    if (pos_ != tokens_.size()) error("unexpected '" + tokens_[pos_].text + "' after the recipe");
    return e;
  }

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };

  [[noreturn]] void error(const std::string& what) const {
    const auto line = pos_ < tokens_.size() ? tokens_[pos_].line : (tokens_.empty() ? 1 : tokens_.back().line);
    fail(ErrorKind::SyntaxError, "recipe line " + std::to_string(line) + ": " + what);
  }

  void tokenize(std::string_view s) {
    std::size_t line = 1;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) tokens_.push_back({std::move(cur), line});
      cur.clear();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (c == ';' || c == '#') {
        flush();
        while (i < s.size() && s[i] != '\n') ++i;
        ++line;
      } else if (c == '(' || c == ')') {
        flush();
        tokens_.push_back({std::string(1, c), line});
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        flush();
        if (c == '\n') ++line;
      } else {
        cur += c;
      }
    }
    flush();
  }

  SExpr parse() {
    if (pos_ >= tokens_.size()) error("unexpected end of recipe");
    const auto& t = tokens_[pos_];
    if (t.text == ")") error("unexpected ')'");
    if (t.text == "(") {
      ++pos_;
      SExpr list;
      list.is_list = true;
      while (true) {
        if (pos_ >= tokens_.size()) error("missing ')'");
        if (tokens_[pos_].text == ")") {
          ++pos_;
          break;
        }
        list.items.push_back(parse_argument());
      }
      if (list.items.empty()) error("empty expression");
      return list;
    }
    ++pos_;
    SExpr a;
    a.atom = t.text;
    return a;
  }

  SExpr parse_argument() {
    const auto& t = tokens_[pos_].text;
    const auto eq = t.find('=');
    if (t == "(" || eq == std::string::npos || eq == 0) return parse();
    const std::string key = t.substr(0, eq);
    const std::string rest = t.substr(eq + 1);
    ++pos_;
    SExpr value;
    if (rest.empty()) {
      value = parse();
    } else {
      value.atom = rest;
    }
    // `const N` is a two-word value.
    if (!value.is_list && value.atom == "const" && pos_ < tokens_.size() && tokens_[pos_].text != "(" &&
        tokens_[pos_].text != ")") {
      SExpr list;
      list.is_list = true;
      list.items.push_back(value);
      list.items.push_back(parse());
      value = std::move(list);
    }
    value.key = key;
    return value;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int to_int(const SExpr& e, const std::string& what) {
  if (e.is_list) fail(ErrorKind::BadParameter, what + " must be an integer");
  int v = 0;
  auto [p, ec] = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), v);
  if (ec != std::errc() || p != e.atom.data() + e.atom.size()) {
    fail(ErrorKind::BadParameter, what + " must be an integer, got '" + e.atom + "'");
  }
  return v;
}

struct Args {
  std::string op;
  std::vector<const SExpr*> positional;
  std::vector<const SExpr*> keyed;

  explicit Args(const SExpr& e) {
    if (!e.is_list || e.items.front().is_list || !e.items.front().key.empty()) {
      fail(ErrorKind::SyntaxError, "expected an operator application, got " + to_string(e));
    }
    op = e.items.front().atom;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      (e.items[i].key.empty() ? positional : keyed).push_back(&e.items[i]);
    }
  }

  const SExpr* find(const std::string& k) const {
    for (auto* a : keyed) {
      if (a->key == k) return a;
    }
    return nullptr;
  }
  const SExpr& need(const std::string& k) const {
    if (auto* a = find(k)) return *a;
    fail(ErrorKind::BadParameter, op + " needs " + k + "=");
  }
  std::vector<const SExpr*> all(const std::string& k) const {
    std::vector<const SExpr*> out;
    for (auto* a : keyed) {
      if (a->key == k) out.push_back(a);
    }
    return out;
  }
  const SExpr& pos(std::size_t i, const char* what) const {
    if (i >= positional.size()) fail(ErrorKind::BadParameter, op + " is missing its " + std::string(what));
    return *positional[i];
  }
  void expect_counts(std::size_t npos, std::initializer_list<const char*> allowed) const {
    if (positional.size() != npos) {
      fail(ErrorKind::BadParameter, op + " takes " + std::to_string(npos) + " positional argument(s), got " +
                                        std::to_string(positional.size()));
    }
    for (auto* a : keyed) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return a->key == k; })) {
        fail(ErrorKind::BadParameter, op + " does not take " + a->key + "=");
      }
    }
  }
};

class Evaluator {
 public:
  Evaluator(DesignLibrary& lib, const RecipeOptions& options) : lib_(lib), options_(options) {}

  RecipeResult eval(const SExpr& e, const std::string& parent) {
    std::string path = parent;
    try {
      Args a(e);
      path = parent.empty() ? a.op : parent + "/" + a.op;
      return dispatch(a, path);
    } catch (const RecipeError&) {
      throw;
    } catch (const Error& err) {
      throw RecipeError(err.kind(), path.empty() ? "recipe" : path, err.detail());
    }
  }

 private:
  static std::string type_of(const Design& d) {
    return d.holes ? dgdd_type(d) : group_type_of(d).str();
  }

  static RecipeResult leaf(Design d, std::string step, std::string source) {
    Provenance p{std::move(step), type_of(d), std::move(source), d.num_blocks(), {}};
    return {std::move(d), std::move(p)};
  }

  // Fill arguments become library entries before the operator asks for them.
  void load_fillers(const Args& a, const std::string& path, Provenance& prov) {
    for (auto* f : a.all("fill")) {
      auto r = eval(*f, path);
      lib_.add(r.design, Source::Explicit, to_string(*f));
      prov.children.push_back(std::move(r.provenance));
    }
  }

  std::vector<int> weights(const SExpr& w, const Design& master) {
    const auto n = static_cast<std::size_t>(master.v);
    if (!w.is_list) fail(ErrorKind::BadParameter, "weights must be 'const N' or a weight expression");
    const Args a(w);
    if (a.op == "const") {
      a.expect_counts(1, {});
      return std::vector<int>(n, to_int(a.pos(0, "weight"), "weight"));
    }
    if (a.op == "list") {
      a.expect_counts(n, {});
      std::vector<int> out;
      for (auto* x : a.positional) out.push_back(to_int(*x, "weight"));
      return out;
    }
    if (a.op == "group-weights") {
      a.expect_counts(0, {"group", "values", "rest"});
      const auto gi = static_cast<std::size_t>(to_int(a.need("group"), "group"));
      if (gi >= master.groups.size()) fail(ErrorKind::BadIndex, "group " + std::to_string(gi) + " does not exist");
      std::vector<int> out(n, to_int(a.need("rest"), "rest"));
      const auto& values = a.need("values");
      if (!values.is_list) fail(ErrorKind::BadParameter, "values must be a list");
      auto g = master.groups[gi];
      std::sort(g.begin(), g.end());
      if (values.items.size() != g.size()) {
        fail(ErrorKind::BadParameter, "group " + std::to_string(gi) + " has " + std::to_string(g.size()) + " points but " +
                                          std::to_string(values.items.size()) + " values were given");
      }
      for (std::size_t k = 0; k < g.size(); ++k) out[static_cast<std::size_t>(g[k])] = to_int(values.items[k], "value");
      return out;
    }
    if (a.op == "set") {
      a.expect_counts(0, {});
      std::vector<int> out(n, 0);
      if (auto* r = a.find("rest")) std::fill(out.begin(), out.end(), to_int(*r, "rest"));
      for (auto* k : a.keyed) {
        if (k->key == "rest") continue;
        const int p = to_int(SExpr{false, k->key, {}, {}}, "point");
        if (p < 0 || p >= master.v) fail(ErrorKind::BadIndex, "point " + k->key + " outside the master design");
        out[static_cast<std::size_t>(p)] = to_int(*k, "weight");
      }
      return out;
    }
    fail(ErrorKind::BadParameter, "unknown weight form '" + a.op + "'");
  }

  RecipeResult dispatch(const Args& a, const std::string& path) {
    const auto& op = a.op;
    if (op == "td" || op == "rgdd") {
      a.expect_counts(2, {});
      const int k = to_int(a.pos(0, "group count"), "k");
      const int q = to_int(a.pos(1, "group size"), "q");
      Design d = op == "td" ? transversal_design(k, q) : rgdd(k, q);
      return leaf(std::move(d), op + " " + std::to_string(k) + " " + std::to_string(q), "algebra");
    }
    if (op == "catalog") {
      a.expect_counts(1, {});
      const auto& name = a.pos(0, "name").atom;
      const fs::path dir = lib_.options().catalog_dir.value_or(default_catalog_dir());
      const auto spec = read_spec((dir / (name + ".gdd")).string());
      Design d = expand(spec);
      const auto r = verify_gdd(d);
      if (!r.ok) fail(ErrorKind::BadIngredient, "catalog entry " + name + " does not verify");
      return leaf(std::move(d), "catalog " + name, "catalog");
    }
    if (op == "search") {
      a.expect_counts(1, {});
      const auto type = GroupType::parse(a.pos(0, "type").atom);
      if (auto hit = lib_.find(type); hit && hit->source == Source::Search) {
        return leaf(hit->design, "search " + type.file_stem(), "search (cached)");
      }
      auto r = solve_existence(type, lib_.options().search_limits);
      if (r.outcome != SearchOutcome::Found) {
        fail(ErrorKind::MissingIngredient, "search for " + type.str() + " ended " + to_string(r.outcome));
      }
      lib_.add(*r.design, Source::Search, "search " + type.file_stem());
      return leaf(std::move(*r.design), "search " + type.file_stem(),
                  "search, " + std::to_string(r.nodes) + " nodes");
    }
    if (op == "file") {
      a.expect_counts(1, {});
      fs::path p = a.pos(0, "path").atom;
      if (p.is_relative() && !fs::exists(p)) p = options_.base_dir / p;
      Design d = read_gddx(p);
      const auto r = d.holes ? verify_dgdd(d) : verify_gdd(d);
      if (!r.ok) fail(ErrorKind::BadIngredient, "file " + p.string() + " does not verify");
      if (d.resolution && !verify_resolution(d).ok) fail(ErrorKind::BadIngredient, "file " + p.string() + " resolution does not verify");
      return leaf(std::move(d), "file " + a.pos(0, "path").atom, "file");
    }

    Provenance prov;
    prov.step = op;
    auto child = [&](const SExpr& e) {
      auto r = eval(e, path);
      prov.children.push_back(r.provenance);
      return std::move(r.design);
    };
    auto scalar = [&](const char* k) {
      const int v = to_int(a.need(k), k);
      prov.step += std::string(" ") + k + "=" + std::to_string(v);
      return v;
    };

    Design out;
    if (op == "wfc_inflate") {
      a.expect_counts(1, {"weights", "fill"});
      Design master = child(a.pos(0, "master design"));
      const auto w = weights(a.need("weights"), master);
      prov.step += " " + to_string(a.need("weights"));
      load_fillers(a, path, prov);
      out = wfc_inflate(master, w, lib_);
    } else if (op == "wfc_inflate_dgdd") {
      a.expect_counts(2, {"h", "u"});
      Design master = child(a.pos(0, "master design"));
      const int h = scalar("h");
      const int u = scalar("u");
      Design dgdd = child(a.pos(1, "DGDD"));
      out = wfc_inflate_dgdd(master, h, u, dgdd);
    } else if (op == "fill_holes" || op == "adjoin") {
      a.expect_counts(1, {"m", "fill"});
      Design d = child(a.pos(0, "DGDD"));
      const int m = scalar("m");
      load_fillers(a, path, prov);
      out = op == "fill_holes" ? fill_holes(d, m, lib_) : adjoin(d, m, lib_);
    } else if (op == "fill_group") {
      const bool keyed_fill = a.find("fill") != nullptr;
      a.expect_counts(keyed_fill ? 1 : 2, {"group", "fill"});
      Design d = child(a.pos(0, "design"));
      const int g = scalar("group");
      Design filler = child(keyed_fill ? a.need("fill") : a.pos(1, "filler"));
      if (g < 0) fail(ErrorKind::BadIndex, "group index must be non-negative");
      out = fill_group(d, static_cast<std::size_t>(g), filler);
    } else if (op == "inflate_uniform") {
      a.expect_counts(1, {"r", "fill"});
      Design d = child(a.pos(0, "design"));
      const int r = scalar("r");
      load_fillers(a, path, prov);
      out = inflate_uniform(d, r, lib_);
    } else if (op == "remove_parallel_class") {
      const bool keyed = a.find("class") != nullptr;
      a.expect_counts(keyed ? 1 : 2, {"class"});
      Design d = child(a.pos(0, "resolvable design"));
      const int c = keyed ? scalar("class") : to_int(a.pos(1, "class index"), "class index");
      if (!keyed) prov.step += " " + std::to_string(c);
      if (c < 0) fail(ErrorKind::BadIndex, "class index must be non-negative");
      out = remove_parallel_class(d, static_cast<std::size_t>(c));
    } else {
      fail(ErrorKind::SyntaxError, "unknown operator '" + op + "'");
    }
    prov.result = type_of(out);
    prov.source = "constructed";
    prov.blocks = out.num_blocks();
    return {std::move(out), std::move(prov)};
  }

  DesignLibrary& lib_;
  const RecipeOptions& options_;
};

void format_into(std::ostringstream& out, const Provenance& p, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << p.step << " -> " << p.result << " (" << p.blocks
      << " blocks";
  if (!p.source.empty() && p.source != "constructed") out << ", " << p.source;
  out << ")\n";
  for (const auto& c : p.children) format_into(out, c, depth + 1);
}

}  // namespace

SExpr parse_recipe(std::string_view text) { return Parser(text).parse_top(); }

std::string to_string(const SExpr& e) {
  std::string s = e.key.empty() ? "" : e.key + "=";
  if (!e.is_list) return s + e.atom;
  s += "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ' ';
    s += to_string(e.items[i]);
  }
  return s + ")";
}

std::string format_provenance(const Provenance& p) {
  std::ostringstream out;
  format_into(out, p, 0);
  return out.str();
}

RecipeResult run_recipe(const SExpr& recipe, DesignLibrary& lib, const RecipeOptions& options) {
  return Evaluator(lib, options).eval(recipe, "");
}

RecipeResult run_recipe_file(const fs::path& path, DesignLibrary& lib) {
  RecipeOptions options;
  options.base_dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  return run_recipe(parse_recipe(read_text_file(path)), lib, options);
}

}  // namespace gdd
