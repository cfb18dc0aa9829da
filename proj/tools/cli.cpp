#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <thread>

#include "gdd/algebra.hpp"
#include "gdd/blockgen.hpp"
#include "gdd/catalog.hpp"
#include "gdd/digest.hpp"
#include "gdd/error.hpp"
#include "gdd/gddx.hpp"
#include "gdd/library.hpp"
#include "gdd/oracle.hpp"
#include "gdd/recipe.hpp"
#include "gdd/search.hpp"
#include "gdd/signature.hpp"
#include "gdd/verify.hpp"

namespace gddtool {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(gdd::ErrorKind kind) {
  switch (kind) {
    case gdd::ErrorKind::MissingIngredient: return kMissingIngredient;
    case gdd::ErrorKind::IoError:
    case gdd::ErrorKind::BadParameter:
    case gdd::ErrorKind::NotPrimePower:
    case gdd::ErrorKind::TooManyGroups:
    case gdd::ErrorKind::BadIndex: return kUsage;
    default: return kVerificationFailure;
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

json report_json(const gdd::VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"kind", gdd::to_string(f.kind)}, {"a", f.a}, {"b", f.b}, {"index", f.index}, {"count", f.count},
                        {"text", gdd::describe(f)}});
  }
  return {{"ok", r.ok}, {"counted_blocks", r.counted_blocks}, {"expected_blocks", r.expected_blocks},
          {"total_failures", r.total_failures}, {"failures", failures}};
}

void print_report(std::ostream& out, const std::string& what, const gdd::VerificationReport& r) {
  out << what << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.counted_blocks << " blocks, expected "
      << r.expected_blocks << ")\n";
  for (const auto& f : r.failures) out << "  " << gdd::describe(f) << "\n";
  if (r.total_failures > static_cast<std::int64_t>(r.failures.size())) {
    out << "  ... " << (r.total_failures - static_cast<std::int64_t>(r.failures.size())) << " more\n";
  }
}

void emit_design(const gdd::Design& d, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << gdd::serialize_gddx(d);
  } else {
    gdd::write_gddx(d, path);
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int code = kOk;
};

// --- subcommands -----------------------------------------------------------

struct ExpandArgs {
  std::string spec, output;
  unsigned threads = 1;
  bool json = false;
};

void run_expand(Context& c, const ExpandArgs& a) {
  const auto spec = gdd::read_spec(a.spec);
  const auto d = gdd::expand(spec, {resolve_threads(a.threads)});
  const auto sig = gdd::check_signature(spec);
  if (a.json) {
    if (!a.output.empty()) gdd::write_gddx(d, a.output);
    c.out << json{{"name", spec.name}, {"v", d.v}, {"type", gdd::group_type_of(d).str()}, {"blocks", d.num_blocks()},
                  {"digest", gdd::design_digest(d)}, {"signature_ok", sig.ok}, {"signature_diffs", sig.diffs}}
                 .dump(2)
          << "\n";
    return;
  }
  emit_design(d, a.output, c.out);
  if (!a.output.empty()) c.out << spec.name << ": " << d.num_blocks() << " blocks written to " << a.output << "\n";
  if (!sig.ok) c.err << "warning: " << spec.name << " signature: " << sig.diffs.front() << "\n";
}

struct VerifyArgs {
  std::string file;
  std::size_t witnesses = 10;
  unsigned threads = 1;
  bool json = false;
};

void run_verify(Context& c, const VerifyArgs& a) {
  gdd::Design d;
  std::optional<gdd::SignatureCheck> sig;
  if (fs::path(a.file).extension() == ".gdd") {
    const auto spec = gdd::read_spec(a.file);
    d = gdd::expand(spec, {resolve_threads(a.threads)});
    sig = gdd::check_signature(spec);
  } else {
    d = gdd::read_gddx(a.file);
  }
  const gdd::VerifyOptions opt{a.witnesses, resolve_threads(a.threads)};
  const auto main_report = d.holes ? gdd::verify_dgdd(d, opt) : gdd::verify_gdd(d, opt);
  std::optional<gdd::VerificationReport> res;
  if (d.resolution) res = gdd::verify_resolution(d, opt);
  // A missing signature is only a warning; a mismatching one fails.
  const bool sig_bad = sig && !sig->ok && !(sig->diffs.size() == 1 && sig->diffs.front() == "no signature");
  const bool ok = main_report.ok && (!res || res->ok) && !sig_bad;
  if (a.json) {
    json j{{"ok", ok}, {"kind", gdd::to_string(gdd::kind_of(d))}, {"type", gdd::library_key(d)},
           {"digest", gdd::design_digest(d)}, {"report", report_json(main_report)}};
    if (res) j["resolution"] = report_json(*res);
    if (sig) j["signature"] = {{"ok", sig->ok}, {"diffs", sig->diffs}};
    c.out << j.dump(2) << "\n";
  } else {
    print_report(c.out, d.holes ? "DGDD " + gdd::dgdd_type(d) : "GDD " + gdd::group_type_of(d).str(), main_report);
    if (res) print_report(c.out, "resolution", *res);
    if (sig) {
      if (sig->ok) {
        c.out << "signature: ok\n";
      } else {
        for (const auto& diff : sig->diffs) (sig_bad ? c.out : c.err) << (sig_bad ? "signature: " : "warning: ") << diff << "\n";
      }
    }
  }
  c.code = ok ? kOk : kVerificationFailure;
}

struct StatusArgs {
  std::int64_t g = 0, u = 0, m = 0;
  bool has_m = false;
  bool json = false;
  bool upgrade = false;
};

void run_status(Context& c, const StatusArgs& a) {
  std::set<gdd::Triple> verified;
  gdd::StatusOptions opt;
  if (a.upgrade) {
    verified = gdd::catalog_triples(gdd::default_catalog_dir());
    opt.verified = &verified;
  }
  const auto s = a.has_m ? gdd::status_gum(a.g, a.u, a.m, opt) : gdd::status_gu(a.g, a.u);
  if (a.json) {
    json cs = json::array();
    for (const auto& x : s.congruences) cs.push_back({{"expression", x.expression}, {"holds", x.holds}});
    c.out << json{{"g", a.g}, {"u", a.u}, {"m", a.has_m ? a.m : 0}, {"verdict", gdd::to_string(s.verdict)},
                  {"basis", s.basis}, {"congruences", cs}}
                 .dump(2)
          << "\n";
  } else {
    c.out << gdd::to_string(s.verdict) << ": " << s.basis << "\n";
  }
  switch (s.verdict) {
    case gdd::Verdict::Exists: c.code = kOk; break;
    case gdd::Verdict::NotExists:
    case gdd::Verdict::NecessaryFail: c.code = kNegative; break;
    case gdd::Verdict::OpenException: c.code = kUndecided; break;
  }
}

struct SearchArgs {
  std::string type, output;
  double timeout = 60.0;
  std::uint64_t node_cap = 0;
  bool slow = false, no_symmetry = false, json = false;
  unsigned threads = 1;
};

void run_search(Context& c, const SearchArgs& a) {
  const auto type = gdd::GroupType::parse(a.type);
  gdd::SearchLimits lim = a.slow ? gdd::slow_limits() : gdd::SearchLimits{};
  if (!a.slow) lim.timeout_seconds = a.timeout;
  if (a.node_cap) lim.node_cap = a.node_cap;
  lim.symmetry_breaking = !a.no_symmetry;
  lim.threads = resolve_threads(a.threads);
  const auto r = gdd::solve_existence(type, lim);
  if (r.design && !a.output.empty()) gdd::write_gddx(*r.design, a.output);
  if (a.json) {
    json j{{"type", type.str()}, {"outcome", gdd::to_string(r.outcome)}, {"nodes", r.nodes}, {"seconds", r.seconds},
           {"branches", r.branches}};
    if (r.design) {
      j["blocks"] = r.design->num_blocks();
      j["digest"] = gdd::design_digest(*r.design);
    }
    c.out << j.dump(2) << "\n";
  } else {
    c.out << type.str() << ": " << gdd::to_string(r.outcome) << " (" << r.nodes << " nodes, " << r.seconds << " s)\n";
    if (r.design && a.output.empty()) c.out << gdd::serialize_gddx(*r.design);
  }
  c.code = r.outcome == gdd::SearchOutcome::Found ? kOk
           : r.outcome == gdd::SearchOutcome::Exhausted ? kNegative
                                                        : kUndecided;
}

struct ConstructArgs {
  std::string recipe, output;
  bool json = false, no_search = false;
};

void run_construct(Context& c, const ConstructArgs& a) {
  gdd::LibraryOptions lo;
  lo.catalog_dir = gdd::default_catalog_dir();
  lo.allow_search = !a.no_search;
  gdd::DesignLibrary lib(lo);
  const auto r = gdd::run_recipe_file(a.recipe, lib);
  if (!a.output.empty()) gdd::write_gddx(r.design, a.output);
  if (a.json) {
    c.out << json{{"type", gdd::library_key(r.design)}, {"blocks", r.design.num_blocks()},
                  {"digest", gdd::design_digest(r.design)}, {"provenance", gdd::format_provenance(r.provenance)}}
                 .dump(2)
          << "\n";
  } else {
    c.out << gdd::format_provenance(r.provenance);
    if (a.output.empty()) c.out << gdd::serialize_gddx(r.design);
  }
}

struct AlgebraArgs {
  int k = 0, q = 0;
  std::string output;
  bool json = false;
};

void run_mols(Context& c, const AlgebraArgs& a) {
  const auto set = gdd::mols(a.q);
  if (set.degenerate) c.err << "warning: side " << a.q << " gives a single square; orthogonality is vacuous\n";
  if (a.json) {
    c.out << json{{"side", set.side}, {"degenerate", set.degenerate}, {"squares", set.squares}}.dump() << "\n";
    return;
  }
  for (std::size_t i = 0; i < set.squares.size(); ++i) {
    if (i) c.out << "\n";
    for (const auto& row : set.squares[i]) {
      for (std::size_t j = 0; j < row.size(); ++j) c.out << (j ? " " : "") << row[j];
      c.out << "\n";
    }
  }
}

void run_td(Context& c, const AlgebraArgs& a, bool resolvable) {
  const auto d = resolvable ? gdd::rgdd(a.k, a.q) : gdd::transversal_design(a.k, a.q);
  if (a.json) {
    if (!a.output.empty()) gdd::write_gddx(d, a.output);
    json j{{"type", gdd::group_type_of(d).str()}, {"blocks", d.num_blocks()}, {"block_size", d.block_size()},
           {"digest", gdd::design_digest(d)}};
    if (d.resolution) j["classes"] = d.resolution->size();
    c.out << j.dump(2) << "\n";
  } else {
    emit_design(d, a.output, c.out);
  }
}

struct CatalogArgs {
  std::string action, dir, output;
  unsigned threads = 0;
  bool json = false;
};

void run_catalog(Context& c, const CatalogArgs& a) {
  const fs::path dir = a.dir.empty() ? gdd::default_catalog_dir() : fs::path(a.dir);
  if (a.action == "list") {
    const auto files = gdd::list_catalog(dir);
    if (a.json) {
      json j = json::array();
      for (const auto& f : files) j.push_back(f.name);
      c.out << j.dump(2) << "\n";
    } else {
      for (const auto& f : files) c.out << f.name << "\n";
    }
    return;
  }
  const auto summary = gdd::catalog_verify_all(dir, resolve_threads(a.threads));
  if (a.action == "manifest") {
    const auto text = gdd::format_manifest(summary);
    if (a.output.empty()) {
      c.out << text;
    } else {
      gdd::write_text_file(a.output, text);
    }
    c.code = summary.failures ? kVerificationFailure : kOk;
    return;
  }
  std::vector<std::string> mismatches;
  if (a.action == "check") {
    const auto rows = gdd::parse_manifest(gdd::read_text_file(dir / "MANIFEST"));
    std::map<std::string, gdd::ManifestRow> pinned;
    for (const auto& r : rows) pinned[r.name] = r;
    for (const auto& e : summary.entries) {
      auto it = pinned.find(e.name);
      if (it == pinned.end()) {
        mismatches.push_back(e.name + ": not in MANIFEST");
      } else if (it->second.digest != e.digest || it->second.type != e.type.str() || it->second.signature != e.signature) {
        mismatches.push_back(e.name + ": differs from MANIFEST");
      }
      pinned.erase(e.name);
    }
    for (const auto& [name, row] : pinned) mismatches.push_back(name + ": listed in MANIFEST but missing");
  }
  if (a.json) {
    json entries = json::array();
    for (const auto& e : summary.entries) {
      entries.push_back({{"name", e.name}, {"ok", e.ok}, {"type", e.type.str()}, {"blocks", e.blocks},
                         {"expected", e.expected}, {"digest", e.digest}, {"seconds", e.seconds},
                         {"problems", e.problems}, {"warnings", e.warnings}});
    }
    c.out << json{{"entries", entries}, {"failures", summary.failures}, {"mismatches", mismatches}}.dump(2) << "\n";
  } else {
    for (const auto& e : summary.entries) {
      c.out << (e.ok ? "ok   " : "FAIL ") << e.name << " " << e.blocks << " blocks";
      for (const auto& p : e.problems) c.out << "\n     " << p;
      for (const auto& w : e.warnings) c.out << "\n     warning: " << w;
      c.out << "\n";
    }
    for (const auto& m : mismatches) c.out << "MANIFEST " << m << "\n";
    c.out << summary.entries.size() << " entries, " << summary.failures << " failures\n";
  }
  c.code = (summary.failures || !mismatches.empty()) ? kVerificationFailure : kOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group divisible design toolkit", "gddtool"};
  app.require_subcommand(1);
  Context ctx{out, err};
  std::function<void()> action;

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Develop a base-block spec into a full design");
  expand->add_option("spec", ea.spec, "Spec file (.gdd)")->required();
  expand->add_option("-o,--output", ea.output, "Write the design (.gddx) here instead of stdout");
  expand->add_option("--threads", ea.threads, "Worker threads (0 = all cores)");
  expand->add_flag("--json", ea.json);
  expand->callback([&] { action = [&] { run_expand(ctx, ea); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify a design (.gddx) or spec (.gdd)");
  verify->add_option("file", va.file)->required();
  verify->add_option("--witnesses", va.witnesses, "Failures to list (0 = all)");
  verify->add_option("--threads", va.threads);
  verify->add_flag("--json", va.json);
  verify->callback([&] { action = [&] { run_verify(ctx, va); }; });

  StatusArgs sa;
  std::vector<std::int64_t> status_nums;
  auto* status = app.add_subcommand("status", "Existence status of type g^u or g^u m^1");
  status->add_option("params", status_nums, "g u [m]")->required()->expected(2, 3);
  status->add_flag("--json", sa.json);
  status->add_flag("--catalog-upgrade", sa.upgrade, "Count verified catalog designs as existing");
  status->callback([&] {
    sa.g = status_nums[0];
    sa.u = status_nums[1];
    sa.has_m = status_nums.size() == 3;
    if (sa.has_m) sa.m = status_nums[2];
    action = [&] { run_status(ctx, sa); };
  });

  SearchArgs sea;
  auto* search = app.add_subcommand("search", "Exact-cover search for a 4-GDD of a small type");
  search->add_option("type", sea.type)->required();
  search->add_option("--timeout", sea.timeout, "Seconds");
  search->add_option("--node-cap", sea.node_cap);
  search->add_flag("--slow", sea.slow, "Extended budget for long refutations");
  search->add_flag("--no-symmetry", sea.no_symmetry, "Disable symmetry breaking");
  search->add_option("--threads", sea.threads);
  search->add_option("-o,--output", sea.output);
  search->add_flag("--json", sea.json);
  search->callback([&] { action = [&] { run_search(ctx, sea); }; });

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Evaluate a construction recipe (.rcp)");
  construct->add_option("recipe", ca.recipe)->required();
  construct->add_option("-o,--output", ca.output);
  construct->add_flag("--no-search", ca.no_search, "Do not search for missing ingredients");
  construct->add_flag("--json", ca.json);
  construct->callback([&] { action = [&] { run_construct(ctx, ca); }; });

  AlgebraArgs ma, ta, ra;
  auto* mols = app.add_subcommand("mols", "Print the q-1 orthogonal Latin squares of side q");
  mols->add_option("q", ma.q)->required();
  mols->add_flag("--json", ma.json);
  mols->callback([&] { action = [&] { run_mols(ctx, ma); }; });
  auto* td = app.add_subcommand("td", "Transversal design with k groups of size q");
  td->add_option("k", ta.k)->required();
  td->add_option("q", ta.q)->required();
  td->add_option("-o,--output", ta.output);
  td->add_flag("--json", ta.json);
  td->callback([&] { action = [&] { run_td(ctx, ta, false); }; });
  auto* rg = app.add_subcommand("rgdd", "Resolvable transversal design with k groups of size q");
  rg->add_option("k", ra.k)->required();
  rg->add_option("q", ra.q)->required();
  rg->add_option("-o,--output", ra.output);
  rg->add_flag("--json", ra.json);
  rg->callback([&] { action = [&] { run_td(ctx, ra, true); }; });

  CatalogArgs cat;
  auto* catalog = app.add_subcommand("catalog", "Catalog jobs: verify, check, manifest, list");
  catalog->add_option("action", cat.action)->required()->check(CLI::IsMember({"verify", "check", "manifest", "list"}));
  catalog->add_option("--dir", cat.dir, "Catalog directory (default: $GDDTOOL_CATALOG or the bundled one)");
  catalog->add_option("-o,--output", cat.output);
  catalog->add_option("--threads", cat.threads, "Worker threads (0 = all cores)");
  catalog->add_flag("--json", cat.json);
  catalog->callback([&] { action = [&] { run_catalog(ctx, cat); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  try {
    action();
  } catch (const gdd::Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return ctx.code;
}

}  // namespace gddtool
