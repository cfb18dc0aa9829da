#include "gdd/blockgen.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>
#include <thread>

#include "gdd/error.hpp"
#include "gdd/gddx.hpp"

namespace gdd {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const auto r = a % n;
  return r < 0 ? r + n : r;
}

const Segment& find_segment(Point x, std::span<const Segment> segments) {
  for (const auto& s : segments) {
    if (s.contains(x)) return s;
  }
  fail(ErrorKind::UnmappedPoint, "point " + std::to_string(x) + " lies in no mapping segment");
}

}  // namespace

Point apply_mapping(Point x, std::int64_t j, std::span<const Segment> segments) {
  const auto& s = find_segment(x, segments);
  const std::int64_t offset = x - s.start;
  if (!s.prod3) {
    return static_cast<Point>(s.start + mod(offset + static_cast<std::int64_t>(s.step) * j, s.length));
  }
  const std::int64_t c = *s.prod3;
  if (c <= 0 || 3 * c != s.length) {
    fail(ErrorKind::BadParameter, "prod3 segment of length " + std::to_string(s.length) + " needs c = length/3");
  }
  std::int64_t a = offset / 3, b = offset % 3;
  switch (s.step) {
    case 1:
      a += mod(j / 3, c);
      b += mod(j, 3);
      break;
    case 2:
      a += 2 * mod(j / 3, c);
      b += 2 * mod(j, 3);
      break;
    case 3:
      a += mod(j, c);
      break;
    default:
      fail(ErrorKind::UnsupportedStep, "prod3 segment step " + std::to_string(s.step) + " is not 1, 2 or 3");
  }
  return static_cast<Point>(s.start + 3 * mod(a, c) + mod(b, 3));
}

std::vector<PointSet> realize_groups(const BaseBlockSpec& spec) {
  std::vector<PointSet> groups;
  for (const auto& d : spec.group_directives) {
    if (d.kind == GroupDirective::Kind::Range) {
      PointSet g;
      for (Point x = d.begin; x < d.end; ++x) g.push_back(x);
      groups.push_back(std::move(g));
    } else {
      for (int r = 0; r < d.modulus; ++r) {
        PointSet g;
        for (Point x = d.begin + r; x < d.end; x += d.modulus) g.push_back(x);
        groups.push_back(std::move(g));
      }
    }
  }
  return groups;
}

std::vector<GroupPart> directive_parts(const BaseBlockSpec& spec) {
  std::vector<GroupPart> parts;
  for (const auto& d : spec.group_directives) {
    const int len = d.end - d.begin;
    if (d.kind == GroupDirective::Kind::Range) {
      parts.push_back({len, 1});
    } else {
      parts.push_back({d.modulus > 0 ? len / d.modulus : 0, d.modulus});
    }
  }
  return parts;
}

GroupType directive_type(const BaseBlockSpec& spec) {
  std::vector<int> sizes;
  for (const auto& g : realize_groups(spec)) {
    if (!g.empty()) sizes.push_back(static_cast<int>(g.size()));
  }
  return GroupType::from_sizes(sizes);
}

void validate_spec(const BaseBlockSpec& spec) {
  if (spec.v <= 0) fail(ErrorKind::PartitionError, "v must be positive");
  std::vector<int> cover(static_cast<std::size_t>(spec.v), 0);
  for (const auto& d : spec.group_directives) {
    if (d.begin < 0 || d.end > spec.v || d.begin >= d.end) {
      fail(ErrorKind::PartitionError, "group directive [" + std::to_string(d.begin) + ", " + std::to_string(d.end) +
                                          ") outside 0.." + std::to_string(spec.v));
    }
    if (d.kind == GroupDirective::Kind::Residues && d.modulus <= 0) {
      fail(ErrorKind::PartitionError, "residue modulus must be positive");
    }
    for (Point x = d.begin; x < d.end; ++x) ++cover[static_cast<std::size_t>(x)];
  }
  for (int x = 0; x < spec.v; ++x) {
    if (cover[static_cast<std::size_t>(x)] != 1) {
      fail(ErrorKind::PartitionError, "point " + std::to_string(x) +
                                          (cover[static_cast<std::size_t>(x)] == 0 ? " is in no group directive"
                                                                                  : " is in overlapping group directives"));
    }
  }
  for (std::size_t ci = 0; ci < spec.orbit_classes.size(); ++ci) {
    const auto& oc = spec.orbit_classes[ci];
    if (oc.j_count <= 0) fail(ErrorKind::BadParameter, "orbit class needs a positive j count");
    std::vector<int> seg_cover(static_cast<std::size_t>(spec.v), 0);
    for (const auto& s : oc.segments) {
      if (s.length <= 0 || s.start < 0 || s.start + s.length > spec.v) {
        fail(ErrorKind::PartitionError, "mapping segment outside the point set in orbit class " + std::to_string(ci));
      }
      if (s.step < 0) fail(ErrorKind::BadParameter, "mapping step must be non-negative");
      if (s.prod3 && (*s.prod3 <= 0 || 3 * *s.prod3 != s.length)) {
        fail(ErrorKind::BadParameter, "prod3 segment length must be 3c");
      }
      if (s.prod3 && (s.step < 1 || s.step > 3)) {
        fail(ErrorKind::UnsupportedStep, "prod3 segment step " + std::to_string(s.step) + " is not 1, 2 or 3");
      }
      for (Point x = s.start; x < s.start + s.length; ++x) ++seg_cover[static_cast<std::size_t>(x)];
    }
    for (int x = 0; x < spec.v; ++x) {
      const int n = seg_cover[static_cast<std::size_t>(x)];
      if (n != 1) {
        fail(ErrorKind::PartitionError, "mapping segments of orbit class " + std::to_string(ci) +
                                            (n == 0 ? " miss point " : " overlap at point ") + std::to_string(x));
      }
    }
    for (const auto& b : oc.base_blocks) {
      for (Point x : b) {
        if (x < 0 || x >= spec.v) fail(ErrorKind::UnmappedPoint, "base block point " + std::to_string(x) + " outside 0..v-1");
        if (seg_cover[static_cast<std::size_t>(x)] == 0) {
          fail(ErrorKind::UnmappedPoint, "base block point " + std::to_string(x) + " lies in no mapping segment");
        }
      }
    }
  }
  // A name that reads as a group type must agree with the directives.
  std::optional<GroupType> declared;
  try {
    declared = GroupType::parse(spec.name);
  } catch (const Error&) {
  }
  if (declared && *declared != directive_type(spec)) {
    fail(ErrorKind::TypeMismatch, "name " + spec.name + " declares " + declared->str() + " but directives give " +
                                      directive_type(spec).str());
  }
}

Design expand(const BaseBlockSpec& spec, const ExpandOptions& options) {
  validate_spec(spec);
  const auto nclass = spec.orbit_classes.size();
  std::vector<std::vector<Point>> developed(nclass);
  std::vector<std::string> errors(nclass);

  auto develop = [&](std::size_t ci) {
    const auto& oc = spec.orbit_classes[ci];
    auto& out = developed[ci];
    out.reserve(oc.base_blocks.size() * static_cast<std::size_t>(oc.j_count) * 4);
    for (std::size_t bi = 0; bi < oc.base_blocks.size(); ++bi) {
      for (int j = 0; j < oc.j_count; ++j) {
        std::array<Point, 4> img{};
        for (int t = 0; t < 4; ++t) img[static_cast<std::size_t>(t)] = apply_mapping(oc.base_blocks[bi][static_cast<std::size_t>(t)], j, oc.segments);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
          fail(ErrorKind::CollapsedBlock, "orbit class " + std::to_string(ci) + " base block " + std::to_string(bi) +
                                              " collapses at j=" + std::to_string(j));
        }
        out.insert(out.end(), img.begin(), img.end());
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || nclass <= 1) {
    for (std::size_t ci = 0; ci < nclass; ++ci) develop(ci);
  } else {
    std::vector<std::exception_ptr> eptr(nclass);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < std::min<std::size_t>(threads, nclass); ++t) {
      pool.emplace_back([&] {
        for (std::size_t ci; (ci = next.fetch_add(1)) < nclass;) {
          try {
            develop(ci);
          } catch (...) {
            eptr[ci] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : eptr) {
      if (e) std::rethrow_exception(e);
    }
  }

  Design d(spec.v, realize_groups(spec), 4);
  std::size_t total = 0;
  for (const auto& c : developed) total += c.size() / 4;
  d.reserve_blocks(total);
  for (const auto& c : developed) {
    for (std::size_t i = 0; i < c.size(); i += 4) d.add_block(std::span<const Point>(c.data() + i, 4));
  }

  std::vector<std::array<Point, 4>> sorted(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto b = d.block(i);
    std::copy(b.begin(), b.end(), sorted[i].begin());
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
    fail(ErrorKind::DuplicateBlock, "developed block {" + std::to_string((*it)[0]) + ", " + std::to_string((*it)[1]) +
                                        ", " + std::to_string((*it)[2]) + ", " + std::to_string((*it)[3]) +
                                        "} occurs twice");
  }
  return d;
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

int to_int(std::string_view s, std::size_t line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected integer, got '" + std::string(s) + "'");
  }
  return value;
}

std::string_view key_value(std::string_view word, std::string_view key, std::size_t line_no) {
  if (word.size() <= key.size() + 1 || word.substr(0, key.size()) != key || word[key.size()] != '=') {
    fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected " + std::string(key) + "=...");
  }
  return word.substr(key.size() + 1);
}

}  // namespace

BaseBlockSpec parse_spec(std::string_view text) {
  BaseBlockSpec spec;
  bool header = false;
  std::vector<int> declared_counts;
  std::size_t line_no = 0, pos = 0;
  auto sx = [&](const std::string& msg) { fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": " + msg); };
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto words = split_words(line);
    if (words.empty() || words[0].front() == '#') continue;
    const auto cmd = words[0];
    if (cmd == "sig") {
      auto rest = line.substr(line.find("sig") + 3);
      const auto b = rest.find_first_not_of(" \t");
      const auto e = rest.find_last_not_of(" \t\r");
      if (b == std::string_view::npos) sx("empty signature");
      spec.signature = std::string(rest.substr(b, e - b + 1));
      continue;
    }
    // Comments after data on the same line.
    std::vector<std::string_view> w;
    for (auto x : words) {
      if (x.front() == '#') break;
      w.push_back(x);
    }
    if (cmd == "gdd") {
      if (header) sx("duplicate gdd header");
      if (w.size() != 3) sx("expected 'gdd name=<string> v=<int>'");
      spec.name = std::string(key_value(w[1], "name", line_no));
      spec.v = to_int(key_value(w[2], "v", line_no), line_no);
      header = true;
      continue;
    }
    if (!header) sx("missing gdd header");
    if (cmd == "groups") {
      if (w.size() == 5 && w[1] == "residues") {
        spec.group_directives.push_back({GroupDirective::Kind::Residues, to_int(w[2], line_no), to_int(w[3], line_no),
                                         to_int(w[4], line_no)});
      } else if (w.size() == 4 && w[1] == "range") {
        spec.group_directives.push_back({GroupDirective::Kind::Range, 1, to_int(w[2], line_no), to_int(w[3], line_no)});
      } else {
        sx("expected 'groups residues <k> <a> <b>' or 'groups range <a> <b>'");
      }
    } else if (cmd == "orbit") {
      if (w.size() != 3) sx("expected 'orbit count=<n> reps=<J>'");
      OrbitClass oc;
      declared_counts.push_back(to_int(key_value(w[1], "count", line_no), line_no));
      oc.j_count = to_int(key_value(w[2], "reps", line_no), line_no);
      spec.orbit_classes.push_back(std::move(oc));
    } else if (cmd == "map") {
      if (spec.orbit_classes.empty()) sx("map line before any orbit");
      Segment s;
      if (w.size() == 4) {
        s = {to_int(w[1], line_no), to_int(w[2], line_no), to_int(w[3], line_no), std::nullopt};
      } else if (w.size() == 6 && w[4] == "prod3") {
        s = {to_int(w[1], line_no), to_int(w[2], line_no), to_int(w[3], line_no), to_int(w[5], line_no)};
      } else {
        sx("expected 'map <start> <len> <step> [prod3 <c>]'");
      }
      spec.orbit_classes.back().segments.push_back(s);
    } else if (cmd == "block") {
      if (spec.orbit_classes.empty()) sx("block line before any orbit");
      if (w.size() != 5) sx("a block has exactly four points");
      spec.orbit_classes.back().base_blocks.push_back(
          {to_int(w[1], line_no), to_int(w[2], line_no), to_int(w[3], line_no), to_int(w[4], line_no)});
    } else {
      sx("unknown directive '" + std::string(cmd) + "'");
    }
  }
  if (!header) fail(ErrorKind::SyntaxError, "missing gdd header");
  for (std::size_t i = 0; i < spec.orbit_classes.size(); ++i) {
    if (static_cast<std::size_t>(declared_counts[i]) != spec.orbit_classes[i].base_blocks.size()) {
      fail(ErrorKind::SyntaxError, "orbit " + std::to_string(i) + " declares count=" + std::to_string(declared_counts[i]) +
                                       " but lists " + std::to_string(spec.orbit_classes[i].base_blocks.size()) +
                                       " blocks");
    }
  }
  validate_spec(spec);
  return spec;
}

std::string serialize_spec(const BaseBlockSpec& spec) {
  std::ostringstream out;
  out << "gdd name=" << spec.name << " v=" << spec.v << "\n";
  for (const auto& d : spec.group_directives) {
    if (d.kind == GroupDirective::Kind::Residues) {
      out << "groups residues " << d.modulus << ' ' << d.begin << ' ' << d.end << "\n";
    } else {
      out << "groups range " << d.begin << ' ' << d.end << "\n";
    }
  }
  for (const auto& oc : spec.orbit_classes) {
    out << "orbit count=" << oc.base_blocks.size() << " reps=" << oc.j_count << "\n";
    for (const auto& s : oc.segments) {
      out << "map " << s.start << ' ' << s.length << ' ' << s.step;
      if (s.prod3) out << " prod3 " << *s.prod3;
      out << "\n";
    }
    for (const auto& b : oc.base_blocks) out << "block " << b[0] << ' ' << b[1] << ' ' << b[2] << ' ' << b[3] << "\n";
  }
  if (spec.signature) out << "sig " << *spec.signature << "\n";
  return out.str();
}

BaseBlockSpec read_spec(const std::string& path) { return parse_spec(read_text_file(path)); }

}  // namespace gdd
