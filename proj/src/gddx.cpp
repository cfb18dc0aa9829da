#include "gdd/gddx.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gdd/error.hpp"

namespace gdd {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<long> parse_ints(std::string_view s, std::size_t line_no) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    if (i >= s.size()) break;
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
    if (ec != std::errc() || value < 0) {
      fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected non-negative integer");
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - s.data());
  }
  return out;
}

void append_line(std::string& out, const char* key, const std::vector<Point>& pts) {
  out += key;
  out += ':';
  for (Point p : pts) {
    out += ' ';
    out += std::to_string(p);
  }
  out += '\n';
}

}  // namespace

std::string serialize_gddx(const Design& d) {
  std::string out;
  out.reserve(32 + d.flat_points().size() * 5);
  out += "v=" + std::to_string(d.v) + "\n";
  auto groups = d.groups;
  canonicalize_parts(groups);
  for (const auto& g : groups) append_line(out, "group", g);
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    auto b = d.block(i);
    append_line(out, "block", std::vector<Point>(b.begin(), b.end()));
  }
  if (d.holes) {
    auto holes = *d.holes;
    canonicalize_parts(holes);
    for (const auto& h : holes) append_line(out, "hole", h);
  }
  if (d.resolution) {
    std::vector<PointSet> classes;
    for (const auto& c : *d.resolution) classes.emplace_back(c.begin(), c.end());
    canonicalize_parts(classes);
    for (const auto& c : classes) append_line(out, "class", c);
  }
  return out;
}

Design parse_gddx(std::string_view text) {
  Design d;
  bool have_v = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of(":=");
    if (sep == std::string_view::npos) {
      fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected 'key:' or 'v='");
    }
    const auto key = trim(line.substr(0, sep));
    const auto rest = line.substr(sep + 1);
    const auto nums = parse_ints(rest, line_no);
    auto as_points = [&] {
      PointSet pts;
      for (long n : nums) pts.push_back(static_cast<Point>(n));
      return pts;
    };
    if (key == "v") {
      if (nums.size() != 1) fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": bad v");
      d.v = static_cast<int>(nums[0]);
      have_v = true;
    } else if (key == "group") {
      d.groups.push_back(as_points());
    } else if (key == "block") {
      if (nums.empty()) fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": empty block");
      auto pts = as_points();
      d.add_block(pts);
    } else if (key == "hole") {
      if (!d.holes) d.holes.emplace();
      d.holes->push_back(as_points());
    } else if (key == "class") {
      if (!d.resolution) d.resolution.emplace();
      std::vector<std::size_t> idx;
      for (long n : nums) idx.push_back(static_cast<std::size_t>(n));
      d.resolution->push_back(std::move(idx));
    } else {
      fail(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_v) fail(ErrorKind::SyntaxError, "missing v= line");
  return d;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

Design read_gddx(const std::filesystem::path& path) { return parse_gddx(read_text_file(path)); }

void write_gddx(const Design& design, const std::filesystem::path& path) {
  write_text_file(path, serialize_gddx(design));
}

}  // namespace gdd
