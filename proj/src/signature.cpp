#include "gdd/signature.hpp"

#include <cctype>
#include <sstream>

#include "gdd/error.hpp"

namespace gdd {

namespace {

// A parsed Python-style literal: an integer or a tuple of literals.
struct Node {
  bool is_int = false;
  long long value = 0;
  std::vector<Node> items;
};

class TupleParser {
 public:
  explicit TupleParser(std::string_view text) : text_(text) {}

  Node parse_all() {
    Node n = parse();
    skip_ws();
    if (pos_ != text_.size()) error("trailing characters");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, "signature: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Node parse() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      Node tuple;
      bool trailing_comma = false;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return tuple;
      }
      while (true) {
        tuple.items.push_back(parse());
        skip_ws();
        if (pos_ >= text_.size()) error("unclosed tuple");
        if (text_[pos_] == ',') {
          ++pos_;
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            trailing_comma = true;
            break;
          }
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        error("expected ',' or ')'");
      }
      if (tuple.items.size() == 1 && !trailing_comma) return std::move(tuple.items.front());
      return tuple;
    }
    const auto start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) error("expected integer or tuple");
    Node n;
    n.is_int = true;
    n.value = std::stoll(std::string(text_.substr(start, pos_ - start)));
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void shape_error(const std::string& what) { fail(ErrorKind::SyntaxError, "signature: " + what); }

int as_int(const Node& n, const char* what) {
  if (!n.is_int) shape_error(std::string("expected integer for ") + what);
  return static_cast<int>(n.value);
}

// A list whose first element is an integer is a single collapsed entry.
std::vector<const Node*> entries(const Node& n, const char* what) {
  if (n.is_int) shape_error(std::string("expected tuple for ") + what);
  std::vector<const Node*> out;
  if (!n.items.empty() && n.items.front().is_int) {
    out.push_back(&n);
  } else {
    for (const auto& i : n.items) out.push_back(&i);
  }
  return out;
}

SignatureSegment segment_of(const Node& n) {
  if (n.is_int || (n.items.size() != 2 && n.items.size() != 3)) shape_error("segment must be (length, step[, (c, 3)])");
  SignatureSegment s{as_int(n.items[0], "segment length"), as_int(n.items[1], "segment step"), std::nullopt};
  if (n.items.size() == 3) {
    const auto& p = n.items[2];
    if (p.is_int || p.items.size() != 2 || as_int(p.items[1], "prod3 factor") != 3) {
      shape_error("product segment must carry (c, 3)");
    }
    s.prod3 = as_int(p.items[0], "prod3 order");
  }
  return s;
}

std::string join_parts(const std::vector<GroupPart>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(parts[i].size) + ", " + std::to_string(parts[i].count) + ")";
  }
  return out + ")";
}

}  // namespace

CompactSignature parse_signature(std::string_view text) {
  const Node root = TupleParser(text).parse_all();
  if (root.is_int || root.items.size() != 3) shape_error("expected (v, M, T)");
  CompactSignature sig;
  sig.v = as_int(root.items[0], "v");
  for (const Node* c : entries(root.items[1], "M")) {
    if (c->items.size() != 3) shape_error("orbit class must be (blockCount, jCount, segments)");
    SignatureClass sc{as_int(c->items[0], "block count"), as_int(c->items[1], "j count"), {}};
    for (const Node* s : entries(c->items[2], "segments")) sc.segments.push_back(segment_of(*s));
    sig.classes.push_back(std::move(sc));
  }
  for (const Node* t : entries(root.items[2], "T")) {
    if (t->is_int || t->items.size() != 2) shape_error("type entry must be (size, count)");
    sig.type_parts.push_back({as_int(t->items[0], "group size"), as_int(t->items[1], "group count")});
  }
  return sig;
}

CompactSignature signature_of(const BaseBlockSpec& spec) {
  CompactSignature sig;
  sig.v = spec.v;
  for (const auto& oc : spec.orbit_classes) {
    SignatureClass sc{static_cast<int>(oc.base_blocks.size()), oc.j_count, {}};
    for (const auto& s : oc.segments) sc.segments.push_back({s.length, s.step, s.prod3});
    sig.classes.push_back(std::move(sc));
  }
  sig.type_parts = directive_parts(spec);
  return sig;
}

std::string format_signature(const CompactSignature& sig) {
  std::ostringstream out;
  out << "(" << sig.v << ", (";
  for (std::size_t i = 0; i < sig.classes.size(); ++i) {
    const auto& c = sig.classes[i];
    if (i) out << ", ";
    out << "(" << c.block_count << ", " << c.j_count << ", (";
    for (std::size_t k = 0; k < c.segments.size(); ++k) {
      const auto& s = c.segments[k];
      if (k) out << ", ";
      out << "(" << s.length << ", " << s.step;
      if (s.prod3) out << ", (" << *s.prod3 << ", 3)";
      out << ")";
    }
    out << "))";
  }
  out << "), " << join_parts(sig.type_parts) << ")";
  return out.str();
}

SignatureCheck check_signature(const BaseBlockSpec& spec) {
  SignatureCheck check;
  if (!spec.signature) {
    check.diffs.push_back("no signature");
    return check;
  }
  CompactSignature declared;
  try {
    declared = parse_signature(*spec.signature);
  } catch (const Error& e) {
    check.diffs.push_back(e.what());
    return check;
  }
  const CompactSignature actual = signature_of(spec);
  if (declared.v != actual.v) {
    check.diffs.push_back("v: signature " + std::to_string(declared.v) + ", spec " + std::to_string(actual.v));
  }
  const GroupType declared_type(declared.type_parts);
  const GroupType actual_type(actual.type_parts);
  if (declared_type != actual_type) {
    check.diffs.push_back("T: signature " + declared_type.str() + ", spec " + actual_type.str());
  }
  if (declared.classes.size() != actual.classes.size()) {
    check.diffs.push_back("M: signature has " + std::to_string(declared.classes.size()) + " orbit classes, spec " +
                          std::to_string(actual.classes.size()));
  } else {
    for (std::size_t i = 0; i < actual.classes.size(); ++i) {
      const auto& d = declared.classes[i];
      const auto& a = actual.classes[i];
      const auto who = "M[" + std::to_string(i) + "]";
      if (d.block_count != a.block_count) {
        check.diffs.push_back(who + " block count: signature " + std::to_string(d.block_count) + ", spec " +
                              std::to_string(a.block_count));
      }
      if (d.j_count != a.j_count) {
        check.diffs.push_back(who + " j count: signature " + std::to_string(d.j_count) + ", spec " +
                              std::to_string(a.j_count));
      }
      if (d.segments != a.segments) check.diffs.push_back(who + " segments differ");
    }
  }
  check.ok = check.diffs.empty();
  return check;
}

}  // namespace gdd
