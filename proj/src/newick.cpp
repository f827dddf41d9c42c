#include "umt/newick.hpp"

#include <cctype>
#include <unordered_set>

#include "umt/errors.hpp"

namespace umt {

namespace {

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

  PhyloTree tree() {
    PhyloTree t;
    node(t, kNoNode);
    skip_ws();
    expect(';');
    check_labels(t);
    return t;
  }

  std::size_t pos() const { return pos_; }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

 private:
  void node(PhyloTree& t, NodeId parent) {
    skip_ws();
    if (peek() == '(') {
      const auto open = pos_;
      ++pos_;
      const auto id = t.add_node(parent);
      std::size_t kids = 0;
      while (true) {
        node(t, id);
        ++kids;
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
      if (kids < 2) throw ParseError("internal node needs at least two children", open);
      skip_ws();
      if (label_char(peek())) t.set_label(id, label());
      skip_ws();
      if (peek() == '#') {
        ++pos_;
        t.set_rank(id, integer());
      }
    } else {
      if (!label_char(peek())) throw ParseError("expected a label or '('", pos_);
      t.add_node(parent, label());
    }
    branch_length();
  }

  std::string label() {
    const auto start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    const auto start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000) throw ParseError("rank out of range", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a rank after '#'", start);
    if (value < 1) throw ParseError("rank must be positive", start);
    return static_cast<int>(value);
  }

  void branch_length() {
    skip_ws();
    if (peek() != ':') return;
    ++pos_;
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || c == '+' ||
          c == '-') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) throw ParseError("expected a branch length after ':'", start);
  }

  void check_labels(const PhyloTree& t) {
    std::unordered_set<std::string> seen;
    for (auto v : t.preorder()) {
      const auto& l = t.node(v).label;
      if (l.empty()) continue;
      if (!seen.insert(l).second) throw ParseError("duplicate label '" + l + "'", pos_);
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_;
};

void write(const PhyloTree& t, NodeId v, std::string& out) {
  const auto& n = t.node(v);
  if (!n.children.empty()) {
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ',';
      write(t, n.children[i], out);
    }
    out += ')';
  }
  out += n.label;
  if (n.rank) out += "#" + std::to_string(*n.rank);
}

}  // namespace

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label)
    if (!label_char(c)) return false;
  return true;
}

PhyloTree parse_newick(std::string_view text) {
  Parser p(text);
  auto t = p.tree();
  if (!p.at_end()) throw ParseError("trailing characters after ';'", p.pos());
  return t;
}

std::vector<PhyloTree> parse_newick_forest(std::string_view text) {
  std::vector<PhyloTree> out;
  Parser p(text);
  while (!p.at_end()) out.push_back(p.tree());
  return out;
}

std::string to_newick(const PhyloTree& tree) {
  std::string out;
  if (!tree.empty()) write(tree, tree.root(), out);
  out += ';';
  return out;
}

}  // namespace umt
