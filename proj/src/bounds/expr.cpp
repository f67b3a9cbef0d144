#include "bounds/expr.hpp"

#include <cctype>

#include "common/error.hpp"

namespace tcwb::bounds {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprPtr parse() {
    auto e = expr();
    skip_space();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse, "position " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  static bool word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '{' && c != '}' && c != ',';
  }

  // Peeks the next whitespace/paren-delimited word without consuming it.
  std::string peek_word() {
    skip_space();
    std::size_t end = pos_;
    while (end < s_.size() && word_char(s_[end])) ++end;
    return s_.substr(pos_, end - pos_);
  }

  ExprPtr expr() {
    auto lhs = term();
    while (peek_word() == "v") {
      pos_ += 1;
      lhs = make_wedge(lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = factor();
    while (peek_word() == "x") {
      pos_ += 1;
      lhs = make_product(lhs, factor());
    }
    return lhs;
  }

  ExprPtr factor() {
    auto base = primary();
    skip_space();
    while (pos_ < s_.size() && s_[pos_] == '{') {
      auto e = std::make_shared<Expr>(*base);
      ++pos_;
      while (true) {
        std::string w = peek_word();
        if (w == "lie") {
          e->lie = true;
        } else if (w.rfind("conn=", 0) == 0 && w.size() > 5 &&
                   w.find_first_not_of("0123456789", 5) == std::string::npos) {
          e->conn = std::stol(w.substr(5));
        } else {
          error("unknown attribute '" + w + "' (expected lie or conn=<k>)");
        }
        pos_ += w.size();
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == '}') {
          ++pos_;
          break;
        }
        error("expected ',' or '}'");
      }
      base = e;
      skip_space();
    }
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    if (s_[pos_] == '(') {
      ++pos_;
      auto e = expr();
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] != ')') error("expected ')'");
      ++pos_;
      return e;
    }
    const std::size_t start = pos_;
    std::string w = peek_word();
    if (w.empty()) error("expected a space name");
    auto e = std::make_shared<Expr>();
    auto number_after = [&](std::size_t skip) -> std::optional<std::size_t> {
      if (w.size() <= skip || w.find_first_not_of("0123456789", skip) != std::string::npos) return std::nullopt;
      return std::stoul(w.substr(skip));
    };
    if (w == "point") {
      e->atom = AtomKind::point;
    } else if (w == "RP2") {
      e->atom = AtomKind::rp2;
    } else if (w.rfind("file:", 0) == 0) {
      if (w.size() == 5) error("empty file path");
      e->atom = AtomKind::file;
      e->path = w.substr(5);
    } else if (w[0] == 'S' && number_after(1)) {
      e->atom = AtomKind::sphere;
      e->n = *number_after(1);
      if (e->n == 0) error("S0 is not supported (spaces must be connected)");
    } else if (w[0] == 'T' && number_after(1)) {
      e->atom = AtomKind::torus;
      e->n = *number_after(1);
      if (e->n == 0) error("T0 is not a torus");
    } else {
      pos_ = start;
      error("unknown atom '" + w + "'");
    }
    pos_ += w.size();
    return e;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Expr::text() const {
  std::string out;
  if (kind == NodeKind::product) {
    out = "(" + left->text() + " x " + right->text() + ")";
  } else if (kind == NodeKind::wedge) {
    out = "(" + left->text() + " v " + right->text() + ")";
  } else {
    switch (atom) {
      case AtomKind::sphere: out = "S" + std::to_string(n); break;
      case AtomKind::torus: out = "T" + std::to_string(n); break;
      case AtomKind::rp2: out = "RP2"; break;
      case AtomKind::point: out = "point"; break;
      case AtomKind::file: out = "file:" + path; break;
    }
  }
  if (lie || conn) {
    out += "{";
    if (lie) out += "lie";
    if (conn) out += std::string(lie ? "," : "") + "conn=" + std::to_string(*conn);
    out += "}";
  }
  return out;
}

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

ExprPtr make_product(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::product;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

ExprPtr make_wedge(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::wedge;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

}  // namespace tcwb::bounds
