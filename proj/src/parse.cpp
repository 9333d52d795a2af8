#include <cctype>

#include "pml/error.hpp"
#include "pml/formula.hpp"

namespace pml {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

  Formula run_atom() {
    skip_ws();
    Formula f = parse_atom_token();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("expected a single atom", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::imp(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) return Formula::neg(parse_unary());
    if (accept("(")) {
      Formula f = parse_imp();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    return parse_atom_token();
  }

  Formula parse_atom_token() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (!std::isalpha(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view ident = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && text_[pos_] == '_') {
      std::optional<Sort> sort;
      if (pos_ + 1 < text_.size()) sort = sort_from_char(text_[pos_ + 1]);
      bool terminated = pos_ + 2 >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[pos_ + 2])) ||
                                                        text_[pos_ + 2] == '_');
      if (!sort || !terminated) throw ParseError("expected sort suffix _m, _i or _c", pos_);
      pos_ += 2;
      note_kind(true, start);
      return Formula::var(ident, *sort);
    }
    if (ident == "bot") return Formula::bottom();
    note_kind(false, start);
    return Formula::ordinary(ident);
  }

  void note_kind(bool sorted, std::size_t at) {
    if (sorted ? seen_ordinary_ : seen_sorted_)
      throw MixedAtomKinds("sorted and ordinary atoms cannot be mixed in one formula", at);
    (sorted ? seen_sorted_ : seen_ordinary_) = true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool seen_sorted_ = false;
  bool seen_ordinary_ = false;
};

}  // namespace

ParsedFormula parse(std::string_view text) {
  Formula f = Parser(text).run();
  if (f.has_ordinary_vars()) return OrdinaryFormula(f);
  return f;
}

Formula parse_sorted(std::string_view text) {
  Formula f = Parser(text).run();
  if (f.has_ordinary_vars()) throw ParseError("expected sorted atoms (X_m, X_i, X_c)", 0);
  return f;
}

OrdinaryFormula parse_ordinary(std::string_view text) {
  Formula f = Parser(text).run();
  if (f.has_sorted_vars()) throw ParseError("expected ordinary atoms (bare identifiers)", 0);
  return OrdinaryFormula(f);
}

Formula parse_atom(std::string_view text) { return Parser(text).run_atom(); }

}  // namespace pml
