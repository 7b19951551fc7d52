#include "hc/formula.hpp"

#include <algorithm>
#include <cctype>

namespace hc {

namespace {

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

FormulaPtr Formula::atom(std::string name) {
  if (name.empty() || !std::all_of(name.begin(), name.end(), atom_char))
    throw Error("invalid atom name: '" + name + "'");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->atom_name_ = name;
  f->text_ = std::move(name);
  f->depth_ = 0;
  return f;
}

FormulaPtr Formula::imp(FormulaPtr antecedent, FormulaPtr succedent) {
  if (!antecedent || !succedent) throw Error("null subformula");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->depth_ = 1 + std::max(antecedent->depth(), succedent->depth());
  if (antecedent->is_atom())
    f->text_ = antecedent->text() + ">" + succedent->text();
  else
    f->text_ = "(" + antecedent->text() + ")>" + succedent->text();
  f->antecedent_ = std::move(antecedent);
  f->succedent_ = std::move(succedent);
  return f;
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty formula", pos_);
    FormulaPtr f = formula();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  FormulaPtr formula() {
    FormulaPtr left = item();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '>') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size())
        throw ParseError("expected formula after '>'", pos_);
      return Formula::imp(std::move(left), formula());
    }
    return left;
  }

  FormulaPtr item() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected formula", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FormulaPtr inner = formula();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (!atom_char(c)) throw ParseError("expected atom or '('", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() && atom_char(text_[pos_])) ++pos_;
    return Formula::atom(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace hc
