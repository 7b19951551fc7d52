#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Purely implicational formula: an atom or alpha > beta.  Immutable; value
// identity is structural and the canonical text form doubles as a cheap key.
class Formula {
 public:
  static FormulaPtr atom(std::string name);
  static FormulaPtr imp(FormulaPtr antecedent, FormulaPtr succedent);

  bool is_atom() const { return !antecedent_; }
  const std::string& atom_name() const { return atom_name_; }
  const FormulaPtr& antecedent() const { return antecedent_; }
  const FormulaPtr& succedent() const { return succedent_; }

  // Canonical form: `>` right-associative, parentheses only around a
  // left-nested antecedent.  "A1>(A2>A3)" prints as "A1>A2>A3".
  const std::string& text() const { return text_; }
  int depth() const { return depth_; }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.text_ == b.text_;
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  Formula() = default;
  std::string atom_name_;
  FormulaPtr antecedent_;
  FormulaPtr succedent_;
  std::string text_;
  int depth_ = 0;
};

bool same_formula(const FormulaPtr& a, const FormulaPtr& b);

// Grammar: formula := item ('>' formula)? ; item := atom | '(' formula ')'.
// Atoms over [A-Za-z0-9_]+.  Throws ParseError with the offending position.
FormulaPtr parse_formula(std::string_view text);

}  // namespace hc
