#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hc/formula.hpp"

namespace hc {

// Linearly ordered set of formulas; the basis for dependency bitstrings.
class Foundation {
 public:
  Foundation() = default;

  // Default deterministic order: atoms by name ascending, then compound
  // formulas by (depth ascending, text ascending).
  static Foundation from_formulas(const std::vector<FormulaPtr>& formulas);
  // Uses the given order verbatim; `formulas` must be covered by it.
  static Foundation with_order(const std::vector<FormulaPtr>& order);

  int size() const { return static_cast<int>(formulas_.size()); }
  const FormulaPtr& at(int i) const { return formulas_.at(i); }
  const std::vector<FormulaPtr>& formulas() const { return formulas_; }
  int index_of(const Formula& f) const;  // throws when absent
  std::optional<int> find(const Formula& f) const;
  bool contains(const Formula& f) const { return find(f).has_value(); }

 private:
  std::vector<FormulaPtr> formulas_;
  std::unordered_map<std::string, int> index_;
};

// Fixed-width dependency bitstring over a foundation; bit i is the i-th
// formula, most significant ordinal first when rendered as text.
class DepSet {
 public:
  DepSet() = default;
  static DepSet zeros(int width);
  static DepSet singleton(const Foundation& f, const Formula& x);
  static DepSet of(const Foundation& f, const std::vector<FormulaPtr>& subset);
  static DepSet from_string(const std::string& bits);

  int width() const { return width_; }
  bool test(int i) const;
  void set(int i, bool value = true);
  bool none() const;
  int count() const;

  DepSet unioned(const DepSet& other) const;  // width mismatch throws
  DepSet minus(const Foundation& f, const Formula& x) const;
  std::string to_string() const;
  std::vector<FormulaPtr> to_set(const Foundation& f) const;

  friend bool operator==(const DepSet& a, const DepSet& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }
  friend bool operator!=(const DepSet& a, const DepSet& b) { return !(a == b); }
  friend bool operator<(const DepSet& a, const DepSet& b) {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    return a.words_ < b.words_;
  }

 private:
  void check_width(const DepSet& other) const;
  std::vector<std::uint64_t> words_;
  int width_ = 0;
};

DepSet set_to_bits(const Foundation& f, const std::vector<FormulaPtr>& subset);
std::vector<FormulaPtr> bits_to_set(const Foundation& f, const DepSet& d);

// Clears x's bit when x is in the foundation; identity otherwise.  Formulas
// outside the foundation never occur in dependency sets, so a vacuous
// discharge subtracts nothing.
DepSet subtract_formula(const Foundation& f, const DepSet& d, const Formula& x);

}  // namespace hc
