#include "hc/foundation.hpp"

#include <algorithm>
#include <bit>

namespace hc {

Foundation Foundation::from_formulas(const std::vector<FormulaPtr>& formulas) {
  std::vector<FormulaPtr> atoms, compounds;
  std::set<std::string> seen;
  for (const auto& f : formulas) {
    if (!seen.insert(f->text()).second) continue;
    (f->is_atom() ? atoms : compounds).push_back(f);
  }
  auto by_text = [](const FormulaPtr& a, const FormulaPtr& b) {
    return a->text() < b->text();
  };
  std::sort(atoms.begin(), atoms.end(), by_text);
  std::sort(compounds.begin(), compounds.end(),
            [&](const FormulaPtr& a, const FormulaPtr& b) {
              if (a->depth() != b->depth()) return a->depth() < b->depth();
              return a->text() < b->text();
            });
  atoms.insert(atoms.end(), compounds.begin(), compounds.end());
  Foundation out;
  out.formulas_ = std::move(atoms);
  for (int i = 0; i < static_cast<int>(out.formulas_.size()); ++i)
    out.index_.emplace(out.formulas_[i]->text(), i);
  return out;
}

Foundation Foundation::with_order(const std::vector<FormulaPtr>& order) {
  Foundation out;
  out.formulas_ = order;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    if (!out.index_.emplace(order[i]->text(), i).second)
      throw Error("duplicate formula in explicit order: " + order[i]->text());
  }
  return out;
}

int Foundation::index_of(const Formula& f) const {
  auto it = index_.find(f.text());
  if (it == index_.end())
    throw Error("formula not in foundation: " + f.text());
  return it->second;
}

std::optional<int> Foundation::find(const Formula& f) const {
  auto it = index_.find(f.text());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DepSet DepSet::zeros(int width) {
  DepSet d;
  d.width_ = width;
  d.words_.assign((width + 63) / 64, 0);
  return d;
}

DepSet DepSet::singleton(const Foundation& f, const Formula& x) {
  DepSet d = zeros(f.size());
  d.set(f.index_of(x));
  return d;
}

DepSet DepSet::of(const Foundation& f, const std::vector<FormulaPtr>& subset) {
  DepSet d = zeros(f.size());
  for (const auto& x : subset) d.set(f.index_of(*x));
  return d;
}

DepSet DepSet::from_string(const std::string& bits) {
  DepSet d = zeros(static_cast<int>(bits.size()));
  for (int i = 0; i < static_cast<int>(bits.size()); ++i) {
    if (bits[i] == '1')
      d.set(i);
    else if (bits[i] != '0')
      throw Error("invalid bitstring: " + bits);
  }
  return d;
}

bool DepSet::test(int i) const {
  if (i < 0 || i >= width_) throw Error("bit index out of range");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void DepSet::set(int i, bool value) {
  if (i < 0 || i >= width_) throw Error("bit index out of range");
  if (value)
    words_[i / 64] |= (std::uint64_t{1} << (i % 64));
  else
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

bool DepSet::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

int DepSet::count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

void DepSet::check_width(const DepSet& other) const {
  if (width_ != other.width_)
    throw Error("dependency set width mismatch: " + std::to_string(width_) +
                " vs " + std::to_string(other.width_));
}

DepSet DepSet::unioned(const DepSet& other) const {
  check_width(other);
  DepSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

DepSet DepSet::minus(const Foundation& f, const Formula& x) const {
  if (f.size() != width_) throw Error("foundation width mismatch");
  DepSet out = *this;
  out.set(f.index_of(x), false);
  return out;
}

std::string DepSet::to_string() const {
  std::string s(width_, '0');
  for (int i = 0; i < width_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::vector<FormulaPtr> DepSet::to_set(const Foundation& f) const {
  if (f.size() != width_) throw Error("foundation width mismatch");
  std::vector<FormulaPtr> out;
  for (int i = 0; i < width_; ++i)
    if (test(i)) out.push_back(f.at(i));
  return out;
}

DepSet set_to_bits(const Foundation& f, const std::vector<FormulaPtr>& subset) {
  return DepSet::of(f, subset);
}

std::vector<FormulaPtr> bits_to_set(const Foundation& f, const DepSet& d) {
  return d.to_set(f);
}

DepSet subtract_formula(const Foundation& f, const DepSet& d, const Formula& x) {
  if (!f.contains(x)) return d;
  return d.minus(f, x);
}

}  // namespace hc
