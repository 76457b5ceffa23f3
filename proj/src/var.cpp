#include "odf/var.hpp"

#include <algorithm>
#include <cctype>

namespace odf {

Var::Var(std::string name, std::vector<std::uint32_t> jet)
    : name_(std::move(name)), jet_(std::move(jet)) {
  while (!jet_.empty() && jet_.back() == 0) jet_.pop_back();
}

std::uint32_t Var::order() const noexcept {
  std::uint32_t total = 0;
  for (auto e : jet_) total += e;
  return total;
}

std::uint32_t Var::jet_component(std::size_t i) const noexcept {
  return i >= 1 && i <= jet_.size() ? jet_[i - 1] : 0;
}

Var Var::derived(std::size_t i) const {
  std::vector<std::uint32_t> next = jet_;
  if (next.size() < i) next.resize(i, 0);
  ++next[i - 1];
  return Var(name_, std::move(next));
}

std::strong_ordering natural_compare(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t i_end = i;
      std::size_t j_end = j;
      while (i_end < a.size() && is_digit(a[i_end])) ++i_end;
      while (j_end < b.size() && is_digit(b[j_end])) ++j_end;
      // Compare numerically: strip leading zeros, then by length, then digits.
      std::size_t i0 = i;
      std::size_t j0 = j;
      while (i0 + 1 < i_end && a[i0] == '0') ++i0;
      while (j0 + 1 < j_end && b[j0] == '0') ++j0;
      if (auto c = (i_end - i0) <=> (j_end - j0); c != 0) return c;
      if (int c = a.compare(i0, i_end - i0, b, j0, j_end - j0); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      if (auto c = (i_end - i) <=> (j_end - j); c != 0) return c;
      i = i_end;
      j = j_end;
      continue;
    }
    if (auto c = a[i] <=> b[j]; c != 0) return c;
    ++i;
    ++j;
  }
  return (a.size() - i) <=> (b.size() - j);
}

std::strong_ordering rank_compare(const Var& a, const Var& b) {
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  std::size_t n = std::max(a.jet().size(), b.jet().size());
  for (std::size_t k = 1; k <= n; ++k) {
    if (auto c = a.jet_component(k) <=> b.jet_component(k); c != 0) return c;
  }
  // Names rank in natural order: the smaller name is the higher-ranked one.
  return natural_compare(b.name(), a.name());
}

std::string render(const Var& v, std::size_t derivations) {
  if (v.jet().empty()) return v.name();
  if (derivations <= 1 && v.jet().size() <= 1) {
    auto k = v.jet_component(1);
    if (k <= 3) return v.name() + std::string(k, '\'');
  }
  std::string out = v.name() + "[";
  std::size_t n = std::max(derivations, v.jet().size());
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) out += ',';
    out += std::to_string(v.jet_component(k));
  }
  return out + "]";
}

}  // namespace odf
