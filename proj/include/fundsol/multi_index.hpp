#ifndef FUNDSOL_MULTI_INDEX_HPP
#define FUNDSOL_MULTI_INDEX_HPP

#include <compare>
#include <string>
#include <vector>

namespace fundsol {

/// Multi-index in n variables: a tuple of non-negative integers.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int axis);

  int dim() const { return static_cast<int>(entries.size()); }
  int order() const;
  int operator[](int i) const { return entries[i]; }
  int& operator[](int i) { return entries[i]; }

  auto operator<=>(const MultiIndex&) const = default;

  /// x^alpha for a point x (sizes must match).
  double monomial(const std::vector<double>& x) const;

  /// "a1,a2,...,an"
  std::string str() const;
  static MultiIndex parse(const std::string& s, int n);
};

/// All multi-indices in n variables with order <= d, in a fixed
/// deterministic order (graded lexicographic).
std::vector<MultiIndex> multi_indices_up_to(int n, int d);

/// All multi-indices in n variables with order exactly d.
std::vector<MultiIndex> multi_indices_of_order(int n, int d);

}  // namespace fundsol

#endif
