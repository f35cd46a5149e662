#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>

#include "field.hpp"

namespace ncx {

inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline int floor_mod(int a, int b) { return a - floor_div(a, b) * b; }

/// Degrees carried by a complex: a bounded interval [lo, hi] (empty when
/// lo > hi) or all of Z with period `period`.
struct Support {
  bool periodic = false;
  int lo = 0;
  int hi = -1;
  int period = 0;

  static Support bounded(int lo, int hi) { return {false, lo, hi, 0}; }
  static Support cyclic(int period) {
    if (period < 1) throw Error("Support: period must be >= 1");
    return {true, 0, period - 1, period};
  }

  bool empty() const { return !periodic && lo > hi; }
  std::size_t size() const {
    if (periodic) return static_cast<std::size_t>(period);
    return lo > hi ? 0 : static_cast<std::size_t>(hi - lo + 1);
  }
  /// Storage slot of degree i, if stored.
  std::optional<std::size_t> index(int i) const {
    if (periodic) return static_cast<std::size_t>(floor_mod(i, period));
    if (i < lo || i > hi) return std::nullopt;
    return static_cast<std::size_t>(i - lo);
  }
  int degree(std::size_t slot) const { return periodic ? static_cast<int>(slot) : lo + static_cast<int>(slot); }

  bool operator==(const Support& o) const {
    if (periodic != o.periodic) return false;
    return periodic ? period == o.period : (lo == o.lo && hi == o.hi) || (empty() && o.empty());
  }

  std::string describe() const {
    if (periodic) return "periodic(" + std::to_string(period) + ")";
    return "bounded[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  }
};

/// A closed range of degrees to scan.
struct DegreeRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return lo > hi; }
};

}  // namespace ncx
