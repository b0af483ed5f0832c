#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "nvfix/nmap.hpp"

namespace nvfix::test {

inline Rational R(const char* text) { return Rational::parse(text); }

inline PlFunction strand(std::initializer_list<std::pair<const char*, const char*>> pts) {
  std::vector<Breakpoint> bps;
  for (const auto& [t, v] : pts) bps.push_back({R(t), R(v)});
  return PlFunction(std::move(bps));
}

inline NValuedCircleMap identity_map() { return NValuedCircleMap({strand({{"0", "0"}, {"1", "1"}})}, {0}); }

inline NValuedCircleMap constant(std::initializer_list<const char*> values) {
  std::vector<Rational> v;
  for (const char* s : values) v.push_back(R(s));
  return constant_map(v);
}

// Fixed points of linear_map(n, d) in [0, 1), solved by hand: the strand
// (dt + k)/n meets t + m at t = (nm - k)/(d - n).
inline std::vector<Rational> linear_fixed_points(int n, long d) {
  std::vector<Rational> out;
  if (d == n) return out;
  for (int k = 0; k < n; ++k) {
    for (long m = -40; m <= 40; ++m) {
      const Rational t(n * m - k, d - n);
      if (t.sign() >= 0 && t < 1) out.push_back(t);
    }
  }
  return out;
}

}  // namespace nvfix::test
