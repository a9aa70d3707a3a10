#ifndef QFP_TESTS_SUPPORT_HPP
#define QFP_TESTS_SUPPORT_HPP

#include <doctest.h>

#include <string>
#include <vector>

#include "qfp/poly.hpp"

namespace doctest {
template <>
struct StringMaker<qfp::Polynomial> {
  static String convert(const qfp::Polynomial& f) { return f.to_string().c_str(); }
};
}  // namespace doctest

namespace testing {

inline std::vector<std::string> xyz(int n) {
  std::vector<std::string> all = {"x", "y", "z", "w"};
  return {all.begin(), all.begin() + n};
}

inline qfp::Polynomial P(const char* s, std::uint32_t p, int n) {
  return qfp::parse_poly(s, qfp::Prime(p), xyz(n));
}

}  // namespace testing

#endif
