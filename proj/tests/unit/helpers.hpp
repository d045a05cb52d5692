#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "fairdiv/core_model.hpp"

namespace fairdiv {

inline doctest::String toString(const Rational& q) { return to_string(q).c_str(); }

inline Rational r(long num, long den = 1) { return Rational(num, den); }

inline Problem goods(const std::vector<std::vector<Rational>>& rows) { return validate_problem(rows, ItemKind::goods); }
inline Problem bads(const std::vector<std::vector<Rational>>& rows) { return validate_problem(rows, ItemKind::bads); }

inline Allocation alloc(const std::vector<std::vector<Rational>>& rows) {
  return Allocation(RationalMatrix::from_rows(rows));
}

inline std::string show(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + to_string(v[k]);
  return out + ")";
}

}  // namespace fairdiv

#define CHECK_THROWS_CODE(expr, expected)                         \
  do {                                                            \
    bool thrown_ = false;                                         \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const ::fairdiv::Error& e_) {                        \
      thrown_ = true;                                             \
      CHECK_MESSAGE(e_.code() == (expected), e_.what());          \
    }                                                             \
    CHECK_MESSAGE(thrown_, "expected an exception from " #expr); \
  } while (false)
