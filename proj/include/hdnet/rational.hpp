#pragma once

// Exact rational scalar for the game solver, backed by GMP.

#include <string>

#include <gmpxx.h>

#include "hdnet/simplex.hpp"

namespace hdnet {

using Rational = mpq_class;

// Exact conversion: every finite double is a dyadic rational.
inline Rational to_rational(double x) { return Rational(x); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace hdnet

namespace hdnet::lp {

template <>
struct ScalarTraits<mpq_class> {
  static bool positive(const mpq_class& x) { return sgn(x) > 0; }
  static bool negative(const mpq_class& x) { return sgn(x) < 0; }
  static mpq_class from_double(double x) { return mpq_class(x); }
  static double to_double(const mpq_class& x) { return x.get_d(); }
  static bool less(const mpq_class& a, const mpq_class& b) { return a < b; }
};

}  // namespace hdnet::lp
