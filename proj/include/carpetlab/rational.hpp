#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace carpetlab {

// Exact arithmetic everywhere on the decision path; no floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A point of the unit cube with exact rational coordinates, one per axis.
using ExactPoint = std::vector<Rational>;

// Serialized as "num/den" with explicit denominator ("0/1", "3/4", "-1/2").
std::string to_fraction(const Rational& r);

// Accepts "num/den" or a bare integer string. Throws input_error on anything else.
Rational parse_fraction(const std::string& s);

// "(p/q,r/s)" tuple form used in DOT labels and human summaries.
std::string point_to_string(const ExactPoint& p);

}  // namespace carpetlab
