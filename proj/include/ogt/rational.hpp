#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ogt {

// All cost accounting is done in exact rational arithmetic so that the
// closed-form bounds can be compared against simulated times with plain
// equality.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "12", "-3/4" and decimal literals such as "0.25" (parsed as a
// scaled integer, no floating point involved).
Rat rat_from_string(std::string_view text);

// Canonical form: "n" when the denominator is 1, "n/d" otherwise.
std::string rat_to_string(const Rat& value);

}  // namespace ogt
