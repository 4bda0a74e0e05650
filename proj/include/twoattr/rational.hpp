#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twoattr/errors.hpp"

namespace twoattr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

// Accepts "7", "-3/4" and plain decimals such as "0.125" or "1e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
bool is_integer(const Rational& q);

// Overflow-checked int64 arithmetic; overflow raises BudgetError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const BigInt& v);

std::vector<std::int64_t> parse_int_list(std::string_view text, char sep = ',');
std::string format_int_list(const std::vector<std::int64_t>& v, char sep = ',');

}  // namespace twoattr
