#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <string>
#include <string_view>

namespace tw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view s);

// Generalized binomial coefficient n(n-1)...(n-j+1)/j! for rational n.
Rational binomial(const Rational& n, int j);

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace tw
