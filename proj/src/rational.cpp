#include "tropwall/rational.hpp"

#include <stdexcept>

namespace tw {

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
        BigInt num(std::string(s.substr(0, slash)));
        BigInt den(std::string(s.substr(slash + 1)));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num) / Rational(den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: " + std::string(s));
    }
}

Rational binomial(const Rational& n, int j) {
    Rational r = 1;
    for (int i = 0; i < j; ++i) r = r * (n - i) / (i + 1);
    return r;
}

nlohmann::json rational_json(const Rational& r) {
    return {{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

}  // namespace tw
