#pragma once

#include "tropwall/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace tw {

// Laurent polynomial in q^{1/2}; keys are exponents of q^{1/2}.
class Laurent {
public:
    Laurent() = default;
    Laurent(const Rational& c) { if (c != 0) terms_[0] = c; }  // NOLINT: scalars embed
    Laurent(int c) : Laurent(Rational(c)) {}                    // NOLINT

    static Laurent monomial(int half_exp, const Rational& c = 1);
    // symmetric quantum integer [k]_q = (q^{k/2} - q^{-k/2})/(q^{1/2} - q^{-1/2})
    static Laurent qint(int k);

    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int half_exp) const;
    bool is_zero() const { return terms_.empty(); }
    int min_exp() const;
    int max_exp() const;

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator-() const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    Laurent pow(int n) const;
    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }

    // q^{1/2} -> q^{-1/2}
    Laurent bar() const;
    Rational eval(const Rational& sqrt_q) const;
    // exact quotient, or nullopt when the division leaves a remainder
    std::optional<Laurent> divide_exact(const Laurent& d) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static Laurent from_json(const nlohmann::json& j);

private:
    void add_term(int e, const Rational& c);
    std::map<int, Rational> terms_;
};

// Element of the fraction field, kept as an unreduced pair.
struct QFrac {
    Laurent num = 1;
    Laurent den = 1;
    QFrac operator+(const QFrac& o) const { return {num * o.den + o.num * den, den * o.den}; }
    QFrac operator*(const QFrac& o) const { return {num * o.num, den * o.den}; }
    bool operator==(const QFrac& o) const { return num * o.den == o.num * den; }
};

}  // namespace tw
