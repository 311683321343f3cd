#include "tropwall/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace tw {

void Laurent::add_term(int e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent Laurent::monomial(int half_exp, const Rational& c) {
    Laurent r;
    r.add_term(half_exp, c);
    return r;
}

Laurent Laurent::qint(int k) {
    if (k < 0) return -qint(-k);
    Laurent r;
    for (int j = 0; j < k; ++j) r.add_term(2 * j - k + 1, 1);
    return r;
}

Rational Laurent::coeff(int half_exp) const {
    auto it = terms_.find(half_exp);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Laurent::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero");
    return terms_.begin()->first;
}

int Laurent::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero");
    return terms_.rbegin()->first;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Laurent& Laurent::operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

Laurent Laurent::pow(int n) const {
    if (n < 0) throw std::invalid_argument("Laurent::pow: negative exponent");
    Laurent r = 1;
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
}

Laurent Laurent::bar() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

Rational Laurent::eval(const Rational& sqrt_q) const {
    Rational r = 0;
    for (const auto& [e, c] : terms_) {
        if (e < 0 && sqrt_q == 0) throw std::domain_error("Laurent::eval at 0");
        Rational p = 1;
        Rational base = e >= 0 ? sqrt_q : 1 / sqrt_q;
        for (int i = 0; i < std::abs(e); ++i) p *= base;
        r += c * p;
    }
    return r;
}

std::optional<Laurent> Laurent::divide_exact(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero Laurent polynomial");
    Laurent rem = *this;
    Laurent quo;
    const int dmax = d.max_exp();
    const Rational lead = d.coeff(dmax);
    while (!rem.is_zero()) {
        if (rem.max_exp() - rem.min_exp() < d.max_exp() - d.min_exp()) return std::nullopt;
        Laurent t = monomial(rem.max_exp() - dmax, rem.coeff(rem.max_exp()) / lead);
        quo += t;
        rem -= t * d;
    }
    return quo;
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        std::string mag = to_string(abs(c));
        if (e == 0) { os << mag; first = false; continue; }
        if (mag != "1") os << mag << "*";
        os << "q^(" << (e % 2 == 0 ? std::to_string(e / 2) : std::to_string(e) + "/2") << ")";
        first = false;
    }
    return os.str();
}

nlohmann::json Laurent::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = to_string(c);
    return j;
}

Laurent Laurent::from_json(const nlohmann::json& j) {
    Laurent r;
    for (const auto& [k, v] : j.items()) r.add_term(std::stoi(k), rational_from_json(v));
    return r;
}

}  // namespace tw
