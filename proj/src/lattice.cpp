#include "tropwall/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tw {

Charge Charge::zero(int l1, int l2) { return Charge(std::vector<int>(l1, 0), std::vector<int>(l2, 0)); }

Charge Charge::gamma(int l1, int l2, int i, int m) {
    if (i < 0 || i >= l1) throw std::out_of_range("gamma index");
    Charge c = zero(l1, l2);
    c.g[i] = m;
    return c;
}

Charge Charge::eta(int l1, int l2, int j, int m) {
    if (j < 0 || j >= l2) throw std::out_of_range("eta index");
    Charge c = zero(l1, l2);
    c.e[j] = m;
    return c;
}

int Charge::gamma_sum() const { return std::accumulate(g.begin(), g.end(), 0); }
int Charge::eta_sum() const { return std::accumulate(e.begin(), e.end(), 0); }

bool Charge::is_zero() const {
    return std::all_of(g.begin(), g.end(), [](int x) { return x == 0; }) &&
           std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Charge::is_nonnegative() const {
    return std::all_of(g.begin(), g.end(), [](int x) { return x >= 0; }) &&
           std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
}

int Charge::content() const {
    int d = 0;
    for (int x : g) d = std::gcd(d, x);
    for (int x : e) d = std::gcd(d, x);
    return d;
}

static void check_shape(const Charge& a, const Charge& b) {
    if (a.g.size() != b.g.size() || a.e.size() != b.e.size())
        throw std::invalid_argument("charge shape mismatch");
}

Charge Charge::operator+(const Charge& o) const {
    Charge r = *this;
    r += o;
    return r;
}

Charge& Charge::operator+=(const Charge& o) {
    check_shape(*this, o);
    for (size_t i = 0; i < g.size(); ++i) g[i] += o.g[i];
    for (size_t j = 0; j < e.size(); ++j) e[j] += o.e[j];
    return *this;
}

Charge Charge::operator-(const Charge& o) const { return *this + (-o); }

Charge Charge::operator-() const { return *this * -1; }

Charge Charge::operator*(int m) const {
    Charge r = *this;
    for (int& x : r.g) x *= m;
    for (int& x : r.e) x *= m;
    return r;
}

std::string Charge::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](int c, const char* name, size_t idx, size_t n) {
        if (c == 0) return;
        if (!first && c > 0) os << '+';
        if (c == -1) os << '-';
        else if (c != 1) os << c;
        os << name;
        if (n > 1) os << idx + 1;
        first = false;
    };
    for (size_t i = 0; i < g.size(); ++i) put(g[i], "g", i, g.size());
    for (size_t j = 0; j < e.size(); ++j) put(e[j], "e", j, e.size());
    if (first) os << '0';
    return os.str();
}

int pairing(const Charge& a, const Charge& b, int kappa) {
    return kappa * (a.gamma_sum() * b.eta_sum() - a.eta_sum() * b.gamma_sum());
}

ReducedCharge reduce(const Charge& a) { return {a.eta_sum(), a.gamma_sum()}; }

bool is_primitive(ReducedCharge r) {
    if (r.x == 0 && r.y == 0) throw std::invalid_argument("is_primitive: zero vector");
    return std::gcd(std::abs(r.x), std::abs(r.y)) == 1;
}

void WeightVector::validate() const {
    for (const auto* part : {&w1, &w2}) {
        for (size_t i = 0; i < part->size(); ++i) {
            if ((*part)[i] < 1) throw std::invalid_argument("weight parts must be positive");
            if (i > 0 && (*part)[i] < (*part)[i - 1])
                throw std::invalid_argument("weight parts must be nondecreasing");
        }
    }
}

int WeightVector::total1() const { return std::accumulate(w1.begin(), w1.end(), 0); }
int WeightVector::total2() const { return std::accumulate(w2.begin(), w2.end(), 0); }

WeightVector WeightVector::without_root() const {
    WeightVector r = *this;
    if (!r.w1.empty()) r.w1.erase(r.w1.begin());
    return r;
}

long long WeightVector::weight_square_product() const {
    long long p = 1;
    for (int x : w1) p *= static_cast<long long>(x) * x;
    for (int x : w2) p *= static_cast<long long>(x) * x;
    return p;
}

static std::vector<int> parse_parts(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad weight part: " + tok);
        out.push_back(v);
    }
    return out;
}

WeightVector WeightVector::parse(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("weight vector needs 'w1,w2': " + s);
    WeightVector w;
    try {
        w.w1 = parse_parts(s.substr(0, comma));
        w.w2 = parse_parts(s.substr(comma + 1));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad weight vector: " + s);
    }
    std::sort(w.w1.begin(), w.w1.end());
    std::sort(w.w2.begin(), w.w2.end());
    w.validate();
    return w;
}

std::string WeightVector::str() const {
    auto part = [](const std::vector<int>& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    return "(" + part(w1) + "," + part(w2) + ")";
}

long long aut_weight_vector(const WeightVector& w) {
    long long r = 1;
    for (const auto* part : {&w.w1, &w.w2}) {
        std::map<int, int> mult;
        for (int x : *part) ++mult[x];
        for (auto [v, m] : mult)
            for (int i = 2; i <= m; ++i) r *= i;
    }
    return r;
}

Rational cross(const ComplexQ& a, const ComplexQ& b) { return a.re * b.im - a.im * b.re; }

CentralChargeConfig CentralChargeConfig::plus_default() {
    return {Side::Plus, {1, 2}, {2, 1}};
}

CentralChargeConfig CentralChargeConfig::minus_default() {
    return {Side::Minus, {2, 1}, {1, 2}};
}

CentralChargeConfig CentralChargeConfig::critical_default() {
    return {Side::Critical, {1, 1}, {2, 2}};
}

ComplexQ CentralChargeConfig::Z(int a, int b) const { return z_gamma * Rational(a) + z_eta * Rational(b); }

ComplexQ CentralChargeConfig::Z(const Charge& c) const { return Z(c.gamma_sum(), c.eta_sum()); }

void CentralChargeConfig::validate() const {
    Rational x = cross(z_gamma, z_eta);
    switch (side) {
        case Side::Plus:
            if (x >= 0) throw std::invalid_argument("Plus side needs Z(gamma) counterclockwise of Z(eta)");
            break;
        case Side::Minus:
            if (x <= 0) throw std::invalid_argument("Minus side needs Z(eta) counterclockwise of Z(gamma)");
            break;
        case Side::Critical:
            if (x != 0) throw std::invalid_argument("Critical side needs aligned central charges");
            break;
    }
}

std::vector<Charge> slope_order(const CentralChargeConfig& config, std::vector<Charge> charges) {
    if (config.side == Side::Critical)
        throw std::domain_error("slope_order: degenerate (critical) configuration");
    for (const auto& c : charges)
        if (!c.is_nonnegative() || c.is_zero())
            throw std::invalid_argument("slope_order: charge outside the positive cone: " + c.str());
    std::stable_sort(charges.begin(), charges.end(), [&](const Charge& a, const Charge& b) {
        return cross(config.Z(a), config.Z(b)) < 0;
    });
    return charges;
}

nlohmann::json charge_json(const Charge& c) { return nlohmann::json::array({c.g, c.e}); }

Charge charge_from_json(const nlohmann::json& j) {
    return Charge(j.at(0).get<std::vector<int>>(), j.at(1).get<std::vector<int>>());
}

nlohmann::json weight_json(const WeightVector& w) { return {{"w1", w.w1}, {"w2", w.w2}}; }

WeightVector weight_from_json(const nlohmann::json& j) {
    WeightVector w{j.at("w1").get<std::vector<int>>(), j.at("w2").get<std::vector<int>>()};
    w.validate();
    return w;
}

}  // namespace tw
