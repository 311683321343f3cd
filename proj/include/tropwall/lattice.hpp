#pragma once

#include "tropwall/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace tw {

// Element of the lattice generated by gamma_1..gamma_l1, eta_1..eta_l2.
struct Charge {
    std::vector<int> g;
    std::vector<int> e;

    Charge() = default;
    Charge(std::vector<int> gamma, std::vector<int> eta) : g(std::move(gamma)), e(std::move(eta)) {}

    static Charge zero(int l1, int l2);
    static Charge gamma(int l1, int l2, int i, int m = 1);
    static Charge eta(int l1, int l2, int j, int m = 1);
    // a*gamma + b*eta in the rank-two lattice.
    static Charge two(int a, int b) { return Charge({a}, {b}); }

    int l1() const { return static_cast<int>(g.size()); }
    int l2() const { return static_cast<int>(e.size()); }
    int gamma_sum() const;
    int eta_sum() const;
    bool is_zero() const;
    bool is_nonnegative() const;
    // gcd of all coefficients (0 for the zero charge)
    int content() const;

    Charge operator+(const Charge& o) const;
    Charge operator-(const Charge& o) const;
    Charge operator-() const;
    Charge operator*(int m) const;
    Charge& operator+=(const Charge& o);

    auto operator<=>(const Charge&) const = default;
    bool operator==(const Charge&) const = default;

    std::string str() const;
};

struct ReducedCharge {
    int x = 0;
    int y = 0;
    auto operator<=>(const ReducedCharge&) const = default;
    bool operator==(const ReducedCharge&) const = default;
};

// <gamma_i, eta_j> = kappa, same-type pairings vanish.
int pairing(const Charge& a, const Charge& b, int kappa = 1);
// a*gamma + b*eta -> (b, a)
ReducedCharge reduce(const Charge& a);
bool is_primitive(ReducedCharge r);

struct WeightVector {
    std::vector<int> w1;  // parts along (0,1)
    std::vector<int> w2;  // parts along (1,0)

    void validate() const;
    int total1() const;
    int total2() const;
    int size() const { return static_cast<int>(w1.size() + w2.size()); }
    // w' : drop the root part w_11
    WeightVector without_root() const;
    long long weight_square_product() const;
    // "1+1,1+2" -> ((1,1),(1,2))
    static WeightVector parse(const std::string& s);
    std::string str() const;
    bool operator==(const WeightVector&) const = default;
};

long long aut_weight_vector(const WeightVector& w);

enum class Side { Plus, Minus, Critical };

struct ComplexQ {
    Rational re;
    Rational im;
    ComplexQ operator+(const ComplexQ& o) const { return {re + o.re, im + o.im}; }
    ComplexQ operator*(const Rational& s) const { return {re * s, im * s}; }
    bool operator==(const ComplexQ&) const = default;
};

// sign of cross(a,b) > 0 means b is counterclockwise of a
Rational cross(const ComplexQ& a, const ComplexQ& b);

struct CentralChargeConfig {
    Side side = Side::Plus;
    ComplexQ z_gamma;
    ComplexQ z_eta;

    static CentralChargeConfig plus_default();
    static CentralChargeConfig minus_default();
    static CentralChargeConfig critical_default();

    ComplexQ Z(const Charge& a) const;
    ComplexQ Z(int a, int b) const;
    void validate() const;
};

// Clockwise angular order of Z; equal slopes stay adjacent.
std::vector<Charge> slope_order(const CentralChargeConfig& config, std::vector<Charge> charges);

nlohmann::json charge_json(const Charge& c);
Charge charge_from_json(const nlohmann::json& j);
nlohmann::json weight_json(const WeightVector& w);
WeightVector weight_from_json(const nlohmann::json& j);

}  // namespace tw
