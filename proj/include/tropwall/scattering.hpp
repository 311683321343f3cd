#pragma once

#include "tropwall/lattice.hpp"
#include "tropwall/torus.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tw {

// Q[eps]/(eps^{order+1})
class EpsPoly {
public:
    EpsPoly() : c_(1) {}
    explicit EpsPoly(int order) : c_(order + 1) {}
    static EpsPoly constant(int order, const Rational& v);
    static EpsPoly eps(int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int i) const { return c_.at(i); }
    Rational& operator[](int i) { return c_.at(i); }
    bool is_zero() const;

    EpsPoly operator+(const EpsPoly& o) const;
    EpsPoly operator-(const EpsPoly& o) const;
    EpsPoly operator*(const EpsPoly& o) const;
    EpsPoly operator*(const Rational& s) const;
    EpsPoly& operator+=(const EpsPoly& o);
    bool operator==(const EpsPoly& o) const { return c_ == o.c_; }

    std::string str() const;
    nlohmann::json to_json() const;

private:
    std::vector<Rational> c_;
};

// Series in the tied elements x_d = (s,t)^d e_d, with d ranging over the box
// 0 <= d_i <= caps_i. x_d x_d' = (-1)^{<d,d'>} x_{d+d'}.
struct TiedContext {
    int l1 = 1;
    int l2 = 1;
    std::vector<int> caps;
    int kappa = 1;
    int eps_order = 0;

    int n() const { return l1 + l2; }
    bool in_box(const Monomial& d) const;
    int pair(const Monomial& a, const Monomial& b) const;
    Charge charge(const Monomial& d) const;
    Monomial exponent(const Charge& c) const;
    std::vector<Monomial> generators() const;
    std::vector<Monomial> box() const;  // nonzero d, by total degree
};

using TiedSeries = std::map<Monomial, EpsPoly>;

TiedSeries tied_mul(const TiedContext& ctx, const TiedSeries& a, const TiedSeries& b);
TiedSeries tied_exp(const TiedContext& ctx, const TiedSeries& x);
// exp(ad Y) for Y supported on one ray; images[b] holds F with e_b -> e_b F
std::map<Monomial, TiedSeries> tied_images(const TiedContext& ctx, const std::vector<TiedSeries>& factors);
// omega * Li_2(c (s,t)^alpha e_alpha)
TiedSeries tied_li2(const TiedContext& ctx, const Monomial& alpha, const EpsPoly& omega, const Rational& c = 1);

struct RayFactor {
    ReducedCharge direction;          // primitive
    std::map<Charge, EpsPoly> log;    // ray element Y = sum c_d x_d
    // coefficient of x_d in log f for the same ray: content(d) * c_d
    EpsPoly log_f(const Charge& d) const;
};

struct FactorizationResult {
    TiedContext ctx;
    CentralChargeConfig config;
    std::vector<RayFactor> factors;  // clockwise on the outgoing side
    std::map<Charge, EpsPoly> dt;
    std::optional<Spectrum> omega;   // only for scalar coefficients with integral inversion

    Rational dt_at(const Charge& c, int eps_power = 0) const;
    int omega_at(const Charge& c) const;
    nlohmann::json to_json() const;
};

struct FactorizeOptions {
    bool reverse_work_order = false;  // alternate traversal, used to test uniqueness
};

// Input factors in application order.
FactorizationResult factorize_tied(const TiedContext& ctx, const std::vector<TiedSeries>& incoming,
                                   const CentralChargeConfig& config_out, FactorizeOptions opt = {});

// Incoming product at Z+: eta factors act first, then gamma factors.
TorusAutomorphism incoming_product(const Spectrum& spectrum, TruncatedRingSpec spec, int kappa = 1);

FactorizationResult factorize(const TorusAutomorphism& s_plus, const CentralChargeConfig& config_minus,
                              TruncatedRingSpec spec, FactorizeOptions opt = {});

// Outgoing factors as a TorusAutomorphism (scalar coefficients only).
TorusAutomorphism recompose(const FactorizationResult& r, TruncatedRingSpec spec);

// Equality of automorphisms on generators and their inverses.
bool same_action(const TorusAutomorphism& a, const TorusAutomorphism& b);

// Coefficient of eps^{l1+l2} (s,t)^w in DT_{Z-} of the deformed incoming
// product with one generator per part of w and Omega = eps on each.
Rational gps_deformed_dt(const WeightVector& w, int kappa = 1);
// Same, with the parts assigned to generators in the given (any) order.
Rational gps_deformed_dt_parts(const std::vector<int>& w1, const std::vector<int>& w2, int kappa = 1);
// Sign and kappa normalisation of the above: prod 1/w_ij^2 N^trop(w).
Rational gps_deformed_count(const WeightVector& w, int kappa = 1);

// theta-operator data: e_{a gamma + b eta} -> (-1)^{kappa ab} x^b y^a
struct ThetaDatum {
    ReducedCharge direction;                          // primitive (x, y)
    std::map<std::pair<int, int>, RingElement> f;     // (x exponent, y exponent) -> coefficient
    std::string str() const;
};
std::vector<ThetaDatum> specialize_theta(const TorusAutomorphism& u);

}  // namespace tw
