#pragma once

#include "tropwall/lattice.hpp"
#include "tropwall/rational.hpp"

#include <map>
#include <vector>

namespace tw {

// R_k = Q[s_1..s_l1, t_1..t_l2] / (s_i^{k+1}, t_j^{k+1})
struct TruncatedRingSpec {
    int l1 = 1;
    int l2 = 1;
    int k = 1;
    int nvars() const { return l1 + l2; }
    bool operator==(const TruncatedRingSpec&) const = default;
};

using Monomial = std::vector<int>;

class RingElement {
public:
    RingElement() = default;
    explicit RingElement(TruncatedRingSpec spec) : spec_(spec) {}

    static RingElement constant(TruncatedRingSpec spec, const Rational& c);
    static RingElement monomial(TruncatedRingSpec spec, Monomial m, const Rational& c = 1);
    static RingElement s(TruncatedRingSpec spec, int i);
    static RingElement t(TruncatedRingSpec spec, int j);
    // (s,t)^alpha = prod s_i^{|a_i|} t_j^{|b_j|}
    static RingElement tied(TruncatedRingSpec spec, const Charge& alpha, const Rational& c = 1);

    const TruncatedRingSpec& spec() const { return spec_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coeff(const Monomial& m) const;
    Rational constant_term() const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rational& c);

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator*(const Rational& c) const;
    RingElement& operator+=(const RingElement& o);
    RingElement pow(int n) const;
    bool operator==(const RingElement& o) const { return spec_ == o.spec_ && terms_ == o.terms_; }

    std::string str() const;

private:
    bool in_range(const Monomial& m) const;
    TruncatedRingSpec spec_;
    std::map<Monomial, Rational> terms_;
};

// Finite sum of r_alpha e_alpha with the sign-twisted commutative product.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(TruncatedRingSpec spec, int kappa) : spec_(spec), kappa_(kappa) {}

    static AlgebraElement basis(TruncatedRingSpec spec, int kappa, const Charge& alpha);
    static AlgebraElement term(const Charge& alpha, const RingElement& r, int kappa = 1);

    const TruncatedRingSpec& spec() const { return spec_; }
    int kappa() const { return kappa_; }
    const std::map<Charge, RingElement>& coeffs() const { return coeffs_; }
    RingElement coeff(const Charge& alpha) const;
    bool is_zero() const { return coeffs_.empty(); }

    void add(const Charge& alpha, const RingElement& r);
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const RingElement& r) const;
    AlgebraElement operator*(const Rational& c) const;
    bool operator==(const AlgebraElement& o) const;

    nlohmann::json to_json() const;
    std::string str() const;

private:
    TruncatedRingSpec spec_;
    int kappa_ = 1;
    std::map<Charge, RingElement> coeffs_;
};

// e_a e_b = (-1)^{<a,b>} e_{a+b}
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
// [e_a, e_b] = (-1)^{<a,b>} <a,b> e_{a+b}
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);
// Li_2(sigma e_alpha) = -sum_j sigma^j e_{j alpha} / j^2
AlgebraElement li2(const RingElement& sigma, const Charge& alpha, int kappa = 1);

// Ad exp(omega Li_2(sigma e_alpha))
struct TorusFactor {
    Charge alpha;
    Rational omega;
    RingElement sigma;
};

// Factors are applied left to right: factors[0] acts first.
class TorusAutomorphism {
public:
    TorusAutomorphism() = default;
    TorusAutomorphism(TruncatedRingSpec spec, int kappa, std::vector<TorusFactor> factors = {});

    const TruncatedRingSpec& spec() const { return spec_; }
    int kappa() const { return kappa_; }
    const std::vector<TorusFactor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }

    AlgebraElement apply(const AlgebraElement& a) const;
    // this first, then next
    TorusAutomorphism then(const TorusAutomorphism& next) const;
    TorusAutomorphism inverse() const;

private:
    TruncatedRingSpec spec_;
    int kappa_ = 1;
    std::vector<TorusFactor> factors_;
};

AlgebraElement apply(const TorusAutomorphism& u, const AlgebraElement& a);
AlgebraElement apply_factor(const TorusFactor& f, const AlgebraElement& a);

// Images of the generators and their inverses, reused for every e_beta.
class ExtensionalAutomorphism {
public:
    explicit ExtensionalAutomorphism(const TorusAutomorphism& u);
    AlgebraElement image(const Charge& beta) const;
    AlgebraElement apply(const AlgebraElement& a) const;
    bool operator==(const ExtensionalAutomorphism& o) const { return images_ == o.images_; }

private:
    TruncatedRingSpec spec_;
    int kappa_;
    std::map<Charge, AlgebraElement> images_;
};

// Factor list in application order: counterclockwise on the given side, so
// that the composite, written as operators left to right, is clockwise.
TorusAutomorphism compose_ordered(const CentralChargeConfig& config, std::vector<TorusFactor> parts,
                                  TruncatedRingSpec spec, int kappa = 1);

class Spectrum {
public:
    Spectrum() = default;
    void set(const Charge& c, int omega);
    int get(const Charge& c) const;
    const std::map<Charge, int>& values() const { return omega_; }
    bool operator==(const Spectrum& o) const { return omega_ == o.omega_; }

private:
    std::map<Charge, int> omega_;  // nonzero entries, stored with their sign as given
};

Rational dt_from_omega(const Spectrum& spec, const Charge& gp);
Spectrum omega_from_dt(const std::map<Charge, Rational>& dt);
// same inversion, allowing non-integral values
std::map<Charge, Rational> omega_from_dt_rational(const std::map<Charge, Rational>& dt);

}  // namespace tw
