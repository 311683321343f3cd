#pragma once

#include "tropwall/laurent.hpp"
#include "tropwall/torus.hpp"

#include <map>
#include <vector>

namespace tw {

// R_k tensored with Q[q^{+-1/2}].
class QRingElement {
public:
    QRingElement() = default;
    explicit QRingElement(TruncatedRingSpec spec) : spec_(spec) {}
    QRingElement(const RingElement& r, const Laurent& c = 1);

    static QRingElement constant(TruncatedRingSpec spec, const Laurent& c);

    const TruncatedRingSpec& spec() const { return spec_; }
    const std::map<Monomial, Laurent>& terms() const { return terms_; }
    Laurent coeff(const Monomial& m) const;
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Monomial& m, const Laurent& c);

    QRingElement operator+(const QRingElement& o) const;
    QRingElement operator-(const QRingElement& o) const;
    QRingElement operator*(const QRingElement& o) const;
    QRingElement operator*(const Laurent& c) const;
    QRingElement& operator+=(const QRingElement& o);
    bool operator==(const QRingElement& o) const { return spec_ == o.spec_ && terms_ == o.terms_; }

    // q^{1/2} -> -1
    RingElement classical() const;
    std::string str() const;

private:
    TruncatedRingSpec spec_;
    std::map<Monomial, Laurent> terms_;
};

// Finite sum of r_alpha e^_alpha with e^_a e^_b = q^{<a,b>/2} e^_{a+b}.
class QAlgebraElement {
public:
    QAlgebraElement() = default;
    QAlgebraElement(TruncatedRingSpec spec, int kappa) : spec_(spec), kappa_(kappa) {}

    static QAlgebraElement basis(TruncatedRingSpec spec, int kappa, const Charge& alpha);
    static QAlgebraElement term(const Charge& alpha, const QRingElement& r, int kappa = 1);

    const TruncatedRingSpec& spec() const { return spec_; }
    int kappa() const { return kappa_; }
    const std::map<Charge, QRingElement>& coeffs() const { return coeffs_; }
    QRingElement coeff(const Charge& alpha) const;
    bool is_zero() const { return coeffs_.empty(); }

    void add(const Charge& alpha, const QRingElement& r);
    QAlgebraElement operator+(const QAlgebraElement& o) const;
    QAlgebraElement operator-(const QAlgebraElement& o) const;
    QAlgebraElement operator*(const QRingElement& r) const;
    bool operator==(const QAlgebraElement& o) const;

    // q^{1/2} -> -1; the product becomes the sign-twisted one
    AlgebraElement classical() const;
    nlohmann::json to_json() const;
    std::string str() const;

private:
    TruncatedRingSpec spec_;
    int kappa_ = 1;
    std::map<Charge, QRingElement> coeffs_;
};

QAlgebraElement q_mul(const QAlgebraElement& a, const QAlgebraElement& b);
// (q^{<a,b>/2} - q^{-<a,b>/2}) e^_{a+b}
QAlgebraElement q_bracket(const QAlgebraElement& a, const QAlgebraElement& b);
// lim 1/(q-1) f as q^{1/2} -> -1, for f vanishing there
Rational rescaled_limit(const Laurent& f);
AlgebraElement rescaled_limit(const QAlgebraElement& a);

// One term of the exponent of E(sigma e^_alpha):
// -sigma^j e^_{j alpha} / (j((-q^{1/2})^j - (-q^{1/2})^{-j}))
struct QDilogTerm {
    int j = 1;
    Charge charge;
    RingElement sigma_power;
    QFrac coeff;
};
// all nonzero terms below the truncation
std::vector<QDilogTerm> q_dilog(const RingElement& sigma, const Charge& alpha);
// coefficient of z^j in exp(-sum_j z^j / (j((-q^{1/2})^j - (-q^{1/2})^{-j}))), for j = 0..order
std::vector<QFrac> q_dilog_series(int order);
// coefficient of z^j in prod_{k>=0} (1 + q^{k+1/2} z)^{-1}, i.e. (-q^{1/2})^j / ((1-q)...(1-q^j))
QFrac q_dilog_product_coeff(int j);

// U^{exponent}((-q^{1/2})^shift sigma e^_alpha)
struct QFactor {
    Charge alpha;
    int shift = 0;
    int exponent = 1;
    RingElement sigma;
};

QAlgebraElement u_apply(const QFactor& f, const QAlgebraElement& b);

// Factors applied left to right.
class QAutomorphism {
public:
    QAutomorphism() = default;
    QAutomorphism(TruncatedRingSpec spec, int kappa, std::vector<QFactor> factors = {});
    const TruncatedRingSpec& spec() const { return spec_; }
    int kappa() const { return kappa_; }
    const std::vector<QFactor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }
    QAlgebraElement apply(const QAlgebraElement& a) const;

private:
    TruncatedRingSpec spec_;
    int kappa_ = 1;
    std::vector<QFactor> factors_;
};

// Counterclockwise application order on the given side, as compose_ordered.
QAutomorphism q_compose_ordered(const CentralChargeConfig& config, std::vector<QFactor> parts, TruncatedRingSpec spec,
                                int kappa = 1);
// Omega_0 = 1 on every generator, ordered at Z+.
QAutomorphism q_incoming_product(TruncatedRingSpec spec, int kappa = 1);

struct RefinedFactorization {
    TruncatedRingSpec spec;
    int kappa = 1;
    std::map<Charge, Laurent> generating;           // sum_n Omega_n q^{n/2}
    std::map<Charge, std::map<int, long long>> omega;  // Omega_n, nonzero only
    QAutomorphism outgoing;

    // Omega = sum_n (-1)^n Omega_n
    Spectrum classical() const;
    nlohmann::json to_json() const;
};

RefinedFactorization refined_factorize(const QAutomorphism& s_plus, const CentralChargeConfig& config_minus,
                                       TruncatedRingSpec spec);

}  // namespace tw
