#include "tropwall/torus.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tw {

namespace {

int sign_of_pairing(const Charge& a, const Charge& b, int kappa) {
    return (pairing(a, b, kappa) % 2 == 0) ? 1 : -1;
}

void check_same(const TruncatedRingSpec& a, const TruncatedRingSpec& b) {
    if (!(a == b)) throw std::invalid_argument("ring spec mismatch");
}

}  // namespace

// ---------------------------------------------------------------- RingElement

bool RingElement::in_range(const Monomial& m) const {
    if (static_cast<int>(m.size()) != spec_.nvars()) throw std::invalid_argument("monomial length");
    for (int x : m)
        if (x < 0 || x > spec_.k) return false;
    return true;
}

void RingElement::add_term(const Monomial& m, const Rational& c) {
    if (c == 0 || !in_range(m)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RingElement RingElement::constant(TruncatedRingSpec spec, const Rational& c) {
    RingElement r(spec);
    r.add_term(Monomial(spec.nvars(), 0), c);
    return r;
}

RingElement RingElement::monomial(TruncatedRingSpec spec, Monomial m, const Rational& c) {
    RingElement r(spec);
    r.add_term(m, c);
    return r;
}

RingElement RingElement::s(TruncatedRingSpec spec, int i) {
    Monomial m(spec.nvars(), 0);
    m.at(i) = 1;
    return monomial(spec, m);
}

RingElement RingElement::t(TruncatedRingSpec spec, int j) {
    Monomial m(spec.nvars(), 0);
    m.at(spec.l1 + j) = 1;
    return monomial(spec, m);
}

RingElement RingElement::tied(TruncatedRingSpec spec, const Charge& alpha, const Rational& c) {
    if (alpha.l1() != spec.l1 || alpha.l2() != spec.l2) throw std::invalid_argument("tied: charge shape");
    Monomial m;
    for (int a : alpha.g) m.push_back(std::abs(a));
    for (int b : alpha.e) m.push_back(std::abs(b));
    return monomial(spec, m, c);
}

Rational RingElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational RingElement::constant_term() const { return coeff(Monomial(spec_.nvars(), 0)); }

RingElement& RingElement::operator+=(const RingElement& o) {
    check_same(spec_, o.spec_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator-() const { return *this * Rational(-1); }

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const Rational& c) const {
    RingElement r(spec_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same(spec_, o.spec_);
    RingElement r(spec_);
    Monomial m(spec_.nvars());
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            bool ok = true;
            for (int i = 0; i < spec_.nvars(); ++i) {
                m[i] = m1[i] + m2[i];
                if (m[i] > spec_.k) { ok = false; break; }
            }
            if (ok) r.add_term(m, c1 * c2);
        }
    }
    return r;
}

RingElement RingElement::pow(int n) const {
    if (n < 0) throw std::invalid_argument("RingElement::pow: negative exponent");
    RingElement r = constant(spec_, 1);
    for (int i = 0; i < n && !r.is_zero(); ++i) r = r * *this;
    return r;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        bool unit = true;
        for (int x : m) unit = unit && x == 0;
        if (a != 1 || unit) os << to_string(a);
        for (int i = 0; i < spec_.nvars(); ++i) {
            if (m[i] == 0) continue;
            bool is_s = i < spec_.l1;
            int idx = is_s ? i : i - spec_.l1;
            os << (is_s ? "s" : "t");
            if ((is_s ? spec_.l1 : spec_.l2) > 1) os << idx + 1;
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

// ------------------------------------------------------------ AlgebraElement

AlgebraElement AlgebraElement::basis(TruncatedRingSpec spec, int kappa, const Charge& alpha) {
    AlgebraElement a(spec, kappa);
    a.add(alpha, RingElement::constant(spec, 1));
    return a;
}

AlgebraElement AlgebraElement::term(const Charge& alpha, const RingElement& r, int kappa) {
    AlgebraElement a(r.spec(), kappa);
    a.add(alpha, r);
    return a;
}

RingElement AlgebraElement::coeff(const Charge& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? RingElement(spec_) : it->second;
}

void AlgebraElement::add(const Charge& alpha, const RingElement& r) {
    check_same(spec_, r.spec());
    if (r.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(alpha, r);
    if (!inserted) {
        it->second += r;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    check_same(spec_, o.spec_);
    AlgebraElement r = *this;
    for (const auto& [c, v] : o.coeffs_) r.add(c, v);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + o * Rational(-1); }

AlgebraElement AlgebraElement::operator*(const RingElement& s) const {
    AlgebraElement r(spec_, kappa_);
    for (const auto& [c, v] : coeffs_) r.add(c, v * s);
    return r;
}

AlgebraElement AlgebraElement::operator*(const Rational& s) const {
    AlgebraElement r(spec_, kappa_);
    for (const auto& [c, v] : coeffs_) r.add(c, v * s);
    return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    return spec_ == o.spec_ && coeffs_ == o.coeffs_;
}

nlohmann::json AlgebraElement::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [c, r] : coeffs_) {
        for (const auto& [m, v] : r.terms()) {
            out.push_back({{"charge", charge_json(c)},
                           {"monomial", m},
                           {"numerator", numerator(v).str()},
                           {"denominator", denominator(v).str()}});
        }
    }
    return out;
}

std::string AlgebraElement::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, r] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << r.str() << ")e[" << c.str() << "]";
    }
    return os.str();
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    check_same(a.spec(), b.spec());
    AlgebraElement r(a.spec(), a.kappa());
    for (const auto& [ca, ra] : a.coeffs())
        for (const auto& [cb, rb] : b.coeffs())
            r.add(ca + cb, ra * rb * Rational(sign_of_pairing(ca, cb, a.kappa())));
    return r;
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
    check_same(a.spec(), b.spec());
    AlgebraElement r(a.spec(), a.kappa());
    for (const auto& [ca, ra] : a.coeffs()) {
        for (const auto& [cb, rb] : b.coeffs()) {
            int p = pairing(ca, cb, a.kappa());
            if (p == 0) continue;
            r.add(ca + cb, ra * rb * Rational(sign_of_pairing(ca, cb, a.kappa()) * p));
        }
    }
    return r;
}

AlgebraElement li2(const RingElement& sigma, const Charge& alpha, int kappa) {
    if (sigma.constant_term() != 0) throw std::invalid_argument("li2: sigma has a constant term");
    AlgebraElement r(sigma.spec(), kappa);
    RingElement p = sigma;
    for (int j = 1; !p.is_zero(); ++j) {
        r.add(alpha * j, p * Rational(-1, j * j));
        p = p * sigma;
    }
    return r;
}

// ---------------------------------------------------------- automorphisms

TorusAutomorphism::TorusAutomorphism(TruncatedRingSpec spec, int kappa, std::vector<TorusFactor> factors)
    : spec_(spec), kappa_(kappa), factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        check_same(spec_, f.sigma.spec());
        if (f.sigma.constant_term() != 0) throw std::invalid_argument("factor sigma has a constant term");
    }
}

AlgebraElement apply_factor(const TorusFactor& f, const AlgebraElement& a) {
    const int kappa = a.kappa();
    AlgebraElement out(a.spec(), kappa);
    for (const auto& [beta, r] : a.coeffs()) {
        // e_beta (1 - sigma e_alpha)^{omega <alpha,beta>}
        Rational n = f.omega * pairing(f.alpha, beta, kappa);
        RingElement sp = RingElement::constant(a.spec(), 1);
        for (int j = 0; !sp.is_zero(); ++j) {
            Rational b = binomial(n, j);
            if (b == 0) break;
            Charge ch = beta + f.alpha * j;
            int sg = (j % 2 == 0 ? 1 : -1) * sign_of_pairing(beta, f.alpha * j, kappa);
            out.add(ch, r * sp * (b * sg));
            sp = sp * f.sigma;
        }
    }
    return out;
}

AlgebraElement TorusAutomorphism::apply(const AlgebraElement& a) const {
    AlgebraElement cur = a;
    for (const auto& f : factors_) cur = apply_factor(f, cur);
    return cur;
}

AlgebraElement apply(const TorusAutomorphism& u, const AlgebraElement& a) { return u.apply(a); }

TorusAutomorphism TorusAutomorphism::then(const TorusAutomorphism& next) const {
    check_same(spec_, next.spec_);
    auto fs = factors_;
    fs.insert(fs.end(), next.factors_.begin(), next.factors_.end());
    return TorusAutomorphism(spec_, kappa_, std::move(fs));
}

TorusAutomorphism TorusAutomorphism::inverse() const {
    std::vector<TorusFactor> fs(factors_.rbegin(), factors_.rend());
    for (auto& f : fs) f.omega = -f.omega;
    return TorusAutomorphism(spec_, kappa_, std::move(fs));
}

ExtensionalAutomorphism::ExtensionalAutomorphism(const TorusAutomorphism& u)
    : spec_(u.spec()), kappa_(u.kappa()) {
    for (int i = 0; i < spec_.l1; ++i) {
        for (int sg : {1, -1}) {
            Charge c = Charge::gamma(spec_.l1, spec_.l2, i, sg);
            images_[c] = u.apply(AlgebraElement::basis(spec_, kappa_, c));
        }
    }
    for (int j = 0; j < spec_.l2; ++j) {
        for (int sg : {1, -1}) {
            Charge c = Charge::eta(spec_.l1, spec_.l2, j, sg);
            images_[c] = u.apply(AlgebraElement::basis(spec_, kappa_, c));
        }
    }
}

AlgebraElement ExtensionalAutomorphism::image(const Charge& beta) const {
    // e_{c+g} = (-1)^{<c,g>} e_c e_g, one generator step at a time
    Charge cur = Charge::zero(spec_.l1, spec_.l2);
    AlgebraElement img = AlgebraElement::basis(spec_, kappa_, cur);
    auto step = [&](const Charge& g) {
        Rational sg = sign_of_pairing(cur, g, kappa_);
        img = mul(img, images_.at(g)) * sg;
        cur += g;
    };
    for (int i = 0; i < spec_.l1; ++i) {
        Charge g = Charge::gamma(spec_.l1, spec_.l2, i, beta.g[i] > 0 ? 1 : -1);
        for (int n = 0; n < std::abs(beta.g[i]); ++n) step(g);
    }
    for (int j = 0; j < spec_.l2; ++j) {
        Charge g = Charge::eta(spec_.l1, spec_.l2, j, beta.e[j] > 0 ? 1 : -1);
        for (int n = 0; n < std::abs(beta.e[j]); ++n) step(g);
    }
    return img;
}

AlgebraElement ExtensionalAutomorphism::apply(const AlgebraElement& a) const {
    AlgebraElement out(spec_, kappa_);
    for (const auto& [beta, r] : a.coeffs()) out = out + image(beta) * r;
    return out;
}

TorusAutomorphism compose_ordered(const CentralChargeConfig& config, std::vector<TorusFactor> parts,
                                  TruncatedRingSpec spec, int kappa) {
    std::vector<Charge> charges;
    for (const auto& p : parts) charges.push_back(p.alpha);
    slope_order(config, charges);  // validates side and cone
    std::stable_sort(parts.begin(), parts.end(), [&](const TorusFactor& a, const TorusFactor& b) {
        return cross(config.Z(a.alpha), config.Z(b.alpha)) > 0;
    });
    return TorusAutomorphism(spec, kappa, std::move(parts));
}

// ---------------------------------------------------------------- spectra

namespace {

Charge canonical_sign(const Charge& c) {
    for (int x : c.g) {
        if (x > 0) return c;
        if (x < 0) return -c;
    }
    for (int x : c.e) {
        if (x > 0) return c;
        if (x < 0) return -c;
    }
    return c;
}

}  // namespace

void Spectrum::set(const Charge& c, int omega) {
    if (c.is_zero()) {
        if (omega != 0) throw std::invalid_argument("Spectrum: Omega(0) must vanish");
        return;
    }
    Charge k = canonical_sign(c);
    if (omega == 0) omega_.erase(k);
    else omega_[k] = omega;
}

int Spectrum::get(const Charge& c) const {
    if (c.is_zero()) return 0;
    auto it = omega_.find(canonical_sign(c));
    return it == omega_.end() ? 0 : it->second;
}

Rational dt_from_omega(const Spectrum& spec, const Charge& gp) {
    if (gp.is_zero()) throw std::invalid_argument("dt_from_omega: zero charge");
    int d = gp.content();
    Rational r = 0;
    for (int p = 1; p <= d; ++p) {
        if (d % p != 0) continue;
        Charge base = gp;
        for (int& x : base.g) x /= p;
        for (int& x : base.e) x /= p;
        r += Rational(spec.get(base), p * p);
    }
    return r;
}

std::map<Charge, Rational> omega_from_dt_rational(const std::map<Charge, Rational>& dt) {
    std::map<Charge, Rational> omega;
    // visit charges by increasing content so every proper divisor is already known
    std::vector<std::pair<int, Charge>> order;
    for (const auto& [c, v] : dt) {
        if (c.is_zero()) throw std::invalid_argument("omega_from_dt: zero charge");
        order.emplace_back(c.content(), c);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [d, c] : order) {
        Rational r = dt.at(c);
        for (int p = 2; p <= d; ++p) {
            if (d % p != 0) continue;
            Charge base = c;
            for (int& x : base.g) x /= p;
            for (int& x : base.e) x /= p;
            auto it = omega.find(base);
            if (it == omega.end()) {
                if (!dt.count(base)) throw std::invalid_argument("omega_from_dt: support not closed under division");
                continue;
            }
            r -= it->second / (p * p);
        }
        if (r != 0) omega[c] = r;
        else omega[c] = 0;
    }
    for (auto it = omega.begin(); it != omega.end();) {
        if (it->second == 0) it = omega.erase(it);
        else ++it;
    }
    return omega;
}

Spectrum omega_from_dt(const std::map<Charge, Rational>& dt) {
    Spectrum s;
    for (const auto& [c, v] : omega_from_dt_rational(dt)) {
        if (denominator(v) != 1) throw std::domain_error("omega_from_dt: non-integral Omega at " + c.str());
        s.set(c, static_cast<int>(numerator(v)));
    }
    return s;
}

}  // namespace tw
