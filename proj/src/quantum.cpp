#include "tropwall/quantum.hpp"

#include <sstream>
#include <stdexcept>

namespace tw {

namespace {

bool in_box(const TruncatedRingSpec& spec, const Monomial& m) {
    for (int x : m)
        if (x < 0 || x > spec.k) return false;
    return true;
}

Monomial zero_monomial(const TruncatedRingSpec& spec) { return Monomial(spec.nvars(), 0); }

Rational binom(long long e, int m) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r = r * (e - i) / (i + 1);
    return r;
}

Laurent signed_qint(int p) { return p >= 0 ? Laurent::qint(p) : -Laurent::qint(-p); }

}  // namespace

// ---------------------------------------------------------------- coefficient ring

QRingElement::QRingElement(const RingElement& r, const Laurent& c) : spec_(r.spec()) {
    for (const auto& [m, v] : r.terms()) add_term(m, c * Laurent(v));
}

QRingElement QRingElement::constant(TruncatedRingSpec spec, const Laurent& c) {
    QRingElement r(spec);
    r.add_term(zero_monomial(spec), c);
    return r;
}

Laurent QRingElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Laurent() : it->second;
}

void QRingElement::add_term(const Monomial& m, const Laurent& c) {
    if (static_cast<int>(m.size()) != spec_.nvars()) throw std::invalid_argument("QRingElement: monomial size");
    if (!in_box(spec_, m) || c.is_zero()) return;
    auto& slot = terms_[m];
    slot += c;
    if (slot.is_zero()) terms_.erase(m);
}

QRingElement QRingElement::operator+(const QRingElement& o) const {
    QRingElement r = *this;
    r += o;
    return r;
}

QRingElement& QRingElement::operator+=(const QRingElement& o) {
    if (!(spec_ == o.spec_)) throw std::invalid_argument("QRingElement: spec mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

QRingElement QRingElement::operator-(const QRingElement& o) const { return *this + o * Laurent(-1); }

QRingElement QRingElement::operator*(const QRingElement& o) const {
    if (!(spec_ == o.spec_)) throw std::invalid_argument("QRingElement: spec mismatch");
    QRingElement r(spec_);
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_) {
            Monomial m(a.size());
            for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
            r.add_term(m, x * y);
        }
    return r;
}

QRingElement QRingElement::operator*(const Laurent& c) const {
    QRingElement r(spec_);
    for (const auto& [m, x] : terms_) r.add_term(m, x * c);
    return r;
}

RingElement QRingElement::classical() const {
    RingElement r(spec_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.eval(-1));
    return r;
}

std::string QRingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) os << "*" << (static_cast<int>(i) < spec_.l1 ? "s" : "t")
                         << (static_cast<int>(i) < spec_.l1 ? i + 1 : i - spec_.l1 + 1) << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
    }
    return os.str();
}

// ---------------------------------------------------------------- algebra

QAlgebraElement QAlgebraElement::basis(TruncatedRingSpec spec, int kappa, const Charge& alpha) {
    QAlgebraElement a(spec, kappa);
    a.add(alpha, QRingElement::constant(spec, 1));
    return a;
}

QAlgebraElement QAlgebraElement::term(const Charge& alpha, const QRingElement& r, int kappa) {
    QAlgebraElement a(r.spec(), kappa);
    a.add(alpha, r);
    return a;
}

QRingElement QAlgebraElement::coeff(const Charge& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? QRingElement(spec_) : it->second;
}

void QAlgebraElement::add(const Charge& alpha, const QRingElement& r) {
    if (alpha.l1() != spec_.l1 || alpha.l2() != spec_.l2) throw std::invalid_argument("QAlgebraElement: charge shape");
    if (r.is_zero()) return;
    auto it = coeffs_.find(alpha);
    if (it == coeffs_.end()) {
        coeffs_.emplace(alpha, r);
        return;
    }
    it->second += r;
    if (it->second.is_zero()) coeffs_.erase(it);
}

QAlgebraElement QAlgebraElement::operator+(const QAlgebraElement& o) const {
    if (!(spec_ == o.spec_) || kappa_ != o.kappa_) throw std::invalid_argument("QAlgebraElement: mismatch");
    QAlgebraElement r = *this;
    for (const auto& [c, x] : o.coeffs_) r.add(c, x);
    return r;
}

QAlgebraElement QAlgebraElement::operator-(const QAlgebraElement& o) const {
    QAlgebraElement r = *this;
    for (const auto& [c, x] : o.coeffs_) r.add(c, x * Laurent(-1));
    return r;
}

QAlgebraElement QAlgebraElement::operator*(const QRingElement& s) const {
    QAlgebraElement r(spec_, kappa_);
    for (const auto& [c, x] : coeffs_) r.add(c, x * s);
    return r;
}

bool QAlgebraElement::operator==(const QAlgebraElement& o) const {
    return spec_ == o.spec_ && kappa_ == o.kappa_ && coeffs_ == o.coeffs_;
}

AlgebraElement QAlgebraElement::classical() const {
    AlgebraElement r(spec_, kappa_);
    for (const auto& [c, x] : coeffs_) r.add(c, x.classical());
    return r;
}

nlohmann::json QAlgebraElement::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [c, x] : coeffs_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, v] : x.terms()) terms.push_back({{"monomial", m}, {"coeff", v.to_json()}});
        j.push_back({{"charge", charge_json(c)}, {"terms", terms}});
    }
    return j;
}

std::string QAlgebraElement::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, x] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << x.str() << "] e^" << c.str();
    }
    return os.str();
}

QAlgebraElement q_mul(const QAlgebraElement& a, const QAlgebraElement& b) {
    if (!(a.spec() == b.spec()) || a.kappa() != b.kappa()) throw std::invalid_argument("q_mul: mismatch");
    QAlgebraElement r(a.spec(), a.kappa());
    for (const auto& [x, rx] : a.coeffs())
        for (const auto& [y, ry] : b.coeffs())
            r.add(x + y, rx * ry * Laurent::monomial(pairing(x, y, a.kappa())));
    return r;
}

QAlgebraElement q_bracket(const QAlgebraElement& a, const QAlgebraElement& b) { return q_mul(a, b) - q_mul(b, a); }

Rational rescaled_limit(const Laurent& f) {
    if (f.eval(-1) != 0) throw std::domain_error("rescaled_limit: f does not vanish at q^{1/2} = -1");
    // f'(x) at x = -1 divided by d(x^2 - 1)/dx = -2
    Rational d = 0;
    for (const auto& [e, c] : f.terms()) d += c * e * ((e - 1) % 2 ? -1 : 1);
    return -d / 2;
}

AlgebraElement rescaled_limit(const QAlgebraElement& a) {
    AlgebraElement r(a.spec(), a.kappa());
    for (const auto& [c, x] : a.coeffs()) {
        RingElement s(a.spec());
        for (const auto& [m, v] : x.terms()) s.add_term(m, rescaled_limit(v));
        r.add(c, s);
    }
    return r;
}

// ---------------------------------------------------------------- q-dilogarithm

namespace {

QFrac dilog_exponent_coeff(int j) {
    int sj = j % 2 ? -1 : 1;
    return {Laurent(-1), Laurent(j) * (Laurent::monomial(j, sj) - Laurent::monomial(-j, sj))};
}

}  // namespace

std::vector<QDilogTerm> q_dilog(const RingElement& sigma, const Charge& alpha) {
    if (sigma.constant_term() != 0) throw std::invalid_argument("q_dilog: sigma must lie in the maximal ideal");
    std::vector<QDilogTerm> out;
    RingElement p = sigma;
    for (int j = 1; !p.is_zero(); ++j) {
        out.push_back({j, alpha * j, p, dilog_exponent_coeff(j)});
        p = p * sigma;
    }
    return out;
}

std::vector<QFrac> q_dilog_series(int order) {
    std::vector<QFrac> e{QFrac{}};
    for (int n = 1; n <= order; ++n) {
        QFrac s{Laurent(0), Laurent(1)};
        for (int j = 1; j <= n; ++j) s = s + QFrac{Laurent(j), Laurent(1)} * dilog_exponent_coeff(j) * e[n - j];
        e.push_back(s * QFrac{Laurent(1), Laurent(n)});
    }
    return e;
}

QFrac q_dilog_product_coeff(int j) {
    QFrac r{Laurent::monomial(j, j % 2 ? -1 : 1), Laurent(1)};
    for (int i = 1; i <= j; ++i) r.den *= Laurent(1) - Laurent::monomial(2 * i);
    return r;
}

// ---------------------------------------------------------------- U operators

QAlgebraElement u_apply(const QFactor& f, const QAlgebraElement& b) {
    const auto& spec = b.spec();
    int kappa = b.kappa();
    if (f.sigma.constant_term() != 0) throw std::invalid_argument("u_apply: sigma must lie in the maximal ideal");
    QAlgebraElement out(spec, kappa);
    for (const auto& [beta, r] : b.coeffs()) {
        int p = pairing(f.alpha, beta, kappa);
        QAlgebraElement acc = QAlgebraElement::term(beta, r, kappa);
        if (p == 0 || f.exponent == 0) {
            out = out + acc;
            continue;
        }
        long long e = p > 0 ? f.exponent : -static_cast<long long>(f.exponent);
        int lo = p > 0 ? 0 : p, hi = p > 0 ? p - 1 : -1;
        int sn = f.shift % 2 ? -1 : 1;
        for (int j = lo; j <= hi; ++j) {
            // (1 + c sigma e^_alpha)^e with c = (-1)^n q^{j + (n+1)/2}
            Laurent c = Laurent::monomial(2 * j + f.shift + 1, sn);
            QAlgebraElement pw(spec, kappa);
            pw.add(Charge::zero(spec.l1, spec.l2), QRingElement::constant(spec, 1));
            RingElement sp = f.sigma;
            Laurent cp = c;
            for (int m = 1; !sp.is_zero(); ++m) {
                pw.add(f.alpha * m, QRingElement(sp, cp * Laurent(binom(e, m))));
                sp = sp * f.sigma;
                cp *= c;
            }
            acc = q_mul(acc, pw);
        }
        out = out + acc;
    }
    return out;
}

QAutomorphism::QAutomorphism(TruncatedRingSpec spec, int kappa, std::vector<QFactor> factors)
    : spec_(spec), kappa_(kappa), factors_(std::move(factors)) {
    if (kappa < 1) throw std::invalid_argument("QAutomorphism: kappa must be positive");
    for (const auto& f : factors_)
        if (!(f.sigma.spec() == spec_)) throw std::invalid_argument("QAutomorphism: sigma spec mismatch");
}

QAlgebraElement QAutomorphism::apply(const QAlgebraElement& a) const {
    QAlgebraElement r = a;
    for (const auto& f : factors_) r = u_apply(f, r);
    return r;
}

QAutomorphism q_compose_ordered(const CentralChargeConfig& config, std::vector<QFactor> parts, TruncatedRingSpec spec,
                                int kappa) {
    std::vector<Charge> charges;
    for (const auto& p : parts) charges.push_back(p.alpha);
    slope_order(config, charges);
    std::stable_sort(parts.begin(), parts.end(), [&](const QFactor& a, const QFactor& b) {
        return cross(config.Z(a.alpha), config.Z(b.alpha)) > 0;
    });
    return QAutomorphism(spec, kappa, std::move(parts));
}

QAutomorphism q_incoming_product(TruncatedRingSpec spec, int kappa) {
    std::vector<QFactor> parts;
    for (int i = 0; i < spec.l1; ++i) parts.push_back({Charge::gamma(spec.l1, spec.l2, i), 0, 1, RingElement::s(spec, i)});
    for (int j = 0; j < spec.l2; ++j) parts.push_back({Charge::eta(spec.l1, spec.l2, j), 0, 1, RingElement::t(spec, j)});
    return q_compose_ordered(CentralChargeConfig::plus_default(), std::move(parts), spec, kappa);
}

// ---------------------------------------------------------------- refined factorization

Spectrum RefinedFactorization::classical() const {
    Spectrum s;
    for (const auto& [c, f] : generating) {
        Rational v = f.eval(-1);
        if (v != 0) s.set(c, static_cast<int>(numerator(v)));
    }
    return s;
}

nlohmann::json RefinedFactorization::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [c, f] : generating) {
        nlohmann::json om = nlohmann::json::object();
        for (auto [n, v] : omega.at(c)) om[std::to_string(n)] = v;
        j.push_back({{"charge", charge_json(c)}, {"generating", f.to_json()}, {"omega_n", om}});
    }
    return j;
}

RefinedFactorization refined_factorize(const QAutomorphism& s_plus, const CentralChargeConfig& config_minus,
                                       TruncatedRingSpec spec) {
    if (!(s_plus.spec() == spec)) throw std::invalid_argument("refined_factorize: ring spec mismatch");
    if (config_minus.side != Side::Minus) throw std::invalid_argument("refined_factorize: outgoing side must be Minus");
    config_minus.validate();
    const int kappa = s_plus.kappa();
    std::vector<Charge> gens;
    for (int i = 0; i < spec.l1; ++i) gens.push_back(Charge::gamma(spec.l1, spec.l2, i));
    for (int j = 0; j < spec.l2; ++j) gens.push_back(Charge::eta(spec.l1, spec.l2, j));
    std::map<Charge, QAlgebraElement> target;
    for (const auto& b : gens) target[b] = s_plus.apply(QAlgebraElement::basis(spec, kappa, b));

    // charges of the box, by total degree
    std::vector<std::vector<Charge>> by_degree(spec.nvars() * spec.k + 1);
    Monomial m = zero_monomial(spec);
    while (true) {
        int i = 0;
        while (i < spec.nvars() && ++m[i] > spec.k) m[i++] = 0;
        if (i == spec.nvars()) break;
        Charge c(std::vector<int>(m.begin(), m.begin() + spec.l1), std::vector<int>(m.begin() + spec.l1, m.end()));
        int d = 0;
        for (int x : m) d += x;
        by_degree[d].push_back(c);
    }

    RefinedFactorization out{spec, kappa, {}, {}, {}};
    std::vector<QFactor> parts;
    for (size_t deg = 1; deg < by_degree.size(); ++deg) {
        auto current = q_compose_ordered(config_minus, parts, spec, kappa);
        std::map<Charge, QAlgebraElement> diff;
        for (const auto& b : gens) diff[b] = target[b] - current.apply(QAlgebraElement::basis(spec, kappa, b));
        for (const auto& delta : by_degree[deg]) {
            Monomial mono(delta.g);
            mono.insert(mono.end(), delta.e.begin(), delta.e.end());
            std::optional<Laurent> f;
            for (const auto& b : gens) {
                int p = pairing(delta, b, kappa);
                Laurent c = diff[b].coeff(b + delta).coeff(mono);
                if (p == 0) {
                    if (!c.is_zero()) throw std::logic_error("refined_factorize: discrepancy on a commuting generator");
                    continue;
                }
                auto q = c.divide_exact(signed_qint(p));
                if (!q) throw std::logic_error("refined_factorize: discrepancy not divisible by [" + std::to_string(p) + "]_q");
                if (f && !(*f == *q)) throw std::logic_error("refined_factorize: generators disagree at " + delta.str());
                f = *q;
            }
            if (!f || f->is_zero()) continue;
            out.generating[delta] = *f;
            for (const auto& [n, v] : f->terms()) {
                if (denominator(v) != 1) throw std::logic_error("refined_factorize: non-integral Omega_n at " + delta.str());
                long long om = static_cast<long long>(numerator(v));
                out.omega[delta][n] = om;
                parts.push_back({delta, n, static_cast<int>(n % 2 ? -om : om), RingElement::tied(spec, delta)});
            }
        }
    }
    out.outgoing = q_compose_ordered(config_minus, parts, spec, kappa);
    for (const auto& b : gens)
        if (!(out.outgoing.apply(QAlgebraElement::basis(spec, kappa, b)) == target[b]))
            throw std::logic_error("refined_factorize: recomposition differs from the input");
    return out;
}

}  // namespace tw
