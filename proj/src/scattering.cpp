#include "tropwall/scattering.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tw {

// ---------------------------------------------------------------- EpsPoly

EpsPoly EpsPoly::constant(int order, const Rational& v) {
    EpsPoly p(order);
    p.c_[0] = v;
    return p;
}

EpsPoly EpsPoly::eps(int order) {
    EpsPoly p(order);
    if (order >= 1) p.c_[1] = 1;
    return p;
}

bool EpsPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

EpsPoly EpsPoly::operator+(const EpsPoly& o) const {
    EpsPoly r = *this;
    r += o;
    return r;
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    if (o.order() != order()) throw std::invalid_argument("EpsPoly order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

EpsPoly EpsPoly::operator-(const EpsPoly& o) const { return *this + o * Rational(-1); }

EpsPoly EpsPoly::operator*(const EpsPoly& o) const {
    if (o.order() != order()) throw std::invalid_argument("EpsPoly order mismatch");
    EpsPoly r(order());
    for (int i = 0; i <= order(); ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; i + j <= order(); ++j)
            if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

EpsPoly EpsPoly::operator*(const Rational& s) const {
    EpsPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::string EpsPoly::str() const {
    if (order() == 0) return to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(c_[i]);
        if (i > 0) os << "*eps^" << i;
    }
    if (first) os << "0";
    return os.str();
}

nlohmann::json EpsPoly::to_json() const {
    if (order() == 0) return rational_json(c_[0]);
    auto j = nlohmann::json::array();
    for (const auto& x : c_) j.push_back(rational_json(x));
    return j;
}

// ---------------------------------------------------------------- tied series

bool TiedContext::in_box(const Monomial& d) const {
    for (int i = 0; i < n(); ++i)
        if (d[i] < 0 || d[i] > caps[i]) return false;
    return true;
}

int TiedContext::pair(const Monomial& a, const Monomial& b) const {
    long long ag = 0, ae = 0, bg = 0, be = 0;
    for (int i = 0; i < l1; ++i) ag += a[i], bg += b[i];
    for (int i = l1; i < n(); ++i) ae += a[i], be += b[i];
    return static_cast<int>(kappa * (ag * be - ae * bg));
}

Charge TiedContext::charge(const Monomial& d) const {
    return Charge(std::vector<int>(d.begin(), d.begin() + l1), std::vector<int>(d.begin() + l1, d.end()));
}

Monomial TiedContext::exponent(const Charge& c) const {
    if (c.l1() != l1 || c.l2() != l2) throw std::invalid_argument("charge shape does not match ring");
    Monomial d(c.g);
    d.insert(d.end(), c.e.begin(), c.e.end());
    return d;
}

std::vector<Monomial> TiedContext::generators() const {
    std::vector<Monomial> g;
    for (int i = 0; i < n(); ++i) {
        Monomial m(n(), 0);
        m[i] = 1;
        g.push_back(m);
    }
    return g;
}

std::vector<Monomial> TiedContext::box() const {
    std::vector<Monomial> out;
    Monomial d(n(), 0);
    while (true) {
        int i = 0;
        while (i < n() && d[i] == caps[i]) d[i++] = 0;
        if (i == n()) break;
        ++d[i];
        out.push_back(d);
    }
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
    });
    return out;
}

namespace {

void add_to(TiedSeries& s, const Monomial& d, const EpsPoly& c) {
    auto [it, inserted] = s.emplace(d, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) s.erase(it);
    } else if (c.is_zero()) {
        s.erase(it);
    }
}

Monomial plus(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

TiedSeries one(const TiedContext& ctx) { return {{Monomial(ctx.n(), 0), EpsPoly::constant(ctx.eps_order, 1)}}; }

// L_b = sum c_d <d,b> x_d
TiedSeries derivation(const TiedContext& ctx, const TiedSeries& y, const Monomial& b) {
    TiedSeries l;
    for (const auto& [d, c] : y) {
        int p = ctx.pair(d, b);
        if (p != 0) add_to(l, d, c * Rational(p));
    }
    return l;
}

// image of e_beta F under exp(ad Y)
TiedSeries act(const TiedContext& ctx, const TiedSeries& y, const Monomial& beta, const TiedSeries& f) {
    TiedSeries out;
    for (const auto& [d, c] : f) {
        TiedSeries t = tied_mul(ctx, {{d, c}}, tied_exp(ctx, derivation(ctx, y, d)));
        for (const auto& [k, v] : t) add_to(out, k, v);
    }
    return tied_mul(ctx, tied_exp(ctx, derivation(ctx, y, beta)), out);
}

ReducedCharge primitive_direction(const TiedContext& ctx, const Monomial& d) {
    ReducedCharge r = reduce(ctx.charge(d));
    int g = std::gcd(r.x, r.y);
    return {r.x / g, r.y / g};
}

}  // namespace

TiedSeries tied_mul(const TiedContext& ctx, const TiedSeries& a, const TiedSeries& b) {
    TiedSeries r;
    for (const auto& [d1, c1] : a)
        for (const auto& [d2, c2] : b) {
            Monomial d = plus(d1, d2);
            if (!ctx.in_box(d)) continue;
            EpsPoly v = c1 * c2;
            if (ctx.pair(d1, d2) % 2 != 0) v = v * Rational(-1);
            add_to(r, d, v);
        }
    return r;
}

TiedSeries tied_exp(const TiedContext& ctx, const TiedSeries& x) {
    TiedSeries res = one(ctx), term = one(ctx);
    int bound = std::accumulate(ctx.caps.begin(), ctx.caps.end(), 0);
    for (int j = 1; j <= bound && !x.empty(); ++j) {
        term = tied_mul(ctx, term, x);
        if (term.empty()) break;
        for (auto& [d, c] : term) c = c * Rational(1, j);
        for (const auto& [d, c] : term) add_to(res, d, c);
    }
    return res;
}

std::map<Monomial, TiedSeries> tied_images(const TiedContext& ctx, const std::vector<TiedSeries>& factors) {
    std::map<Monomial, TiedSeries> res;
    for (const Monomial& b : ctx.generators()) {
        TiedSeries f = one(ctx);
        for (const auto& y : factors) f = act(ctx, y, b, f);
        res[b] = f;
    }
    return res;
}

TiedSeries tied_li2(const TiedContext& ctx, const Monomial& alpha, const EpsPoly& omega, const Rational& c) {
    TiedSeries y;
    if (std::all_of(alpha.begin(), alpha.end(), [](int x) { return x == 0; }))
        throw std::invalid_argument("li2 of the zero charge");
    Rational cj = c;
    for (int j = 1;; ++j, cj *= c) {
        Monomial d(alpha.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = j * alpha[i];
        if (!ctx.in_box(d)) break;
        add_to(y, d, omega * (-cj / (j * j)));
    }
    return y;
}

// ---------------------------------------------------------------- factorize

EpsPoly RayFactor::log_f(const Charge& d) const {
    auto it = log.find(d);
    if (it == log.end()) return EpsPoly();
    return it->second * Rational(d.content());
}

Rational FactorizationResult::dt_at(const Charge& c, int eps_power) const {
    auto it = dt.find(c);
    return it == dt.end() ? Rational(0) : it->second[eps_power];
}

int FactorizationResult::omega_at(const Charge& c) const {
    if (!omega) throw std::logic_error("no integral spectrum for this factorization");
    return omega->get(c);
}

nlohmann::json FactorizationResult::to_json() const {
    nlohmann::json j;
    j["kappa"] = ctx.kappa;
    j["caps"] = ctx.caps;
    j["eps_order"] = ctx.eps_order;
    j["factors"] = nlohmann::json::array();
    for (const auto& f : factors) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [c, v] : f.log) terms.push_back({{"charge", charge_json(c)}, {"coeff", v.to_json()}});
        j["factors"].push_back({{"direction", {f.direction.x, f.direction.y}}, {"log", terms}});
    }
    j["dt"] = nlohmann::json::array();
    for (const auto& [c, v] : dt) j["dt"].push_back({{"charge", charge_json(c)}, {"value", v.to_json()}});
    if (omega) {
        j["omega"] = nlohmann::json::array();
        for (const auto& [c, v] : omega->values()) j["omega"].push_back({{"charge", charge_json(c)}, {"value", v}});
    }
    return j;
}

namespace {

std::map<Charge, Rational> close_under_division(const std::map<Charge, Rational>& dt) {
    std::map<Charge, Rational> out = dt;
    for (const auto& [c, v] : dt) {
        int m = c.content();
        for (int p = 2; p <= m; ++p) {
            if (m % p) continue;
            Charge b = c;
            for (int& x : b.g) x /= p;
            for (int& x : b.e) x /= p;
            out.emplace(b, Rational(0));
        }
    }
    return out;
}

}  // namespace

FactorizationResult factorize_tied(const TiedContext& ctx, const std::vector<TiedSeries>& incoming,
                                   const CentralChargeConfig& config_out, FactorizeOptions opt) {
    config_out.validate();
    if (config_out.side == Side::Critical) throw std::domain_error("factorize: critical configuration");

    auto target = tied_images(ctx, incoming);
    std::map<ReducedCharge, TiedSeries> rays;

    // application order: counterclockwise on the outgoing side
    auto ordered_keys = [&] {
        std::vector<ReducedCharge> keys;
        for (const auto& [k, y] : rays) keys.push_back(k);
        std::sort(keys.begin(), keys.end(), [&](ReducedCharge a, ReducedCharge b) {
            return cross(config_out.Z(a.y, a.x), config_out.Z(b.y, b.x)) > 0;
        });
        return keys;
    };
    auto ordered = [&] {
        std::vector<TiedSeries> out;
        for (auto k : ordered_keys()) out.push_back(rays[k]);
        return out;
    };

    std::vector<Monomial> box = ctx.box();
    std::vector<Monomial> gens = ctx.generators();
    if (opt.reverse_work_order) std::reverse(gens.begin(), gens.end());
    int maxdeg = std::accumulate(ctx.caps.begin(), ctx.caps.end(), 0);
    const EpsPoly zero(ctx.eps_order);
    auto lookup = [&](const TiedSeries& s, const Monomial& d) {
        auto it = s.find(d);
        return it == s.end() ? zero : it->second;
    };

    for (int deg = 1; deg <= maxdeg; ++deg) {
        auto cur = tied_images(ctx, ordered());
        std::vector<Monomial> layer;
        for (const auto& d : box)
            if (std::accumulate(d.begin(), d.end(), 0) == deg) layer.push_back(d);
        if (opt.reverse_work_order) std::reverse(layer.begin(), layer.end());
        for (const auto& d : layer) {
            for (const auto& b : gens) {
                int p = ctx.pair(d, b);
                if (p == 0) continue;
                EpsPoly diff = lookup(target[b], d) - lookup(cur[b], d);
                if (!diff.is_zero()) add_to(rays[primitive_direction(ctx, d)], d, diff * (Rational(1) / p));
                break;
            }
        }
    }

    if (tied_images(ctx, ordered()) != target)
        throw std::logic_error("factorize: recomposition differs from the input");

    FactorizationResult res;
    res.ctx = ctx;
    res.config = config_out;
    auto keys = ordered_keys();
    std::reverse(keys.begin(), keys.end());
    for (auto k : keys) {
        RayFactor f{k, {}};
        for (const auto& [d, c] : rays[k]) {
            f.log[ctx.charge(d)] = c;
            res.dt[ctx.charge(d)] = c * Rational(-1);
        }
        if (!f.log.empty()) res.factors.push_back(std::move(f));
    }
    if (ctx.eps_order == 0) {
        std::map<Charge, Rational> dt;
        for (const auto& [c, v] : res.dt) dt[c] = v[0];
        try {
            res.omega = omega_from_dt(close_under_division(dt));
        } catch (const std::domain_error&) {
            res.omega.reset();
        }
    }
    return res;
}

TorusAutomorphism incoming_product(const Spectrum& spectrum, TruncatedRingSpec spec, int kappa) {
    std::vector<TorusFactor> etas, gammas;
    for (const auto& [c, om] : spectrum.values()) {
        if (c.l1() != spec.l1 || c.l2() != spec.l2) throw std::invalid_argument("incoming_product: charge shape");
        Charge a = c.is_nonnegative() ? c : -c;
        bool found = false;
        for (int i = 0; i < spec.l1 && !found; ++i)
            if (a == Charge::gamma(spec.l1, spec.l2, i)) {
                gammas.push_back({a, om, RingElement::s(spec, i)});
                found = true;
            }
        for (int j = 0; j < spec.l2 && !found; ++j)
            if (a == Charge::eta(spec.l1, spec.l2, j)) {
                etas.push_back({a, om, RingElement::t(spec, j)});
                found = true;
            }
        if (!found) throw std::invalid_argument("incoming_product: support outside the generators: " + c.str());
    }
    etas.insert(etas.end(), gammas.begin(), gammas.end());
    return TorusAutomorphism(spec, kappa, std::move(etas));
}

FactorizationResult factorize(const TorusAutomorphism& s_plus, const CentralChargeConfig& config_minus,
                              TruncatedRingSpec spec, FactorizeOptions opt) {
    if (!(s_plus.spec() == spec)) throw std::invalid_argument("factorize: ring spec mismatch");
    TiedContext ctx{spec.l1, spec.l2, std::vector<int>(spec.nvars(), spec.k), s_plus.kappa(), 0};
    std::vector<TiedSeries> in;
    for (const auto& f : s_plus.factors()) {
        if (f.sigma.is_zero() || f.omega == 0) continue;
        if (!f.alpha.is_nonnegative() || f.alpha.is_zero())
            throw std::invalid_argument("factorize: charge outside the positive cone: " + f.alpha.str());
        Monomial a = ctx.exponent(f.alpha);
        if (f.sigma.terms().size() != 1 || f.sigma.terms().begin()->first != a)
            throw std::invalid_argument("factorize: sigma must be a multiple of (s,t)^alpha");
        in.push_back(tied_li2(ctx, a, EpsPoly::constant(0, f.omega), f.sigma.terms().begin()->second));
    }
    return factorize_tied(ctx, in, config_minus, opt);
}

TorusAutomorphism recompose(const FactorizationResult& r, TruncatedRingSpec spec) {
    if (r.ctx.eps_order != 0) throw std::invalid_argument("recompose: eps-graded coefficients");
    std::vector<TorusFactor> parts;
    for (const auto& f : r.factors) {
        std::map<Charge, Rational> dt;
        for (const auto& [c, v] : f.log) dt[c] = -v[0];
        for (const auto& [c, om] : omega_from_dt_rational(close_under_division(dt)))
            parts.push_back({c, om, RingElement::tied(spec, c)});
    }
    return compose_ordered(r.config, parts, spec, r.ctx.kappa);
}

bool same_action(const TorusAutomorphism& a, const TorusAutomorphism& b) {
    const auto& spec = a.spec();
    if (!(spec == b.spec()) || a.kappa() != b.kappa()) return false;
    for (int i = 0; i < spec.nvars(); ++i) {
        Charge g = i < spec.l1 ? Charge::gamma(spec.l1, spec.l2, i) : Charge::eta(spec.l1, spec.l2, i - spec.l1);
        for (const Charge& c : {g, -g}) {
            auto e = AlgebraElement::basis(spec, a.kappa(), c);
            if (!(a.apply(e) == b.apply(e))) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- deformed counts

Rational gps_deformed_dt(const WeightVector& w, int kappa) {
    w.validate();
    return gps_deformed_dt_parts(w.w1, w.w2, kappa);
}

Rational gps_deformed_dt_parts(const std::vector<int>& w1, const std::vector<int>& w2, int kappa) {
    if (kappa < 1) throw std::invalid_argument("kappa must be positive");
    for (int x : w1)
        if (x < 1) throw std::invalid_argument("weight parts must be positive");
    for (int x : w2)
        if (x < 1) throw std::invalid_argument("weight parts must be positive");
    if (w1.empty() || w2.empty()) return 0;
    int l1 = static_cast<int>(w1.size()), l2 = static_cast<int>(w2.size());
    TiedContext ctx{l1, l2, w1, kappa, l1 + l2};
    ctx.caps.insert(ctx.caps.end(), w2.begin(), w2.end());
    EpsPoly om = EpsPoly::eps(ctx.eps_order);
    std::vector<TiedSeries> in;
    auto gens = ctx.generators();
    for (int j = 0; j < l2; ++j) in.push_back(tied_li2(ctx, gens[l1 + j], om));
    for (int i = 0; i < l1; ++i) in.push_back(tied_li2(ctx, gens[i], om));
    auto res = factorize_tied(ctx, in, CentralChargeConfig::minus_default());
    return res.dt_at(ctx.charge(ctx.caps), ctx.eps_order);
}

Rational gps_deformed_count(const WeightVector& w, int kappa) {
    Rational raw = gps_deformed_dt(w, kappa);
    int sign = 1;
    for (int x : w.w1) sign *= (x % 2 == 0) ? -1 : 1;
    for (int x : w.w2) sign *= (x % 2 == 0) ? -1 : 1;
    if ((kappa - 1) % 2 != 0 && (w.total1() * w.total2()) % 2 != 0) sign = -sign;
    Rational k = 1;
    for (int e = 0; e < w.size() - 1; ++e) k *= kappa;
    return raw * sign / k;
}

// ---------------------------------------------------------------- theta data

std::string ThetaDatum::str() const {
    std::ostringstream os;
    os << "(" << direction.x << "," << direction.y << "): ";
    bool first = true;
    for (const auto& [xy, c] : f) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (xy.first) os << "*x^" << xy.first;
        if (xy.second) os << "*y^" << xy.second;
    }
    return os.str();
}

std::vector<ThetaDatum> specialize_theta(const TorusAutomorphism& u) {
    std::vector<ThetaDatum> out;
    const auto& spec = u.spec();
    for (const auto& fac : u.factors()) {
        if (!fac.alpha.is_nonnegative() || fac.alpha.is_zero())
            throw std::invalid_argument("specialize_theta: charge outside the positive cone: " + fac.alpha.str());
        if (fac.sigma.constant_term() != 0) throw std::invalid_argument("specialize_theta: sigma has a constant term");
        int a = fac.alpha.gamma_sum(), b = fac.alpha.eta_sum();
        int g = std::gcd(a, b);
        ThetaDatum d{{b / g, a / g}, {}};
        RingElement step = fac.sigma * Rational(((long long)u.kappa() * a * b) % 2 ? 1 : -1);
        RingElement pw = RingElement::constant(spec, 1);
        for (int j = 0; !pw.is_zero(); ++j) {
            RingElement c = pw * binomial(fac.omega, j);
            if (!c.is_zero()) d.f[{j * b, j * a}] = c;
            pw = pw * step;
        }
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace tw
