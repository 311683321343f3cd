#include <doctest.h>

#include "tropwall/quantum.hpp"
#include "tropwall/scattering.hpp"
#include "tropwall/trees.hpp"

#include <random>

using namespace tw;

namespace {

const TruncatedRingSpec S2{1, 1, 2};
const Charge G = Charge::two(1, 0);
const Charge E = Charge::two(0, 1);

QAlgebraElement eh(const Charge& c, TruncatedRingSpec spec = S2, int kappa = 1) {
    return QAlgebraElement::basis(spec, kappa, c);
}

Laurent qhalf(int e, const Rational& c = 1) { return Laurent::monomial(e, c); }

QAlgebraElement random_element(std::mt19937_64& rng, TruncatedRingSpec spec) {
    std::uniform_int_distribution<int> d(-2, 2), coin(0, 1);
    QAlgebraElement a(spec, 1);
    for (int t = 0; t < 3; ++t) {
        QRingElement r(spec);
        r.add_term({coin(rng), coin(rng)}, qhalf(d(rng), d(rng)) + Laurent(d(rng)));
        a.add(Charge::two(d(rng), d(rng)), r);
    }
    return a;
}

}  // namespace

TEST_CASE("quantum torus product") {
    CHECK(q_mul(eh(G), eh(E)) == QAlgebraElement::term(G + E, QRingElement::constant(S2, qhalf(1))));
    CHECK(q_mul(eh(E), eh(G)) == QAlgebraElement::term(G + E, QRingElement::constant(S2, qhalf(-1))));
    CHECK(q_mul(eh(G), eh(Charge::two(0, 0))) == eh(G));
    auto k2 = q_mul(eh(G, S2, 2), eh(E, S2, 2));
    CHECK(k2.coeff(G + E).coeff({0, 0}) == qhalf(2));
}

TEST_CASE("quantum bracket") {
    auto b = q_bracket(eh(G), eh(E));
    CHECK(b == QAlgebraElement::term(G + E, QRingElement::constant(S2, qhalf(1) - qhalf(-1))));
    CHECK(q_bracket(eh(G), eh(G)).is_zero());
    auto lim = rescaled_limit(b);
    CHECK(lim.coeff(G + E).constant_term() == -1);
    // classical bracket: (-1)^{<a,b>} <a,b> e_{a+b}
    for (auto [a, c] : std::vector<std::pair<Charge, Charge>>{{G, E}, {G * 2, E}, {G, E * 3}, {E, G * 2}}) {
        auto l = rescaled_limit(q_bracket(eh(a), eh(c)));
        CHECK(l == bracket(AlgebraElement::basis(S2, 1, a), AlgebraElement::basis(S2, 1, c)));
    }
    CHECK_THROWS(rescaled_limit(Laurent(1)));
}

TEST_CASE("quantum product is associative and the bracket satisfies Jacobi") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto a = random_element(rng, S2), b = random_element(rng, S2), c = random_element(rng, S2);
        CHECK(q_mul(q_mul(a, b), c) == q_mul(a, q_mul(b, c)));
        auto j = q_bracket(a, q_bracket(b, c)) + q_bracket(b, q_bracket(c, a)) + q_bracket(c, q_bracket(a, b));
        CHECK(j.is_zero());
    }
}

TEST_CASE("q-dilogarithm") {
    auto s = RingElement::s(S2, 0);
    auto terms = q_dilog(s, G);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].coeff == QFrac{Laurent(1), qhalf(1) - qhalf(-1)});
    CHECK(terms[1].coeff == QFrac{Laurent(-1), Laurent(2) * (qhalf(2) - qhalf(-2))});
    CHECK(terms[1].charge == G * 2);
    CHECK(q_dilog(RingElement(S2), G).empty());
    CHECK_THROWS(q_dilog(RingElement::constant(S2, 1), G));
    // exp of the exponent against the infinite product, coefficient by coefficient
    auto series = q_dilog_series(6);
    for (int j = 0; j <= 6; ++j) {
        CAPTURE(j);
        CHECK(series[j] == q_dilog_product_coeff(j));
    }
}

TEST_CASE("U operator examples") {
    auto s = RingElement::s(S2, 0);
    QFactor u{G, 0, 1, s};
    auto img = u_apply(u, eh(E));
    // e^_eta (1 + q^{1/2} s e^_gamma)
    auto want = eh(E) + q_mul(eh(E), QAlgebraElement::term(G, QRingElement(s, qhalf(1))));
    CHECK(img == want);
    CHECK(u_apply(u, eh(G)) == eh(G));
    // e^_{-eta} (1 + q^{-1/2} s e^_gamma)^{-1}
    auto inv = u_apply(u, eh(-E));
    QAlgebraElement series(S2, 1);
    series.add(Charge::two(0, 0), QRingElement::constant(S2, 1));
    series.add(G, QRingElement(s, qhalf(-1, -1)));
    series.add(G * 2, QRingElement(s * s, qhalf(-2)));
    CHECK(inv == q_mul(eh(-E), series));
}

TEST_CASE("U operators specialize to the classical factors") {
    TruncatedRingSpec spec{1, 1, 3};
    for (int kappa : {1, 2}) {
        for (auto [alpha, beta] : std::vector<std::pair<Charge, Charge>>{{G, E}, {E, G}, {G, E * 2}, {G + E, E}, {E, -G}}) {
            for (int omega : {1, -1, 2}) {
                CAPTURE(kappa);
                CAPTURE(omega);
                auto sigma = RingElement::tied(spec, alpha.is_nonnegative() ? alpha : -alpha);
                auto q = u_apply({alpha, 0, omega, sigma}, QAlgebraElement::basis(spec, kappa, beta)).classical();
                auto c = apply_factor({alpha, omega, sigma}, AlgebraElement::basis(spec, kappa, beta));
                CHECK(q == c);
            }
        }
    }
}

TEST_CASE("refined pentagon") {
    auto in = q_incoming_product(S2);
    REQUIRE(in.factors().size() == 2);
    CHECK(in.factors()[0].alpha == E);
    auto r = refined_factorize(in, CentralChargeConfig::minus_default(), S2);
    CHECK(r.omega.size() == 3);
    CHECK(r.omega.at(G) == std::map<int, long long>{{0, 1}});
    CHECK(r.omega.at(E) == std::map<int, long long>{{0, 1}});
    CHECK(r.omega.at(G + E) == std::map<int, long long>{{0, 1}});
    auto id = refined_factorize(QAutomorphism(S2, 1), CentralChargeConfig::minus_default(), S2);
    CHECK(id.omega.empty());
    CHECK_THROWS(refined_factorize(in, CentralChargeConfig::plus_default(), S2));
}

TEST_CASE("refined factorization specializes to the classical one") {
    for (auto [spec, kappa] : std::vector<std::pair<TruncatedRingSpec, int>>{
             {{1, 1, 2}, 1}, {{1, 1, 3}, 1}, {{1, 2, 1}, 1}, {{1, 2, 2}, 1}, {{1, 1, 2}, 2}, {{2, 1, 1}, 1}}) {
        CAPTURE(spec.l1);
        CAPTURE(spec.l2);
        CAPTURE(spec.k);
        CAPTURE(kappa);
        auto r = refined_factorize(q_incoming_product(spec, kappa), CentralChargeConfig::minus_default(), spec);
        auto c = factorize(incoming_product(generator_spectrum(spec.l1, spec.l2), spec, kappa),
                           CentralChargeConfig::minus_default(), spec);
        REQUIRE(c.omega);
        CHECK(r.classical() == *c.omega);
        for (const auto& [ch, f] : r.generating) CHECK(f == f.bar());  // refined invariants are bar-symmetric
    }
}

TEST_CASE("refined Kronecker-type spectrum") {
    TruncatedRingSpec spec{1, 1, 2};
    auto r = refined_factorize(q_incoming_product(spec, 2), CentralChargeConfig::minus_default(), spec);
    // kappa = 2: Omega_{+-1}(gamma+eta) = 1, so the classical value is -2
    CHECK(r.generating.at(G + E) == qhalf(1) + qhalf(-1));
    CHECK(r.omega.at(G + E) == std::map<int, long long>{{-1, 1}, {1, 1}});
    CHECK(r.generating.count(G * 2 + E * 2) == 0);
    CHECK(r.classical().get(G + E) == -2);
    auto j = r.to_json();
    CHECK(j.size() == r.generating.size());
}
