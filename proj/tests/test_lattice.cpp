#include <doctest.h>

#include "tropwall/lattice.hpp"

#include <random>

using namespace tw;

TEST_CASE("pairing examples") {
    Charge g = Charge::two(1, 0), e = Charge::two(0, 1);
    CHECK(pairing(g, e) == 1);
    CHECK(pairing(g + e, g + e) == 0);
    CHECK(pairing(Charge::two(2, 1), g) == -1);
    CHECK(pairing(g, e, 3) == 3);
    // multi-generator table
    Charge g1 = Charge::gamma(2, 2, 0), g2 = Charge::gamma(2, 2, 1), e2 = Charge::eta(2, 2, 1);
    CHECK(pairing(g1, g2) == 0);
    CHECK(pairing(g2, e2) == 1);
}

TEST_CASE("reduce") {
    CHECK(reduce(Charge::gamma(1, 2, 0)) == ReducedCharge{0, 1});
    CHECK(reduce(Charge::zero(1, 2)) == ReducedCharge{0, 0});
    Charge c = Charge::gamma(1, 2, 0, 2) + Charge::eta(1, 2, 1, 3);
    CHECK(reduce(c) == ReducedCharge{3, 2});
}

TEST_CASE("is_primitive") {
    CHECK(is_primitive({1, 1}));
    CHECK(is_primitive({2, 3}));
    CHECK_FALSE(is_primitive({2, 4}));
    CHECK_THROWS_AS(is_primitive({0, 0}), std::invalid_argument);
}

TEST_CASE("aut_weight_vector") {
    CHECK(aut_weight_vector({{1}, {1, 2}}) == 1);
    CHECK(aut_weight_vector({{}, {}}) == 1);
    CHECK(aut_weight_vector({{1, 1}, {2, 2, 3}}) == 4);
    WeightVector w = WeightVector::parse("1+1,1+2");
    CHECK(w == WeightVector{{1, 1}, {1, 2}});
    CHECK(w.without_root() == WeightVector{{1}, {1, 2}});
    CHECK(WeightVector::parse("1,").w2.empty());
    CHECK_THROWS(WeightVector::parse("1+x,2"));
    CHECK_THROWS(WeightVector::parse("3"));
}

TEST_CASE("slope_order") {
    Charge g = Charge::two(1, 0), e = Charge::two(0, 1);
    auto plus = CentralChargeConfig::plus_default();
    auto minus = CentralChargeConfig::minus_default();
    CHECK(slope_order(plus, {e, g + e, g}) == std::vector<Charge>{g, g + e, e});
    CHECK(slope_order(minus, {g, e, g + e}) == std::vector<Charge>{e, g + e, g});
    CHECK(slope_order(plus, {g}) == std::vector<Charge>{g});
    CHECK_THROWS_AS(slope_order(CentralChargeConfig::critical_default(), {g}), std::domain_error);
    CHECK_THROWS_AS(slope_order(plus, {g - e}), std::invalid_argument);
    plus.validate();
    minus.validate();
    CentralChargeConfig::critical_default().validate();
}

TEST_CASE("lattice properties on random charges") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    auto rnd = [&] { return Charge({d(rng), d(rng)}, {d(rng), d(rng), d(rng)}); };
    for (int n = 0; n < 1000; ++n) {
        Charge a = rnd(), b = rnd(), c = rnd();
        CHECK(pairing(a + b, c) == pairing(a, c) + pairing(b, c));
        CHECK(pairing(a, b) == -pairing(b, a));
        ReducedCharge ra = reduce(a), rb = reduce(b), rab = reduce(a + b);
        CHECK(rab == ReducedCharge{ra.x + rb.x, ra.y + rb.y});
    }
}

TEST_CASE("slope order flips across the wall") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(1, 6);
    auto plus = CentralChargeConfig::plus_default();
    auto minus = CentralChargeConfig::minus_default();
    for (int n = 0; n < 100; ++n) {
        std::vector<Charge> cs;
        std::set<std::pair<int, int>> slopes;
        for (int i = 0; i < 5; ++i) {
            int a = d(rng), b = d(rng);
            int g = std::gcd(a, b);
            if (!slopes.insert({a / g, b / g}).second) continue;
            cs.push_back(Charge::two(a, b));
        }
        auto p = slope_order(plus, cs);
        auto m = slope_order(minus, cs);
        std::reverse(m.begin(), m.end());
        CHECK(p == m);
    }
}

TEST_CASE("aut divides factorials") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> len(0, 5), part(1, 3);
    for (int n = 0; n < 200; ++n) {
        WeightVector w;
        int a = len(rng), b = len(rng);
        for (int i = 0; i < a; ++i) w.w1.push_back(part(rng));
        for (int i = 0; i < b; ++i) w.w2.push_back(part(rng));
        std::sort(w.w1.begin(), w.w1.end());
        std::sort(w.w2.begin(), w.w2.end());
        long long f = 1;
        for (int i = 2; i <= a; ++i) f *= i;
        for (int i = 2; i <= b; ++i) f *= i;
        CHECK(f % aut_weight_vector(w) == 0);
    }
}

TEST_CASE("json round trip") {
    Charge c({1, -2}, {3});
    CHECK(charge_from_json(charge_json(c)) == c);
    CHECK(charge_json(c).dump() == "[[1,-2],[3]]");
    WeightVector w{{1, 1}, {2}};
    CHECK(weight_from_json(weight_json(w)) == w);
}
