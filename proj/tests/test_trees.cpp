#include <doctest.h>

#include "tropwall/trees.hpp"

#include <map>

using namespace tw;

namespace {

const Charge G = Charge::two(1, 0);
const Charge E = Charge::two(0, 1);

bool contains(const std::vector<DecoratedTree>& ts, const std::string& spec) {
    auto key = parse_tree_spec(spec).canonical();
    for (const auto& t : ts)
        if (t.canonical() == key) return true;
    return false;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("tree spec parser") {
    auto t = parse_tree_spec("g>(e,2e)");
    REQUIRE(t.size() == 3);
    CHECK(t.decoration[2] == Charge::two(0, 2));
    CHECK(t.parent == std::vector<int>{-1, 0, 0});
    auto chain = parse_tree_spec("g>e>g>2e");
    CHECK(chain.parent == std::vector<int>{-1, 0, 1, 2});
    CHECK(chain.str() == "g>e>g>2e");
    CHECK(parse_tree_spec(" 3g ").decoration[0] == Charge::two(3, 0));
    CHECK_THROWS(parse_tree_spec("g>"));
    CHECK_THROWS(parse_tree_spec("x"));
    CHECK_THROWS(parse_tree_spec("e>g"));  // root must be a gamma multiple
    CHECK_THROWS(parse_tree_spec("g>(e"));
}

TEST_CASE("enumerate_trees examples") {
    auto one = enumerate_trees(WeightVector{{1}, {1}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].canonical() == "g(e)");
    auto single = enumerate_trees(WeightVector{{1}, {}});
    REQUIRE(single.size() == 1);
    CHECK(single[0].size() == 1);
    auto four = enumerate_trees(WeightVector{{1, 1}, {1, 2}});
    for (auto s : {"g>e>g>2e", "g>(e>g,2e)", "g>2e>g>e", "g>(2e>g,e)"}) CHECK(contains(four, s));
    CHECK_THROWS(enumerate_trees(WeightVector{{}, {1}}));
}

TEST_CASE("enumeration has no isomorphic duplicates") {
    for (auto w : {WeightVector{{1, 1}, {1, 2}}, WeightVector{{1, 1}, {1, 1, 1}}, WeightVector{{1}, {1, 1, 1}}}) {
        std::set<std::string> keys;
        auto ts = enumerate_trees(w);
        for (const auto& t : ts) keys.insert(t.canonical());
        CHECK(keys.size() == ts.size());
    }
}

TEST_CASE("aut_tree") {
    CHECK(aut_tree(parse_tree_spec("g>e>g")) == 1);
    CHECK(aut_tree(parse_tree_spec("g>(e,e)")) == 2);
    CHECK(aut_tree(parse_tree_spec("g>(e,2e)")) == 1);
    CHECK(aut_tree(parse_tree_spec("g>(e>g,e>g,e)")) == 2);
    CHECK(aut_tree(parse_tree_spec("g>(e,e,e)")) == 6);
}

TEST_CASE("labelled trees fibre over isomorphism classes") {
    // sum_T Aut(w')/Aut(T) counts labelled trees with a fixed root: n^{n-2}
    for (auto w : {WeightVector{{1}, {1, 1}}, WeightVector{{1, 1}, {1, 2}}, WeightVector{{1, 1}, {1, 1, 1}},
                   WeightVector{{2}, {1, 1, 1}}}) {
        std::map<Charge, int> mult;
        auto ts = enumerate_trees(w);
        for (size_t i = 1; i < ts[0].decoration.size(); ++i) ++mult[ts[0].decoration[i]];
        long long autw = 1;
        for (auto [c, m] : mult) autw *= factorial(m);
        Rational sum = 0;
        for (const auto& t : ts) sum += Rational(autw) / aut_tree(t);
        long long n = w.size(), cayley = 1;
        for (int i = 0; i < n - 2; ++i) cayley *= n;
        CHECK(sum == cayley);
    }
}

TEST_CASE("GMN weights") {
    Spectrum sp = generator_spectrum(1, 1);
    CHECK(weight(parse_tree_spec("g"), sp) == 1);
    CHECK(weight(parse_tree_spec("g>e"), sp) == -1);
    CHECK(weight(parse_tree_spec("g>2e"), sp) == Rational(-1, 2));
    CHECK(weight(parse_tree_spec("g>e>g>2e"), sp) == Rational(1, 2));
    CHECK(weight(parse_tree_spec("g>(e>g,2e)"), sp) == Rational(1, 2));
    CHECK(weight(parse_tree_spec("g>2e>g>e"), sp) == 1);
    CHECK(weight(parse_tree_spec("g>(2e>g,e)"), sp) == 1);
    // kappa enters once per edge
    CHECK(weight(parse_tree_spec("g>e"), sp, 2) == -2);
    CHECK(weight(parse_tree_spec("g>e>g>2e"), sp, 3) == Rational(27, 2));
    // a vanishing DT kills the tree
    Spectrum only_gamma;
    only_gamma.set(G, 1);
    CHECK(weight(parse_tree_spec("g>e"), only_gamma) == 0);
}

TEST_CASE("lambda and mu coefficients") {
    CHECK(lambda_coeff(1, 1) == Laurent::monomial(-1));
    CHECK(mu_coeff(1, 1) == Laurent::monomial(1, -1));
    CHECK(lambda_coeff(2, 1) == Laurent::monomial(-1) + Laurent::monomial(-3));
    CHECK(lambda_coeff(1, 2) == Laurent::monomial(-2, Rational(-1, 2)));
    CHECK(mu_coeff(2, 2) == Laurent::monomial(2, Rational(1, 2)) + Laurent::monomial(6, Rational(1, 2)));
    CHECK_THROWS(lambda_coeff(0, 1));
}

TEST_CASE("q weights") {
    CHECK(q_weight(parse_tree_spec("g")) == Laurent(1));
    CHECK(q_weight(parse_tree_spec("g>e")) == Laurent::monomial(-1));
    CHECK(q_weight(parse_tree_spec("g>(e,e)")) == Laurent::monomial(-2, Rational(1, 2)));
    CHECK_THROWS(q_weight(parse_tree_spec("g>g")));
}

TEST_CASE("q weights specialise to classical weights") {
    // lambda^m_h -> -m/h and mu^n_h -> n/h at q^{1/2} = -1, which are the signed classical edge factors
    Spectrum sp = generator_spectrum(1, 1);
    for (auto w : {WeightVector{{1}, {1}}, WeightVector{{1}, {2}}, WeightVector{{1}, {1, 1}}, WeightVector{{2}, {1}},
                   WeightVector{{1, 1}, {1, 2}}, WeightVector{{2}, {3}}}) {
        for (const auto& t : enumerate_trees(w)) {
            Rational classical = weight(t, sp);
            bool alternating = true;
            for (int v = 1; v < t.size(); ++v)
                alternating = alternating && pairing(t.decoration[t.parent[v]], t.decoration[v]) != 0;
            if (!alternating) {
                CHECK(classical == 0);
                continue;
            }
            Rational p = t.decoration[0].gamma_sum();
            CHECK(q_weight(t).eval(-1) == classical * p * p);
        }
    }
}

TEST_CASE("tree json") {
    auto j = parse_tree_spec("g>(e,2e)").to_json();
    CHECK(j["children"].size() == 2);
    CHECK(j["charge"].dump() == "[[1],[0]]");
}
