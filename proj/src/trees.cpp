#include "tropwall/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tw {

std::vector<int> DecoratedTree::children(int v) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (parent[i] == v) out.push_back(i);
    return out;
}

Charge DecoratedTree::total_charge() const {
    Charge c = Charge::zero(decoration.at(0).l1(), decoration.at(0).l2());
    for (const auto& d : decoration) c += d;
    return c;
}

void DecoratedTree::validate() const {
    if (decoration.empty() || parent.size() != decoration.size()) throw std::invalid_argument("tree: malformed");
    if (parent[0] != -1) throw std::invalid_argument("tree: node 0 must be the root");
    for (int v = 1; v < size(); ++v) {
        std::set<int> seen;
        int u = v;
        while (u != 0) {
            if (u < 0 || u >= size() || !seen.insert(u).second) throw std::invalid_argument("tree: not a rooted tree");
            u = parent[u];
        }
    }
    for (const auto& d : decoration) {
        bool gamma = d.eta_sum() == 0 && std::count_if(d.g.begin(), d.g.end(), [](int x) { return x != 0; }) == 1;
        bool eta = d.gamma_sum() == 0 && std::count_if(d.e.begin(), d.e.end(), [](int x) { return x != 0; }) == 1;
        if (!d.is_nonnegative() || !(gamma || eta))
            throw std::invalid_argument("tree: decoration must be a positive multiple of one generator: " + d.str());
    }
    if (decoration[0].eta_sum() != 0) throw std::invalid_argument("tree: root must carry a gamma multiple");
}

std::string DecoratedTree::canonical(int v) const {
    std::vector<std::string> kids;
    for (int c : children(v)) kids.push_back(canonical(c));
    std::sort(kids.begin(), kids.end());
    std::string s = decoration[v].str();
    if (!kids.empty()) {
        s += "(";
        for (size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
        s += ")";
    }
    return s;
}

std::string DecoratedTree::canonical() const { return canonical(0); }

DecoratedTree DecoratedTree::normalized() const {
    DecoratedTree out;
    std::function<void(int, int)> visit = [&](int v, int par) {
        int id = out.size();
        out.decoration.push_back(decoration[v]);
        out.parent.push_back(par);
        auto kids = children(v);
        std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) { return canonical(a) < canonical(b); });
        for (int c : kids) visit(c, id);
    };
    visit(0, -1);
    return out;
}

nlohmann::json DecoratedTree::to_json() const {
    std::function<nlohmann::json(int)> rec = [&](int v) {
        nlohmann::json j;
        j["charge"] = charge_json(decoration[v]);
        j["children"] = nlohmann::json::array();
        for (int c : children(v)) j["children"].push_back(rec(c));
        return j;
    };
    return rec(0);
}

std::string DecoratedTree::str() const {
    std::function<std::string(int)> rec = [&](int v) {
        std::string s = decoration[v].str();
        auto kids = children(v);
        if (kids.size() == 1) s += ">" + rec(kids[0]);
        if (kids.size() > 1) {
            s += ">(";
            for (size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + rec(kids[i]);
            s += ")";
        }
        return s;
    };
    return rec(0);
}

Labelling orientation_labelling(const DecoratedTree& t) {
    Labelling l(t.size());
    for (int i = 0; i < t.size(); ++i) l[i] = i;
    return l;
}

std::vector<DecoratedTree> enumerate_trees(const std::vector<Charge>& decs) {
    int n = static_cast<int>(decs.size());
    if (n == 0) throw std::invalid_argument("enumerate_trees: no decorations");
    std::map<std::string, DecoratedTree> seen;
    std::vector<int> choice(n, 0);
    choice[0] = -1;
    // odometer over parent choices for nodes 1..n-1
    while (true) {
        DecoratedTree t{decs, choice};
        bool ok = true;
        for (int v = 1; v < n && ok; ++v) {
            int u = v, steps = 0;
            while (u != 0 && steps <= n) u = t.parent[u], ++steps;
            ok = u == 0;
        }
        if (ok) {
            auto key = t.canonical();
            if (!seen.count(key)) seen.emplace(key, t.normalized());
        }
        int i = 1;
        while (i < n) {
            if (++choice[i] < n) break;
            choice[i++] = 0;
        }
        if (i >= n) break;
    }
    std::vector<DecoratedTree> out;
    for (auto& [k, t] : seen) out.push_back(std::move(t));
    return out;
}

std::vector<DecoratedTree> enumerate_trees(const WeightVector& w, int root_part_index) {
    w.validate();
    if (root_part_index < 0 || root_part_index >= static_cast<int>(w.w1.size()))
        throw std::invalid_argument("enumerate_trees: root part does not exist");
    std::vector<Charge> decs{Charge::two(w.w1[root_part_index], 0)};
    for (int i = 0; i < static_cast<int>(w.w1.size()); ++i)
        if (i != root_part_index) decs.push_back(Charge::two(w.w1[i], 0));
    for (int x : w.w2) decs.push_back(Charge::two(0, x));
    return enumerate_trees(decs);
}

std::vector<DecoratedTree> enumerate_trees_separated(const WeightVector& w) {
    w.validate();
    int l1 = static_cast<int>(w.w1.size()), l2 = static_cast<int>(w.w2.size());
    if (l1 == 0) throw std::invalid_argument("enumerate_trees: root part does not exist");
    std::vector<Charge> decs;
    for (int i = 0; i < l1; ++i) decs.push_back(Charge::gamma(l1, l2, i, w.w1[i]));
    for (int j = 0; j < l2; ++j) decs.push_back(Charge::eta(l1, l2, j, w.w2[j]));
    return enumerate_trees(decs);
}

long long aut_tree(const DecoratedTree& t) {
    std::function<long long(int)> rec = [&](int v) {
        long long r = 1;
        std::map<std::string, int> groups;
        for (int c : t.children(v)) {
            r *= rec(c);
            ++groups[t.canonical(c)];
        }
        for (const auto& [k, m] : groups)
            for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    return rec(0);
}

Spectrum generator_spectrum(int l1, int l2) {
    Spectrum sp;
    for (int i = 0; i < l1; ++i) sp.set(Charge::gamma(l1, l2, i), 1);
    for (int j = 0; j < l2; ++j) sp.set(Charge::eta(l1, l2, j), 1);
    return sp;
}

Rational weight(const DecoratedTree& t, const Spectrum& spectrum, int kappa) {
    t.validate();
    Rational w = dt_from_omega(spectrum, t.decoration[0]) / aut_tree(t);
    if (t.edges() % 2) w = -w;
    for (int v = 1; v < t.size(); ++v) {
        const Charge& a = t.decoration[v];
        w *= dt_from_omega(spectrum, a) * pairing(t.decoration[t.parent[v]], a, kappa);
        if (w == 0) break;
    }
    return w;
}

Laurent lambda_coeff(int m, int h) {
    if (m < 1 || h < 1) throw std::invalid_argument("lambda_coeff: indices must be positive");
    Rational c = Rational(h % 2 ? 1 : -1) / h;
    Laurent r;
    for (int l = -m; l <= -1; ++l) r += Laurent::monomial((2 * l + 1) * h, c);
    return r;
}

Laurent mu_coeff(int n, int h) {
    if (n < 1 || h < 1) throw std::invalid_argument("mu_coeff: indices must be positive");
    Rational c = Rational(h % 2 ? -1 : 1) / h;
    Laurent r;
    for (int l = 0; l <= n - 1; ++l) r += Laurent::monomial((2 * l + 1) * h, c);
    return r;
}

Laurent q_weight(const DecoratedTree& t) {
    t.validate();
    Laurent w(Rational(1) / aut_tree(t));
    for (int v = 1; v < t.size(); ++v) {
        const Charge& p = t.decoration[t.parent[v]];
        const Charge& c = t.decoration[v];
        if (p.eta_sum() == 0 && c.gamma_sum() == 0) w *= lambda_coeff(p.gamma_sum(), c.eta_sum());
        else if (p.gamma_sum() == 0 && c.eta_sum() == 0) w *= mu_coeff(p.eta_sum(), c.gamma_sum());
        else throw std::invalid_argument("q_weight: edge between decorations of the same type");
    }
    return w;
}

// ---------------------------------------------------------------- tree-spec parser

namespace {

struct SpecParser {
    const std::string& s;
    size_t pos = 0;
    DecoratedTree t;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("tree spec '" + s + "' at " + std::to_string(pos) + ": " + what);
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    int node(int par) {
        skip();
        int m = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) m = 10 * m + (s[pos++] - '0');
        if (m == 0) m = 1;
        if (pos >= s.size()) fail("expected g or e");
        char k = s[pos++];
        if (k != 'g' && k != 'e') fail("expected g or e");
        int id = t.size();
        t.decoration.push_back(k == 'g' ? Charge::two(m, 0) : Charge::two(0, m));
        t.parent.push_back(par);
        if (eat('>')) {
            if (eat('(')) {
                do node(id);
                while (eat(','));
                if (!eat(')')) fail("expected )");
            } else {
                node(id);
            }
        }
        return id;
    }
};

}  // namespace

DecoratedTree parse_tree_spec(const std::string& spec) {
    SpecParser p{spec, 0, {}};
    p.node(-1);
    p.skip();
    if (p.pos != spec.size()) p.fail("trailing input");
    p.t.validate();
    return p.t;
}

}  // namespace tw
