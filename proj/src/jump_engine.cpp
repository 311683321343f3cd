#include "tropwall/jump_engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tw {

CentralChargeConfig EngineConfig::engine_minus_default() { return {Side::Minus, {5, 3}, {3, 4}}; }

std::string event_name(EventKind k) {
    switch (k) {
        case EventKind::Start: return "start";
        case EventKind::Move: return "move";
        case EventKind::ResidueAtParent: return "residue-parent";
        case EventKind::ResidueAtChild: return "residue-child";
    }
    return "?";
}

namespace {

using P2 = std::pair<long long, long long>;

long long cross2(P2 a, P2 b) { return a.first * b.second - a.second * b.first; }

// Scale both central charges by a common denominator; angles are unchanged.
std::pair<P2, P2> integral(const CentralChargeConfig& c) {
    BigInt l = 1;
    for (const Rational* r : {&c.z_gamma.re, &c.z_gamma.im, &c.z_eta.re, &c.z_eta.im})
        l = boost::multiprecision::lcm(l, denominator(*r));
    auto conv = [&](const Rational& r) { return static_cast<long long>(numerator(Rational(r * l))); };
    return {{conv(c.z_gamma.re), conv(c.z_gamma.im)}, {conv(c.z_eta.re), conv(c.z_eta.im)}};
}

Charge rank_two(const Charge& c) { return Charge::two(c.gamma_sum(), c.eta_sum()); }

bool parallel(const Charge& a, const Charge& b) {
    return static_cast<long long>(a.gamma_sum()) * b.eta_sum() - static_cast<long long>(a.eta_sum()) * b.gamma_sum() == 0;
}

bool generator_multiple(const Charge& c) { return c.gamma_sum() == 0 || c.eta_sum() == 0; }

}  // namespace

std::string RaySymbol::str() const {
    std::string s = (side == Side::Plus ? "l+(" : "l-(") + charge.str() + ")";
    if (nudge == Nudge::Clockwise) s += "^cw";
    if (nudge == Nudge::Counterclockwise) s += "^ccw";
    return s;
}

RayGeometry::RayGeometry(const EngineConfig& cfg, int nodes) {
    cfg.plus.validate();
    cfg.minus.validate();
    if (cfg.plus.side != Side::Plus || cfg.minus.side != Side::Minus)
        throw std::invalid_argument("engine needs a Plus and a Minus configuration");
    std::tie(zp_, ze_) = integral(cfg.plus);
    std::tie(zmg_, zme_) = integral(cfg.minus);
    pert_plus_.assign(nodes, {0, 0});
    pert_minus_.assign(nodes, {0, 0});
    if (cfg.perturbation_seed) {
        std::mt19937_64 rng(*cfg.perturbation_seed);
        std::uniform_int_distribution<long long> d(-99, 99);
        for (int i = 0; i < nodes; ++i) {
            pert_plus_[i] = {d(rng), d(rng)};
            pert_minus_[i] = {d(rng), d(rng)};
        }
    }
}

RaySymbol RayGeometry::ray(Side side, const Charge& charge, std::vector<int> constituents, Nudge nudge) const {
    RaySymbol r{side, rank_two(charge), nudge, std::move(constituents)};
    P2 zg = side == Side::Plus ? zp_ : zmg_, ze = side == Side::Plus ? ze_ : zme_;
    long long a = r.charge.gamma_sum(), b = r.charge.eta_sum();
    r.z = {a * zg.first + b * ze.first, a * zg.second + b * ze.second};
    const auto& pert = side == Side::Plus ? pert_plus_ : pert_minus_;
    for (int i : r.constituents) {
        r.p.first += pert.at(i).first;
        r.p.second += pert.at(i).second;
    }
    return r;
}

int RayGeometry::cmp(const RaySymbol& s, const RaySymbol& o) {
    auto sgn = [](long long x) { return (x > 0) - (x < 0); };
    if (long long x = cross2(o.z, s.z)) return sgn(x);
    if (long long y = cross2(o.z, s.p) + cross2(o.p, s.z)) return sgn(y);
    if (long long y = cross2(o.p, s.p)) return sgn(y);
    int a = static_cast<int>(s.nudge), b = static_cast<int>(o.nudge);
    return (a > b) - (a < b);
}

bool separates(const RaySymbol& l, const RaySymbol& a, const RaySymbol& b) {
    for (const RaySymbol* r : {&l, &a, &b})
        if (r->z.first <= 0 || r->z.second <= 0) throw std::invalid_argument("separates: ray outside the working sector");
    return RayGeometry::cmp(a, l) * RayGeometry::cmp(b, l) < 0;
}

// ---------------------------------------------------------------- expansion

namespace {

using State = std::map<int, EngineVertex>;

struct Pending {
    State state;
    int node;  // expansion node id
};

std::shared_ptr<const MergeTrack> join(std::shared_ptr<const MergeTrack> a, std::shared_ptr<const MergeTrack> b) {
    auto m = std::make_shared<MergeTrack>();
    m->left = std::move(a);
    m->right = std::move(b);
    return m;
}

TropicalType type_of(const MergeTrack& track, const DecoratedTree& t) {
    TropicalType ty;
    std::function<int(const MergeTrack&)> rec = [&](const MergeTrack& m) -> int {
        if (!m.left) return ty.add_end(m.node, reduce(t.decoration[m.node]));
        int a = rec(*m.left);
        int b = rec(*m.right);
        return ty.merge(a, b);
    };
    rec(track);
    return ty;
}

}  // namespace

ExpansionTree build_expansion(const DecoratedTree& t, const Labelling& nu, const EngineConfig& cfg) {
    t.validate();
    int n = t.size();
    if (static_cast<int>(nu.size()) != n) throw std::invalid_argument("labelling has the wrong length");
    {
        auto sorted = nu;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (sorted[i] != i) throw std::invalid_argument("labelling must be a permutation of 0..n-1");
    }
    if (!is_primitive(reduce(t.total_charge())))
        throw std::invalid_argument("build_expansion: total charge is not primitive");
    if (cfg.kappa < 1) throw std::invalid_argument("kappa must be positive");

    RayGeometry geo(cfg, n);
    ExpansionTree out{t, nu, cfg, {}, {}};

    State init;
    for (int i = 0; i < n; ++i) {
        auto leaf = std::make_shared<MergeTrack>();
        leaf->node = i;
        Charge c = rank_two(t.decoration[i]);
        init[i] = {c, nu[i], geo.ray(Side::Plus, c, {i}), t.parent[i], {i}, leaf};
    }
    int first = static_cast<int>(std::min_element(nu.begin(), nu.end()) - nu.begin());
    init[first].ray = geo.ray(Side::Minus, init[first].charge, init[first].constituents);

    ExpansionNode root;
    root.moved = init[first].charge.str();
    out.nodes.push_back(root);
    std::vector<Pending> stack{{init, 0}};

    auto is_plus_of = [](const EngineVertex& v) { return v.ray.side == Side::Plus && parallel(v.ray.charge, v.charge); };
    auto is_minus_of = [](const EngineVertex& v) { return v.ray.side == Side::Minus && parallel(v.ray.charge, v.charge); };

    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        const State& st = cur.state;
        ExpansionNode& here = out.nodes[cur.node];
        here.snapshot.assign(st.begin(), st.end());

        std::map<int, std::vector<int>> kids;
        for (const auto& [id, v] : st)
            if (v.parent >= 0) kids[v.parent].push_back(id);

        int chosen = -1;
        for (const auto& [id, v] : st) {
            bool c1 = is_plus_of(v) && generator_multiple(v.charge);
            bool c2 = !is_plus_of(v) && !is_minus_of(v);
            if ((c1 || c2) && (chosen < 0 || v.label < st.at(chosen).label)) chosen = id;
        }
        if (chosen < 0) {
            here.leaf = true;
            if (st.size() == 1 && n > 1) {
                const auto& v = st.begin()->second;
                SignedTropicalType s{type_of(*v.track, t), here.sign, here.crossing_product, here.q_half,
                                     here.degenerate, here.id};
                out.types.push_back(std::move(s));
            }
            continue;
        }

        const EngineVertex& v = st.at(chosen);
        const RaySymbol& L = v.ray;
        RaySymbol T = geo.ray(Side::Minus, v.charge, v.constituents);
        bool ccw = RayGeometry::cmp(T, L) > 0;

        std::vector<std::pair<EventKind, int>> seps;
        auto crosses = [&](int o) {
            const auto& ov = st.at(o);
            return !is_plus_of(ov) && separates(ov.ray, L, T);
        };
        if (v.parent >= 0 && crosses(v.parent)) seps.push_back({EventKind::ResidueAtParent, v.parent});
        for (int k : kids[chosen])
            if (crosses(k)) seps.push_back({EventKind::ResidueAtChild, k});

        auto spawn = [&](State s, EventKind kind, const std::string& partner, int cs, int alg, int dq, bool degenerate) {
            ExpansionNode node;
            node.id = static_cast<int>(out.nodes.size());
            node.parent = cur.node;
            node.depth = out.nodes[cur.node].depth + 1;
            node.event = kind;
            node.moved = v.charge.str();
            node.partner = partner;
            node.crossing_sign = cs;
            node.algebra_sign = alg;
            node.sign = out.nodes[cur.node].sign * cs * alg;
            node.crossing_product = out.nodes[cur.node].crossing_product * cs;
            node.q_half = out.nodes[cur.node].q_half + dq;
            node.degenerate = out.nodes[cur.node].degenerate || degenerate;
            out.nodes.push_back(std::move(node));
            stack.push_back({std::move(s), static_cast<int>(out.nodes.size()) - 1});
        };

        {
            State s = st;
            s[chosen].ray = T;
            spawn(std::move(s), EventKind::Move, "", 1, 1, 0, false);
        }
        for (auto [kind, o] : seps) {
            // out.nodes may reallocate inside spawn; re-read what is needed first
            const EngineVertex& ov = st.at(o);
            const Charge a = v.charge, b = ov.charge;
            int pab = pairing(a, b, cfg.kappa);
            int alg = pab % 2 ? -1 : 1;
            int cs, dq;
            State s = st;
            EngineVertex& m = s[o];
            m.charge = a + b;
            m.label = std::min(v.label, ov.label);
            m.constituents.insert(m.constituents.end(), v.constituents.begin(), v.constituents.end());
            if (kind == EventKind::ResidueAtParent) {
                cs = ccw ? 1 : -1;
                dq = cfg.q_rule == QRule::ParentFirst ? pairing(b, a, cfg.kappa) : pab;
                m.track = join(ov.track, v.track);
                for (int k : kids[chosen]) s[k].parent = o;
            } else {
                cs = ccw ? -1 : 1;
                dq = pab;
                m.track = join(v.track, ov.track);
                m.parent = v.parent;
                for (int k : kids[chosen])
                    if (k != o) s[k].parent = o;
            }
            s.erase(chosen);
            spawn(std::move(s), kind, b.str(), cs, alg, dq, parallel(a, b));
        }
    }
    return out;
}

std::vector<SignedTropicalType> signed_types(const DecoratedTree& t, const Labelling& nu, const EngineConfig& cfg) {
    return build_expansion(t, nu, cfg).types;
}

int ExpansionTree::signed_total() const {
    int s = 0;
    for (const auto& x : types) s += x.sign;
    return s;
}

Laurent ExpansionTree::q_total() const {
    Laurent s;
    for (const auto& x : types) s += x.q_term();
    return s;
}

nlohmann::json ExpansionTree::to_json() const {
    nlohmann::json j;
    j["tree"] = tree.str();
    j["labelling"] = labelling;
    j["kappa"] = config.kappa;
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : nodes) {
        nlohmann::json v;
        v["id"] = n.id;
        v["parent"] = n.parent;
        v["event"] = event_name(n.event);
        v["moved"] = n.moved;
        if (!n.partner.empty()) v["partner"] = n.partner;
        v["crossing_sign"] = n.crossing_sign;
        v["algebra_sign"] = n.algebra_sign;
        v["sign"] = n.sign;
        v["q_half"] = n.q_half;
        v["degenerate"] = n.degenerate;
        v["leaf"] = n.leaf;
        v["vertices"] = nlohmann::json::array();
        for (const auto& [id, x] : n.snapshot)
            v["vertices"].push_back({{"id", id}, {"charge", x.charge.str()}, {"label", x.label},
                                     {"ray", x.ray.str()}, {"parent", x.parent}});
        j["nodes"].push_back(v);
    }
    j["types"] = nlohmann::json::array();
    for (const auto& s : types)
        j["types"].push_back({{"type", s.type.canonical()}, {"sign", s.sign}, {"crossing_sign", s.crossing_sign},
                              {"q_half", s.q_half_exp}, {"multiplicity", multiplicity(s.type)},
                              {"degenerate", s.degenerate}, {"node", s.expansion_node}});
    j["signed_total"] = signed_total();
    return j;
}

std::string ExpansionTree::trace() const {
    std::ostringstream os;
    os << "tree " << tree.str() << "  labelling";
    for (int l : labelling) os << ' ' << l;
    os << "  kappa " << config.kappa << "\n";
    auto integrals = [](const ExpansionNode& n) {
        std::string s;
        for (const auto& [id, v] : n.snapshot) s += "int_{" + v.ray.str() + "} ";
        return s;
    };
    for (const auto& n : nodes) {
        os << std::string(2 * n.depth, ' ') << '#' << n.id << ' ';
        switch (n.event) {
            case EventKind::Start: os << "move " << n.moved << " to its l- ray"; break;
            case EventKind::Move: os << "move " << n.moved; break;
            case EventKind::ResidueAtParent:
            case EventKind::ResidueAtChild:
                os << "residue: " << n.moved << " merges into " << (n.event == EventKind::ResidueAtParent ? "parent " : "child ")
                   << n.partner << " (crossing " << (n.crossing_sign > 0 ? "+1" : "-1") << ", algebra "
                   << (n.algebra_sign > 0 ? "+1" : "-1") << ")";
                break;
        }
        os << "  | " << integrals(n) << "| sign " << n.sign << ", q^(" << n.q_half << "/2)";
        if (n.degenerate) os << " [parallel merge]";
        if (n.leaf) os << (n.snapshot.size() == 1 ? " [leaf]" : " [leaf, no jump]");
        os << "\n";
    }
    os << "types:\n";
    for (const auto& s : types)
        os << "  " << s.type.canonical() << "  sign " << s.sign << "  mu " << multiplicity(s.type) << "  q^("
           << s.q_half_exp << "/2)" << (s.degenerate ? "  degenerate" : "") << "\n";
    os << "signed total " << signed_total() << "\n";
    return os.str();
}

// ---------------------------------------------------------------- labellings

EndConfiguration tree_ends(const DecoratedTree& t, const std::vector<int>& order, unsigned long long seed) {
    if (static_cast<int>(order.size()) != t.size()) throw std::invalid_argument("tree_ends: order has the wrong length");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> d(1, 999);
    EndConfiguration c;
    c.ends.resize(t.size());
    for (int i = 0; i < t.size(); ++i) {
        const Charge& x = t.decoration[i];
        c.ends[i].vertical = x.eta_sum() == 0;
        c.ends[i].weight = x.eta_sum() == 0 ? x.gamma_sum() : x.eta_sum();
    }
    for (size_t rank = 0; rank < order.size(); ++rank)
        c.ends.at(order[rank]).offset = Rational(static_cast<long long>(rank) * 1000 + d(rng)) / 1000;
    return c;
}

std::optional<Labelling> suitable_labelling(const DecoratedTree& t, const std::vector<int>& order,
                                            const EngineConfig& cfg, int max_tries) {
    auto ends = tree_ends(t, order);
    // orientation-compatible labellings first
    std::vector<Labelling> candidates;
    Labelling nu(t.size());
    std::iota(nu.begin(), nu.end(), 0);
    do candidates.push_back(nu);
    while (std::next_permutation(nu.begin(), nu.end()) && static_cast<int>(candidates.size()) < max_tries);
    auto compatible = [&](const Labelling& l) {
        for (int v = 1; v < t.size(); ++v)
            if (l[t.parent[v]] > l[v]) return false;
        return true;
    };
    std::stable_partition(candidates.begin(), candidates.end(), compatible);
    for (const auto& l : candidates) {
        bool ok = true;
        try {
            for (const auto& s : signed_types(t, l, cfg))
                if (s.degenerate || !place(s.type, ends)) ok = false;
        } catch (const DegenerateConfiguration&) {
            ok = false;
        }
        if (ok) return l;
    }
    return std::nullopt;
}

namespace {

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int mx) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, mx); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

}  // namespace

Rational tree_expansion_dt(int a, int b, int kappa) {
    if (a < 1 || b < 1) throw std::invalid_argument("tree_expansion_dt: both coefficients must be positive");
    EngineConfig cfg;
    cfg.kappa = kappa;
    Rational total = 0;
    auto sp = generator_spectrum(1, 1);
    for (const auto& pa : partitions(a))
        for (const auto& pb : partitions(b))
            for (size_t r = 0; r < pa.size(); ++r) {
                if (r > 0 && pa[r] == pa[r - 1]) continue;
                std::vector<Charge> decs{Charge::two(pa[r], 0)};
                for (size_t i = 0; i < pa.size(); ++i)
                    if (i != r) decs.push_back(Charge::two(pa[i], 0));
                for (int y : pb) decs.push_back(Charge::two(0, y));
                for (const auto& t : enumerate_trees(decs)) {
                    Rational w = weight(t, sp, kappa);
                    if (w == 0) continue;
                    total += Rational(pa[r]) / a * w * build_expansion(t, orientation_labelling(t), cfg).signed_total();
                }
            }
    return total;
}

TreeSide tree_side(const WeightVector& w, const EngineConfig& cfg) {
    w.validate();
    if (!is_primitive({w.total2(), w.total1()})) throw std::invalid_argument("tree_side: total charge is not primitive");
    TreeSide out;
    out.q_total = {Laurent(0), Laurent(1)};
    auto sp = generator_spectrum(1, 1);
    for (auto& t : enumerate_trees(w)) {
        TreeContribution c{t, weight(t, sp, cfg.kappa), 0, {}};
        if (c.weight != 0) {
            auto ex = build_expansion(t, orientation_labelling(t), cfg);
            c.signed_total = ex.signed_total();
            c.q_total = ex.q_total();
            out.total += c.weight * c.signed_total;
            out.q_total = out.q_total + QFrac{q_weight(t) * c.q_total, Laurent(1)};
        }
        out.trees.push_back(std::move(c));
    }
    return out;
}

int parity_sign(const WeightVector& w) {
    int s = 1;
    for (const auto* part : {&w.w1, &w.w2})
        for (int x : *part) s *= x % 2 ? 1 : -1;
    return s;
}

Rational count_side(const WeightVector& w, int kappa, int kappa_power) {
    Rational r = Rational(ntrop(w)) / (w.weight_square_product() * aut_weight_vector(w.without_root()));
    int edges = w.size() - 1;
    Rational k = kappa_power < 0 ? Rational(1) / kappa : Rational(kappa);
    for (int i = 0; i < edges * std::abs(kappa_power); ++i) r *= k;
    return r;
}

Rational corrected_count_side(const WeightVector& w, int kappa) {
    Rational r = count_side(w, kappa, 1) * parity_sign(w);
    if ((kappa - 1) % 2 && (static_cast<long long>(w.total1()) * w.total2()) % 2) r = -r;
    return r;
}

QFrac refined_count_side(const WeightVector& w) {
    QFrac r{ntrop_q(w), Laurent(aut_weight_vector(w.without_root()))};
    for (const auto* part : {&w.w1, &w.w2})
        for (int x : *part) r = r * QFrac{Laurent(1), Laurent(x) * Laurent::qint(x)};
    return r;
}

}  // namespace tw
