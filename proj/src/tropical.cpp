#include "tropwall/tropical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tw {

namespace {

long long det(ReducedCharge a, ReducedCharge b) { return static_cast<long long>(a.x) * b.y - static_cast<long long>(a.y) * b.x; }

}  // namespace

// ---------------------------------------------------------------- types

int TropicalType::add_end(int end, ReducedCharge dir) {
    nodes.push_back({-1, -1, end, dir});
    if (root < 0) root = static_cast<int>(nodes.size()) - 1;
    return static_cast<int>(nodes.size()) - 1;
}

int TropicalType::merge(int a, int b) {
    ReducedCharge d{nodes[a].dir.x + nodes[b].dir.x, nodes[a].dir.y + nodes[b].dir.y};
    nodes.push_back({a, b, -1, d});
    root = static_cast<int>(nodes.size()) - 1;
    return root;
}

int TropicalType::vertices() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.left >= 0; }));
}

std::vector<int> TropicalType::vertex_dets() const {
    std::vector<int> out;
    for (const auto& n : nodes)
        if (n.left >= 0) out.push_back(static_cast<int>(std::llabs(det(nodes[n.left].dir, nodes[n.right].dir))));
    return out;
}

bool TropicalType::balanced() const {
    for (const auto& n : nodes) {
        if (n.left < 0) continue;
        const auto& a = nodes[n.left].dir;
        const auto& b = nodes[n.right].dir;
        if (a.x + b.x != n.dir.x || a.y + b.y != n.dir.y) return false;
    }
    return true;
}

bool TropicalType::nondegenerate() const {
    auto d = vertex_dets();
    return std::all_of(d.begin(), d.end(), [](int x) { return x != 0; });
}

std::string TropicalType::canonical() const {
    std::function<std::string(int)> rec = [&](int v) -> std::string {
        const auto& n = nodes[v];
        if (n.left < 0) return "(" + std::to_string(n.dir.x) + "," + std::to_string(n.dir.y) + ")";
        std::string a = rec(n.left), b = rec(n.right);
        if (b < a) std::swap(a, b);
        return "[" + a + "|" + b + "]";
    };
    return rec(root);
}

nlohmann::json TropicalType::to_json() const {
    std::function<nlohmann::json(int)> rec = [&](int v) {
        const auto& n = nodes[v];
        nlohmann::json j;
        j["dir"] = {n.dir.x, n.dir.y};
        if (n.left < 0) {
            j["end"] = n.end;
        } else {
            j["det"] = std::llabs(det(nodes[n.left].dir, nodes[n.right].dir));
            j["children"] = {rec(n.left), rec(n.right)};
        }
        return j;
    };
    return rec(root);
}

std::vector<End> ends_of(const WeightVector& w) {
    std::vector<End> out;
    for (int x : w.w1) out.push_back({true, x, 0});
    for (int x : w.w2) out.push_back({false, x, 0});
    return out;
}

EndConfiguration EndConfiguration::generic(const WeightVector& w, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> d(-1000000, 1000000);
    EndConfiguration c{ends_of(w)};
    std::set<std::pair<bool, long long>> used;
    for (auto& e : c.ends) {
        long long r;
        do r = d(rng);
        while (!used.insert({e.vertical, r}).second);
        e.offset = Rational(r) / 1000;
    }
    return c;
}

EndConfiguration EndConfiguration::ordered(const WeightVector& w, const std::vector<int>& order, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> d(1, 999);
    EndConfiguration c{ends_of(w)};
    if (order.size() != c.ends.size()) throw std::invalid_argument("ordered ends: order has the wrong length");
    for (size_t rank = 0; rank < order.size(); ++rank)
        c.ends.at(order[rank]).offset = Rational(static_cast<long long>(rank) * 1000 + d(rng)) / 1000;
    return c;
}

std::vector<TropicalType> enumerate_types(const WeightVector& w) {
    w.validate();
    auto ends = ends_of(w);
    int n = static_cast<int>(ends.size());
    if (n == 0) throw std::invalid_argument("enumerate_types: empty weight vector");
    // every unordered binary tree exactly once: the first item always goes left
    std::function<std::vector<TropicalType>(const std::vector<int>&)> build = [&](const std::vector<int>& items) {
        std::vector<TropicalType> out;
        if (items.size() == 1) {
            TropicalType t;
            t.add_end(items[0], ends[items[0]].dir());
            out.push_back(t);
            return out;
        }
        int m = static_cast<int>(items.size()) - 1;
        for (int mask = 0; mask < (1 << m) - 1; ++mask) {
            std::vector<int> left{items[0]}, right;
            for (int i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(items[i + 1]);
            for (const auto& a : build(left))
                for (const auto& b : build(right)) {
                    if (det(a.outgoing(), b.outgoing()) == 0) continue;
                    TropicalType t = a;
                    int off = static_cast<int>(t.nodes.size());
                    for (auto node : b.nodes) {
                        if (node.left >= 0) node.left += off, node.right += off;
                        t.nodes.push_back(node);
                    }
                    t.merge(a.root, b.root + off);
                    out.push_back(std::move(t));
                }
        }
        return out;
    };
    if (n == 1) return {};
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return build(all);
}

int multiplicity(const TropicalType& type) {
    int m = 1;
    for (int d : type.vertex_dets()) m *= d;
    return m;
}

Laurent q_multiplicity(const TropicalType& type) {
    Laurent m = 1;
    for (int d : type.vertex_dets()) m *= Laurent::qint(d);
    return m;
}

std::optional<PlacedCurve> place(const TropicalType& type, const EndConfiguration& ends) {
    PlacedCurve pc{type, std::vector<std::pair<Rational, Rational>>(type.nodes.size()), 0};
    bool feasible = true;
    std::function<void(int)> rec = [&](int v) {
        const auto& n = type.nodes[v];
        if (n.left < 0) {
            const End& e = ends.ends.at(n.end);
            if (e.vertical) pc.position[v] = {e.offset, 0};
            else pc.position[v] = {0, e.offset};
            return;
        }
        rec(n.left);
        rec(n.right);
        if (!feasible) return;
        auto [x1, y1] = pc.position[n.left];
        auto [x2, y2] = pc.position[n.right];
        ReducedCharge v1 = type.nodes[n.left].dir, v2 = type.nodes[n.right].dir;
        long long d = det(v1, v2);
        if (d == 0) {
            feasible = false;
            return;
        }
        Rational dx = x2 - x1, dy = y2 - y1;
        Rational l1 = (dx * v2.y - dy * v2.x) / d;
        Rational l2 = (dx * v1.y - dy * v1.x) / d;
        for (auto [child, l] : {std::pair{n.left, l1}, std::pair{n.right, l2}}) {
            if (type.is_leaf(child)) continue;
            if (l == 0) throw DegenerateConfiguration("zero-length bounded edge");
            if (l < 0) feasible = false;
        }
        pc.position[v] = {x1 + l1 * v1.x, y1 + l1 * v1.y};
    };
    rec(type.root);
    if (!feasible) return std::nullopt;
    if (!type.balanced()) throw std::logic_error("placed curve is not balanced");
    pc.multiplicity = multiplicity(type);
    return pc;
}

nlohmann::json PlacedCurve::to_json() const {
    nlohmann::json j;
    j["type"] = type.canonical();
    j["multiplicity"] = multiplicity;
    j["vertices"] = nlohmann::json::array();
    for (size_t v = 0; v < type.nodes.size(); ++v) {
        if (type.is_leaf(static_cast<int>(v))) continue;
        j["vertices"].push_back({{"x", to_string(position[v].first)}, {"y", to_string(position[v].second)}});
    }
    return j;
}

std::string PlacedCurve::segments(const Rational& ray_length) const {
    std::ostringstream os;
    auto put = [&](Rational ax, Rational ay, Rational bx, Rational by, int w) {
        os << static_cast<double>(ax) << ' ' << static_cast<double>(ay) << ' ' << static_cast<double>(bx) << ' '
           << static_cast<double>(by) << ' ' << w << '\n';
    };
    for (size_t v = 0; v < type.nodes.size(); ++v) {
        const auto& n = type.nodes[v];
        if (n.left < 0) continue;
        for (int c : {n.left, n.right}) {
            const auto& cn = type.nodes[c];
            int w = std::gcd(cn.dir.x, cn.dir.y);
            auto [px, py] = position[v];
            if (cn.left < 0) {
                put(px - ray_length * cn.dir.x / w, py - ray_length * cn.dir.y / w, px, py, w);
            } else {
                put(position[c].first, position[c].second, px, py, w);
            }
        }
    }
    const auto& r = type.nodes[type.root];
    int w = std::gcd(r.dir.x, r.dir.y);
    auto [px, py] = position[type.root];
    put(px, py, px + ray_length * r.dir.x / w, py + ray_length * r.dir.y / w, w);
    return os.str();
}

TropicalCount tropical_count(const WeightVector& w, unsigned long long seed) {
    auto types = enumerate_types(w);
    for (int attempt = 0; attempt < 16; ++attempt) {
        unsigned long long s = seed + 7919ULL * attempt;
        auto cfg = EndConfiguration::generic(w, s);
        TropicalCount res;
        res.seed = s;
        try {
            for (const auto& t : types) {
                auto pc = place(t, cfg);
                if (!pc) continue;
                res.count += pc->multiplicity;
                res.q_count += q_multiplicity(t);
                res.curves.push_back(std::move(*pc));
            }
        } catch (const DegenerateConfiguration&) {
            continue;
        }
        return res;
    }
    throw DegenerateConfiguration("no generic end configuration found for " + w.str());
}

long long ntrop(const WeightVector& w, unsigned long long seed) {
    auto a = tropical_count(w, seed);
    auto b = tropical_count(w, seed + 1000003ULL);
    if (a.count != b.count) throw std::runtime_error("tropical count depends on the end configuration");
    return a.count;
}

Laurent ntrop_q(const WeightVector& w, unsigned long long seed) {
    auto a = tropical_count(w, seed);
    auto b = tropical_count(w, seed + 1000003ULL);
    if (!(a.q_count == b.q_count)) throw std::runtime_error("refined count depends on the end configuration");
    return a.q_count;
}

}  // namespace tw
