#pragma once

#include "tropwall/laurent.hpp"
#include "tropwall/lattice.hpp"
#include "tropwall/trees.hpp"
#include "tropwall/tropical.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tw {

// Which pairing a residue contributes to the q-exponent.
enum class QRule {
    ParentFirst,        // <alpha(parent), alpha(v)> at the parent, <alpha(v), alpha(child)> at a child
    MovingStationary,   // <moving, stationary> for both kinds
};

struct EngineConfig {
    CentralChargeConfig plus = CentralChargeConfig::plus_default();
    CentralChargeConfig minus = engine_minus_default();
    int kappa = 1;
    // Seeded infinitesimal displacement of each integration ray; separates
    // rays that share a slope. nullopt keeps coincident rays coincident.
    std::optional<unsigned long long> perturbation_seed = 11;
    QRule q_rule = QRule::ParentFirst;

    // Generic configuration on the far side of the wall: Z(gamma) = 5+3i, Z(eta) = 3+4i.
    static CentralChargeConfig engine_minus_default();
};

enum class Nudge { None = 0, Clockwise = -1, Counterclockwise = 1 };

// Integration ray l^{side}_{charge}, displaced by the perturbations of its constituents.
struct RaySymbol {
    Side side = Side::Plus;
    Charge charge;           // rank-two charge fixing Z
    Nudge nudge = Nudge::None;
    std::vector<int> constituents;
    // filled by the engine
    std::pair<long long, long long> z{0, 0};
    std::pair<long long, long long> p{0, 0};

    std::string str() const;
};

class RayGeometry {
public:
    RayGeometry(const EngineConfig& cfg, int nodes);
    RaySymbol ray(Side side, const Charge& charge, std::vector<int> constituents, Nudge nudge = Nudge::None) const;
    // +1 when s is counterclockwise of o, -1 clockwise, 0 coincident
    static int cmp(const RaySymbol& s, const RaySymbol& o);

private:
    std::pair<long long, long long> zp_, ze_, zmg_, zme_;
    std::vector<std::pair<long long, long long>> pert_plus_, pert_minus_;
};

// true when l lies strictly between a and b
bool separates(const RaySymbol& l, const RaySymbol& a, const RaySymbol& b);

enum class EventKind { Start, Move, ResidueAtParent, ResidueAtChild };
std::string event_name(EventKind k);

struct MergeTrack {
    int node = -1;  // original tree node for a leaf
    std::shared_ptr<const MergeTrack> left, right;
};

struct EngineVertex {
    Charge charge;   // rank two
    int label = 0;
    RaySymbol ray;
    int parent = -1;  // original id of the parent vertex
    std::vector<int> constituents;
    std::shared_ptr<const MergeTrack> track;
};

struct ExpansionNode {
    int id = 0;
    int parent = -1;
    int depth = 0;
    EventKind event = EventKind::Start;
    std::string moved;      // charge of the vertex whose ray moved
    std::string partner;    // charge it merged with, for residues
    int crossing_sign = 1;  // of this event
    int algebra_sign = 1;   // of this event
    int sign = 1;           // accumulated crossing * algebra
    int crossing_product = 1;
    int q_half = 0;         // accumulated exponent of q^{1/2}
    bool degenerate = false;
    bool leaf = false;
    std::vector<std::pair<int, EngineVertex>> snapshot;  // keyed by surviving original id
};

struct SignedTropicalType {
    TropicalType type;
    int sign = 1;            // (-1)^{pi_u}, classical
    int crossing_sign = 1;   // residue orientations only
    int q_half_exp = 0;
    bool degenerate = false; // a residue merged parallel charges
    int expansion_node = -1;
    // crossing_sign * q^{q_half_exp / 2}
    Laurent q_term() const { return Laurent::monomial(q_half_exp, crossing_sign); }
};

struct ExpansionTree {
    DecoratedTree tree;
    Labelling labelling;
    EngineConfig config;
    std::vector<ExpansionNode> nodes;
    std::vector<SignedTropicalType> types;

    int signed_total() const;
    Laurent q_total() const;
    nlohmann::json to_json() const;
    std::string trace() const;
};

ExpansionTree build_expansion(const DecoratedTree& t, const Labelling& nu, const EngineConfig& cfg = {});
std::vector<SignedTropicalType> signed_types(const DecoratedTree& t, const Labelling& nu, const EngineConfig& cfg = {});

// End lines for the decorations of t, offsets increasing along order (node ids).
EndConfiguration tree_ends(const DecoratedTree& t, const std::vector<int>& order, unsigned long long seed = 1);

// Searches labellings (at most max_tries) until every produced type can be
// placed on the end configuration induced by order.
std::optional<Labelling> suitable_labelling(const DecoratedTree& t, const std::vector<int>& order,
                                            const EngineConfig& cfg = {}, int max_tries = 5040);

// DT at Z- of a*gamma + b*eta from the tree expansion over the unit generator
// spectrum, every tree expanded with its orientation labelling.
Rational tree_expansion_dt(int a, int b, int kappa = 1);

// ---------------------------------------------------------------- tree-sum identity

struct TreeContribution {
    DecoratedTree tree;
    Rational weight;     // W_T, including 1/Aut(T)
    int signed_total = 0;
    Laurent q_total;     // sum of crossing * q^{q_half/2} over produced types
};

struct TreeSide {
    std::vector<TreeContribution> trees;
    Rational total;      // sum of W_T * signed_total
    QFrac q_total;       // sum of hat W_T * q_total; only for trees without same-type edges
};

// Trees of degree w rooted at the first w_1 part, with their engine totals.
TreeSide tree_side(const WeightVector& w, const EngineConfig& cfg = {});

// prod 1/w_ij^2 * N^trop(w) / Aut(w'), times kappa^kappa_power^{|E|}
Rational count_side(const WeightVector& w, int kappa = 1, int kappa_power = -1);
// prod (-1)^{w_ij + 1}
int parity_sign(const WeightVector& w);
// The form the engine actually satisfies for every kappa:
// parity_sign * (-1)^{(kappa-1)|w_1||w_2|} * kappa^{|E|} * prod 1/w_ij^2 * N^trop(w) / Aut(w')
Rational corrected_count_side(const WeightVector& w, int kappa = 1);
// prod 1/(w_ij [w_ij]_q) * refined N^trop(w) / Aut(w')
QFrac refined_count_side(const WeightVector& w);

}  // namespace tw
