#pragma once

#include "tropwall/laurent.hpp"
#include "tropwall/lattice.hpp"
#include "tropwall/torus.hpp"

#include <string>
#include <vector>

namespace tw {

// Rooted tree with charge decorations. Node 0 is the root; parent[0] = -1.
// Nodes are kept in preorder, so index order is compatible with the orientation.
struct DecoratedTree {
    std::vector<Charge> decoration;
    std::vector<int> parent;

    int size() const { return static_cast<int>(decoration.size()); }
    int edges() const { return size() - 1; }
    std::vector<int> children(int v) const;
    Charge total_charge() const;
    void validate() const;

    std::string canonical() const;
    std::string canonical(int v) const;
    // rebuilds the node order as a canonical preorder
    DecoratedTree normalized() const;

    nlohmann::json to_json() const;
    std::string str() const;  // tree-spec syntax, rank two only
};

// Total order on the nodes: label[v] in 0..n-1, smaller goes first.
using Labelling = std::vector<int>;
Labelling orientation_labelling(const DecoratedTree& t);

// Isomorphism classes of rooted trees carrying decs (decs[0] on the root).
std::vector<DecoratedTree> enumerate_trees(const std::vector<Charge>& decs);
// Two-charge setting: w_1 parts on gamma, w_2 parts on eta, root w_1[root_part] gamma.
std::vector<DecoratedTree> enumerate_trees(const WeightVector& w, int root_part_index = 0);
// One generator per part (the multi-generator setting of the deformation argument).
std::vector<DecoratedTree> enumerate_trees_separated(const WeightVector& w);

long long aut_tree(const DecoratedTree& t);

// Omega = 1 on every generator, 0 elsewhere.
Spectrum generator_spectrum(int l1, int l2);

// (-1)^{|E|} DT(root)/Aut prod <alpha(parent), DT(alpha(child)) alpha(child)>_kappa
Rational weight(const DecoratedTree& t, const Spectrum& spectrum, int kappa = 1);

Laurent lambda_coeff(int m, int h);
Laurent mu_coeff(int n, int h);
// 1/Aut times the product of lambda (gamma parent) or mu (eta parent) edge coefficients.
Laurent q_weight(const DecoratedTree& t);

// "g>(e,2e)": g/e are gamma/eta with optional multiplicity prefix, '>' points to children.
DecoratedTree parse_tree_spec(const std::string& spec);

}  // namespace tw
