#pragma once

#include "tropwall/laurent.hpp"
#include "tropwall/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tw {

// Full binary merge tree over weighted incoming ends. Each leaf is an end
// with weighted direction (0, w) for a w_1 part and (w, 0) for a w_2 part;
// an internal node carries the sum of its children.
struct TropicalType {
    struct Node {
        int left = -1;
        int right = -1;
        int end = -1;          // index into the end list for leaves
        ReducedCharge dir;     // weighted direction
    };
    std::vector<Node> nodes;
    int root = -1;

    bool is_leaf(int v) const { return nodes[v].left < 0; }
    int vertices() const;  // trivalent vertices
    // |det| of the two incoming weighted directions at each trivalent vertex
    std::vector<int> vertex_dets() const;
    bool balanced() const;
    bool nondegenerate() const;  // no parallel incoming pair
    ReducedCharge outgoing() const { return nodes[root].dir; }
    // label-free form, e.g. "[(0,1)|(1,0)]"
    std::string canonical() const;
    nlohmann::json to_json() const;

    // helpers for building by hand
    int add_end(int end, ReducedCharge dir);
    int merge(int a, int b);
};

struct End {
    bool vertical = true;  // w_1 part: the line x = offset, direction (0, w)
    int weight = 1;
    Rational offset;
    ReducedCharge dir() const { return vertical ? ReducedCharge{0, weight} : ReducedCharge{weight, 0}; }
};

struct EndConfiguration {
    std::vector<End> ends;
    // seeded generic offsets with denominator 1000
    static EndConfiguration generic(const WeightVector& w, unsigned long long seed);
    // offsets increasing along the given order of end indices
    static EndConfiguration ordered(const WeightVector& w, const std::vector<int>& order, unsigned long long seed);
};

std::vector<End> ends_of(const WeightVector& w);

struct PlacedCurve {
    TropicalType type;
    std::vector<std::pair<Rational, Rational>> position;  // per node; leaves hold a point on their line
    int multiplicity = 0;
    nlohmann::json to_json() const;
    // "x1 y1 x2 y2 weight" lines; unbounded edges drawn with the given length
    std::string segments(const Rational& ray_length = 3) const;
};

class DegenerateConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<TropicalType> enumerate_types(const WeightVector& w);
// nullopt when infeasible; throws DegenerateConfiguration on a zero-length bounded edge
std::optional<PlacedCurve> place(const TropicalType& type, const EndConfiguration& ends);
int multiplicity(const TropicalType& type);
Laurent q_multiplicity(const TropicalType& type);

struct TropicalCount {
    long long count = 0;
    Laurent q_count;
    std::vector<PlacedCurve> curves;
    unsigned long long seed = 0;
};

// Counts for one generic configuration, re-randomising on degeneracy.
TropicalCount tropical_count(const WeightVector& w, unsigned long long seed);
// N^trop(w), re-verified with a second seed
long long ntrop(const WeightVector& w, unsigned long long seed = 1);
Laurent ntrop_q(const WeightVector& w, unsigned long long seed = 1);

}  // namespace tw
