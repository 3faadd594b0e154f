#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmp/chain.hpp"
#include "mmp/driver.hpp"

namespace mmp {

// One vertex of a decorated plumbing tree. group == 0 means plain; equal
// nonzero groups form one rationally-blown-down bracket path.
struct TreeNode {
    int id = 0;
    int w = 0;
    int group = 0;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecoratedTree {
public:
    DecoratedTree() = default;

    int add_node(int w, int group = 0);           // returns a fresh id
    void add_node_with_id(int id, int w, int group = 0);
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    void remove_node(int id);                     // drops incident edges

    bool has_node(int id) const;
    TreeNode& node(int id);
    const TreeNode& node(int id) const;
    std::vector<int> neighbors(int id) const;
    std::size_t degree(int id) const;

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int max_group() const;

    // Connected, acyclic, weights >= 1, every bracket group a path of
    // weights >= 2.
    void validate() const;

    friend bool operator==(const DecoratedTree&, const DecoratedTree&) = default;

private:
    std::vector<TreeNode> nodes_;
    std::vector<std::pair<int, int>> edges_;
    int next_id_ = 1;
};

// Weighted isomorphism respecting bracket-group partitions.
bool tree_isomorphic(const DecoratedTree& a, const DecoratedTree& b);
std::optional<std::map<int, int>> tree_isomorphism(const DecoratedTree& a, const DecoratedTree& b);

DecoratedTree tree_from_json(const std::string& text);
std::string tree_to_json(const DecoratedTree& t);

// ---------------------------------------------------------------------------
// Moves on trees
// ---------------------------------------------------------------------------

// The case-B antiflip along an edge (d, c): d plain of weight w >= 3 with at
// most one neighbor besides c; d becomes the path
// <outer neighbor> - [w+1, 2 x (w-3)] - 1 - c and c gains w - 2.
DecoratedTree tree_antiflip(const DecoratedTree& t, int d, int c);

// Group a simple path of plain nodes whose weights form a class-T0 chain.
DecoratedTree tree_blow_down(const DecoratedTree& t, const std::vector<int>& path);

// Forget brackets and contract weight-1 nodes of degree <= 2 until none
// remain; node ids of survivors are preserved.
DecoratedTree resolve_and_contract(const DecoratedTree& t);

// ---------------------------------------------------------------------------
// Classification and traces
// ---------------------------------------------------------------------------

enum class GammaKind : std::uint8_t { Linear, Gamma, Unsupported };

struct GammaClass {
    GammaKind kind = GammaKind::Unsupported;
    int index = 0;                 // 1..9 when kind == Gamma
    std::vector<int> chain_ids;    // Linear: embedded chain node ids, in order
    std::map<int, int> match;      // Gamma: template target node id -> input node id
};

// The maximal-subgraph classification: the pruned subtree spanning all
// brackets is either a path, one of the nine stored non-linear shapes, or
// unsupported.
GammaClass gamma_classify(const DecoratedTree& t);

struct TreeMove {
    MoveKind kind = MoveKind::Antiflip;
    std::vector<int> site;  // antiflip: {d, c}; blow-down: path; lifted moves: node ids
    DecoratedTree before;
    DecoratedTree after;
};

struct TreeTrace {
    DecoratedTree start;
    DecoratedTree end;
    std::vector<TreeMove> moves;
};

// Blow-downs and antiflips carrying the derived minimal-resolution tree to
// the given decorated tree. Non-linear shapes replay the stored scripts;
// linear shapes delegate to the chain driver.
TreeTrace toi_trace(const DecoratedTree& t);

std::string tree_trace_to_json(const TreeTrace& t);

// ---------------------------------------------------------------------------
// Stored templates
// ---------------------------------------------------------------------------

struct GammaTemplate {
    int index = 0;
    DecoratedTree target;
    DecoratedTree start;             // derived by the contraction oracle
    std::vector<TreeMove> script;    // sites on target node ids, no snapshots
    std::string note;                // nonempty when the derivation disagrees
                                     // with a commonly printed value
};

const std::vector<GammaTemplate>& gamma_templates();

}  // namespace mmp
