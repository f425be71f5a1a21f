#pragma once

#include <iosfwd>
#include <vector>

#include "chainbench/dictionary.hpp"

namespace chainbench {

// Tree of hierarchical coverings of a function dictionary. Level m holds
// a 2^-m cover of the dictionary in sup norm (built by a greedy
// farthest-point net), so level 0 is a single root. Each node's parent is
// its sup-norm-closest node one level up, ties toward the lowest node id.
//
// Geometric guarantee checked after construction: for an internal node at
// level m, every pair of leaves below it is within 2^{-m+2} in sup norm
// on the dictionary's evaluation grid.
class CoveringTree {
public:
    struct Node {
        int level = 0;
        int parent = -1;            // -1 for the root
        std::size_t function = 0;   // dictionary member id
        std::vector<int> children;  // node ids one level down
    };

    CoveringTree(const FunctionDictionary& dictionary, int depth);

    int depth() const { return depth_; }
    const FunctionDictionary& dictionary() const { return *dictionary_; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int root() const { return 0; }
    bool is_leaf(int id) const { return node(id).level == depth_; }

    const std::vector<int>& level_nodes(int level) const { return levels_[static_cast<std::size_t>(level)]; }
    const std::vector<int>& leaves() const { return levels_[static_cast<std::size_t>(depth_)]; }

    // Leaf node ids below `id` (the node itself when it is a leaf).
    const std::vector<int>& leaves_below(int id) const { return leaves_below_[static_cast<std::size_t>(id)]; }

    // Worst leaf-pair sup distance below any node of `level`, divided by
    // the 2^{-level+2} guarantee; <= 1 for every valid tree.
    double leaf_spread_ratio(int level) const;

    // One node per line: id, level, parent, function label id (tab-separated).
    void dump(std::ostream& out) const;

private:
    const FunctionDictionary* dictionary_;
    int depth_;
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> levels_;
    std::vector<std::vector<int>> leaves_below_;
};

// Greedy farthest-point net over the dictionary: starts from member 0,
// repeatedly adds the member farthest from the net (ties toward the
// lowest member id) until every member is within `radius`. Returns the
// selected member ids in insertion order.
std::vector<std::size_t> greedy_net(const FunctionDictionary& dictionary, double radius);

} // namespace chainbench
