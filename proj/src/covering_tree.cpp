#include "chainbench/covering_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "chainbench/errors.hpp"

namespace chainbench {

std::vector<std::size_t> greedy_net(const FunctionDictionary& dictionary, double radius) {
    const std::size_t n = dictionary.size();
    std::vector<std::size_t> net;
    std::vector<double> min_distance(n, std::numeric_limits<double>::infinity());

    std::size_t candidate = 0; // member 0 seeds the net
    while (true) {
        net.push_back(candidate);
        double worst = 0.0;
        std::size_t next = candidate;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = dictionary.sup_distance(candidate, i);
            if (d < min_distance[i]) min_distance[i] = d;
            if (min_distance[i] > worst) {
                worst = min_distance[i];
                next = i;
            }
        }
        if (worst <= radius) break;
        candidate = next;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (min_distance[i] > radius)
            throw CoverTooCoarse("greedy net misses radius " + std::to_string(radius));
    }
    return net;
}

CoveringTree::CoveringTree(const FunctionDictionary& dictionary, int depth)
    : dictionary_(&dictionary), depth_(depth) {
    if (depth < 0) throw std::invalid_argument("CoveringTree: depth must be >= 0");

    levels_.resize(static_cast<std::size_t>(depth) + 1);
    for (int m = 0; m <= depth; ++m) {
        const double radius = std::pow(2.0, -m);
        const std::vector<std::size_t> net = greedy_net(dictionary, radius);
        for (std::size_t member : net) {
            Node node;
            node.level = m;
            node.function = member;
            const int id = static_cast<int>(nodes_.size());
            if (m > 0) {
                // Closest node one level up, ties toward the lowest id.
                double best = std::numeric_limits<double>::infinity();
                int parent = -1;
                for (int up : levels_[static_cast<std::size_t>(m - 1)]) {
                    const double d =
                        dictionary.sup_distance(nodes_[static_cast<std::size_t>(up)].function, member);
                    if (d < best) {
                        best = d;
                        parent = up;
                    }
                }
                node.parent = parent;
                nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
            }
            nodes_.push_back(std::move(node));
            levels_[static_cast<std::size_t>(m)].push_back(id);
        }
    }
    if (levels_[0].size() != 1)
        throw CoverTooCoarse("level 0 must be a single root");

    // Leaf sets, bottom-up.
    leaves_below_.resize(nodes_.size());
    for (int m = depth; m >= 0; --m) {
        for (int id : levels_[static_cast<std::size_t>(m)]) {
            auto& bucket = leaves_below_[static_cast<std::size_t>(id)];
            if (m == depth) {
                bucket.push_back(id);
            } else {
                for (int child : nodes_[static_cast<std::size_t>(id)].children) {
                    const auto& sub = leaves_below_[static_cast<std::size_t>(child)];
                    bucket.insert(bucket.end(), sub.begin(), sub.end());
                }
            }
        }
    }

    // Reject trees that break the leaf-spread guarantee.
    for (int m = 0; m < depth; ++m) {
        if (leaf_spread_ratio(m) > 1.0 + 1e-12)
            throw CoverTooCoarse("leaf spread exceeds 2^{-m+2} at level " + std::to_string(m));
    }
}

double CoveringTree::leaf_spread_ratio(int level) const {
    const double bound = std::pow(2.0, -level + 2);
    double worst = 0.0;
    for (int id : levels_[static_cast<std::size_t>(level)]) {
        const auto& leaves = leaves_below_[static_cast<std::size_t>(id)];
        for (std::size_t a = 0; a < leaves.size(); ++a) {
            for (std::size_t b = a + 1; b < leaves.size(); ++b) {
                const double d = dictionary_->sup_distance(
                    nodes_[static_cast<std::size_t>(leaves[a])].function,
                    nodes_[static_cast<std::size_t>(leaves[b])].function);
                worst = std::max(worst, d);
            }
        }
    }
    return worst / bound;
}

void CoveringTree::dump(std::ostream& out) const {
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        const Node& node = nodes_[id];
        out << id << '\t' << node.level << '\t' << node.parent << '\t' << node.function << '\n';
    }
}

} // namespace chainbench
