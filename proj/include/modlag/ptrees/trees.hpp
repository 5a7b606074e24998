// SPDX-License-Identifier: MIT
// Bicoloured trees for the series expansion of the non-rotating travelling
// wave.  A tree has black nodes carrying derivatives of the potential W and
// white leaves carrying first-derivative factors of the field.  The order of
// a tree is the sum of the degrees of its black nodes; equivalence is as
// unrooted (free) trees, because the associated differential is a full index
// contraction and does not depend on the choice of root.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "modlag/core/expr.hpp"

namespace modlag {

struct BiTree {
    bool black = true;
    std::vector<BiTree> children;

    static BiTree white() { return BiTree{false, {}}; }
    static BiTree node(std::vector<BiTree> ch = {}) { return BiTree{true, std::move(ch)}; }
};

namespace detail {

inline void validate_tree(const BiTree& t) {
    if (!t.black && !t.children.empty())
        throw AlgebraError("white tree nodes must be leaves");
    for (const BiTree& ch : t.children) validate_tree(ch);
}

// Flat adjacency view used for re-rooting.
struct TreeGraph {
    std::vector<char> black;
    std::vector<std::vector<int>> adj;

    int add(const BiTree& t) {
        int id = static_cast<int>(black.size());
        black.push_back(t.black ? 1 : 0);
        adj.emplace_back();
        for (const BiTree& ch : t.children) {
            int cid = add(ch);
            adj[id].push_back(cid);
            adj[cid].push_back(id);
        }
        return id;
    }

    std::string rooted_key(int v, int parent) const {
        std::vector<std::string> ks;
        for (int w : adj[v])
            if (w != parent) ks.push_back(rooted_key(w, v));
        std::sort(ks.begin(), ks.end());
        std::string s(1, black[v] ? 'b' : 'w');
        s += '(';
        for (const auto& k : ks) s += k;
        s += ')';
        return s;
    }

    BiTree rebuild(int v, int parent) const {
        std::vector<BiTree> ch;
        for (int w : adj[v])
            if (w != parent) ch.push_back(rebuild(w, v));
        std::sort(ch.begin(), ch.end(), [&](const BiTree& a, const BiTree& b) {
            TreeGraph ga, gb;
            ga.add(a);
            gb.add(b);
            return ga.rooted_key(0, -1) < gb.rooted_key(0, -1);
        });
        return BiTree{black[v] != 0, std::move(ch)};
    }
};

} // namespace detail

// Sum of the degrees of the black nodes (each black-black edge counts once
// at both ends, a black-white edge once at the black end).
inline int tree_order(const BiTree& t) {
    detail::validate_tree(t);
    struct Walk {
        static int go(const BiTree& n, bool root) {
            int deg = static_cast<int>(n.children.size()) + (root ? 0 : 1);
            int sum = n.black ? deg : 0;
            for (const BiTree& ch : n.children) sum += go(ch, false);
            return sum;
        }
    };
    return Walk::go(t, true);
}

// Canonical name of the unrooted equivalence class: the least rooted key
// over all black rootings.  Two trees describe the same differential exactly
// when their keys agree.
inline std::string tree_key(const BiTree& t) {
    detail::validate_tree(t);
    detail::TreeGraph g;
    g.add(t);
    std::string best;
    for (std::size_t v = 0; v < g.black.size(); ++v) {
        if (!g.black[v]) continue;
        std::string k = g.rooted_key(static_cast<int>(v), -1);
        if (best.empty() || k < best) best = k;
    }
    if (best.empty()) best = g.rooted_key(0, -1); // single white leaf
    return best;
}

// Canonical representative: rooted at the key-minimising black node with
// recursively sorted children.
inline BiTree canonical_tree(const BiTree& t) {
    detail::validate_tree(t);
    detail::TreeGraph g;
    g.add(t);
    int best_v = 0;
    std::string best;
    for (std::size_t v = 0; v < g.black.size(); ++v) {
        if (!g.black[v]) continue;
        std::string k = g.rooted_key(static_cast<int>(v), -1);
        if (best.empty() || k < best) {
            best = k;
            best_v = static_cast<int>(v);
        }
    }
    return g.rebuild(best_v, -1);
}

inline bool same_tree(const BiTree& a, const BiTree& b) { return tree_key(a) == tree_key(b); }

// Single-line rendering: '*' black node, 'o' white leaf.
inline std::string tree_text(const BiTree& t) {
    std::string s(1, t.black ? '*' : 'o');
    if (!t.children.empty()) {
        s += '(';
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) s += ',';
            s += tree_text(t.children[i]);
        }
        s += ')';
    }
    return s;
}

// Multi-line ASCII drawing.
inline std::string tree_ascii(const BiTree& t) {
    struct Draw {
        static void go(const BiTree& n, const std::string& prefix, bool last, bool root,
                       std::string& out) {
            out += prefix;
            if (!root) out += last ? "`-- " : "|-- ";
            out += n.black ? '*' : 'o';
            out += '\n';
            std::string next = root ? prefix : prefix + (last ? "    " : "|   ");
            for (std::size_t i = 0; i < n.children.size(); ++i)
                go(n.children[i], next, i + 1 == n.children.size(), false, out);
        }
    };
    std::string out;
    Draw::go(t, "", true, true, out);
    return out;
}

namespace detail {

// All black-rooted subtrees whose black-degree budget, counting the edge to
// the parent, equals m.
inline std::vector<BiTree> subtrees_of_budget(int m);

// Appends every way of attaching children that consume the given budget to
// the node under construction.
inline void attach_children(int budget, std::vector<BiTree> acc, int min_part,
                            std::vector<std::vector<BiTree>>& out) {
    if (budget == 0) {
        out.push_back(std::move(acc));
        return;
    }
    // A white leaf consumes one unit of the parent's degree.
    if (min_part <= 1) {
        std::vector<BiTree> next = acc;
        next.push_back(BiTree::white());
        attach_children(budget - 1, std::move(next), 1, out);
    }
    // A black child of budget q-1 consumes q units (one for the parent's
    // degree, q-1 for the subtree).
    for (int q = std::max(2, min_part); q <= budget; ++q) {
        for (const BiTree& sub : subtrees_of_budget(q - 1)) {
            std::vector<BiTree> next = acc;
            next.push_back(sub);
            attach_children(budget - q, next, q, out);
        }
    }
}

inline std::vector<BiTree> subtrees_of_budget(int m) {
    std::vector<BiTree> out;
    if (m < 1) return out;
    std::vector<std::vector<BiTree>> packs;
    attach_children(m - 1, {}, 1, packs);
    out.reserve(packs.size());
    for (auto& p : packs) out.push_back(BiTree::node(std::move(p)));
    return out;
}

// The published numbering of the trees at each supported order; the
// generator below reproduces the same sets, and enumerate_trees checks that
// at runtime.
inline std::vector<BiTree> tree_catalogue(int order) {
    using T = BiTree;
    auto W = [] { return T::white(); };
    auto B = [](std::vector<T> ch = {}) { return T::node(std::move(ch)); };
    switch (order) {
        case 2:
            return {B({B()}), B({W(), W()})};
        case 4:
            return {B({W(), W(), W(), W()}), B({B({W(), W()})}), B({B({W()}), W()}),
                    B({B({B()})})};
        case 6:
            return {B({W(), W(), W(), W(), W(), W()}),
                    B({B({W(), W(), W(), W()})}),
                    B({B({B(), W()}), W()}),
                    B({B({B({W()})}), W()}),
                    B({B({B({B()})})}),
                    B({B({B({W(), W()})})}),
                    B({B({W(), W(), B()})}),
                    B({B({W()}), W(), W(), W()}),
                    B({B({W(), W()}), W(), W()}),
                    B({B({B(), B()})})};
        default:
            throw TruncError("tree enumeration supports orders 2, 4, 6");
    }
}

} // namespace detail

// All bicoloured trees of the given order (as unrooted classes, returned as
// canonical rooted representatives) in the published numbering.  k-th entry
// of the result is the tree of F_{order,k+1}.
inline std::vector<BiTree> enumerate_trees(int order) {
    if (order != 2 && order != 4 && order != 6)
        throw TruncError("tree enumeration supports orders 2, 4, 6");

    // Generate every rooted tree whose root is black and whose black-degree
    // sum is the requested order, then collapse to unrooted classes.
    std::vector<std::vector<BiTree>> packs;
    detail::attach_children(order, {}, 1, packs);
    std::map<std::string, BiTree> classes;
    for (auto& p : packs) {
        BiTree t = BiTree::node(std::move(p));
        classes.emplace(tree_key(t), canonical_tree(t));
    }

    std::vector<BiTree> listed = detail::tree_catalogue(order);
    if (listed.size() != classes.size())
        throw AlgebraError("tree catalogue is out of sync with the generator");
    std::vector<BiTree> out;
    out.reserve(listed.size());
    for (const BiTree& t : listed) {
        auto it = classes.find(tree_key(t));
        if (it == classes.end())
            throw AlgebraError("tree catalogue is out of sync with the generator");
        if (tree_order(t) != order)
            throw AlgebraError("tree catalogue entry has the wrong order");
        out.push_back(it->second);
        classes.erase(it);
    }
    return out;
}

} // namespace modlag
