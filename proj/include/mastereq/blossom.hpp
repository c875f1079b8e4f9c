#ifndef MASTEREQ_BLOSSOM_HPP
#define MASTEREQ_BLOSSOM_HPP

// Blossom trees: planted plane trees whose 2k-valent inner vertices carry
// exactly k-1 buds. Children are stored in clockwise order starting after
// the edge towards the root. Used as a brute-force oracle for R_n.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mastereq/algebra.hpp"
#include "mastereq/model.hpp"

namespace mastereq {

struct BlossomTree {
    enum class Kind { leaf, bud, inner };

    Kind kind = Kind::leaf;
    std::vector<BlossomTree> children;

    static BlossomTree leaf() { return {}; }
    static BlossomTree bud() { return {Kind::bud, {}}; }
    static BlossomTree inner(std::vector<BlossomTree> c) { return {Kind::inner, std::move(c)}; }

    bool is_leaf() const { return kind == Kind::leaf; }
    bool is_bud() const { return kind == Kind::bud; }
    bool is_inner() const { return kind == Kind::inner; }

    // Valence counts the edge towards the parent.
    int valence() const { return is_inner() ? static_cast<int>(children.size()) + 1 : 1; }

    int bud_children() const
    {
        int b = 0;
        for (const auto& c : children) b += c.is_bud();
        return b;
    }

    // L = leaf, B = bud, (...) = inner vertex.
    std::string encode() const
    {
        if (is_leaf()) return "L";
        if (is_bud()) return "B";
        std::string s = "(";
        for (const auto& c : children) s += c.encode();
        return s + ")";
    }

    friend bool operator==(const BlossomTree&, const BlossomTree&) = default;
};

namespace detail {

inline void count_nodes(const BlossomTree& t, std::map<int, int>& valences, int& leaves, int& buds)
{
    if (t.is_leaf()) ++leaves;
    if (t.is_bud()) ++buds;
    if (!t.is_inner()) return;
    ++valences[t.valence()];
    for (const auto& c : t.children) count_nodes(c, valences, leaves, buds);
}

inline void endpoints(const BlossomTree& t, std::vector<int>& out)
{
    if (t.is_leaf()) out.push_back(+1);
    if (t.is_bud()) out.push_back(-1);
    for (const auto& c : t.children) endpoints(c, out);
}

inline bool vertex_ok(const BlossomTree& v, int bud_deficit)
{
    if (!v.is_inner()) return true;
    const int val = v.valence();
    if (val % 2 != 0 || val < 2) return false;
    return v.bud_children() == val / 2 - 1 - bud_deficit;
}

inline bool subtree_ok(const BlossomTree& t)
{
    if (!vertex_ok(t, 0)) return false;
    for (const auto& c : t.children) {
        if (!subtree_ok(c)) return false;
    }
    return true;
}

}  // namespace detail

inline int inner_count(const BlossomTree& t)
{
    std::map<int, int> val;
    int l = 0, b = 0;
    detail::count_nodes(t, val, l, b);
    int n = 0;
    for (const auto& [v, c] : val) n += c;
    return n;
}

// Valence -> number of inner vertices with that valence.
inline std::map<int, int> valence_profile(const BlossomTree& t)
{
    std::map<int, int> val;
    int l = 0, b = 0;
    detail::count_nodes(t, val, l, b);
    return val;
}

inline int leaf_count(const BlossomTree& t)
{
    std::map<int, int> val;
    int l = 0, b = 0;
    detail::count_nodes(t, val, l, b);
    return l;
}

inline int bud_count(const BlossomTree& t)
{
    std::map<int, int> val;
    int l = 0, b = 0;
    detail::count_nodes(t, val, l, b);
    return b;
}

// Every inner vertex is even-valent with (valence/2 - 1) buds.
inline bool is_blossom(const BlossomTree& t) { return !t.is_bud() && detail::subtree_ok(t); }

// Shape produced by reroot: root vertex of valence 2k with k-2 buds, all
// proper subtrees ordinary blossom trees.
inline bool is_rerooted_shape(const BlossomTree& t)
{
    if (!t.is_inner() || t.valence() < 4 || !detail::vertex_ok(t, 1)) return false;
    for (const auto& c : t.children) {
        if (c.is_bud()) continue;
        if (!detail::subtree_ok(c)) return false;
    }
    return true;
}

// +1 per leaf, -1 per bud, clockwise from the root.
inline std::vector<int> contour_walk(const BlossomTree& t)
{
    std::vector<int> out;
    detail::endpoints(t, out);
    return out;
}

inline int contour_depth(const BlossomTree& t)
{
    int h = 0, lo = 0;
    for (int s : contour_walk(t)) {
        h += s;
        lo = std::min(lo, h);
    }
    return -lo;
}

// Closing procedure: read endpoints counterclockwise, glue every bud to the
// leaf that immediately follows it once inner pairs are closed, never
// wrapping around the root. Returns the number of buds left unmatched.
inline int closure_excess(const BlossomTree& t)
{
    const auto cw = contour_walk(t);
    int open_buds = 0;
    for (auto it = cw.rbegin(); it != cw.rend(); ++it) {
        if (*it < 0) {
            ++open_buds;
        } else if (open_buds > 0) {
            --open_buds;
        }
    }
    return open_buds;
}

inline Poly tree_weight(const BlossomTree& t)
{
    Poly w(1);
    for (const auto& [val, count] : valence_profile(t)) {
        w = w * power(Poly::g(val / 2), static_cast<std::uint32_t>(count));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Enumeration

class BlossomEnumerator {
public:
    explicit BlossomEnumerator(ModelSpec spec) : spec_(std::move(spec)) {}

    // Blossom trees with exactly c inner vertices.
    const std::vector<BlossomTree>& exact(int c)
    {
        if (c < 0) throw std::invalid_argument("negative vertex count");
        auto it = memo_.find(c);
        if (it != memo_.end()) return it->second;
        std::vector<BlossomTree> out;
        if (c == 0) {
            out.push_back(BlossomTree::leaf());
        } else {
            for (int k = 1; k <= spec_.m; ++k) {
                if (spec_.is_active(k)) build_vertices(2 * k - 1, k - 1, c - 1, out);
            }
        }
        return memo_.emplace(c, std::move(out)).first->second;
    }

    std::vector<BlossomTree> up_to(int max_inner)
    {
        std::vector<BlossomTree> out;
        for (int c = 0; c <= max_inner; ++c) {
            const auto& e = exact(c);
            out.insert(out.end(), e.begin(), e.end());
        }
        return out;
    }

    // Rerooted shapes (root vertex of valence 2k >= 4 with k-2 buds) with
    // at most max_inner inner vertices.
    std::vector<BlossomTree> rerooted_up_to(int max_inner)
    {
        std::vector<BlossomTree> out;
        for (int c = 1; c <= max_inner; ++c) {
            for (int k = 2; k <= spec_.m; ++k) {
                if (spec_.is_active(k)) build_vertices(2 * k - 1, k - 2, c - 1, out);
            }
        }
        return out;
    }

private:
    // All inner vertices with `slots` children of which `buds` are buds and
    // the others subtrees sharing exactly `budget` inner vertices.
    void build_vertices(int slots, int buds, int budget, std::vector<BlossomTree>& out)
    {
        std::vector<BlossomTree> current;
        fill(slots, buds, budget, current, out);
    }

    void fill(int slots_left, int buds_left, int budget, std::vector<BlossomTree>& current,
              std::vector<BlossomTree>& out)
    {
        if (slots_left == 0) {
            if (buds_left == 0 && budget == 0) out.push_back(BlossomTree::inner(current));
            return;
        }
        if (buds_left > 0) {
            current.push_back(BlossomTree::bud());
            fill(slots_left - 1, buds_left - 1, budget, current, out);
            current.pop_back();
        }
        if (slots_left > buds_left) {
            for (int c = 0; c <= budget; ++c) {
                for (const auto& sub : exact(c)) {
                    current.push_back(sub);
                    fill(slots_left - 1, buds_left, budget - c, current, out);
                    current.pop_back();
                }
            }
        }
    }

    ModelSpec spec_;
    std::map<int, std::vector<BlossomTree>> memo_;
};

inline std::vector<BlossomTree> enumerate_blossom(const ModelSpec& spec, int max_inner)
{
    return BlossomEnumerator(spec).up_to(max_inner);
}

// Sum of tree weights over blossom trees of depth <= n with at most
// max_inner inner vertices.
inline Poly brute_force_rn(int n, const ModelSpec& spec, int max_inner, bool x_weight = false)
{
    if (x_weight) throw std::invalid_argument("brute_force_rn: face weights are not supported");
    Poly total;
    for (const auto& t : enumerate_blossom(spec, max_inner)) {
        if (contour_depth(t) <= n) total += tree_weight(t);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Re-rooting at the first excess bud

namespace detail {

// Child-index path from the root vertex to the bud where the contour walk
// first reaches -1.
inline bool find_first_excess(const BlossomTree& t, int& h, std::vector<int>& path)
{
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        const auto& c = t.children[i];
        path.push_back(static_cast<int>(i));
        if (c.is_leaf()) {
            ++h;
        } else if (c.is_bud()) {
            if (--h < 0) return true;
        } else if (find_first_excess(c, h, path)) {
            return true;
        }
        path.pop_back();
    }
    return false;
}

// Vertex v re-hung below its child at index i: the children after i, then
// the former parent side, then the children before i.
inline BlossomTree rotate(const BlossomTree& v, int i, BlossomTree parent_side)
{
    std::vector<BlossomTree> kids;
    const auto idx = static_cast<std::size_t>(i);
    kids.insert(kids.end(), v.children.begin() + static_cast<long>(idx) + 1, v.children.end());
    kids.push_back(std::move(parent_side));
    kids.insert(kids.end(), v.children.begin(), v.children.begin() + static_cast<long>(idx));
    return BlossomTree::inner(std::move(kids));
}

}  // namespace detail

inline BlossomTree reroot(const BlossomTree& t)
{
    if (!t.is_inner() || contour_depth(t) < 1) throw std::invalid_argument("reroot needs a tree of depth >= 1");
    int h = 0;
    std::vector<int> path;
    detail::find_first_excess(t, h, path);

    // Walk down the path, re-hanging each vertex below the next one.
    BlossomTree side = BlossomTree::leaf();
    const BlossomTree* v = &t;
    for (std::size_t d = 0; d < path.size(); ++d) {
        const int i = path[d];
        if (d + 1 == path.size()) return detail::rotate(*v, i, std::move(side));
        side = detail::rotate(*v, i, std::move(side));
        v = &v->children[static_cast<std::size_t>(i)];
    }
    throw std::logic_error("reroot: excess bud not found");
}

}  // namespace mastereq

#endif  // MASTEREQ_BLOSSOM_HPP
