#ifndef MASTEREQ_HEAPS_HPP
#define MASTEREQ_HEAPS_HPP

// Hard dimers on a segment, heaps of dimers, and the bijection between
// walks and pyramids.
//
// Conventions: a dimer on the unit segment [i-1, i] lives in stripe i (the
// stripe is labeled by its top boundary) and carries weight R_i. Two dimers
// in the same or adjacent stripes cannot slide past each other. A heap is
// stored in canonical form: integer columns <= 0, each dimer pushed as far
// right as possible. Column 0 is the right projection.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mastereq/algebra.hpp"
#include "mastereq/walks.hpp"

namespace mastereq {

// Hard dimer configuration on [lo, hi]: the occupied segments [i-1, i],
// listed by their top i.
struct DimerConfig {
    int lo = 0;
    int hi = 0;
    std::vector<int> occupied;

    bool valid() const
    {
        for (std::size_t t = 0; t < occupied.size(); ++t) {
            if (occupied[t] - 1 < lo || occupied[t] > hi) return false;
            if (t > 0 && occupied[t] - occupied[t - 1] < 2) return false;
        }
        return true;
    }

    Poly weight(const WeightEnv& env) const
    {
        Poly w(1);
        for (int i : occupied) w = multiply(w, env.r(i), env.context());
        return w;
    }
};

// Pi_{a,b}(k). Segments of length b - a = -1 carry only the empty
// configuration; shorter ones carry none.
inline Poly hard_dimer_gf(int a, int b, int k, const WeightEnv& env)
{
    if (k < 0 || b - a < -1) return {};
    if (b - a <= 0) return k == 0 ? Poly(1) : Poly();
    // prev2 / prev1 hold Pi_{a,c-2}, Pi_{a,c-1} indexed by dimer count.
    std::vector<Poly> prev2(static_cast<std::size_t>(k) + 1);
    std::vector<Poly> prev1(static_cast<std::size_t>(k) + 1);
    prev2[0] = Poly(1);
    prev1[0] = Poly(1);
    for (int c = a + 1; c <= b; ++c) {
        std::vector<Poly> cur = prev1;
        const Poly w = env.r(c);
        for (int j = 1; j <= k; ++j) {
            cur[static_cast<std::size_t>(j)] += multiply(w, prev2[static_cast<std::size_t>(j - 1)], env.context());
        }
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Heaps

struct Dimer {
    int stripe = 0;
    int column = 0;

    friend bool operator==(const Dimer&, const Dimer&) = default;
};

inline bool dimers_conflict(const Dimer& a, const Dimer& b) { return std::abs(a.stripe - b.stripe) <= 1; }

struct Heap {
    std::vector<Dimer> dimers;  // canonical order: column descending, then stripe ascending

    friend bool operator==(const Heap&, const Heap&) = default;

    std::size_t size() const { return dimers.size(); }

    std::vector<int> right_projection() const
    {
        std::vector<int> out;
        for (const auto& d : dimers) {
            if (d.column == 0) out.push_back(d.stripe);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Product of R_stripe over the dimers outside the right projection.
    Poly weight(const WeightEnv& env) const
    {
        Poly w(1);
        for (const auto& d : dimers) {
            if (d.column < 0) w = multiply(w, env.r(d.stripe), env.context());
        }
        return w;
    }
};

inline void sort_canonical(std::vector<Dimer>& dimers)
{
    std::sort(dimers.begin(), dimers.end(), [](const Dimer& a, const Dimer& b) {
        return a.column != b.column ? a.column > b.column : a.stripe < b.stripe;
    });
}

// Pushes every dimer right as far as possible, keeping the relative order of
// conflicting dimers given by their input columns (which must differ for
// conflicting dimers).
inline Heap canonicalize(std::vector<Dimer> dimers)
{
    std::stable_sort(dimers.begin(), dimers.end(),
                     [](const Dimer& a, const Dimer& b) { return a.column > b.column; });
    std::vector<Dimer> placed;
    placed.reserve(dimers.size());
    for (const auto& d : dimers) {
        int col = 0;
        for (const auto& p : placed) {
            if (dimers_conflict(d, p)) col = std::min(col, p.column - 1);
        }
        placed.push_back({d.stripe, col});
    }
    sort_canonical(placed);
    return {placed};
}

inline bool is_canonical(const Heap& h)
{
    for (std::size_t i = 0; i < h.dimers.size(); ++i) {
        const auto& d = h.dimers[i];
        if (d.column > 0) return false;
        bool supported = d.column == 0;
        for (std::size_t j = 0; j < h.dimers.size(); ++j) {
            if (i == j) continue;
            const auto& e = h.dimers[j];
            if (!dimers_conflict(d, e)) continue;
            if (e.column == d.column) return false;
            if (e.column == d.column + 1) supported = true;
        }
        if (!supported) return false;
    }
    auto sorted = h.dimers;
    sort_canonical(sorted);
    return sorted == h.dimers;
}

inline std::vector<int> maximal_packing(int a, int b)
{
    std::vector<int> out;
    for (int s = a + 1; s <= b; s += 2) out.push_back(s);
    return out;
}

inline bool is_pyramid(const Heap& h, int a, int b)
{
    return is_canonical(h) && h.right_projection() == maximal_packing(a, b);
}

// All canonical pyramids of base [a, b] with k dimers in total. With `half`,
// dimers are restricted to stripes > a.
inline std::vector<Heap> enumerate_pyramids(int a, int b, int k, bool half)
{
    if (b <= a || (b - a) % 2 == 0) {
        throw std::invalid_argument("pyramid base [a,b] needs b - a odd and positive");
    }
    std::vector<Heap> out;
    const std::vector<int> base = maximal_packing(a, b);
    if (k < static_cast<int>(base.size())) return out;

    std::vector<Dimer> current;
    for (int s : base) current.push_back({s, 0});

    // Each new layer sits at the next column to the left; every dimer in it
    // must touch a dimer of the layer just below, and dimers within a layer
    // must not conflict.
    std::function<void(const std::vector<int>&, int, int)> grow = [&](const std::vector<int>& top, int column,
                                                                      int remaining) {
        if (remaining == 0) {
            Heap h{current};
            sort_canonical(h.dimers);
            out.push_back(std::move(h));
            return;
        }
        std::set<int> candidate_set;
        for (int t : top) {
            for (int s = t - 1; s <= t + 1; ++s) {
                if (!half || s > a) candidate_set.insert(s);
            }
        }
        const std::vector<int> candidates(candidate_set.begin(), candidate_set.end());
        std::vector<int> layer;
        std::function<void(std::size_t)> choose = [&](std::size_t from) {
            if (!layer.empty()) {
                for (int s : layer) current.push_back({s, column - 1});
                grow(layer, column - 1, remaining - static_cast<int>(layer.size()));
                current.resize(current.size() - layer.size());
            }
            if (static_cast<int>(layer.size()) == remaining) return;
            for (std::size_t i = from; i < candidates.size(); ++i) {
                if (!layer.empty() && candidates[i] - layer.back() < 2) continue;
                layer.push_back(candidates[i]);
                choose(i + 1);
                layer.pop_back();
            }
        };
        choose(0);
    };
    grow(base, 0, k - static_cast<int>(base.size()));
    return out;
}

// Walk a -> b (b > a) to pyramid of base [a, b]. The walker drops a pebble on
// each unit segment it crosses, or picks it up if one is already there; each
// pick-up becomes a dimer at that time, and the heap is closed on the right
// by the maximal packing of [a, b].
inline Heap walk_to_pyramid(const Walk& w)
{
    const int a = w.start;
    const int b = w.end();
    if (b <= a) throw std::invalid_argument("walk_to_pyramid needs a walk ending above its start");
    std::set<int> pebbles;  // segment [h, h+1] keyed by h
    std::vector<Dimer> timed;
    int h = a;
    const int steps = static_cast<int>(w.steps.size());
    for (int t = 0; t < steps; ++t) {
        const int seg = w.steps[static_cast<std::size_t>(t)] > 0 ? h : h - 1;
        if (pebbles.erase(seg) != 0) {
            timed.push_back({seg + 1, t - steps});  // earlier events sit further left
        } else {
            pebbles.insert(seg);
        }
        h += w.steps[static_cast<std::size_t>(t)];
    }
    for (int s : maximal_packing(a, b)) timed.push_back({s, 0});
    return canonicalize(std::move(timed));
}

// Inverse of walk_to_pyramid. Each dimer outside the right projection is
// split into an up-pointing triangle on line stripe-1 and a down-pointing
// triangle on line stripe; b - a up-pointing triangles close lines a..b-1 on
// the right. The walker at height y consumes the leftmost unused triangle on
// line y.
inline Walk pyramid_to_walk(const Heap& h)
{
    const auto proj = h.right_projection();
    if (proj.empty()) throw std::invalid_argument("heap has an empty right projection");
    const int a = proj.front() - 1;
    const int b = proj.back();
    if (!is_pyramid(h, a, b)) throw std::invalid_argument("heap is not a canonical pyramid");

    struct Triangle {
        int column;
        int step;
    };
    std::map<int, std::vector<Triangle>> lines;
    for (const auto& d : h.dimers) {
        if (d.column == 0) continue;
        lines[d.stripe - 1].push_back({d.column, +1});
        lines[d.stripe].push_back({d.column, -1});
    }
    for (auto& [y, tris] : lines) {
        std::sort(tris.begin(), tris.end(), [](const Triangle& x, const Triangle& z) { return x.column < z.column; });
    }
    for (int y = a; y < b; ++y) lines[y].push_back({1, +1});

    std::map<int, std::size_t> used;
    Walk w{a, {}};
    int y = a;
    const std::size_t total = 2 * (h.size() - proj.size()) + static_cast<std::size_t>(b - a);
    while (w.steps.size() < total) {
        auto& tris = lines[y];
        auto& u = used[y];
        if (u >= tris.size()) throw std::invalid_argument("pyramid does not decode to a walk");
        const int step = tris[u++].step;
        w.steps.push_back(step);
        y += step;
    }
    if (y != b) throw std::invalid_argument("pyramid does not decode to a walk ending at b");
    return w;
}

inline nlohmann::json heap_to_json(const Heap& h)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& d : h.dimers) j.push_back({d.stripe, d.column});
    return j;
}

// ---------------------------------------------------------------------------
// Inversion matrices

using PolyMatrix = std::vector<std::vector<Poly>>;

enum class InversionKind { D, Z };

// Z(a)_{i,j} = Z+_{a,a+2j}(2i); D(a)_{k,i} = (-1)^{k-i} Pi_{a,a+2k-1}(k-i).
// Both are lower triangular; returns the leading size x size block.
inline PolyMatrix inversion_matrix(InversionKind which, int a, int size, const WeightEnv& env)
{
    if (size < 1) throw std::invalid_argument("matrix size must be positive");
    PolyMatrix mat(static_cast<std::size_t>(size), std::vector<Poly>(static_cast<std::size_t>(size)));
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c <= r; ++c) {
            Poly v;
            if (which == InversionKind::Z) {
                v = positive_walk_gf(a, a + 2 * c, 2 * r, env);
            } else {
                v = hard_dimer_gf(a, a + 2 * r - 1, r - c, env);
                if ((r - c) % 2 != 0) v = -v;
            }
            mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = std::move(v);
        }
    }
    return mat;
}

inline PolyMatrix matmul(const PolyMatrix& x, const PolyMatrix& y, const SeriesContext& ctx)
{
    const std::size_t n = x.size();
    const std::size_t inner = y.size();
    const std::size_t m = inner ? y.front().size() : 0;
    PolyMatrix out(n, std::vector<Poly>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t t = 0; t < inner; ++t) {
                out[i][j] += multiply(x[i][t], y[t][j], ctx);
            }
        }
    }
    return out;
}

inline PolyMatrix identity_matrix(std::size_t n)
{
    PolyMatrix id(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = Poly(1);
    return id;
}

}  // namespace mastereq

#endif  // MASTEREQ_HEAPS_HPP
