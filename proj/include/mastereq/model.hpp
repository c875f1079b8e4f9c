#ifndef MASTEREQ_MODEL_HPP
#define MASTEREQ_MODEL_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mastereq/algebra.hpp"

namespace mastereq {

// Graphs with inner vertices of valence at most 2m. Coupling g_k weights
// each 2k-valent vertex; g_k = 0 for k > m and for any k outside `active`.
// The boundary term replaces the constant 1 of the n = 0 master equation
// (set it to x to mark faces adjacent to the external face).
struct ModelSpec {
    int m = 1;
    std::vector<int> active;
    Poly boundary = Poly(1);

    static ModelSpec up_to(int m, Poly boundary = Poly(1))
    {
        if (m < 1) throw std::invalid_argument("valence cutoff m must be >= 1");
        ModelSpec s;
        s.m = m;
        for (int k = 1; k <= m; ++k) s.active.push_back(k);
        s.boundary = std::move(boundary);
        return s;
    }

    // Only g_k is nonzero; used for the pure tetravalent (k=2) and
    // hexavalent (k=3) models.
    static ModelSpec pure(int k, Poly boundary = Poly(1))
    {
        if (k < 1) throw std::invalid_argument("coupling index must be >= 1");
        ModelSpec s;
        s.m = k;
        s.active = {k};
        s.boundary = std::move(boundary);
        return s;
    }

    bool is_active(int k) const
    {
        return k >= 1 && k <= m && std::find(active.begin(), active.end(), k) != active.end();
    }

    Poly coupling(int k) const { return is_active(k) ? Poly::g(k) : Poly(); }

    Poly boundary_at(int n) const { return n == 0 ? boundary : Poly(1); }
};

}  // namespace mastereq

#endif  // MASTEREQ_MODEL_HPP
