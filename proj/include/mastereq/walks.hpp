#ifndef MASTEREQ_WALKS_HPP
#define MASTEREQ_WALKS_HPP

// Weighted lattice walks. A walk of +-1 steps gets weight R_i for every
// descent i -> i-1; Z_{a,b}(k) sums these weights over all k-step walks from
// height a to height b. The weights come from a WeightEnv.

#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mastereq/algebra.hpp"
#include "mastereq/model.hpp"

namespace mastereq {

enum class EnvMode { symbolic, solved };

namespace detail {

// Rows of the transfer recursion, keyed by (start height, floor). Row s maps
// a height h to Z_{start,h}(s).
struct WalkCache {
    using Row = std::map<int, Poly>;
    std::mutex mutex;
    std::map<std::pair<int, int>, std::vector<Row>> rows;
};

}  // namespace detail

// Assignment i -> R_i, total over the integers.
//   * R_i = 0 for i < floor.
//   * symbolic mode: R_i is the indeterminate R_i.
//   * solved mode: R_i = values[i] for 0 <= i <= horizon, R_i = tail beyond.
// Envs are immutable; copies share their walk cache.
class WeightEnv {
public:
    static WeightEnv symbolic(int floor = INT_MIN)
    {
        WeightEnv e;
        e.mode_ = EnvMode::symbolic;
        e.floor_ = floor;
        return e;
    }

    // values[i] is R_i for i = 0..values.size()-1; R_i = 0 for i < 0.
    static WeightEnv solved(std::vector<Poly> values, Poly tail, SeriesContext ctx)
    {
        WeightEnv e;
        e.mode_ = EnvMode::solved;
        e.floor_ = 0;
        e.horizon_ = static_cast<int>(values.size()) - 1;
        e.values_ = std::make_shared<const std::vector<Poly>>(std::move(values));
        e.tail_ = std::move(tail);
        e.ctx_ = std::move(ctx);
        return e;
    }

    // R_i = value for every i >= floor.
    static WeightEnv uniform(Poly value, SeriesContext ctx = SeriesContext::exact(), int floor = INT_MIN)
    {
        WeightEnv e;
        e.mode_ = EnvMode::solved;
        e.floor_ = floor;
        e.horizon_ = INT_MIN;
        e.values_ = std::make_shared<const std::vector<Poly>>();
        e.tail_ = std::move(value);
        e.ctx_ = std::move(ctx);
        return e;
    }

    EnvMode mode() const { return mode_; }
    int floor() const { return floor_; }
    int horizon() const { return horizon_; }
    const Poly& tail() const { return tail_; }
    const SeriesContext& context() const { return ctx_; }

    Poly r(int i) const
    {
        if (i < floor_) return {};
        if (mode_ == EnvMode::symbolic) return Poly::r(i);
        if (i > horizon_) return tail_;
        if (i < 0) return {};
        return (*values_)[static_cast<std::size_t>(i)];
    }

    // Forces R_i = 0 for i < floor (never lowers the existing floor).
    WeightEnv with_floor(int floor) const
    {
        WeightEnv e = *this;
        e.floor_ = std::max(floor_, floor);
        return e;
    }

    // Copy with R_i replaced by `value`; 0 <= i <= horizon in solved mode.
    WeightEnv with_value(int i, Poly value) const
    {
        if (mode_ != EnvMode::solved || i < 0 || i > horizon_) {
            throw std::out_of_range("with_value: index outside the stored range");
        }
        auto values = *values_;
        values[static_cast<std::size_t>(i)] = std::move(value);
        WeightEnv e = *this;
        e.values_ = std::make_shared<const std::vector<Poly>>(std::move(values));
        e.cache_ = std::make_shared<detail::WalkCache>();
        return e;
    }

    // Z_{start,end}(steps), computed by the transfer recursion
    // Z_{a,h}(s+1) = Z_{a,h-1}(s) + R_{h+1} Z_{a,h+1}(s) and memoized.
    Poly walk(int start, int end, int steps) const
    {
        if (steps < 0) return {};
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto& rows = cache_->rows[{start, floor_}];
        if (rows.empty()) rows.push_back({{start, Poly(1)}});
        while (static_cast<int>(rows.size()) <= steps) {
            const auto& prev = rows.back();
            detail::WalkCache::Row next;
            for (const auto& [h, z] : prev) {
                next[h + 1] += z;
                const Poly w = r(h);
                if (!w.is_zero()) next[h - 1] += multiply(w, z, ctx_);
            }
            std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
            rows.push_back(std::move(next));
        }
        const auto& row = rows[static_cast<std::size_t>(steps)];
        auto it = row.find(end);
        return it == row.end() ? Poly() : it->second;
    }

private:
    WeightEnv() = default;

    EnvMode mode_ = EnvMode::symbolic;
    int floor_ = INT_MIN;
    int horizon_ = INT_MIN;
    std::shared_ptr<const std::vector<Poly>> values_;
    Poly tail_;
    SeriesContext ctx_ = SeriesContext::exact();
    std::shared_ptr<detail::WalkCache> cache_ = std::make_shared<detail::WalkCache>();
};

// A walk of +-1 steps starting at a given height.
struct Walk {
    int start = 0;
    std::vector<int> steps;

    int end() const { return start + std::accumulate(steps.begin(), steps.end(), 0); }

    // True iff no prefix height drops below `a`.
    bool positive_relative_to(int a) const
    {
        int h = start;
        if (h < a) return false;
        for (int s : steps) {
            h += s;
            if (h < a) return false;
        }
        return true;
    }

    // Heights i of all descents i -> i-1, in order of occurrence.
    std::vector<int> descent_heights() const
    {
        std::vector<int> out;
        int h = start;
        for (int s : steps) {
            if (s < 0) out.push_back(h);
            h += s;
        }
        return out;
    }

    Poly weight(const WeightEnv& env) const
    {
        Poly w(1);
        for (int i : descent_heights()) w = multiply(w, env.r(i), env.context());
        return w;
    }

    friend bool operator==(const Walk&, const Walk&) = default;
};

// Z_{a,b}(k).
inline Poly walk_gf(int a, int b, int k, const WeightEnv& env)
{
    if (k < 0 || ((b - a - k) % 2) != 0) return {};
    return env.walk(a, b, k);
}

// Z+_{a,b}(k): walks staying at or above a, i.e. R_i -> 0 for i <= a.
inline Poly positive_walk_gf(int a, int b, int k, const WeightEnv& env)
{
    return walk_gf(a, b, k, env.with_floor(a + 1));
}

// V'_{a,b} = sum_k g_k Z_{a,b}(2k-1).
inline Poly vprime(int a, int b, const WeightEnv& env, const ModelSpec& spec)
{
    Poly total;
    if (((b - a) % 2) == 0) return total;
    for (int k = 1; k <= spec.m; ++k) {
        if (!spec.is_active(k)) continue;
        total += multiply(spec.coupling(k), walk_gf(a, b, 2 * k - 1, env), env.context());
    }
    return total;
}

// Mobile formulation alias: M_n(k) = Z_{n-1,n}(2k-1).
inline Poly mobile_gf(int n, int k, const WeightEnv& env) { return walk_gf(n - 1, n, 2 * k - 1, env); }

}  // namespace mastereq

#endif  // MASTEREQ_WALKS_HPP
