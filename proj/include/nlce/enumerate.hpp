#pragma once

// Growth-style enumeration of fixed (translation-distinct) connected clusters,
// Redelmeier's untried-set scheme generalized to d = 1, 2, 3. Each fixed
// cluster of size <= n_max is visited exactly once. The doubly-rooted variant
// enumerates connected clusters pinned to contain both the origin and a given
// separation vector, with no translation quotient.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nlce/errors.hpp"
#include "nlce/lattice.hpp"
#include "nlce/shape.hpp"

namespace nlce {

namespace detail {

// Dense scratch grid over a bounded coordinate box, used for `seen` marks.
class MarkGrid {
  public:
    MarkGrid(const Site& lo, const Site& hi) : lo_(lo) {
        for (int k = 0; k < 3; ++k) extent_[k] = hi.c[k] - lo.c[k] + 1;
        marks_.assign(size_t(extent_[0]) * extent_[1] * extent_[2], 0);
    }
    size_t index(const Site& s) const {
        size_t idx = 0;
        for (int k = 2; k >= 0; --k) idx = idx * extent_[k] + size_t(s.c[k] - lo_.c[k]);
        return idx;
    }
    bool in_bounds(const Site& s) const {
        for (int k = 0; k < 3; ++k)
            if (s.c[k] < lo_.c[k] || s.c[k] > lo_.c[k] + extent_[k] - 1) return false;
        return true;
    }
    uint8_t& operator[](const Site& s) { return marks_[index(s)]; }

  private:
    Site lo_;
    std::array<int, 3> extent_{1, 1, 1};
    std::vector<uint8_t> marks_;
};

// Cell order used to pin the translation frame: the origin must be the
// minimal cell of every emitted cluster under (z, y, x)-major comparison.
inline bool cell_not_below_origin(const Site& s) {
    if (s.c[2] != 0) return s.c[2] > 0;
    if (s.c[1] != 0) return s.c[1] > 0;
    return s.c[0] >= 0;
}

template <class Emit>
class GrowthEnumerator {
  public:
    GrowthEnumerator(const LatticeSpec& spec, int n_max, Site root, Site lo, Site hi,
                     bool pin_origin_minimal, Site required, Emit& emit)
        : spec_(spec),
          n_max_(n_max),
          pin_origin_minimal_(pin_origin_minimal),
          required_(required),
          has_required_target_(!required.is_zero()),
          seen_(lo, hi),
          emit_(emit) {
        cluster_.reserve(n_max);
        seen_[root] = 1;
        untried_.push_back(root);
    }

    void run() { grow(0, n_max_, false); }

  private:
    // dist_budget: sites still addable; contains_required tracked along the path
    void grow(size_t begin, int budget, bool contains_required) {
        size_t end = untried_.size();
        for (size_t i = begin; i < end; ++i) {
            Site u = untried_[i];
            cluster_.push_back(u);
            bool now_has = contains_required || (has_required_target_ && u == required_);
            bool viable = true;
            if (has_required_target_ && !now_has) {
                // prune branches that can no longer reach the required site
                int best = required_.l1_norm();
                for (const Site& s : cluster_) best = std::min(best, (required_ - s).l1_norm());
                viable = best <= budget - 1;
            }
            if (viable) {
                if (!has_required_target_ || now_has) emit_(cluster_);
                if (budget > 1) {
                    size_t saved = untried_.size();
                    for (int axis = 0; axis < spec_.dimension; ++axis) {
                        for (int step : {+1, -1}) {
                            Site v = u;
                            v.c[axis] += step;
                            if (pin_origin_minimal_ && !cell_not_below_origin(v)) continue;
                            if (!seen_.in_bounds(v)) continue;
                            uint8_t& mark = seen_[v];
                            if (mark) continue;
                            mark = 1;
                            untried_.push_back(v);
                        }
                    }
                    grow(i + 1, budget - 1, now_has);
                    for (size_t j = saved; j < untried_.size(); ++j) seen_[untried_[j]] = 0;
                    untried_.resize(saved);
                }
            }
            cluster_.pop_back();
        }
    }

    LatticeSpec spec_;
    int n_max_;
    bool pin_origin_minimal_;
    Site required_;
    bool has_required_target_;
    MarkGrid seen_;
    std::vector<Site> cluster_;
    std::vector<Site> untried_;
    Emit& emit_;
};

}  // namespace detail

// Visit every translation-distinct connected cluster with 1..n_max sites
// exactly once. Emitted shapes are translation-normalized.
template <class Fn>
void enumerate_fixed_visit(const LatticeSpec& spec, int n_max, Fn&& fn) {
    spec.validate();
    if (n_max < 1) throw config_error("n_max must be >= 1");
    // box containing all allowed cells; cell_not_below_origin does the exact clipping
    int reach = n_max - 1;
    Site lo{{-reach, spec.dimension >= 2 ? -reach : 0, 0}};
    Site hi{{reach, spec.dimension >= 2 ? reach : 0, spec.dimension >= 3 ? reach : 0}};
    auto emit = [&fn](const std::vector<Site>& cluster) {
        fn(ClusterShape::normalized(cluster));
    };
    detail::GrowthEnumerator<decltype(emit)> en(spec, n_max, Site{}, lo, hi,
                                                /*pin_origin_minimal=*/true, Site{}, emit);
    en.run();
}

inline std::map<int, std::vector<ClusterShape>> enumerate_fixed(const LatticeSpec& spec,
                                                                int n_max) {
    std::map<int, std::vector<ClusterShape>> by_size;
    enumerate_fixed_visit(spec, n_max, [&](ClusterShape&& shape) {
        by_size[shape.size()].push_back(std::move(shape));
    });
    for (auto& [size, shapes] : by_size) std::sort(shapes.begin(), shapes.end());
    return by_size;
}

// Visit every connected cluster with <= n_max sites that contains both the
// origin and `r`, at absolute (pinned) positions, exactly once. Emitted site
// lists are sorted but NOT translation-normalized.
template <class Fn>
void enumerate_pair_visit(const LatticeSpec& spec, const Site& r, int n_max, Fn&& fn) {
    spec.validate();
    if (r.is_zero()) throw config_error("pair separation r = 0: use single-site expansion");
    for (int axis = spec.dimension; axis < 3; ++axis)
        if (r.c[axis] != 0) throw config_error("pair separation has components outside the lattice");
    if (n_max < 1) throw config_error("n_max must be >= 1");
    int reach = n_max - 1;
    Site lo, hi;
    for (int k = 0; k < 3; ++k) {
        lo.c[k] = std::min(0, r.c[k]) - reach;
        hi.c[k] = std::max(0, r.c[k]) + reach;
    }
    auto emit = [&fn](const std::vector<Site>& cluster) {
        std::vector<Site> sorted = cluster;
        std::sort(sorted.begin(), sorted.end());
        fn(std::move(sorted));
    };
    detail::GrowthEnumerator<decltype(emit)> en(spec, n_max, Site{}, lo, hi,
                                                /*pin_origin_minimal=*/false, r, emit);
    en.run();
}

inline std::vector<std::vector<Site>> enumerate_pair_fixed(const LatticeSpec& spec, const Site& r,
                                                           int n_max) {
    std::vector<std::vector<Site>> out;
    enumerate_pair_visit(spec, r, n_max, [&](std::vector<Site>&& sites) {
        out.push_back(std::move(sites));
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace nlce
