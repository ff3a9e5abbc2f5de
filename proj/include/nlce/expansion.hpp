#pragma once

// The d-NLCE proper: per-cluster properties, the weight recursion
// W(c) = <A>_c - sum_{s subset c} W(s), and truncated order-by-order sums.
// Site observables use the extensive property (sum over cluster sites), so one
// solve covers a free shape; the infinite-lattice per-site value is
// sum_c L(c) W(c). Pair correlators use pinned doubly-rooted clusters whose
// proper subclusters keep both roots.
//
// All reductions run in the canonical record order regardless of how the
// per-cluster solves were scheduled, so output is bit-reproducible.

#include <string>
#include <vector>

#include "nlce/clusters.hpp"
#include "nlce/errors.hpp"
#include "nlce/evolve.hpp"
#include "nlce/model.hpp"
#include "nlce/parallel.hpp"
#include "nlce/state.hpp"
#include "nlce/time_grid.hpp"

namespace nlce {

struct ObservableSpec {
    enum class Kind { site_magnetization, pair_correlator };
    Kind kind = Kind::site_magnetization;
    Axis alpha = Axis::x;
    Axis beta = Axis::x;  // pair only
    Site r{};             // pair separation; must be nonzero
    bool connected = true;

    void validate() const {
        if (kind == Kind::pair_correlator && r.is_zero())
            throw config_error("pair correlator needs a nonzero separation r");
    }
};

template <class R>
using TimeSeries = std::vector<R>;

template <class R>
struct OrderSeries {
    TimeGrid grid;
    int min_order = 1;
    std::vector<TimeSeries<R>> orders;  // orders[k] = truncated sum at order min_order + k

    int max_order() const { return min_order + int(orders.size()) - 1; }
    const TimeSeries<R>& order(int n) const {
        if (n < min_order || n > max_order())
            throw error("order " + std::to_string(n) + " not present in series");
        return orders[size_t(n - min_order)];
    }
};

template <class R>
struct WeightTable {
    std::vector<TimeSeries<R>> weights;  // by record index; may cover a prefix of the set
};

struct RunOptions {
    SolveOptions solve{};
    unsigned workers = 1;  // 0 = hardware concurrency
};

namespace detail {

template <class R>
TimeSeries<R> solve_and_measure(const ModelSpec& model, const InitialStateSpec& init,
                                std::span<const Site> sites, const LatticeSpec& lattice,
                                const TimeGrid& grid, const SolveOptions& opts, int root_i,
                                int root_j, Axis alpha, Axis beta, bool connected) {
    // root_i < 0: extensive site magnetization along alpha; otherwise the
    // (root_i, root_j) pair correlator
    auto ham = build_hamiltonian<R>(model, lattice, sites, opts.site_cap);
    auto psi0 = product_state<R>(init, ham.n_sites);
    TimeSeries<R> values(grid.size(), R(0));
    propagate_observe(ham, psi0, grid, opts, [&](size_t j, const StateVector<R>& psi) {
        std::span<const std::complex<R>> s(psi);
        if (root_i < 0) {
            R sum(0);
            for (int i = 0; i < ham.n_sites; ++i) sum += expect_single<R>(s, i, alpha);
            values[j] = sum;
        } else {
            R full = expect_pair<R>(s, root_i, root_j, alpha, beta);
            if (connected)
                full -= expect_single<R>(s, root_i, alpha) * expect_single<R>(s, root_j, beta);
            values[j] = full;
        }
    });
    return values;
}

inline std::string cluster_context(const std::string& what, size_t index, int size) {
    return what + " (cluster index " + std::to_string(index) + ", " + std::to_string(size) +
           " sites)";
}

}  // namespace detail

// Extensive property of one free cluster: sum_{i in c} <sigma_i^alpha>(t).
template <class R>
TimeSeries<R> site_cluster_property(const ModelSpec& model, const InitialStateSpec& init,
                                    Axis alpha, const ClusterShape& shape,
                                    const LatticeSpec& lattice, const TimeGrid& grid,
                                    const SolveOptions& opts = {}) {
    return detail::solve_and_measure<R>(model, init, shape.sites, lattice, grid, opts, -1, -1,
                                        alpha, alpha, false);
}

// Pair property of one doubly-rooted cluster, optionally with the
// within-cluster product subtracted before the weight recursion.
template <class R>
TimeSeries<R> pair_cluster_property(const ModelSpec& model, const InitialStateSpec& init,
                                    Axis alpha, Axis beta, const PairClusterRecord& record,
                                    const Site& r, bool connected, const LatticeSpec& lattice,
                                    const TimeGrid& grid, const SolveOptions& opts = {}) {
    int root_i = -1, root_j = -1;
    for (size_t k = 0; k < record.sites.size(); ++k) {
        if (record.sites[k].is_zero()) root_i = int(k);
        if (record.sites[k] == r) root_j = int(k);
    }
    if (root_i < 0 || root_j < 0) throw error("pair record does not contain both roots");
    return detail::solve_and_measure<R>(model, init, record.sites, lattice, grid, opts, root_i,
                                        root_j, alpha, beta, connected);
}

// Weight recursion over free records in increasing size order:
// W(c) = P(c) - sum_s M(s,c) W(s). A prefix of the record set is a valid
// domain because subcluster indices always point backwards.
template <class R>
WeightTable<R> compute_weights(const std::vector<TimeSeries<R>>& properties,
                               const ClusterSet& set) {
    if (properties.size() > set.records.size())
        throw closure_error("more properties than records");
    WeightTable<R> table;
    table.weights.resize(properties.size());
    for (size_t i = 0; i < properties.size(); ++i) {
        TimeSeries<R> w = properties[i];
        for (auto [idx, mult] : set.records[i].subclusters) {
            if (idx >= i)
                throw closure_error("subcluster index " + std::to_string(idx) +
                                    " not below record " + std::to_string(i));
            const TimeSeries<R>& ws = table.weights[idx];
            const R m = R(int(mult));
            for (size_t t = 0; t < w.size(); ++t) w[t] -= m * ws[t];
        }
        table.weights[i] = std::move(w);
    }
    return table;
}

// Truncated sums m^(n)(t) = sum_{|c| <= n} L(c) W(c,t), emitted cumulatively
// for n = 1..n_max.
template <class R>
OrderSeries<R> order_sums(const WeightTable<R>& table, const ClusterSet& set, int n_max,
                          const TimeGrid& grid) {
    set.require_covers(set.spec, n_max);
    OrderSeries<R> series;
    series.grid = grid;
    series.min_order = 1;
    series.orders.assign(size_t(n_max), TimeSeries<R>(grid.size(), R(0)));
    TimeSeries<R> acc(grid.size(), R(0));
    size_t rec = 0;
    for (int n = 1; n <= n_max; ++n) {
        while (rec < set.records.size() && set.records[rec].size() == n) {
            if (rec >= table.weights.size())
                throw closure_error("weight table does not cover order " + std::to_string(n));
            const R lat = R(int(set.records[rec].lattice_constant));
            const TimeSeries<R>& w = table.weights[rec];
            for (size_t t = 0; t < acc.size(); ++t) acc[t] += lat * w[t];
            ++rec;
        }
        series.orders[size_t(n - 1)] = acc;
    }
    return series;
}

// Full single-site pipeline: parallel cluster solves, sequential recursion.
template <class R>
OrderSeries<R> run_site_expansion(const ModelSpec& model, const InitialStateSpec& init,
                                  Axis alpha, int n_max, const TimeGrid& grid,
                                  const ClusterSet& set, const RunOptions& run = {}) {
    set.require_covers(set.spec, n_max);
    grid.validate();
    size_t count = 0;
    while (count < set.records.size() && set.records[count].size() <= n_max) ++count;
    std::vector<TimeSeries<R>> properties(count);
    parallel_for(count, run.workers, [&](size_t i) {
        try {
            properties[i] = site_cluster_property<R>(model, init, alpha, set.records[i].shape,
                                                     set.spec, grid, run.solve);
        } catch (const error& e) {
            throw numeric_error(detail::cluster_context(e.what(), i, set.records[i].size()));
        }
    });
    auto weights = compute_weights(properties, set);
    return order_sums(weights, set, n_max, grid);
}

// ---- doubly-rooted (pair) expansion ----

// W(P) = C_P - sum over proper rooted subclusters, each once.
template <class R>
WeightTable<R> compute_pair_weights(const std::vector<TimeSeries<R>>& properties,
                                    const PairClusterSet& set) {
    if (properties.size() > set.records.size())
        throw closure_error("more properties than pair records");
    WeightTable<R> table;
    table.weights.resize(properties.size());
    for (size_t i = 0; i < properties.size(); ++i) {
        TimeSeries<R> w = properties[i];
        for (uint32_t idx : set.records[i].rooted_subclusters) {
            if (idx >= i)
                throw closure_error("rooted subcluster index " + std::to_string(idx) +
                                    " not below record " + std::to_string(i));
            const TimeSeries<R>& ws = table.weights[idx];
            for (size_t t = 0; t < w.size(); ++t) w[t] -= ws[t];
        }
        table.weights[i] = std::move(w);
    }
    return table;
}

// F^(n)(t) = sum_{|P| <= n} W(P,t) for n = min_size..n_max.
template <class R>
OrderSeries<R> pair_order_sums(const WeightTable<R>& table, const PairClusterSet& set,
                               int n_max, const TimeGrid& grid) {
    if (n_max > set.n_max)
        throw cluster_set_mismatch_error("pair set covers n_max=" + std::to_string(set.n_max) +
                                         ", requested " + std::to_string(n_max));
    OrderSeries<R> series;
    series.grid = grid;
    series.min_order = set.min_size();
    if (n_max < series.min_order)
        throw config_error("truncation order below the minimal pair cluster size");
    series.orders.assign(size_t(n_max - series.min_order + 1), TimeSeries<R>(grid.size(), R(0)));
    TimeSeries<R> acc(grid.size(), R(0));
    size_t rec = 0;
    for (int n = series.min_order; n <= n_max; ++n) {
        while (rec < set.records.size() && set.records[rec].size() == n) {
            if (rec >= table.weights.size())
                throw closure_error("pair weight table does not cover order " +
                                    std::to_string(n));
            const TimeSeries<R>& w = table.weights[rec];
            for (size_t t = 0; t < acc.size(); ++t) acc[t] += w[t];
            ++rec;
        }
        series.orders[size_t(n - series.min_order)] = acc;
    }
    return series;
}

// Full pair pipeline with the connected-property convention: the cluster
// property of every doubly-rooted cluster is its within-cluster (optionally
// connected) correlator, and weights telescope over rooted subclusters.
template <class R>
OrderSeries<R> run_pair_expansion(const ModelSpec& model, const InitialStateSpec& init,
                                  Axis alpha, Axis beta, const Site& r, bool connected,
                                  int n_max, const TimeGrid& grid, const PairClusterSet& set,
                                  const RunOptions& run = {}) {
    grid.validate();
    if (!(set.r == r))
        throw cluster_set_mismatch_error("pair set was built for r=" + set.r.to_string() +
                                         ", requested r=" + r.to_string());
    size_t count = 0;
    while (count < set.records.size() && set.records[count].size() <= n_max) ++count;
    std::vector<TimeSeries<R>> properties(count);
    parallel_for(count, run.workers, [&](size_t i) {
        try {
            properties[i] = pair_cluster_property<R>(model, init, alpha, beta, set.records[i],
                                                     r, connected, set.spec, grid, run.solve);
        } catch (const error& e) {
            throw numeric_error(detail::cluster_context(e.what(), i, set.records[i].size()));
        }
    });
    auto weights = compute_pair_weights(properties, set);
    return pair_order_sums(weights, set, n_max, grid);
}

// Alternative convention kept behind a switch: expand the full correlator and
// the two single-site factors independently, subtracting after truncation.
template <class R>
OrderSeries<R> run_pair_subtract_after(const ModelSpec& model, const InitialStateSpec& init,
                                       Axis alpha, Axis beta, const Site& r, int n_max,
                                       const TimeGrid& grid, const PairClusterSet& pair_set,
                                       const ClusterSet& site_set, const RunOptions& run = {}) {
    OrderSeries<R> full = run_pair_expansion<R>(model, init, alpha, beta, r, /*connected=*/false,
                                                n_max, grid, pair_set, run);
    OrderSeries<R> ma = run_site_expansion<R>(model, init, alpha, n_max, grid, site_set, run);
    OrderSeries<R> mb = alpha == beta
                            ? ma
                            : run_site_expansion<R>(model, init, beta, n_max, grid, site_set, run);
    for (int n = full.min_order; n <= full.max_order(); ++n) {
        TimeSeries<R>& f = full.orders[size_t(n - full.min_order)];
        const TimeSeries<R>& a = ma.order(n);
        const TimeSeries<R>& b = mb.order(n);
        for (size_t t = 0; t < f.size(); ++t) f[t] -= a[t] * b[t];
    }
    return full;
}

}  // namespace nlce
