#pragma once

// Time propagation under a spin Hamiltonian. Small clusters use the dense
// spectral propagator psi(t) = V exp(-i D t) V^T psi0; larger ones use
// time-stepped Lanczos (Krylov) propagation with full reorthogonalization and
// a per-step residual error estimate. Both are deterministic.

#include <cblas.h>

#include <complex>
#include <limits>
#include <vector>

#include "nlce/eig.hpp"
#include "nlce/errors.hpp"
#include "nlce/hamiltonian.hpp"
#include "nlce/scalar.hpp"
#include "nlce/state.hpp"
#include "nlce/time_grid.hpp"

namespace nlce {

struct KrylovOptions {
    int m = 30;           // Lanczos subspace dimension
    double dt_max = 0.25; // largest span covered by one factorization
    double tol = 1e-10;   // per-step local error bound
};

struct KrylovReport {
    int steps = 0;
    double max_norm_drift = 0.0;
    double max_error_estimate = 0.0;
    double min_step = std::numeric_limits<double>::infinity();
};

struct SolveOptions {
    int dense_cap = 12;  // dense spectral propagation up to this many sites
    int site_cap = 20;   // hard per-solve resource cap
    KrylovOptions krylov{};
};

namespace detail {

template <class R>
std::vector<StateVector<R>> dense_states_generic(const SymmetricEigen<R>& eig,
                                                 const StateVector<R>& psi0,
                                                 const TimeGrid& grid) {
    using O = real_ops<R>;
    const size_t dim = eig.n;
    std::vector<std::complex<R>> c(dim, std::complex<R>(R(0), R(0)));
    for (size_t k = 0; k < dim; ++k)
        for (size_t i = 0; i < dim; ++i) c[k] += eig.vectors[i * dim + k] * psi0[i];
    std::vector<StateVector<R>> states(grid.size(), StateVector<R>(dim));
    std::vector<std::complex<R>> w(dim);
    for (size_t j = 0; j < grid.size(); ++j) {
        const R t = O::from_double(grid.t[j]);
        for (size_t k = 0; k < dim; ++k) w[k] = unit_phase(-eig.values[k] * t) * c[k];
        for (size_t i = 0; i < dim; ++i) {
            std::complex<R> sum(R(0), R(0));
            for (size_t k = 0; k < dim; ++k) sum += eig.vectors[i * dim + k] * w[k];
            states[j][i] = sum;
        }
    }
    return states;
}

inline std::vector<StateVector<double>> dense_states_blas(const SymmetricEigen<double>& eig,
                                                          const StateVector<double>& psi0,
                                                          const TimeGrid& grid) {
    const size_t dim = eig.n;
    const size_t nt = grid.size();
    std::vector<double> re(dim), im(dim), cre(dim), cim(dim);
    for (size_t i = 0; i < dim; ++i) {
        re[i] = psi0[i].real();
        im[i] = psi0[i].imag();
    }
    cblas_dgemv(CblasRowMajor, CblasTrans, int(dim), int(dim), 1.0, eig.vectors.data(),
                int(dim), re.data(), 1, 0.0, cre.data(), 1);
    cblas_dgemv(CblasRowMajor, CblasTrans, int(dim), int(dim), 1.0, eig.vectors.data(),
                int(dim), im.data(), 1, 0.0, cim.data(), 1);
    // columns 2j, 2j+1 hold Re and Im of exp(-i E t_j) (V^T psi0)
    std::vector<double> phased(dim * 2 * nt);
    for (size_t k = 0; k < dim; ++k) {
        for (size_t j = 0; j < nt; ++j) {
            const double arg = eig.values[k] * grid.t[j];
            const double cosp = std::cos(arg), sinp = std::sin(arg);
            phased[k * 2 * nt + 2 * j] = cre[k] * cosp + cim[k] * sinp;
            phased[k * 2 * nt + 2 * j + 1] = cim[k] * cosp - cre[k] * sinp;
        }
    }
    std::vector<double> out(dim * 2 * nt);
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, int(dim), int(2 * nt), int(dim), 1.0,
                eig.vectors.data(), int(dim), phased.data(), int(2 * nt), 0.0, out.data(),
                int(2 * nt));
    std::vector<StateVector<double>> states(nt, StateVector<double>(dim));
    for (size_t j = 0; j < nt; ++j)
        for (size_t i = 0; i < dim; ++i)
            states[j][i] = {out[i * 2 * nt + 2 * j], out[i * 2 * nt + 2 * j + 1]};
    return states;
}

}  // namespace detail

template <class R>
std::vector<StateVector<R>> evolve_dense(const SpinHamiltonian<R>& ham,
                                         const StateVector<R>& psi0, const TimeGrid& grid) {
    grid.validate();
    if (psi0.size() != ham.dim()) throw error("state dimension does not match Hamiltonian");
    auto eig = symmetric_eigen<R>(ham.to_dense(), ham.dim());
    if constexpr (std::is_same_v<R, double>)
        return detail::dense_states_blas(eig, psi0, grid);
    else
        return detail::dense_states_generic(eig, psi0, grid);
}

namespace detail {

template <class R>
struct LanczosFactorization {
    std::vector<StateVector<R>> basis;  // rank orthonormal vectors
    std::vector<R> alpha;               // rank diagonal entries
    std::vector<R> beta;                // rank entries; beta[rank-1] couples out of the subspace
    int rank = 0;
    bool invariant = false;  // happy breakdown: subspace is exact
};

template <class R>
LanczosFactorization<R> lanczos_factorize(const SpinHamiltonian<R>& ham,
                                          const StateVector<R>& v0, int m) {
    using O = real_ops<R>;
    LanczosFactorization<R> f;
    const double breakdown = 1e-14 * std::max(1.0, ham.norm_bound());
    f.basis.push_back(v0);
    StateVector<R> w(v0.size());
    for (int j = 0; j < m; ++j) {
        ham.apply(f.basis[size_t(j)].data(), w.data());
        const R a = inner<R>(f.basis[size_t(j)], w).real();
        f.alpha.push_back(a);
        for (size_t i = 0; i < w.size(); ++i) w[i] -= a * f.basis[size_t(j)][i];
        if (j > 0)
            for (size_t i = 0; i < w.size(); ++i)
                w[i] -= f.beta[size_t(j) - 1] * f.basis[size_t(j) - 1][i];
        for (int i = 0; i <= j; ++i) {  // full reorthogonalization
            const std::complex<R> overlap = inner<R>(f.basis[size_t(i)], w);
            for (size_t k = 0; k < w.size(); ++k) w[k] -= overlap * f.basis[size_t(i)][k];
        }
        const R b = state_norm<R>(w);
        f.beta.push_back(b);
        f.rank = j + 1;
        if (O::to_double(b) <= breakdown) {
            f.invariant = true;
            break;
        }
        if (j + 1 < m) {
            StateVector<R> next = w;
            for (auto& x : next) x /= b;
            f.basis.push_back(std::move(next));
        }
    }
    return f;
}

// exp(-i T dt) e1 in the subspace, from the tridiagonal eigendecomposition
template <class R>
std::vector<std::complex<R>> subspace_exp(const SymmetricEigen<R>& teig, R dt) {
    const size_t r = teig.n;
    std::vector<std::complex<R>> y(r, std::complex<R>(R(0), R(0)));
    for (size_t k = 0; k < r; ++k) {
        const std::complex<R> phase = unit_phase(-teig.values[k] * dt) * teig.vectors[0 * r + k];
        for (size_t i = 0; i < r; ++i) y[i] += teig.vectors[i * r + k] * phase;
    }
    return y;
}

}  // namespace detail

// Streaming propagation: fn(grid_index, state) called once per grid point in
// order. States are the raw reconstructions (norm drift within tolerance).
template <class R, class Fn>
KrylovReport evolve_krylov_observe(const SpinHamiltonian<R>& ham, const StateVector<R>& psi0,
                                   const TimeGrid& grid, const KrylovOptions& opts, Fn&& fn) {
    using O = real_ops<R>;
    grid.validate();
    if (psi0.size() != ham.dim()) throw error("state dimension does not match Hamiltonian");
    if (!(opts.tol > 0)) throw config_error("krylov tol must be positive");
    if (!(opts.dt_max > 0)) throw config_error("krylov dt_max must be positive");
    KrylovReport report;
    fn(size_t(0), psi0);
    if (grid.size() == 1) return report;

    const int m = std::max(2, std::min<int>(opts.m, int(ham.dim())));
    StateVector<R> psi = psi0;
    const R norm0 = state_norm<R>(psi);
    if (!(O::to_double(norm0) > 0)) throw numeric_error("zero initial state");
    for (auto& a : psi) a /= norm0;

    double t_cur = 0.0;
    size_t k = 1;
    const double min_step = 1e-12 * std::max(1.0, grid.back());
    while (k < grid.size()) {
        auto fac = detail::lanczos_factorize(ham, psi, m);
        std::vector<R> off(fac.beta.begin(), fac.beta.end() - 1);
        auto teig = tridiagonal_eigen<R>(fac.alpha, off);
        const double residual = O::to_double(fac.beta.back());

        double span = std::min(opts.dt_max, grid.back() - t_cur);
        // largest grid index we can land on within the span
        auto land_index = [&](double s) {
            size_t last = k - 1;
            for (size_t j = k; j < grid.size() && grid.t[j] <= t_cur + s + 1e-15; ++j) last = j;
            return last;
        };
        double err = 0.0;
        for (;;) {
            size_t land = land_index(span);
            if (land >= k) span = grid.t[land] - t_cur;  // land exactly on a grid point
            if (fac.invariant) break;
            auto y = detail::subspace_exp(teig, O::from_double(span));
            err = residual * O::to_double(complex_abs(y.back()));
            if (err <= opts.tol) break;
            span /= 2;
            if (span < min_step)
                throw numeric_error(
                    "krylov propagation does not converge at dt_max: increase the subspace "
                    "dimension m or decrease dt_max");
        }
        report.max_error_estimate = std::max(report.max_error_estimate, err);
        report.min_step = std::min(report.min_step, span);
        ++report.steps;

        const size_t land = land_index(span);
        StateVector<R> endpoint(psi.size());
        auto reconstruct = [&](double s, StateVector<R>& out) {
            auto y = detail::subspace_exp(teig, O::from_double(s));
            std::fill(out.begin(), out.end(), std::complex<R>(R(0), R(0)));
            for (int i = 0; i < fac.rank; ++i) {
                const std::complex<R> coef = y[size_t(i)] * norm0;
                const StateVector<R>& v = fac.basis[size_t(i)];
                for (size_t x = 0; x < out.size(); ++x) out[x] += coef * v[x];
            }
        };
        if (land >= k) {
            StateVector<R> emitted(psi.size());
            for (size_t j = k; j <= land; ++j) {
                reconstruct(grid.t[j] - t_cur, emitted);
                fn(j, emitted);
                if (j == land) endpoint = emitted;
            }
            k = land + 1;
            t_cur = grid.t[land];
        } else {
            reconstruct(span, endpoint);
            t_cur += span;
        }
        const R nrm = state_norm<R>(endpoint);
        report.max_norm_drift =
            std::max(report.max_norm_drift, std::fabs(O::to_double(nrm) - 1.0));
        for (auto& a : endpoint) a /= nrm;
        psi = std::move(endpoint);
    }
    return report;
}

template <class R>
std::pair<std::vector<StateVector<R>>, KrylovReport> evolve_krylov(
    const SpinHamiltonian<R>& ham, const StateVector<R>& psi0, const TimeGrid& grid,
    const KrylovOptions& opts = {}) {
    std::vector<StateVector<R>> states(grid.size());
    KrylovReport report = evolve_krylov_observe(
        ham, psi0, grid, opts, [&](size_t j, const StateVector<R>& s) { states[j] = s; });
    return {std::move(states), report};
}

// Dense below the cap, Krylov above; the cap is policy, not physics.
template <class R, class Fn>
void propagate_observe(const SpinHamiltonian<R>& ham, const StateVector<R>& psi0,
                       const TimeGrid& grid, const SolveOptions& opts, Fn&& fn) {
    if (ham.n_sites > opts.site_cap)
        throw resource_error("cluster of " + std::to_string(ham.n_sites) +
                             " sites exceeds the configured cap of " +
                             std::to_string(opts.site_cap));
    if (ham.n_sites <= opts.dense_cap) {
        auto states = evolve_dense(ham, psi0, grid);
        for (size_t j = 0; j < states.size(); ++j) fn(j, states[j]);
    } else {
        evolve_krylov_observe(ham, psi0, grid, opts.krylov, fn);
    }
}

}  // namespace nlce
