#pragma once

// Spin-1/2 Hamiltonians on clusters in matrix-free form. Basis convention
// (part of the public contract): bit k of a basis index is the z-projection
// of site k (0 = up, 1 = down), site k being the k-th entry of the cluster's
// sorted site list. Both models are real symmetric in this basis.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nlce/errors.hpp"
#include "nlce/lattice.hpp"
#include "nlce/model.hpp"
#include "nlce/scalar.hpp"

namespace nlce {

template <class R>
struct SpinHamiltonian {
    int n_sites = 0;
    std::vector<R> diag;                            // sigma^z sigma^z part
    std::vector<std::pair<uint32_t, R>> flips;      // coef * sigma^x_i, mask = 1<<i
    std::vector<std::pair<uint32_t, R>> exchanges;  // coef applied when the two masked bits differ

    size_t dim() const { return size_t(1) << n_sites; }

    void apply(const std::complex<R>* in, std::complex<R>* out) const {
        const size_t n = dim();
        for (size_t b = 0; b < n; ++b) out[b] = diag[b] * in[b];
        for (const auto& [mask, coef] : flips)
            for (size_t b = 0; b < n; ++b) out[b] += coef * in[b ^ mask];
        for (const auto& [mask, coef] : exchanges) {
            const uint32_t low = mask & (~mask + 1);
            const uint32_t high = mask ^ low;
            for (size_t b = 0; b < n; ++b)
                if ((bool(b & low)) != (bool(b & high))) out[b] += coef * in[b ^ mask];
        }
    }

    std::vector<std::complex<R>> apply(const std::vector<std::complex<R>>& in) const {
        std::vector<std::complex<R>> out(in.size());
        apply(in.data(), out.data());
        return out;
    }

    // Row-major dim x dim real symmetric matrix.
    std::vector<R> to_dense() const {
        const size_t n = dim();
        std::vector<R> a(n * n, R(0));
        for (size_t b = 0; b < n; ++b) a[b * n + b] = diag[b];
        for (const auto& [mask, coef] : flips)
            for (size_t b = 0; b < n; ++b) a[(b ^ mask) * n + b] += coef;
        for (const auto& [mask, coef] : exchanges) {
            const uint32_t low = mask & (~mask + 1);
            const uint32_t high = mask ^ low;
            for (size_t b = 0; b < n; ++b)
                if ((bool(b & low)) != (bool(b & high))) a[(b ^ mask) * n + b] += coef;
        }
        return a;
    }

    // Crude upper bound on the spectral radius (diagonal max plus term coefficients).
    double norm_bound() const {
        double d = 0;
        for (const R& v : diag) d = std::max(d, std::fabs(real_ops<R>::to_double(v)));
        double offdiag = 0;
        for (const auto& [mask, coef] : flips) offdiag += std::fabs(real_ops<R>::to_double(coef));
        for (const auto& [mask, coef] : exchanges)
            offdiag += std::fabs(real_ops<R>::to_double(coef));
        return d + offdiag;
    }
};

// Core builder on an explicit bond list (site indices).
template <class R>
SpinHamiltonian<R> build_hamiltonian_on_graph(const ModelSpec& model, int n_sites,
                                              std::span<const std::pair<int, int>> bonds,
                                              int site_cap = 24) {
    if (n_sites < 1) throw error("empty cluster");
    if (n_sites > site_cap)
        throw resource_error("cluster of " + std::to_string(n_sites) +
                             " sites exceeds the configured cap of " + std::to_string(site_cap));
    SpinHamiltonian<R> ham;
    ham.n_sites = n_sites;
    const size_t dim = ham.dim();
    ham.diag.assign(dim, R(0));

    const double zz_coupling = model.kind == ModelKind::transverse_ising ? model.J : model.Jz;
    if (zz_coupling != 0.0) {
        const R coef = real_ops<R>::from_double(-zz_coupling);
        for (auto [i, j] : bonds) {
            const uint32_t mi = 1u << i, mj = 1u << j;
            for (size_t b = 0; b < dim; ++b) {
                const int zi = (b & mi) ? -1 : 1;
                const int zj = (b & mj) ? -1 : 1;
                ham.diag[b] += coef * R(zi * zj);
            }
        }
    }
    if (model.kind == ModelKind::transverse_ising) {
        if (model.h != 0.0)
            for (int i = 0; i < n_sites; ++i)
                ham.flips.emplace_back(1u << i, real_ops<R>::from_double(-model.h));
    } else {
        // sigma^x sigma^x + sigma^y sigma^y acts as twice the flip-flop
        if (model.Jperp != 0.0)
            for (auto [i, j] : bonds)
                ham.exchanges.emplace_back((1u << i) | (1u << j),
                                           real_ops<R>::from_double(-2.0 * model.Jperp));
    }
    return ham;
}

// Builder from lattice sites; bonds are all nearest-neighbor pairs inside the
// cluster (site expansion). `sites` must be sorted: it defines the basis order.
template <class R>
SpinHamiltonian<R> build_hamiltonian(const ModelSpec& model, const LatticeSpec& spec,
                                     std::span<const Site> sites, int site_cap = 24) {
    if (!std::is_sorted(sites.begin(), sites.end()))
        throw error("cluster sites must be sorted (basis convention)");
    if (!is_connected(spec, sites)) throw error("cluster sites are not connected");
    std::vector<std::pair<int, int>> bond_indices;
    for (const Bond& bond : bonds_within(spec, sites)) {
        auto ia = std::lower_bound(sites.begin(), sites.end(), bond.a) - sites.begin();
        auto ib = std::lower_bound(sites.begin(), sites.end(), bond.b) - sites.begin();
        bond_indices.emplace_back(int(ia), int(ib));
    }
    return build_hamiltonian_on_graph<R>(model, int(sites.size()), bond_indices, site_cap);
}

}  // namespace nlce
