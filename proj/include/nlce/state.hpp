#pragma once

// State vectors over the 2^N computational basis plus Pauli expectation
// values. Expectations are accumulated pairwise over (b, b^mask) so Hermitian
// observables come out manifestly real; no imaginary part is ever formed.

#include <complex>
#include <span>
#include <vector>

#include "nlce/errors.hpp"
#include "nlce/hamiltonian.hpp"
#include "nlce/model.hpp"
#include "nlce/scalar.hpp"

namespace nlce {

template <class R>
using StateVector = std::vector<std::complex<R>>;

template <class R>
StateVector<R> product_state(const InitialStateSpec& init, int n_sites) {
    init.validate();
    if (n_sites < 1) throw error("empty cluster");
    using O = real_ops<R>;
    const R half_theta = O::from_double(init.theta) / R(2);
    const std::complex<R> up(O::cos(half_theta), R(0));
    const std::complex<R> down = unit_phase(O::from_double(init.phi)) * O::sin(half_theta);
    StateVector<R> psi(size_t(1) << n_sites);
    psi[0] = std::complex<R>(R(1), R(0));
    size_t filled = 1;
    for (int k = 0; k < n_sites; ++k) {
        for (size_t b = 0; b < filled; ++b) {
            psi[filled + b] = psi[b] * down;
            psi[b] *= up;
        }
        filled *= 2;
    }
    return psi;
}

template <class R>
R state_norm(std::span<const std::complex<R>> psi) {
    R sum(0);
    for (const auto& a : psi) sum += a.real() * a.real() + a.imag() * a.imag();
    return real_ops<R>::sqrt(sum);
}

template <class R>
void normalize(std::span<std::complex<R>> psi) {
    R n = state_norm<R>(psi);
    if (!(real_ops<R>::to_double(n) > 0)) throw numeric_error("cannot normalize zero state");
    for (auto& a : psi) a /= n;
}

template <class R>
std::complex<R> inner(std::span<const std::complex<R>> a, std::span<const std::complex<R>> b) {
    std::complex<R> sum(R(0), R(0));
    for (size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

namespace detail {

// per-site factor of the Pauli matrix element <b^mask|sigma|b>, as a function
// of the source bit
template <class R>
std::complex<R> pauli_factor(Axis axis, bool bit) {
    switch (axis) {
        case Axis::x: return {R(1), R(0)};
        case Axis::y: return bit ? std::complex<R>(R(0), R(-1)) : std::complex<R>(R(0), R(1));
        case Axis::z: return {bit ? R(-1) : R(1), R(0)};
    }
    return {R(0), R(0)};
}

}  // namespace detail

template <class R>
R expect_single(std::span<const std::complex<R>> psi, int site, Axis axis) {
    const size_t dim = psi.size();
    if (site < 0 || (size_t(1) << site) >= dim) throw error("site index out of range");
    const size_t mask = size_t(1) << site;
    R sum(0);
    if (axis == Axis::z) {
        for (size_t b = 0; b < dim; ++b) {
            R p = psi[b].real() * psi[b].real() + psi[b].imag() * psi[b].imag();
            sum += (b & mask) ? -p : p;
        }
        return sum;
    }
    for (size_t b = 0; b < dim; ++b) {
        if (b & mask) continue;  // visit each (b, b^mask) pair once
        const std::complex<R> z = std::conj(psi[b]) * psi[b | mask];
        if (axis == Axis::x)
            sum += R(2) * z.real();
        else
            sum += R(2) * z.imag();  // sigma^y
    }
    return sum;
}

template <class R>
R expect_pair(std::span<const std::complex<R>> psi, int i, int j, Axis alpha, Axis beta) {
    const size_t dim = psi.size();
    if (i < 0 || (size_t(1) << i) >= dim || j < 0 || (size_t(1) << j) >= dim)
        throw error("site index out of range");
    if (i == j) throw error("pair expectation needs two distinct sites");
    const size_t mi = alpha == Axis::z ? 0 : size_t(1) << i;
    const size_t mj = beta == Axis::z ? 0 : size_t(1) << j;
    const size_t mask = mi | mj;
    R sum(0);
    if (mask == 0) {  // z z: diagonal
        const size_t bi = size_t(1) << i, bj = size_t(1) << j;
        for (size_t b = 0; b < dim; ++b) {
            R p = psi[b].real() * psi[b].real() + psi[b].imag() * psi[b].imag();
            const int sign = ((b & bi) ? -1 : 1) * ((b & bj) ? -1 : 1);
            sum += sign > 0 ? p : -p;
        }
        return sum;
    }
    const size_t lowest = mask & (~mask + 1);
    for (size_t b = 0; b < dim; ++b) {
        if (b & lowest) continue;  // one representative per (b, b^mask) pair
        std::complex<R> elem =
            detail::pauli_factor<R>(alpha, b & (size_t(1) << i)) *
            detail::pauli_factor<R>(beta, b & (size_t(1) << j));
        // z factors are diagonal signs on the source state
        const std::complex<R> z = elem * std::conj(psi[b ^ mask]) * psi[b];
        sum += R(2) * z.real();
    }
    return sum;
}

template <class R>
R expect_energy(const SpinHamiltonian<R>& ham, std::span<const std::complex<R>> psi) {
    StateVector<R> hpsi(psi.size());
    ham.apply(psi.data(), hpsi.data());
    return inner(psi, std::span<const std::complex<R>>(hpsi)).real();
}

}  // namespace nlce
