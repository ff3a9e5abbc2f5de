#pragma once

// Real-symmetric eigensolvers. double goes through LAPACK (dsyevd/dstevd);
// other scalars use a cyclic Jacobi solver, which also serves as an
// independent cross-check of the LAPACK path in the tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include <lapacke.h>

#include "nlce/errors.hpp"
#include "nlce/scalar.hpp"

namespace nlce {

template <class R>
struct SymmetricEigen {
    size_t n = 0;
    std::vector<R> values;   // ascending
    std::vector<R> vectors;  // row-major: vectors[i*n + k] = component i of eigenvector k
};

template <class R>
SymmetricEigen<R> jacobi_eigen(std::vector<R> a, size_t n) {
    using O = real_ops<R>;
    SymmetricEigen<R> out;
    out.n = n;
    out.vectors.assign(n * n, R(0));
    for (size_t i = 0; i < n; ++i) out.vectors[i * n + i] = R(1);

    R scale(0);
    for (size_t i = 0; i < n * n; ++i) scale += a[i] * a[i];
    const R tol = O::sqrt(scale) * O::epsilon();

    for (int sweep = 0; sweep < 100; ++sweep) {
        R off(0);
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (!(O::sqrt(off) > tol)) break;
        if (sweep == 99) throw numeric_error("jacobi eigensolver failed to converge");
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                const R apq = a[p * n + q];
                if (O::abs(apq) == R(0)) continue;
                const R theta = (a[q * n + q] - a[p * n + p]) / (R(2) * apq);
                R t;
                if (O::abs(theta) == R(0)) {
                    t = R(1);
                } else {
                    const R denom = O::abs(theta) + O::sqrt(theta * theta + R(1));
                    t = (theta > R(0) ? R(1) : R(-1)) / denom;
                }
                const R c = R(1) / O::sqrt(t * t + R(1));
                const R s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = R(0);
                a[q * n + p] = R(0);
                for (size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const R akp = a[k * n + p];
                    const R akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                for (size_t k = 0; k < n; ++k) {
                    const R vkp = out.vectors[k * n + p];
                    const R vkq = out.vectors[k * n + q];
                    out.vectors[k * n + p] = c * vkp - s * vkq;
                    out.vectors[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    out.values.resize(n);
    for (size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return out.values[x] < out.values[y]; });
    SymmetricEigen<R> sorted;
    sorted.n = n;
    sorted.values.resize(n);
    sorted.vectors.resize(n * n);
    for (size_t k = 0; k < n; ++k) {
        sorted.values[k] = out.values[order[k]];
        for (size_t i = 0; i < n; ++i) sorted.vectors[i * n + k] = out.vectors[i * n + order[k]];
    }
    return sorted;
}

template <class R>
SymmetricEigen<R> symmetric_eigen(std::vector<R> a, size_t n) {
    return jacobi_eigen(std::move(a), n);
}

template <>
inline SymmetricEigen<double> symmetric_eigen(std::vector<double> a, size_t n) {
    SymmetricEigen<double> out;
    out.n = n;
    out.values.resize(n);
    int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', lapack_int(n), a.data(),
                              lapack_int(n), out.values.data());
    if (info != 0)
        throw numeric_error("eigensolver failed (dsyevd info=" + std::to_string(info) + ")");
    out.vectors = std::move(a);
    return out;
}

template <class R>
SymmetricEigen<R> tridiagonal_eigen(std::vector<R> diag, std::vector<R> offdiag) {
    const size_t n = diag.size();
    std::vector<R> dense(n * n, R(0));
    for (size_t i = 0; i < n; ++i) dense[i * n + i] = diag[i];
    for (size_t i = 0; i + 1 < n; ++i) {
        dense[i * n + i + 1] = offdiag[i];
        dense[(i + 1) * n + i] = offdiag[i];
    }
    return jacobi_eigen(std::move(dense), n);
}

template <>
inline SymmetricEigen<double> tridiagonal_eigen(std::vector<double> diag,
                                                std::vector<double> offdiag) {
    const size_t n = diag.size();
    SymmetricEigen<double> out;
    out.n = n;
    out.vectors.assign(n * n, 0.0);
    offdiag.resize(n > 0 ? n - 1 : 0);
    int info = LAPACKE_dstevd(LAPACK_ROW_MAJOR, 'V', lapack_int(n), diag.data(), offdiag.data(),
                              out.vectors.data(), lapack_int(n));
    if (info != 0)
        throw numeric_error("eigensolver failed (dstevd info=" + std::to_string(info) + ")");
    out.values = std::move(diag);
    return out;
}

}  // namespace nlce
