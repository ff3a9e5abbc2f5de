#pragma once

// Real-scalar abstraction. Production runs use double; long double and
// __float128 are for short-time correlation tails whose cancellations fall
// below the double noise floor.

#include <cmath>
#include <complex>
#include <quadmath.h>

namespace nlce {

template <class R>
struct real_ops;

template <>
struct real_ops<double> {
    static double cos(double x) { return std::cos(x); }
    static double sin(double x) { return std::sin(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double abs(double x) { return std::fabs(x); }
    static double log(double x) { return std::log(x); }
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static constexpr double epsilon() { return 2.2204460492503131e-16; }
    static constexpr const char* name() { return "double"; }
};

template <>
struct real_ops<long double> {
    static long double cos(long double x) { return std::cos(x); }
    static long double sin(long double x) { return std::sin(x); }
    static long double sqrt(long double x) { return std::sqrt(x); }
    static long double abs(long double x) { return std::fabs(x); }
    static long double log(long double x) { return std::log(x); }
    static long double from_double(double x) { return x; }
    static double to_double(long double x) { return double(x); }
    static constexpr long double epsilon() { return 1.0842021724855044e-19L; }
    static constexpr const char* name() { return "long-double"; }
};

template <>
struct real_ops<__float128> {
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static __float128 log(__float128 x) { return logq(x); }
    static __float128 from_double(double x) { return x; }
    static double to_double(__float128 x) { return double(x); }
    static __float128 epsilon() { return FLT128_EPSILON; }
    static constexpr const char* name() { return "quad"; }
};

template <class R>
R complex_abs(const std::complex<R>& z) {
    return real_ops<R>::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

// e^{i phase}
template <class R>
std::complex<R> unit_phase(R phase) {
    return {real_ops<R>::cos(phase), real_ops<R>::sin(phase)};
}

}  // namespace nlce
