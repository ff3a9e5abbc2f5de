#pragma once

// Model parameters, initial product state and observable axes. Couplings use
// Pauli-matrix normalization (eigenvalues +-1); energies in units with hbar=1,
// times in inverse-energy units.

#include <string>

#include "nlce/errors.hpp"
#include "nlce/lattice.hpp"

namespace nlce {

enum class ModelKind { transverse_ising, xxz };

struct ModelSpec {
    ModelKind kind = ModelKind::transverse_ising;
    // transverse Ising: H = -J sum_<ij> sz_i sz_j - h sum_i sx_i
    double J = 1.0;
    double h = 0.0;
    // XXZ: H = -Jperp sum_<ij> (sx_i sx_j + sy_i sy_j) - Jz sum_<ij> sz_i sz_j
    double Jperp = 1.0;
    double Jz = 0.0;

    std::string name() const {
        return kind == ModelKind::transverse_ising ? "tfi" : "xxz";
    }
};

// Uniform product state: every site carries cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
// theta is the polar angle from +z; phi = 0 keeps the spin in the x-z plane.
struct InitialStateSpec {
    double theta = 0.0;
    double phi = 0.0;

    void validate() const {
        if (!(theta >= 0.0 && theta <= 3.14159265358979323846 + 1e-12))
            throw config_error("theta must lie in [0, pi]");
    }
};

enum class Axis { x, y, z };

inline Axis axis_from_name(const std::string& name) {
    if (name == "x") return Axis::x;
    if (name == "y") return Axis::y;
    if (name == "z") return Axis::z;
    throw config_error("unknown Pauli axis '" + name + "' (expected x, y or z)");
}

inline const char* axis_name(Axis axis) {
    switch (axis) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

}  // namespace nlce
