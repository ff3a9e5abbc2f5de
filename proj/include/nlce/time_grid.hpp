#pragma once

// Strictly increasing time grid starting at 0 (units of inverse energy).

#include <vector>

#include "nlce/errors.hpp"

namespace nlce {

struct TimeGrid {
    std::vector<double> t;

    static TimeGrid uniform(double t_max, int n_points) {
        if (!(t_max > 0)) throw config_error("t_max must be positive");
        if (n_points < 2) throw config_error("time grid needs at least 2 points");
        TimeGrid grid;
        grid.t.resize(size_t(n_points));
        for (int k = 0; k < n_points; ++k)
            grid.t[size_t(k)] = t_max * double(k) / double(n_points - 1);
        grid.t.front() = 0.0;
        return grid;
    }
    static TimeGrid from_values(std::vector<double> values) {
        TimeGrid grid{std::move(values)};
        grid.validate();
        return grid;
    }
    void validate() const {
        if (t.empty()) throw config_error("time grid is empty");
        if (t.front() != 0.0) throw config_error("time grid must start at 0");
        for (size_t k = 1; k < t.size(); ++k)
            if (!(t[k] > t[k - 1])) throw config_error("time grid must be strictly increasing");
    }
    size_t size() const { return t.size(); }
    double back() const { return t.back(); }
};

}  // namespace nlce
