#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pathlaw {

struct NelderMeadOptions {
    double initial_step = 0.1;
    // Stop when the spread of objective values across the simplex is below
    // value_tol * (|best| + 1e-300) and every vertex lies within x_tol of the
    // best one (max-norm).
    double value_tol = 1e-10;
    double x_tol = 1e-8;
    std::size_t max_iterations = 10000;
    // Fresh simplices started from the incumbent after convergence; stops
    // early once a restart fails to improve.
    std::size_t max_restarts = 4;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

// Minimises `objective`. Non-finite values are treated as +infinity.
// Deterministic: no randomness, fixed vertex ordering on ties.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

} // namespace pathlaw
