#pragma once

#include "ell/correlator.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace ell {

struct Underdetermined : std::runtime_error {
    std::vector<Key> free;
    Underdetermined(std::string msg, std::vector<Key> f) : std::runtime_error(std::move(msg)), free(std::move(f)) {}
};

struct Inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverStats {
    std::size_t unknowns = 0;
    std::size_t relations = 0;
    int rounds = 0;
};

struct SolverResult {
    std::map<Key, Rational> values;  // core keys within the requested caps
    SolverStats stats;
};

// Brute-force oracle: every WDVV instance with at most max(n_max, 5)+1 markings and degree
// at most d_max+headroom, solved by repeated exact elimination.
SolverResult solve_system(const Theory& th, int n_max, int d_max, int headroom = 1);
SolverResult solve_system(const Theory& th, int n_max, int d_max, const std::vector<SeedEntry>& seed_set,
                          int headroom = 1);

}  // namespace ell
