#pragma once
#include "ell/recon1.hpp"
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace ell {

// chi = 2g - 2 + n
inline int euler_char(int g, int n) { return 2 * g - 2 + n; }

struct GrowthCaps {
    int n_max = 0;   // genus-zero markings (FJRW: K)
    int d_max = 0;   // GW degree
    int g1_max = 0;  // genus one: markings (FJRW) or degree (GW); 0 skips genus one
};

// one inequality instance: value <= factor * C^exponent
struct GrowthBound {
    int g = 0, n = 0, d = 0;
    Rational value;
    Rational factor;
    int exponent = 0;
    std::string text;
};

struct GrowthReport {
    TheoryId theory;
    std::map<std::tuple<int, int, int>, Rational> table;  // (g, n, d) -> I
    std::vector<GrowthBound> bounds;
    Rational small_constant;  // max of the entries bounded by a fixed constant (I_{0,K<=4})
    Rational fitted_C{1};
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

// I_{g,n,d}: maximum |correlator| over basis insertion multisets
Rational max_abs_genus0(Engine& e, int n, int d);
Rational max_abs_genus1(GenusOne& g1, int n, int d);

// the engines' caps must cover the requested table
GrowthReport growth_table(Engine& e, GenusOne* g1, const GrowthCaps& caps);

// smallest dyadic C >= 1 (to 2^-bits) satisfying every bound with a positive exponent
Rational fit_constant(const std::vector<GrowthBound>& bounds, int bits = 20);
bool bound_holds(const GrowthBound& b, const Rational& C);

struct InequalityRow {
    std::string name;
    int parameter = 0;
    Rational lhs, rhs;
    bool ok = true;
};
struct InequalityReport {
    std::vector<InequalityRow> rows;
    bool pass = true;
};

// sum_{i=1}^{d-1} i^-2 (d-i)^-2 <= 6 d^-2 for d <= d_max, and
// sum_{i=2}^{k-2} k(k-1)/(i(i-1)(k-i)(k-i-1)) <= 9/2 for 4 <= k <= k_max
InequalityReport inequality_checks(int d_max, int k_max);
Rational minus_square_sum(int d);
Rational binomial_ratio_sum(int k);

}  // namespace ell
