#pragma once
#include "ell/recon0.hpp"
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ell {

struct PoleInC : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// truncated 2F1(a,b;c;z)
struct HSeries {
    Rational a, b, c;
    std::string variable = "z";
    std::vector<Rational> coeffs;
};

Rational pochhammer(const Rational& x, int k);
HSeries hypergeom(const Rational& a, const Rational& b, const Rational& c, int order, std::string variable = "z");
// 2F1(-k, b; c; 1), a finite sum
Rational hypergeom_terminating_at_one(int k, const Rational& b, const Rational& c);

// coefficients of pi_A in powers of 1/sigma, index m <-> sigma^{-m}, m = 0..order
std::vector<Rational> pi_a_expansion(int order);
// (sigma^3+27)u'' + 3 sigma^2 u' + sigma u for u = sum a[m] sigma^{-m};
// entry M is the coefficient of sigma^{1-M}, exact for M < a.size()
std::vector<Rational> picard_fuchs_apply(const std::vector<Rational>& a);
std::vector<Rational> pf_residual(int order);

struct SeriesCheck {
    std::string name;
    Key key;
    std::map<int, Rational> pinned;  // coefficients fixed by the B-model expansion
    std::vector<Rational> computed;  // d = 0..D
    bool pass = true;
    std::string note;
};

struct GoldenReport {
    TheoryId theory;
    int D = 0;
    std::vector<SeriesCheck> series;
    bool pass = true;
};

// compares three-point q-series against the mirror expansions; the engine caps bound D
GoldenReport golden_check(Engine& engine, int D);

}  // namespace ell
