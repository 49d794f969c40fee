#pragma once

#include "ell/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ell {

enum class TheoryId { GW_P333, GW_P442, GW_P632, FJRW_P8, FJRW_X9T, FJRW_J10T };

inline constexpr std::array<TheoryId, 6> kAllTheories = {
    TheoryId::GW_P333, TheoryId::GW_P442, TheoryId::GW_P632,
    TheoryId::FJRW_P8, TheoryId::FJRW_X9T, TheoryId::FJRW_J10T};

bool is_gw(TheoryId t);
std::string theory_name(TheoryId t);          // "gw:p333", "fjrw:x9t", ...
std::optional<TheoryId> parse_theory(std::string_view name);

enum class Support { Untwisted, X, Y, Z };

struct UnsupportedTarget : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Theta = std::array<Rational, 3>;

struct BasisElement {
    int id = 0;
    std::string label;
    Support support = Support::Untwisted;
    int twist_index = 0;
    Rational degree;
    int order = 1;       // isotropy order |alpha| (GW); 1 for FJRW
    Theta theta{};       // FJRW sector phases
    bool broad = false;
    bool primitive = false;
};

using Matrix = std::vector<std::vector<Rational>>;

struct StateSpace {
    TheoryId theory;
    std::vector<BasisElement> elements;
    Matrix pairing;
    Matrix pairing_inverse;
    int unit_id = 0;
    int top_id = 0;

    int dim() const { return static_cast<int>(elements.size()); }
    const BasisElement& operator[](int id) const { return elements.at(id); }
    int find(std::string_view label) const;  // -1 when absent
    const Rational& eta(int a, int b) const { return pairing[a][b]; }
    const Rational& eta_inv(int a, int b) const { return pairing_inverse[a][b]; }
    // nonzero entries of the inverse pairing in row a
    std::vector<std::pair<int, Rational>> dual(int a) const;
};

StateSpace build_gw_space(int p, int q, int r);
StateSpace build_fjrw_space(TheoryId singularity);

// complex degree recomputed from the sector phases (FJRW): #fixed/2 + sum(theta - 1/3)
Rational fjrw_degree_from_theta(const Theta& theta);

Matrix invert(const Matrix& m);

}  // namespace ell
