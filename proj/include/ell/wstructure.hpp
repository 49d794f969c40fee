#pragma once

#include "ell/statespace.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace ell {

struct GroupElement {
    Theta theta{};
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    GroupElement inverse() const;
    std::string str() const;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

// all elements of the maximal diagonal symmetry group of the singularity
std::vector<GroupElement> max_group(TheoryId singularity);
bool in_group(TheoryId singularity, const GroupElement& g);
GroupElement sector_element(const BasisElement& e);

inline const std::array<Rational, 3> kWeights = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};

std::array<Rational, 3> line_bundle_degrees(int genus, const std::vector<GroupElement>& decorations);
bool integral(const std::array<Rational, 3>& degrees);

struct DecoratedGraph {
    std::array<int, 2> left{};   // leg slots at the first vertex
    std::array<int, 2> right{};  // leg slots at the second vertex
    GroupElement edge;           // half-edge decoration on the first vertex
    int multiplicity = 1;
};

std::vector<DecoratedGraph> enumerate_boundary_graphs(TheoryId singularity,
                                                      const std::array<GroupElement, 4>& legs);

struct NotConcave : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BroadInsertion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GrrStatus { Evaluated, EmptyModuli };

struct GrrResult {
    Rational value;
    GrrStatus status = GrrStatus::Evaluated;
    std::vector<int> active;  // coordinates with a rank-one obstruction bundle
};

// Concave genus-0 four-point value; element ids refer to the singularity's state space.
GrrResult grr_four_point(TheoryId singularity, const std::array<int, 4>& ids);

// Same formula summed over every coordinate (inactive ones are expected to add zero).
Rational grr_four_point_all_coordinates(TheoryId singularity, const std::array<int, 4>& ids);

}  // namespace ell
