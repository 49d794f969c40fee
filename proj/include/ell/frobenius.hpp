#pragma once

#include "ell/statespace.hpp"

#include <vector>

namespace ell {

enum class BroadSign { Plus, Minus };

using SparseVec = std::vector<std::pair<int, Rational>>;

struct ProductTable {
    TheoryId theory;
    int dim = 0;
    std::vector<Rational> three;  // dense dim^3, symmetric
    std::vector<SparseVec> prod;  // dim^2

    const Rational& three_point(int a, int b, int c) const { return three[(a * dim + b) * dim + c]; }
    const SparseVec& product(int a, int b) const { return prod[a * dim + b]; }
};

Rational cr_three_point(const StateSpace& space, int a, int b, int c);
Rational fjrw_three_point(const StateSpace& space, int a, int b, int c, BroadSign sign = BroadSign::Plus);

ProductTable build_product_table(const StateSpace& space, BroadSign sign = BroadSign::Plus);
bool is_primitive(const StateSpace& space, const ProductTable& ring, int a);

// State space plus ring, with primitive flags filled in.
struct Theory {
    TheoryId id;
    BroadSign sign;
    StateSpace space;
    ProductTable ring;

    bool gw() const { return is_gw(id); }
    int dim() const { return space.dim(); }
    const BasisElement& el(int i) const { return space[i]; }
    int unit() const { return space.unit_id; }
    int top() const { return space.top_id; }
};

const Theory& get_theory(TheoryId id, BroadSign sign = BroadSign::Plus);

}  // namespace ell
