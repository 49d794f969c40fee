#include "ell/wstructure.hpp"

#include "ell/frobenius.hpp"

#include <algorithm>

namespace ell {

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    GroupElement out;
    for (int i = 0; i < 3; ++i) out.theta[i] = frac(a.theta[i] + b.theta[i]);
    return out;
}

GroupElement GroupElement::inverse() const {
    GroupElement out;
    for (int i = 0; i < 3; ++i) out.theta[i] = frac(-theta[i]);
    return out;
}

std::string GroupElement::str() const {
    return "(" + theta[0].str() + "," + theta[1].str() + "," + theta[2].str() + ")";
}

std::vector<GroupElement> max_group(TheoryId t) {
    std::vector<GroupElement> g;
    switch (t) {
        case TheoryId::FJRW_P8:
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c) g.push_back({{Rational(a, 3), Rational(b, 3), Rational(c, 3)}});
            break;
        case TheoryId::FJRW_X9T:
            for (int k = 0; k < 12; ++k)
                g.push_back({{frac(Rational(10 * k, 12)), frac(Rational(4 * k, 12)), frac(Rational(k, 12))}});
            break;
        case TheoryId::FJRW_J10T:
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 6; ++j)
                    g.push_back({{frac(Rational(2 * j, 3)), Rational(i, 3), Rational(j, 6)}});
            break;
        default:
            throw UnsupportedTarget("not an FJRW target");
    }
    return g;
}

bool in_group(TheoryId t, const GroupElement& x) {
    auto g = max_group(t);
    return std::find(g.begin(), g.end(), x) != g.end();
}

GroupElement sector_element(const BasisElement& e) { return {e.theta}; }

std::array<Rational, 3> line_bundle_degrees(int genus, const std::vector<GroupElement>& decorations) {
    std::array<Rational, 3> out;
    const long chi = 2L * genus - 2 + static_cast<long>(decorations.size());
    for (int j = 0; j < 3; ++j) {
        out[j] = kWeights[j] * chi;
        for (const auto& g : decorations) out[j] -= g.theta[j];
    }
    return out;
}

bool integral(const std::array<Rational, 3>& degrees) {
    return std::all_of(degrees.begin(), degrees.end(), [](const Rational& r) { return r.is_integer(); });
}

std::vector<DecoratedGraph> enumerate_boundary_graphs(TheoryId t, const std::array<GroupElement, 4>& legs) {
    static constexpr int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<DecoratedGraph> out;
    for (const auto& s : splits) {
        GroupElement edge;
        for (int j = 0; j < 3; ++j)
            edge.theta[j] = frac(kWeights[j] - legs[s[0]].theta[j] - legs[s[1]].theta[j]);
        if (!in_group(t, edge)) continue;
        if (!integral(line_bundle_degrees(0, {legs[s[0]], legs[s[1]], edge}))) continue;
        if (!integral(line_bundle_degrees(0, {legs[s[2]], legs[s[3]], edge.inverse()}))) continue;
        out.push_back({{s[0], s[1]}, {s[2], s[3]}, edge, 1});
    }
    return out;
}

namespace {

Rational bernoulli_term(const Rational& th) { return Rational(1, 12) - Rational(1, 2) * th * (Rational(1) - th); }

Rational coordinate_sum(int l, const std::array<GroupElement, 4>& legs, const std::vector<DecoratedGraph>& graphs) {
    const Rational& q = kWeights[l];
    Rational v = q * q / 2 - q / 2 + Rational(1, 12);
    for (const auto& g : legs) v -= bernoulli_term(g.theta[l]);
    for (const auto& gr : graphs) v += gr.multiplicity * bernoulli_term(gr.edge.theta[l]);
    return v;
}

std::array<GroupElement, 4> legs_of(TheoryId t, const std::array<int, 4>& ids) {
    const auto& s = get_theory(t).space;
    std::array<GroupElement, 4> legs;
    for (int i = 0; i < 4; ++i) {
        if (s[ids[i]].broad) throw BroadInsertion("broad marking " + s[ids[i]].label);
        legs[i] = sector_element(s[ids[i]]);
    }
    return legs;
}

}  // namespace

GrrResult grr_four_point(TheoryId t, const std::array<int, 4>& ids) {
    auto legs = legs_of(t, ids);
    auto deg = line_bundle_degrees(0, {legs.begin(), legs.end()});
    GrrResult res;
    if (!integral(deg)) {
        res.status = GrrStatus::EmptyModuli;
        return res;
    }
    for (int j = 0; j < 3; ++j) {
        if (deg[j] >= 0) throw NotConcave("line bundle of nonnegative degree");
        if (deg[j] == -2) res.active.push_back(j);
        else if (deg[j] != -1) throw NotConcave("obstruction rank exceeds one");
    }
    if (res.active.size() != 1) throw NotConcave("expected a rank-one obstruction");
    auto graphs = enumerate_boundary_graphs(t, legs);
    for (int l : res.active) res.value += coordinate_sum(l, legs, graphs);
    return res;
}

Rational grr_four_point_all_coordinates(TheoryId t, const std::array<int, 4>& ids) {
    auto legs = legs_of(t, ids);
    auto graphs = enumerate_boundary_graphs(t, legs);
    Rational v;
    for (int l = 0; l < 3; ++l) v += coordinate_sum(l, legs, graphs);
    return v;
}

}  // namespace ell
