#include "ell/statespace.hpp"

#include <map>

namespace ell {

bool is_gw(TheoryId t) {
    return t == TheoryId::GW_P333 || t == TheoryId::GW_P442 || t == TheoryId::GW_P632;
}

std::string theory_name(TheoryId t) {
    switch (t) {
        case TheoryId::GW_P333: return "gw:p333";
        case TheoryId::GW_P442: return "gw:p442";
        case TheoryId::GW_P632: return "gw:p632";
        case TheoryId::FJRW_P8: return "fjrw:p8";
        case TheoryId::FJRW_X9T: return "fjrw:x9t";
        case TheoryId::FJRW_J10T: return "fjrw:j10t";
    }
    return "?";
}

std::optional<TheoryId> parse_theory(std::string_view name) {
    for (auto t : kAllTheories)
        if (theory_name(t) == name) return t;
    return std::nullopt;
}

int StateSpace::find(std::string_view label) const {
    for (const auto& e : elements)
        if (e.label == label) return e.id;
    return -1;
}

std::vector<std::pair<int, Rational>> StateSpace::dual(int a) const {
    std::vector<std::pair<int, Rational>> out;
    for (int b = 0; b < dim(); ++b)
        if (!pairing_inverse[a][b].is_zero()) out.emplace_back(b, pairing_inverse[a][b]);
    return out;
}

Matrix invert(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix a = m, inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular pairing");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rational s = a[c][c].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

namespace {

void finish(StateSpace& s) {
    s.pairing_inverse = invert(s.pairing);
    for (const auto& e : s.elements) {
        if (e.degree.is_zero()) s.unit_id = e.id;
        if (e.degree == Rational(1)) s.top_id = e.id;
    }
}

char support_char(Support s) {
    switch (s) {
        case Support::X: return 'x';
        case Support::Y: return 'y';
        case Support::Z: return 'z';
        default: return '0';
    }
}

}  // namespace

StateSpace build_gw_space(int p, int q, int r) {
    TheoryId t;
    if (p == 3 && q == 3 && r == 3)
        t = TheoryId::GW_P333;
    else if (p == 4 && q == 4 && r == 2)
        t = TheoryId::GW_P442;
    else if (p == 6 && q == 3 && r == 2)
        t = TheoryId::GW_P632;
    else
        throw UnsupportedTarget("orbifold weights not supported");

    StateSpace s{t, {}, {}, {}, 0, 0};
    auto add = [&](std::string label, Support sup, int idx, Rational deg, int order) {
        BasisElement e;
        e.id = static_cast<int>(s.elements.size());
        e.label = std::move(label);
        e.support = sup;
        e.twist_index = idx;
        e.degree = deg;
        e.order = order;
        e.primitive = sup != Support::Untwisted && idx == 1;
        s.elements.push_back(e);
    };
    add("1", Support::Untwisted, 0, 0, 1);
    const std::array<std::pair<Support, int>, 3> pts = {{{Support::X, p}, {Support::Y, q}, {Support::Z, r}}};
    for (auto [sup, ord] : pts)
        for (int i = 1; i < ord; ++i)
            add(std::string("D") + support_char(sup) + std::to_string(i), sup, i, Rational(i, ord), ord);
    add("P", Support::Untwisted, 0, 1, 1);

    const int n = s.dim();
    s.pairing.assign(n, std::vector<Rational>(n));
    for (const auto& a : s.elements)
        for (const auto& b : s.elements) {
            if (a.support != b.support) continue;
            if (a.support == Support::Untwisted) {
                if (a.degree + b.degree == Rational(1)) s.pairing[a.id][b.id] = 1;
            } else if (a.twist_index + b.twist_index == a.order) {
                s.pairing[a.id][b.id] = Rational(1, a.order);
            }
        }
    finish(s);
    return s;
}

Rational fjrw_degree_from_theta(const Theta& theta) {
    Rational deg;
    for (const auto& th : theta) {
        if (th.is_zero()) deg += Rational(1, 2);
        deg += th - Rational(1, 3);
    }
    return deg;
}

namespace {

struct Row {
    const char* label;
    std::array<std::pair<long, long>, 3> theta;
    std::pair<long, long> deg;
    int power;
};

StateSpace from_rows(TheoryId t, const std::vector<Row>& rows) {
    StateSpace s{t, {}, {}, {}, 0, 0};
    for (const auto& row : rows) {
        BasisElement e;
        e.id = static_cast<int>(s.elements.size());
        e.label = row.label;
        e.twist_index = row.power;
        for (int i = 0; i < 3; ++i) e.theta[i] = Rational(row.theta[i].first, row.theta[i].second);
        e.degree = Rational(row.deg.first, row.deg.second);
        e.broad = e.theta[0].is_zero() || e.theta[1].is_zero() || e.theta[2].is_zero();
        s.elements.push_back(e);
    }
    s.pairing.assign(s.dim(), std::vector<Rational>(s.dim()));
    return s;
}

}  // namespace

StateSpace build_fjrw_space(TheoryId singularity) {
    StateSpace s;
    auto set_pair = [&](const char* a, const char* b, Rational v) {
        int i = s.find(a), j = s.find(b);
        s.pairing[i][j] = v;
        s.pairing[j][i] = v;
    };
    switch (singularity) {
        case TheoryId::FJRW_P8: {
            s = from_rows(singularity, {
                {"e_J", {{{1, 3}, {1, 3}, {1, 3}}}, {0, 1}, 0},
                {"e_x", {{{2, 3}, {1, 3}, {1, 3}}}, {1, 3}, 1},
                {"e_y", {{{1, 3}, {2, 3}, {1, 3}}}, {1, 3}, 1},
                {"e_z", {{{1, 3}, {1, 3}, {2, 3}}}, {1, 3}, 1},
                {"e_xy", {{{2, 3}, {2, 3}, {1, 3}}}, {2, 3}, 2},
                {"e_xz", {{{2, 3}, {1, 3}, {2, 3}}}, {2, 3}, 2},
                {"e_yz", {{{1, 3}, {2, 3}, {2, 3}}}, {2, 3}, 2},
                {"e_xyz", {{{2, 3}, {2, 3}, {2, 3}}}, {1, 1}, 3},
            });
            set_pair("e_J", "e_xyz", 1);
            set_pair("e_x", "e_yz", 1);
            set_pair("e_y", "e_xz", 1);
            set_pair("e_z", "e_xy", 1);
            break;
        }
        case TheoryId::FJRW_X9T: {
            s = from_rows(singularity, {
                {"e1", {{{5, 6}, {1, 3}, {1, 12}}}, {1, 4}, 1},
                {"e2", {{{2, 3}, {2, 3}, {1, 6}}}, {1, 2}, 2},
                {"e4", {{{1, 3}, {1, 3}, {1, 3}}}, {0, 1}, 4},
                {"e5", {{{1, 6}, {2, 3}, {5, 12}}}, {1, 4}, 5},
                {"xe0", {{{0, 1}, {0, 1}, {1, 2}}}, {1, 2}, 6},
                {"e7", {{{5, 6}, {1, 3}, {7, 12}}}, {3, 4}, 7},
                {"e8", {{{2, 3}, {2, 3}, {2, 3}}}, {1, 1}, 8},
                {"e10", {{{1, 3}, {1, 3}, {5, 6}}}, {1, 2}, 10},
                {"e11", {{{1, 6}, {2, 3}, {11, 12}}}, {3, 4}, 11},
            });
            set_pair("e1", "e11", 1);
            set_pair("e2", "e10", 1);
            set_pair("e4", "e8", 1);
            set_pair("e5", "e7", 1);
            set_pair("xe0", "xe0", Rational(-1, 2));
            break;
        }
        case TheoryId::FJRW_J10T: {
            s = from_rows(singularity, {
                {"ze0", {{{0, 1}, {1, 3}, {0, 1}}}, {1, 3}, 0},
                {"e1", {{{2, 3}, {1, 3}, {1, 6}}}, {1, 6}, 1},
                {"e2", {{{1, 3}, {1, 3}, {1, 3}}}, {0, 1}, 2},
                {"e4", {{{2, 3}, {1, 3}, {2, 3}}}, {2, 3}, 4},
                {"e5", {{{1, 3}, {1, 3}, {5, 6}}}, {1, 2}, 5},
                {"ze6", {{{0, 1}, {2, 3}, {0, 1}}}, {2, 3}, 6},
                {"e7", {{{2, 3}, {2, 3}, {1, 6}}}, {1, 2}, 7},
                {"e8", {{{1, 3}, {2, 3}, {1, 3}}}, {1, 3}, 8},
                {"e10", {{{2, 3}, {2, 3}, {2, 3}}}, {1, 1}, 10},
                {"e11", {{{1, 3}, {2, 3}, {5, 6}}}, {5, 6}, 11},
            });
            set_pair("e1", "e11", 1);
            set_pair("e2", "e10", 1);
            set_pair("e4", "e8", 1);
            set_pair("e5", "e7", 1);
            set_pair("ze0", "ze6", Rational(-1, 2));
            break;
        }
        default:
            throw UnsupportedTarget("not an FJRW target");
    }
    finish(s);
    return s;
}

}  // namespace ell
