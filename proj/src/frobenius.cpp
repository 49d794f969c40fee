#include "ell/frobenius.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace ell {

Rational cr_three_point(const StateSpace& s, int a, int b, int c) {
    const auto &A = s[a], &B = s[b], &C = s[c];
    if (a == s.unit_id) return s.eta(b, c);
    if (b == s.unit_id) return s.eta(a, c);
    if (c == s.unit_id) return s.eta(a, b);
    if (A.support == Support::Untwisted || A.support != B.support || B.support != C.support) return 0;
    if (A.degree + B.degree + C.degree != Rational(1)) return 0;
    return Rational(1, A.order);
}

namespace {

using Triple = std::array<std::string, 3>;

struct Listed {
    Triple labels;
    Rational value;
};

std::vector<Listed> fjrw_list(TheoryId t) {
    switch (t) {
        case TheoryId::FJRW_P8: {
            std::vector<Listed> v = {{{"e_J", "e_J", "e_xyz"}, 1}, {{"e_x", "e_y", "e_z"}, 1}};
            v.push_back({{"e_J", "e_x", "e_yz"}, 1});
            v.push_back({{"e_J", "e_y", "e_xz"}, 1});
            v.push_back({{"e_J", "e_z", "e_xy"}, 1});
            return v;
        }
        case TheoryId::FJRW_X9T:
            return {{{"e4", "e1", "e11"}, 1}, {{"e4", "e2", "e10"}, 1}, {{"e4", "e4", "e8"}, 1},
                    {{"e4", "e5", "e7"}, 1}, {{"e4", "xe0", "xe0"}, Rational(-1, 2)},
                    {{"e1", "e1", "e2"}, -2}, {{"e1", "e5", "e10"}, 1}, {{"e5", "e5", "xe0"}, 1}};
        case TheoryId::FJRW_J10T:
            return {{{"e2", "ze0", "ze6"}, Rational(-1, 2)}, {{"e2", "e1", "e11"}, 1},
                    {{"e2", "e2", "e10"}, 1}, {{"e2", "e4", "e8"}, 1}, {{"e2", "e5", "e7"}, 1},
                    {{"ze6", "e1", "e1"}, 1}, {{"ze0", "e1", "e7"}, 1},
                    {{"ze0", "ze0", "e8"}, Rational(-1, 2)}, {{"e1", "e5", "e8"}, 1}};
        default:
            throw UnsupportedTarget("not an FJRW target");
    }
}

}  // namespace

Rational fjrw_three_point(const StateSpace& s, int a, int b, int c, BroadSign sign) {
    std::array<int, 3> q = {a, b, c};
    std::sort(q.begin(), q.end());
    for (const auto& row : fjrw_list(s.theory)) {
        std::array<int, 3> r = {s.find(row.labels[0]), s.find(row.labels[1]), s.find(row.labels[2])};
        std::sort(r.begin(), r.end());
        if (r != q) continue;
        int broad = s[a].broad + s[b].broad + s[c].broad;
        return (sign == BroadSign::Minus && broad % 2 == 1) ? -row.value : row.value;
    }
    return 0;
}

ProductTable build_product_table(const StateSpace& s, BroadSign sign) {
    ProductTable t;
    t.theory = s.theory;
    t.dim = s.dim();
    const int n = t.dim;
    t.three.assign(n * n * n, Rational(0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                t.three[(a * n + b) * n + c] =
                    is_gw(s.theory) ? cr_three_point(s, a, b, c) : fjrw_three_point(s, a, b, c, sign);
    t.prod.assign(n * n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<Rational> acc(n);
            for (int m = 0; m < n; ++m) {
                const Rational& c3 = t.three_point(a, b, m);
                if (c3.is_zero()) continue;
                for (const auto& [v, e] : s.dual(m)) acc[v] += c3 * e;
            }
            for (int v = 0; v < n; ++v)
                if (!acc[v].is_zero()) t.prod[a * n + b].emplace_back(v, acc[v]);
        }
    return t;
}

bool is_primitive(const StateSpace& s, const ProductTable& ring, int a) {
    if (s[a].degree.is_zero()) return false;
    for (int b = 0; b < s.dim(); ++b) {
        if (s[b].degree.is_zero()) continue;
        for (int c = 0; c < s.dim(); ++c) {
            if (s[c].degree.is_zero()) continue;
            for (const auto& [v, coef] : ring.product(b, c))
                if (v == a && !coef.is_zero()) return false;
        }
    }
    return true;
}

namespace {

Theory make(TheoryId id, BroadSign sign) {
    StateSpace s;
    switch (id) {
        case TheoryId::GW_P333: s = build_gw_space(3, 3, 3); break;
        case TheoryId::GW_P442: s = build_gw_space(4, 4, 2); break;
        case TheoryId::GW_P632: s = build_gw_space(6, 3, 2); break;
        default: s = build_fjrw_space(id); break;
    }
    ProductTable ring = build_product_table(s, sign);
    for (auto& e : s.elements) e.primitive = is_primitive(s, ring, e.id);
    return Theory{id, sign, std::move(s), std::move(ring)};
}

}  // namespace

const Theory& get_theory(TheoryId id, BroadSign sign) {
    static std::mutex mu;
    static std::map<std::pair<TheoryId, BroadSign>, std::unique_ptr<Theory>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{id, sign}];
    if (!slot) slot = std::make_unique<Theory>(make(id, sign));
    return *slot;
}

}  // namespace ell
