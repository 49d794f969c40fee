#include "ell/mirror.hpp"

namespace ell {

Rational pochhammer(const Rational& x, int k) {
    if (k < 0) throw std::invalid_argument("negative Pochhammer length");
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= x + Rational(i);
    return r;
}

HSeries hypergeom(const Rational& a, const Rational& b, const Rational& c, int order, std::string variable) {
    if (order < 0) throw std::invalid_argument("negative order");
    HSeries h{a, b, c, std::move(variable), {}};
    h.coeffs.reserve(order + 1);
    Rational t(1);
    h.coeffs.push_back(t);
    for (int k = 0; k < order; ++k) {
        Rational den = (c + Rational(k)) * Rational(k + 1);
        if (den.is_zero()) throw PoleInC("c is a non-positive integer within the truncation order");
        t = t * (a + Rational(k)) * (b + Rational(k)) / den;
        h.coeffs.push_back(t);
    }
    return h;
}

Rational hypergeom_terminating_at_one(int k, const Rational& b, const Rational& c) {
    if (k < 0) throw std::invalid_argument("negative k");
    Rational sum;
    for (const auto& t : hypergeom(Rational(-k), b, c, k).coeffs) sum += t;
    return sum;
}

std::vector<Rational> pi_a_expansion(int order) {
    if (order < 0) throw std::invalid_argument("negative order");
    // -sigma^{-1} 2F1(1/3, 2/3; 1; w), w = -27 sigma^{-3}
    HSeries h = hypergeom(Rational(1, 3), Rational(2, 3), Rational(1), order / 3 + 1, "w");
    std::vector<Rational> a(order + 1);
    Rational w(1);
    for (int k = 0; 3 * k + 1 <= order; ++k) {
        a[3 * k + 1] = -h.coeffs[k] * w;
        w *= Rational(-27);
    }
    return a;
}

std::vector<Rational> picard_fuchs_apply(const std::vector<Rational>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<Rational> r(n);
    for (int M = 0; M < n; ++M) {
        // sigma^3 u'' + 3 sigma^2 u' + sigma u shifts sigma^{-M} to sigma^{1-M} with weight (M-1)^2;
        // 27 u'' sends sigma^{-(M-3)} there with weight 27 (M-3)(M-2)
        r[M] = Rational((M - 1) * (M - 1)) * a[M];
        if (M >= 3) r[M] += Rational(27 * (M - 3) * (M - 2)) * a[M - 3];
    }
    return r;
}

std::vector<Rational> pf_residual(int order) {
    if (order < 2) throw std::invalid_argument("order must be at least 2");
    return picard_fuchs_apply(pi_a_expansion(order));
}

namespace {

struct Expected {
    const char* name;
    std::vector<const char*> labels;
    std::vector<Rational> pinned;  // d = 0..size-1
};

std::vector<Expected> expectations(TheoryId t) {
    using R = Rational;
    switch (t) {
        case TheoryId::GW_P333:
            return {{"x1y1z1", {"Dx1", "Dy1", "Dz1"}, {0, 1}}, {"x1x1x1", {"Dx1", "Dx1", "Dx1"}, {R(1, 3)}}};
        case TheoryId::GW_P442:
            return {{"x1y1z1", {"Dx1", "Dy1", "Dz1"}, {0, 1, 0, 0, 0, 2}},
                    {"x2x1x1", {"Dx2", "Dx1", "Dx1"}, {R(1, 4), 0, 0, 0, 1}}};
        case TheoryId::GW_P632:
            return {{"x1y1z1", {"Dx1", "Dy1", "Dz1"}, {0, 1, 0, 0, 0, 0, 0, 2}},
                    {"y1y1y1", {"Dy1", "Dy1", "Dy1"}, {R(1, 3), 0, 0, 0, 0, 0, 2}},
                    {"x4x1x1", {"Dx4", "Dx1", "Dx1"}, {R(1, 6), 0, 0, 0, 0, 0, 1}},
                    {"y2y1y1", {"Dy2", "Dy1", "Dy1"}, {}}};
        default: return {};
    }
}

}  // namespace

GoldenReport golden_check(Engine& engine, int D) {
    if (D < 0) throw std::invalid_argument("negative truncation");
    const Theory& th = engine.theory();
    GoldenReport rep{th.id, D, {}, true};
    for (const auto& ex : expectations(th.id)) {
        SeriesCheck s;
        s.name = ex.name;
        std::vector<int> ins;
        for (auto l : ex.labels) ins.push_back(th.space.find(l));
        s.key = make_key(ins, 0);
        QSeries q = engine.three_point_series(ins[0], ins[1], ins[2], D);
        for (int d = 0; d <= D; ++d) s.computed.push_back(q.coeff(d));
        for (int d = 0; d < static_cast<int>(ex.pinned.size()) && d <= D; ++d) {
            s.pinned[d] = ex.pinned[d];
            if (s.computed[d] != ex.pinned[d]) s.pass = false;
        }
        if (ex.pinned.empty()) {
            s.pass = !selection_ok(th, ins);
            for (const auto& c : s.computed)
                if (!c.is_zero()) s.pass = false;
            s.note = "degree sum differs from 1: identically zero";
        } else if (static_cast<int>(ex.pinned.size()) > D + 1) {
            s.note = "truncated below the pinned range";
        }
        rep.pass = rep.pass && s.pass;
        rep.series.push_back(std::move(s));
    }
    return rep;
}

}  // namespace ell
