#include "ell/bounds.hpp"

#include <functional>

namespace ell {

namespace {

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

void multisets(int dim, int n, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == n) {
            f(cur);
            return;
        }
        for (int i = from; i < dim; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

std::string describe(int g, int n, int d, bool gw) {
    std::string s = "I_{" + std::to_string(g) + "," + std::to_string(n);
    if (gw) s += "," + std::to_string(d);
    return s + "}";
}

}  // namespace

Rational max_abs_genus0(Engine& e, int n, int d) {
    const Theory& th = e.theory();
    Rational best;
    if (!th.gw() && d != 0) return best;
    multisets(th.dim(), n, [&](const std::vector<int>& ins) {
        if (!selection_ok(th, ins)) return;
        Rational v = e.correlator(ins, d).abs();
        if (v > best) best = v;
    });
    return best;
}

Rational max_abs_genus1(GenusOne& g1, int n, int d) {
    const Theory& th = g1.theory();
    Rational best;
    multisets(th.dim(), n, [&](const std::vector<int>& ins) {
        Rational v = g1.getzler_solve({ins, d}).abs();
        if (v > best) best = v;
    });
    return best;
}

bool bound_holds(const GrowthBound& b, const Rational& C) { return b.value <= b.factor * C.pow(b.exponent); }

Rational fit_constant(const std::vector<GrowthBound>& bounds, int bits) {
    auto ok = [&](const Rational& C) {
        for (const auto& b : bounds)
            if (b.exponent > 0 && !bound_holds(b, C)) return false;
        return true;
    };
    Rational hi(1);
    if (ok(hi)) return hi;
    while (!ok(hi)) hi *= Rational(2);
    Rational lo = hi / Rational(2);
    for (int i = 0; i < bits; ++i) {
        Rational mid = (lo + hi) / Rational(2);
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

GrowthReport growth_table(Engine& e, GenusOne* g1, const GrowthCaps& caps) {
    const Theory& th = e.theory();
    const bool gw = th.gw();
    GrowthReport rep;
    rep.theory = th.id;
    auto add = [&](int g, int n, int d, const Rational& v, const Rational& factor, int exponent, const std::string& rhs) {
        rep.bounds.push_back({g, n, d, v, factor, exponent, describe(g, n, d, gw) + " <= " + rhs});
    };

    const int d_top = gw ? caps.d_max : 0;
    for (int n = 3; n <= caps.n_max; ++n)
        for (int d = 0; d <= d_top; ++d) {
            Rational v = max_abs_genus0(e, n, d);
            rep.table[{0, n, d}] = v;
            if (!gw) {
                if (n <= 4) {
                    if (v > rep.small_constant) rep.small_constant = v;
                    continue;
                }
                add(0, n, 0, v, factorial(n - 5), n - 4, "C^(K-4) (K-5)!");
            } else if (d == 0) {
                if (n == 3) add(0, 3, 0, v, Rational(1), 0, "1");
                if (n == 4) add(0, 4, 0, v, Rational(1, 4), 0, "1/4");
                if (n >= 4) add(0, n, 0, v, Rational(1), n - 4, "C^(n-4)");
            } else {
                add(0, n, d, v, Rational(d).pow(n - 5), n + d - 4, "d^(n-5) C^(n+d-4)");
            }
        }

    if (g1 != nullptr && caps.g1_max > 0) {
        if (gw) {
            for (int n = 1; n <= std::max(1, caps.n_max - 2); ++n)
                for (int d = 0; d <= caps.g1_max; ++d) {
                    Rational v = max_abs_genus1(*g1, n, d);
                    rep.table[{1, n, d}] = v;
                    if (d == 0)
                        add(1, n, 0, v, Rational(1), 0, "1");
                    else
                        add(1, n, d, v, Rational(d).pow(2 * n - 3), n + 2 * d - 2, "d^(2n-3) C^(n+2d-2)");
                }
        } else {
            for (int K = 1; K <= caps.g1_max; ++K) {
                Rational v = max_abs_genus1(*g1, K, 0);
                rep.table[{1, K, 0}] = v;
                add(1, K, 0, v, factorial(K), K, "C^K K!");
            }
        }
    }

    rep.fitted_C = fit_constant(rep.bounds);
    for (const auto& b : rep.bounds)
        if (!bound_holds(b, rep.fitted_C)) rep.violations.push_back(b.text + " fails: value " + b.value.str());
    return rep;
}

Rational minus_square_sum(int d) {
    Rational s;
    for (int i = 1; i <= d - 1; ++i) s += Rational(1) / Rational(i * i * (d - i) * (d - i));
    return s;
}

Rational binomial_ratio_sum(int k) {
    Rational s;
    for (int i = 2; i <= k - 2; ++i)
        s += Rational(static_cast<long>(k) * (k - 1)) / Rational(static_cast<long>(i) * (i - 1) * (k - i) * (k - i - 1));
    return s;
}

InequalityReport inequality_checks(int d_max, int k_max) {
    InequalityReport rep;
    for (int d = 1; d <= d_max; ++d) {
        InequalityRow r{"minus-square", d, minus_square_sum(d), Rational(6) / Rational(d * d), true};
        r.ok = r.lhs <= r.rhs;
        rep.pass = rep.pass && r.ok;
        rep.rows.push_back(r);
    }
    for (int k = 4; k <= k_max; ++k) {
        InequalityRow r{"binomial-ratio", k, binomial_ratio_sum(k), Rational(9, 2), true};
        // the factored form used to bound it
        Rational alt;
        for (int i = 2; i <= k - 2; ++i)
            alt += (Rational(1) / Rational(i - 1) + Rational(1) / Rational(k - i)) *
                   (Rational(1) / Rational(i) + Rational(1) / Rational(k - i - 1));
        alt *= Rational(k) / Rational(k - 1);
        r.ok = r.lhs <= r.rhs && r.lhs == alt;
        rep.pass = rep.pass && r.ok;
        rep.rows.push_back(r);
    }
    return rep;
}

}  // namespace ell
