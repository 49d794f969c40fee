#include "ell/recon1.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ell {

namespace {

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

Rational power(int base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= Rational(base);
    return r;
}

// compositions of total into parts slots
void compositions(int total, int parts, std::vector<int>& cur, const std::function<void()>& f) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        f();
        cur.pop_back();
        return;
    }
    for (int i = 0; i <= total; ++i) {
        cur.push_back(i);
        compositions(total - i, parts, cur, f);
        cur.pop_back();
    }
}

StableGraph::Vertex vx(int genus, std::vector<int> legs) { return {genus, std::move(legs)}; }

}  // namespace

std::string stratum_name(StratumId s) {
    switch (s) {
        case StratumId::D22: return "d22";
        case StratumId::D23: return "d23";
        case StratumId::D24: return "d24";
        case StratumId::D34: return "d34";
        case StratumId::D03: return "d03";
        case StratumId::D04: return "d04";
        case StratumId::DBeta: return "dbeta";
    }
    return "?";
}

int stratum_coefficient(StratumId s) {
    switch (s) {
        case StratumId::D22: return 12;
        case StratumId::D23: return -4;
        case StratumId::D24: return -2;
        case StratumId::D34: return 6;
        case StratumId::D03: return 1;
        case StratumId::D04: return 1;
        case StratumId::DBeta: return -2;
    }
    return 0;
}

std::vector<StableGraph> stratum_graphs(StratumId s) {
    static const std::array<std::array<int, 4>, 3> pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    std::vector<StableGraph> out;
    const Rational half(1, 2);
    switch (s) {
        case StratumId::D22:
            for (const auto& p : pairings)
                out.push_back({{vx(1, {}), vx(0, {p[0], p[1]}), vx(0, {p[2], p[3]})}, {{0, 1}, {0, 2}}, Rational(1)});
            break;
        case StratumId::D23:
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (j == i) continue;
                    std::vector<int> rest;
                    for (int l = 0; l < 4; ++l)
                        if (l != i && l != j) rest.push_back(l);
                    out.push_back({{vx(1, {i}), vx(0, {j}), vx(0, rest)}, {{0, 1}, {1, 2}}, Rational(1)});
                }
            break;
        case StratumId::D24:
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    std::vector<int> rest;
                    for (int l = 0; l < 4; ++l)
                        if (l != a && l != b) rest.push_back(l);
                    out.push_back({{vx(1, {}), vx(0, rest), vx(0, {a, b})}, {{0, 1}, {1, 2}}, Rational(1)});
                }
            break;
        case StratumId::D34:
            for (int i = 0; i < 4; ++i) {
                std::vector<int> rest;
                for (int l = 0; l < 4; ++l)
                    if (l != i) rest.push_back(l);
                out.push_back({{vx(1, {}), vx(0, {i}), vx(0, rest)}, {{0, 1}, {1, 2}}, Rational(1)});
            }
            break;
        case StratumId::D03:
            for (int i = 0; i < 4; ++i) {
                std::vector<int> rest;
                for (int l = 0; l < 4; ++l)
                    if (l != i) rest.push_back(l);
                out.push_back({{vx(0, {i}), vx(0, rest)}, {{0, 0}, {0, 1}}, half});
            }
            break;
        case StratumId::D04:
            out.push_back({{vx(0, {}), vx(0, {0, 1, 2, 3})}, {{0, 0}, {0, 1}}, half});
            break;
        case StratumId::DBeta:
            for (const auto& p : pairings)
                out.push_back({{vx(0, {p[0], p[1]}), vx(0, {p[2], p[3]})}, {{0, 1}, {0, 1}}, half});
            break;
    }
    return out;
}

G1Linear& G1Linear::operator+=(const G1Linear& o) {
    constant += o.constant;
    for (const auto& [u, c] : o.coef) {
        coef[u] += c;
        if (coef[u].is_zero()) coef.erase(u);
    }
    return *this;
}

G1Linear G1Linear::scaled(const Rational& s) const {
    G1Linear r;
    if (s.is_zero()) return r;
    r.constant = constant * s;
    for (const auto& [u, c] : coef) r.coef[u] = c * s;
    return r;
}

bool G1Linear::is_constant() const { return coef.empty(); }

GenusOne::GenusOne(Engine& g0) : g0_(g0) {}

G1Linear GenusOne::vertex_genus_one(const std::vector<int>& ins, int d) const {
    G1Linear r;
    const Theory& th = theory();
    for (int i : ins)
        if (i != th.top()) return r;
    const int m = static_cast<int>(ins.size());
    if (th.gw()) {
        // divisor axiom down to the one-point function
        if (d == 0 && m > 1) return r;
        r.coef[d] = power(d, m - 1);
    } else {
        if (d != 0) return r;
        r.coef[m] = Rational(1);
    }
    return r;
}

G1Linear GenusOne::graph_terms(const StableGraph& g, const std::vector<int>& ins, int k, int D) {
    const Theory& th = theory();
    const int nv = static_cast<int>(g.vertices.size());
    const int ne = static_cast<int>(g.edges.size());
    G1Linear total;

    std::vector<std::vector<int>> base(nv);
    for (int v = 0; v < nv; ++v)
        for (int l : g.vertices[v].legs) base[v].push_back(ins[l]);

    std::vector<int> extra;
    compositions(k, nv, extra, [&] {
        Rational mult = factorial(k);
        for (int e : extra) mult /= factorial(e);
        std::vector<std::vector<int>> vins = base;
        for (int v = 0; v < nv; ++v)
            for (int e = 0; e < extra[v]; ++e) vins[v].push_back(th.top());

        // decorate half-edges, then split the degree
        std::vector<std::vector<int>> cur = vins;
        std::function<void(int, Rational)> decorate = [&](int e, Rational w) {
            if (e == ne) {
                const int parts = th.gw() ? nv : 1;
                std::vector<int> degs;
                compositions(th.gw() ? D : 0, parts, degs, [&] {
                    G1Linear term;
                    term.constant = w;
                    for (int v = 0; v < nv; ++v) {
                        const int dv = th.gw() ? degs[v] : 0;
                        if (g.vertices[v].genus == 1) {
                            G1Linear one = vertex_genus_one(cur[v], dv);
                            if (one.coef.empty()) return;
                            one = one.scaled(term.constant);
                            term = one;
                        } else {
                            Rational c = g0_.correlator(cur[v], dv);
                            if (c.is_zero()) return;
                            term = term.scaled(c);
                        }
                    }
                    total += term.scaled(mult * g.weight);
                });
                return;
            }
            const auto [a, b] = g.edges[e];
            const bool genus_one_end = g.vertices[a].genus == 1;
            for (int mu = 0; mu < th.dim(); ++mu) {
                if (genus_one_end && mu != th.top()) continue;
                for (const auto& [nu, eta] : th.space.dual(mu)) {
                    cur[a].push_back(mu);
                    cur[b].push_back(nu);
                    decorate(e + 1, w * eta);
                    cur[b].pop_back();
                    cur[a].pop_back();
                }
            }
        };
        decorate(0, Rational(1));
    });
    return total;
}

G1Linear GenusOne::stratum_terms(StratumId s, const Quadruple& fixed, int k, int D) {
    if (k < 0 || D < 0) throw std::invalid_argument("negative extra count or degree");
    if (!theory().gw() && D != 0) return {};
    std::vector<int> ins(fixed.begin(), fixed.end());
    G1Linear total;
    for (const auto& g : stratum_graphs(s)) total += graph_terms(g, ins, k, D);
    return total;
}

Rational GenusOne::substitute(const G1Linear& e) const {
    Rational v = e.constant;
    for (const auto& [u, c] : e.coef) {
        auto it = store_.find(u);
        if (it == store_.end())
            throw MissingDependency("genus-one value " + std::to_string(u) + " not yet known");
        v += c * it->second;
    }
    return v;
}

Rational GenusOne::stratum_contribution(StratumId s, const Quadruple& fixed, int k, int D) {
    return substitute(stratum_terms(s, fixed, k, D));
}

G1Linear GenusOne::relation(const Quadruple& fixed, int k, int D) {
    G1Linear total;
    for (StratumId s : kAllStrata) total += stratum_terms(s, fixed, k, D).scaled(Rational(stratum_coefficient(s)));
    return total;
}

Rational GenusOne::residual(const Quadruple& fixed, int k, int D) { return substitute(relation(fixed, k, D)); }

Rational GenusOne::solve_basic_with(int u, const Quadruple& fixed, int k, int D) {
    G1Linear rel = relation(fixed, k, D);
    Rational rest = rel.constant;
    Rational lead;
    for (const auto& [v, c] : rel.coef) {
        if (v == u) {
            lead = c;
            continue;
        }
        auto it = store_.find(v);
        if (it == store_.end())
            throw MissingDependency("genus-one value " + std::to_string(v) + " not yet known");
        rest += c * it->second;
    }
    if (lead.is_zero()) throw DegenerateCoefficient("unknown has zero coefficient in the chosen relation");
    return -rest / lead;
}

std::optional<Rational> GenusOne::try_solve_with(int u, const Quadruple& fixed) {
    const Theory& th = theory();
    // GW: the unknown <P>_{1,1,u} enters at total degree u+1 (or u when the
    // four-point degree-zero value is nonzero); FJRW: u markings need k = u-2
    std::vector<std::pair<int, int>> tries;
    if (th.gw())
        tries = {{0, u}, {0, u + 1}};
    else
        tries = {{std::max(0, u - 2), 0}, {std::max(0, u - 1), 0}};
    for (auto [k, D] : tries) {
        G1Linear rel = relation(fixed, k, D);
        auto it = rel.coef.find(u);
        if (it == rel.coef.end()) continue;
        bool ok = true;
        for (const auto& [v, c] : rel.coef)
            if (v != u && !store_.count(v)) ok = false;
        if (!ok) continue;
        return solve_basic_with(u, fixed, k, D);
    }
    return std::nullopt;
}

Quadruple GenusOne::canonical_quadruple(int u) const {
    const Theory& th = theory();
    auto id = [&](const char* s) {
        int i = th.space.find(s);
        if (i < 0) throw std::logic_error(std::string("missing basis label ") + s);
        return i;
    };
    switch (th.id) {
        case TheoryId::GW_P333: return {id("Dx2"), id("Dx2"), id("Dy1"), id("Dz1")};
        case TheoryId::GW_P442: return {id("Dx3"), id("Dx2"), id("Dy1"), id("Dz1")};
        case TheoryId::GW_P632: return {id("Dx5"), id("Dx2"), id("Dy1"), id("Dz1")};
        case TheoryId::FJRW_P8:
            if (u <= 1) return {id("e_x"), id("e_x"), id("e_x"), id("e_xyz")};
            return {id("e_x"), id("e_yz"), id("e_y"), id("e_xz")};
        case TheoryId::FJRW_X9T:
            if (u <= 1) return {id("e1"), id("e5"), id("e7"), id("e7")};
            return {id("e1"), id("e11"), id("e5"), id("e7")};
        case TheoryId::FJRW_J10T:
            if (u <= 1) return {id("e8"), id("e8"), id("e8"), id("e10")};
            return {id("e1"), id("e11"), id("e8"), id("e4")};
    }
    throw std::logic_error("unknown theory");
}

std::vector<Quadruple> GenusOne::admissible_quadruples() const {
    const Theory& th = theory();
    std::vector<Quadruple> out;
    const int n = th.dim();
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c)
                for (int e = c; e < n; ++e) {
                    Rational s = th.el(a).degree + th.el(b).degree + th.el(c).degree + th.el(e).degree;
                    if (s == Rational(2)) out.push_back({a, b, c, e});
                }
    return out;
}

Rational GenusOne::solve_basic(int u) {
    const Theory& th = theory();
    const int lo = th.gw() ? 0 : 1;
    if (u < lo) throw std::invalid_argument("genus-one unknown out of range");
    for (int v = lo; v <= u; ++v) {
        if (store_.count(v)) continue;
        std::optional<Rational> val = try_solve_with(v, canonical_quadruple(v));
        if (!val) {
            for (const auto& q : admissible_quadruples()) {
                val = try_solve_with(v, q);
                if (val) break;
            }
        }
        if (!val) throw DegenerateCoefficient("no admissible relation isolates genus-one value " + std::to_string(v));
        store_[v] = *val;
    }
    return store_.at(u);
}

Rational GenusOne::getzler_solve(const G1Key& target) {
    const Theory& th = theory();
    if (target.d < 0) throw std::invalid_argument("negative degree");
    if (target.ins.empty()) throw std::invalid_argument("genus-one correlator needs an insertion");
    for (int i : target.ins)
        if (i < 0 || i >= th.dim()) throw std::invalid_argument("insertion id out of range");
    G1Linear e = vertex_genus_one(target.ins, target.d);
    if (e.coef.empty()) return Rational(0);
    const auto& [u, c] = *e.coef.begin();
    return c * solve_basic(u);
}

QSeries GenusOne::g1_series(int n, int D) {
    const Theory& th = theory();
    if (!th.gw()) throw std::invalid_argument("degree series is a GW notion");
    if (n < 1 || D < 0) throw std::invalid_argument("bad series request");
    std::vector<Rational> c(D + 1);
    for (int d = 0; d <= D; ++d) c[d] = getzler_solve({std::vector<int>(n, th.top()), d});
    return QSeries::from_coefficients(c);
}

std::vector<Rational> GenusOne::fjrw_sequence(int N) {
    const Theory& th = theory();
    if (th.gw()) throw std::invalid_argument("marking sequence is an FJRW notion");
    std::vector<Rational> out;
    for (int n = 1; n <= N; ++n) out.push_back(solve_basic(n));
    return out;
}

}  // namespace ell
