#include "ell/solver.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>

namespace ell {

namespace {

// c + sum lin[i] x_i + sum quad[(i,j)] x_i x_j
struct Poly {
    Rational c;
    std::map<int, Rational> lin;
    std::map<std::pair<int, int>, Rational> quad;

    bool empty() const { return c.is_zero() && lin.empty() && quad.empty(); }
};

void add_to(std::map<int, Rational>& m, int k, const Rational& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = m.emplace(k, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) m.erase(it);
    }
}

void add_to(std::map<std::pair<int, int>, Rational>& m, std::pair<int, int> k, const Rational& v) {
    if (v.is_zero()) return;
    if (k.first > k.second) std::swap(k.first, k.second);
    auto [it, fresh] = m.emplace(k, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) m.erase(it);
    }
}

// a factor: constant, or scalar times unknown
struct Term {
    Rational scalar;  // zero means the factor vanishes
    int var = -1;
};

class System {
public:
    System(const Theory& th, int n_cap, int d_cap, const std::vector<SeedEntry>& seed_set)
        : th_(th), n_cap_(n_cap), d_cap_(d_cap) {
        for (const auto& s : seed_set) seed_.emplace(s.key, s.value);
        for (const auto& e : th.space.elements)
            if (e.id != th.unit()) pool_.push_back(e.id);
    }

    Term factor(std::vector<int> ins, int d) {
        Rational sum;
        for (int i : ins) sum += th_.el(i).degree;
        if (sum != Rational(static_cast<long>(ins.size()) - 2)) return {};
        if (!th_.gw()) {
            // genus-0 line bundle degrees (n-2)/3 - sum theta must be integers
            for (int j = 0; j < 3; ++j) {
                Rational deg = Rational(static_cast<long>(ins.size()) - 2, 3);
                for (int i : ins) deg -= th_.el(i).theta[j];
                if (!deg.is_integer()) return {};
            }
        }
        std::sort(ins.begin(), ins.end());
        if (std::count(ins.begin(), ins.end(), th_.unit())) {
            if (ins.size() == 3 && d == 0) return {th_.ring.three_point(ins[0], ins[1], ins[2])};
            return {};
        }
        Rational scalar(1);
        if (th_.gw())
            while (ins.size() > 3 && std::count(ins.begin(), ins.end(), th_.top())) {
                if (d == 0) return {};
                ins.erase(std::find(ins.begin(), ins.end(), th_.top()));
                scalar *= d;
            }
        if (ins.size() == 3 && (d == 0 || !th_.gw())) return {scalar * th_.ring.three_point(ins[0], ins[1], ins[2])};
        Key k{ins, d};
        if (auto it = seed_.find(k); it != seed_.end()) return {scalar * it->second};
        if (k.n() > n_cap_ || d > d_cap_) throw std::logic_error("relation leaves the solver range");
        auto [it, fresh] = index_.emplace(k, static_cast<int>(keys_.size()));
        if (fresh) keys_.push_back(k);
        return {scalar, it->second};
    }

    // sum over splits of <x,y,S_A,mu>_{d1} eta^{mu nu} <nu,z,w,S_B>_{D-d1}
    Poly channel(int x, int y, int z, int w, const std::vector<int>& spect, int D) {
        Poly p;
        const int dim = th_.dim();
        const std::size_t m = spect.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            std::vector<int> left = {x, y}, right = {z, w};
            for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(spect[i]);
            for (int d1 = 0; d1 <= D; ++d1)
                for (int mu = 0; mu < dim; ++mu)
                    for (int nu = 0; nu < dim; ++nu) {
                        const Rational& e = th_.space.eta_inv(mu, nu);
                        if (e.is_zero()) continue;
                        auto l = left;
                        l.push_back(mu);
                        Term a = factor(l, d1);
                        if (a.scalar.is_zero()) continue;
                        auto r = right;
                        r.push_back(nu);
                        Term b = factor(r, D - d1);
                        if (b.scalar.is_zero()) continue;
                        Rational coef = e * a.scalar * b.scalar;
                        if (a.var < 0 && b.var < 0)
                            p.c += coef;
                        else if (a.var < 0)
                            add_to(p.lin, b.var, coef);
                        else if (b.var < 0)
                            add_to(p.lin, a.var, coef);
                        else
                            add_to(p.quad, {a.var, b.var}, coef);
                    }
        }
        return p;
    }

    static Poly minus(Poly a, const Poly& b) {
        a.c -= b.c;
        for (const auto& [k, v] : b.lin) add_to(a.lin, k, -v);
        for (const auto& [k, v] : b.quad) add_to(a.quad, k, -v);
        return a;
    }

    void build(int m_max, int D_max) {
        std::vector<int> cur;
        for (int D = 0; D <= (th_.gw() ? D_max : 0); ++D)
            for (int m = 4; m <= m_max; ++m) {
                std::function<void(std::size_t)> rec = [&](std::size_t start) {
                    if (static_cast<int>(cur.size()) == m) {
                        Rational sum;
                        for (int i : cur) sum += th_.el(i).degree;
                        if (sum == Rational(m - 3)) emit(cur, D);
                        return;
                    }
                    for (std::size_t i = start; i < pool_.size(); ++i) {
                        cur.push_back(pool_[i]);
                        rec(i);
                        cur.pop_back();
                    }
                };
                rec(0);
            }
    }

    void emit(const std::vector<int>& marks, int D) {
        const int m = static_cast<int>(marks.size());
        std::set<std::pair<std::array<int, 4>, std::vector<int>>> seen;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    for (int l = k + 1; l < m; ++l) {
                        std::array<int, 4> q = {marks[i], marks[j], marks[k], marks[l]};
                        std::vector<int> spect;
                        for (int t = 0; t < m; ++t)
                            if (t != i && t != j && t != k && t != l) spect.push_back(marks[t]);
                        if (!seen.insert({q, spect}).second) continue;
                        auto [a, b, c, e] = q;
                        Poly p1 = channel(a, b, c, e, spect, D);
                        Poly p2 = channel(a, c, b, e, spect, D);
                        Poly p3 = channel(a, e, b, c, spect, D);
                        for (Poly r : {minus(p1, p2), minus(p1, p3)})
                            if (!r.empty()) relations_.push_back(std::move(r));
                    }
    }

    const Theory& th_;
    int n_cap_, d_cap_;
    std::map<Key, Rational> seed_;
    std::vector<int> pool_;
    std::unordered_map<Key, int, KeyHash> index_;
    std::vector<Key> keys_;
    std::vector<Poly> relations_;
};

// reduced row echelon store
class Echelon {
public:
    // returns false when the row reduces to a nonzero constant
    bool insert(std::map<int, Rational> row, Rational c) {
        for (auto it = row.begin(); it != row.end();) {
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) {
                ++it;
                continue;
            }
            Rational f = it->second;
            it = row.erase(it);
            for (const auto& [v, x] : p->second.first)
                if (v != p->first) add_to(row, v, -f * x);
            c -= f * p->second.second;
            it = row.begin();
            while (it != row.end() && pivots_.count(it->first) == 0) ++it;
        }
        if (row.empty()) return c.is_zero();
        int piv = row.begin()->first;
        Rational s = row.begin()->second.inverse();
        for (auto& [v, x] : row) x *= s;
        c *= s;
        for (auto& [pv, pr] : pivots_) {
            auto hit = pr.first.find(piv);
            if (hit == pr.first.end()) continue;
            Rational f = hit->second;
            pr.first.erase(hit);
            for (const auto& [v, x] : row)
                if (v != piv) add_to(pr.first, v, -f * x);
            pr.second -= f * c;
        }
        pivots_.emplace(piv, std::make_pair(std::move(row), c));
        return true;
    }

    std::vector<std::pair<int, Rational>> determined() const {
        std::vector<std::pair<int, Rational>> out;
        for (const auto& [p, r] : pivots_)
            if (r.first.size() == 1) out.emplace_back(p, -r.second);
        return out;
    }

private:
    std::map<int, std::pair<std::map<int, Rational>, Rational>> pivots_;
};

}  // namespace

SolverResult solve_system(const Theory& th, int n_max, int d_max, int headroom) {
    return solve_system(th, n_max, d_max, seeds(th), headroom);
}

SolverResult solve_system(const Theory& th, int n_max, int d_max, const std::vector<SeedEntry>& seed_set,
                          int headroom) {
    const int d_cap = th.gw() ? d_max + headroom : 0;
    const int n_cap = std::max(n_max, 5);
    System sys(th, n_cap, d_cap, seed_set);
    sys.build(n_cap + 1, d_cap);
    for (int d = 0; d <= d_cap; ++d)
        for (const auto& k : core_keys(th, n_cap, d)) sys.factor(k.ins, k.d);

    const std::size_t nv = sys.keys_.size();
    std::vector<std::optional<Rational>> val(nv);
    SolverStats stats;
    stats.unknowns = nv;
    stats.relations = sys.relations_.size();

    while (true) {
        ++stats.rounds;
        Echelon ech;
        for (const auto& r : sys.relations_) {
            std::map<int, Rational> row;
            Rational c = r.c;
            bool linear = true;
            for (const auto& [v, x] : r.lin) {
                if (val[v]) c += x * *val[v];
                else add_to(row, v, x);
            }
            for (const auto& [vv, x] : r.quad) {
                auto [a, b] = vv;
                if (val[a] && val[b]) c += x * *val[a] * *val[b];
                else if (val[a]) add_to(row, b, x * *val[a]);
                else if (val[b]) add_to(row, a, x * *val[b]);
                else { linear = false; break; }
            }
            if (!linear) continue;
            if (row.empty()) {
                if (!c.is_zero()) throw Inconsistent("relation reduces to " + c.str() + " = 0");
                continue;
            }
            if (!ech.insert(std::move(row), c)) throw Inconsistent("linear system is inconsistent");
        }
        int fresh = 0;
        for (const auto& [v, x] : ech.determined())
            if (!val[v]) {
                val[v] = x;
                ++fresh;
            }
        if (fresh == 0) break;
    }

    SolverResult out;
    out.stats = stats;
    std::vector<Key> free;
    for (std::size_t v = 0; v < nv; ++v) {
        const Key& k = sys.keys_[v];
        if (k.n() > n_max || k.d > d_max) continue;
        if (val[v]) out.values.emplace(k, *val[v]);
        else free.push_back(k);
    }
    for (const auto& s : seed_set)
        if (s.key.n() <= n_max && s.key.d <= d_max) out.values.emplace(s.key, s.value);
    if (!free.empty()) {
        std::string msg = std::to_string(free.size()) + " undetermined unknowns, first " + key_text(th, free.front());
        throw Underdetermined(msg, std::move(free));
    }
    return out;
}

}  // namespace ell
