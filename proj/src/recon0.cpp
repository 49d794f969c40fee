#include "ell/recon0.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace ell {

namespace {

struct NonLinear {};

Sym times(const Sym& a, const Sym& b) {
    if (!a.x.is_zero() && !b.x.is_zero()) throw NonLinear{};
    return {a.c * b.c, a.c * b.x + a.x * b.c};
}

Sym scaled(const Sym& a, const Rational& r) { return {a.c * r, a.x * r}; }

LinearValue times(const LinearValue& a, const LinearValue& b) {
    if (!a.k.is_zero() && !b.k.is_zero()) throw NonLinear{};
    if ((!a.k.is_zero() && !b.c.x.is_zero()) || (!b.k.is_zero() && !a.c.x.is_zero())) throw NonLinear{};
    return {times(a.c, b.c), a.c.c * b.k + a.k * b.c.c};
}

bool vanishes(const LinearValue& v) { return v.c.c.is_zero() && v.c.x.is_zero() && v.k.is_zero(); }

// lower is cheaper to evaluate
std::tuple<int, int> level(const Reduced& r) {
    if (r.kind != Reduced::Core) return {-1, 0};
    return {r.key.d, r.key.n()};
}

}  // namespace

Engine::Engine(const Theory& th, EngineOptions opt) : th_(th), opt_(opt) {
    if (!th_.gw()) opt_.d_max = 0;
    if (opt_.depth_cap <= 0) opt_.depth_cap = 10 * (opt_.n_max + opt_.d_max);
    for (const auto& s : seeds(th_)) {
        seed_.emplace(s.key, s.value);
        store_.emplace(s.key, Entry{s.value, Rule::Seed, 0, {}});
    }
}

const Entry* Engine::find(const Key& k) const {
    auto it = store_.find(k);
    return it == store_.end() ? nullptr : &it->second;
}

void Engine::insert(const Key& k, Entry e) { store_.insert_or_assign(k, std::move(e)); }

void Engine::erase(const Key& k) {
    if (!seed_.count(k)) store_.erase(k);
}

int Engine::max_depth() const {
    int m = 0;
    for (const auto& [k, e] : store_) m = std::max(m, e.depth);
    return m;
}

Rational Engine::correlator(const std::vector<int>& ins, int d) {
    if (d < 0) throw std::invalid_argument("negative degree");
    if (!th_.gw() && d != 0) return Rational(0);
    Reduced r = reduce(th_, ins, d);
    if (r.kind == Reduced::Zero) return Rational(0);
    if (r.kind == Reduced::Constant) return r.scalar;
    if (r.key.n() > opt_.n_max + 1 || r.key.d > opt_.d_max + 1)
        throw CapExceeded("key outside caps: " + key_text(th_, r.key));
    if (!stack_.empty()) throw std::logic_error("correlator called during a computation");
    return r.scalar * value(r.key).c;
}

Sym Engine::value(const Key& k) {
    if (!stack_.empty()) stack_.back().children.push_back(k);
    if (auto it = store_.find(k); it != store_.end()) return {it->second.value, Rational(0)};
    if (auto it = pending_.find(k); it != pending_.end()) return it->second.first;
    if (stack_.empty()) {
        for (auto& f : failed_) f.clear();
        pending_.clear();
    } else if (k == stack_.front().key) {
        return {Rational(0), Rational(1)};
    }
    if (active_.count(k)) {
        int i = 0;
        while (!(stack_[i].key == k)) ++i;
        throw CycleDetected("cycle through " + key_text(th_, k), i);
    }
    for (std::size_t i = 0; i < failed_.size() && i < stack_.size(); ++i)
        if (failed_[i].count(k)) throw CycleDetected("no usable relation for " + key_text(th_, k), static_cast<int>(i));
    return compute(k);
}

LinearValue Engine::term(const Reduced& r, const Key* target) {
    switch (r.kind) {
        case Reduced::Zero:
            return {};
        case Reduced::Constant:
            return {{r.scalar, Rational(0)}, Rational(0)};
        case Reduced::Core:
            if (target && r.key == *target) return {{}, r.scalar};
            if (r.key.n() > opt_.n_max + 1 || r.key.d > opt_.d_max + 1)
                throw CapExceeded("relation leaves caps at " + key_text(th_, r.key));
            return {scaled(value(r.key), r.scalar), Rational(0)};
    }
    return {};
}

LinearValue Engine::channel(int x, int y, int z, int w, const std::vector<int>& S, int D, const Key* target) {
    LinearValue sum;
    const int dim = th_.dim();
    const std::size_t m = S.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<int> left = {x, y}, right = {z, w};
        for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(S[i]);
        for (int d1 = 0; d1 <= D; ++d1)
            for (int mu = 0; mu < dim; ++mu)
                for (int nu = 0; nu < dim; ++nu) {
                    const Rational& e = th_.space.eta_inv(mu, nu);
                    if (e.is_zero()) continue;
                    auto l = left;
                    l.push_back(mu);
                    Reduced rl = reduce(th_, l, d1);
                    if (rl.kind == Reduced::Zero) continue;
                    auto r = right;
                    r.push_back(nu);
                    Reduced rr = reduce(th_, r, D - d1);
                    if (rr.kind == Reduced::Zero) continue;
                    const Reduced& first = level(rl) <= level(rr) ? rl : rr;
                    const Reduced& second = &first == &rl ? rr : rl;
                    LinearValue a = term(first, target);
                    if (vanishes(a)) continue;
                    LinearValue b = term(second, target);
                    LinearValue p = times(a, b);
                    sum.c.c += e * p.c.c;
                    sum.c.x += e * p.c.x;
                    sum.k += e * p.k;
                }
    }
    return sum;
}

LinearValue Engine::relation(int x, int y, int z, int w, const std::vector<int>& S, int D, const Key* target) {
    LinearValue a = channel(x, y, z, w, S, D, target);
    LinearValue b = channel(x, z, y, w, S, D, target);
    return {{a.c.c - b.c.c, a.c.x - b.c.x}, a.k - b.k};
}

std::vector<Engine::Candidate> Engine::candidates(const Key& k) const {
    std::vector<Candidate> out;
    std::set<std::tuple<int, int, int, int, std::vector<int>, int>> seen;
    const int dim = th_.dim();
    const int unit = th_.unit();
    auto nonzero_product = [&](int a, int b) {
        for (const auto& [id, c] : th_.ring.product(a, b))
            if (!(th_.gw() && id == th_.top())) return true;
        return false;
    };
    auto add = [&](int x, int y, int z, int w, std::vector<int> S, int D, int kind) {
        std::sort(S.begin(), S.end());
        if (!seen.emplace(x, y, z, w, S, D).second) return;
        int score = kind * 100 + nonzero_product(x, y) + nonzero_product(y, w) + nonzero_product(x, z);
        out.push_back({x, y, z, w, std::move(S), D, score});
    };
    const int n = k.n();
    for (int p = 0; p < n; ++p) {
        if (p > 0 && k.ins[p] == k.ins[p - 1]) continue;
        const int mu = k.ins[p];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || i == p || j == p) continue;
                std::vector<int> S;
                for (int t = 0; t < n; ++t)
                    if (t != i && t != j && t != p) S.push_back(k.ins[t]);
                for (int z = 0; z < dim; ++z)
                    for (int w = 0; w < dim; ++w) {
                        if (z == unit || w == unit) continue;
                        // degree zero factorization of mu
                        for (const auto& [id, c] : th_.ring.product(z, w))
                            if (id == mu) add(k.ins[i], k.ins[j], z, w, S, k.d, 0);
                        // degree-raising: <nu,z,w>_1 with nu dual to mu
                        if (th_.gw() && k.d + 1 <= opt_.d_max + 1 && z != th_.top() && w != th_.top()) {
                            for (int nu = 0; nu < dim; ++nu) {
                                if (th_.space.eta_inv(mu, nu).is_zero()) continue;
                                if (selection_ok(th_, {nu, z, w})) add(k.ins[i], k.ins[j], z, w, S, k.d + 1, 2);
                            }
                        }
                    }
            }
    }
    // divisor lift: <x,y,S,P>_d = d <x,y,S>_d with P proportional to z*w
    if (th_.gw() && k.d >= 1) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::vector<int> S;
                for (int t = 0; t < n; ++t)
                    if (t != i && t != j) S.push_back(k.ins[t]);
                for (int z = 0; z < dim; ++z)
                    for (int w = 0; w < dim; ++w) {
                        if (z == unit || w == unit || z == th_.top() || w == th_.top()) continue;
                        if (th_.space.eta(z, w).is_zero()) continue;
                        add(k.ins[i], k.ins[j], z, w, S, k.d, 1);
                    }
            }
    }
    // double lift: <P,y,S,P>_d = d^2 <y,S>_d
    if (th_.gw() && k.d >= 1) {
        const int top = th_.top();
        for (int j = 0; j < n; ++j) {
            if (j > 0 && k.ins[j] == k.ins[j - 1]) continue;
            std::vector<int> S;
            for (int t = 0; t < n; ++t)
                if (t != j) S.push_back(k.ins[t]);
            for (int z = 0; z < dim; ++z)
                for (int w = 0; w < dim; ++w) {
                    if (z == unit || w == unit || z == top || w == top) continue;
                    if (th_.space.eta(z, w).is_zero()) continue;
                    add(top, k.ins[j], z, w, S, k.d, 1);
                    add(k.ins[j], top, z, w, S, k.d, 1);
                }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
    return out;
}

Rule Engine::label(const Key& k) const {
    switch (classify(th_, k)) {
        case Classification::NotBasic: return Rule::NonBasicSplit;
        case Classification::Type1: return Rule::Type1;
        case Classification::Type2: return Rule::Type2;
        case Classification::Type3: return Rule::Type3;
        case Classification::Type4: return Rule::Type4;
        case Classification::Type5: return Rule::Type5;
        case Classification::Type6: return Rule::Type6;
        case Classification::Basic4: return Rule::WDVVd0;
        case Classification::Basic5: return Rule::Basic5;
    }
    return Rule::NonBasicSplit;
}

Sym Engine::compute(const Key& k) {
    if (k.n() > opt_.n_max + 1 || k.d > opt_.d_max + 1) throw CapExceeded("key outside caps: " + key_text(th_, k));
    if (static_cast<int>(stack_.size()) >= opt_.depth_cap) throw CapExceeded("depth cap reached at " + key_text(th_, k));

    struct Guard {
        Engine& e;
        Guard(Engine& eng, const Key& key) : e(eng) {
            e.stack_.push_back({key, {}});
            e.active_.insert(key);
            if (e.failed_.size() < e.stack_.size()) e.failed_.resize(e.stack_.size());
        }
        ~Guard() {
            e.active_.erase(e.stack_.back().key);
            e.failed_[e.stack_.size() - 1].clear();
            e.stack_.pop_back();
        }
    };

    const bool root = stack_.empty();
    const int self = static_cast<int>(stack_.size());
    int blame = self;
    std::optional<Sym> found;
    std::vector<Key> children;
    {
        Guard g(*this, k);
        for (const auto& c : candidates(k)) {
            stack_.back().children.clear();
            try {
                LinearValue r = relation(c.x, c.y, c.z, c.w, c.spect, c.D, &k);
                if (root) {
                    Rational coef = r.k + r.c.x;
                    if (coef.is_zero()) continue;
                    found = Sym{-r.c.c / coef, Rational(0)};
                } else {
                    if (r.k.is_zero()) continue;
                    found = Sym{-r.c.c / r.k, -r.c.x / r.k};
                }
                children = stack_.back().children;
                break;
            } catch (const CycleDetected& ex) {
                blame = std::min(blame, ex.frame);
            } catch (const CapExceeded&) {
                blame = std::min(blame, std::max(self - 1, 0));
            } catch (const NonLinear&) {
            }
        }
    }
    if (!found) {
        if (!root) {
            // a failure that only involved this frame or deeper ones holds for the whole root
            int level = blame >= self ? 0 : blame;
            failed_[level].insert(k);
            throw CycleDetected("no acyclic relation for " + key_text(th_, k), level);
        }
        if (!opt_.solver_fallback) throw Irreducible("no relation determines " + key_text(th_, k));
        Rational v = fallback(k);
        store_.emplace(k, Entry{v, Rule::SolverFallback, 0, {}});
        return {v, Rational(0)};
    }

    // pending children are replaced by what they were built from
    std::vector<Key> flat;
    std::set<Key> expanded;
    std::function<void(const Key&)> visit = [&](const Key& c) {
        if (c == k) return;
        if (auto p = pending_.find(c); p != pending_.end()) {
            if (expanded.insert(c).second)
                for (const auto& cc : p->second.second) visit(cc);
            return;
        }
        if (store_.count(c)) flat.push_back(c);
    };
    for (const auto& c : children) visit(c);
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());

    if (!found->x.is_zero()) {
        pending_.emplace(k, std::make_pair(*found, std::move(children)));
        return *found;
    }
    Entry e;
    e.value = found->c;
    e.rule = label(k);
    int depth = 0;
    for (const auto& c : flat) depth = std::max(depth, store_.at(c).depth);
    e.depth = depth + 1;
    e.children = std::move(flat);
    store_.emplace(k, std::move(e));
    if (root) pending_.clear();
    return *found;
}

Rational Engine::fallback(const Key& k) {
    ++fallbacks_;
    if (!solved_ || !solved_->values.count(k)) {
        int n = std::max(k.n(), opt_.n_max + 1);
        int d = std::max(k.d, th_.gw() ? opt_.d_max + 1 : 0);
        solved_ = std::make_unique<SolverResult>(solve_system(th_, n, d));
    }
    auto it = solved_->values.find(k);
    return it == solved_->values.end() ? Rational(0) : it->second;
}

Rational Engine::wdvv_rhs(int g1, int g2, int g3, int g4, const std::vector<int>& S, int d) {
    Rational lhs;
    for (const auto& [id, c] : th_.ring.product(g3, g4)) {
        std::vector<int> ins = {g1, g2};
        ins.insert(ins.end(), S.begin(), S.end());
        ins.push_back(id);
        lhs += c * correlator(ins, d);
    }
    return lhs - relation(g1, g2, g3, g4, S, d, nullptr).c.c;
}

Rational Engine::wdvv_residual(int a, int b, int c, int e, const std::vector<int>& S, int d) {
    return relation(a, b, c, e, S, d, nullptr).c.c;
}

QSeries Engine::three_point_series(int a, int b, int c, int D) {
    QSeries s(D);
    for (int d = 0; d <= D; ++d) s.set(d, correlator({a, b, c}, d));
    return s;
}

std::vector<Rational> Engine::fjrw_top_series(const std::vector<int>& ins, int M) {
    std::vector<Rational> out;
    for (int m = 0; m <= M; ++m) {
        auto all = ins;
        for (int i = 0; i < m; ++i) all.push_back(th_.top());
        out.push_back(correlator(all, 0));
    }
    return out;
}

void Engine::compute_all() {
    for (int d = 0; d <= opt_.d_max; ++d)
        for (const auto& k : core_keys(th_, opt_.n_max, d)) correlator(k);
}

}  // namespace ell
