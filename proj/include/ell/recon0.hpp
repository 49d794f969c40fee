#pragma once

#include "ell/correlator.hpp"
#include "ell/qseries.hpp"
#include "ell/solver.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace ell {

struct CycleDetected : std::runtime_error {
    int frame = 0;  // shallowest stack frame the failure depends on
    explicit CycleDetected(const std::string& msg, int f = 0) : std::runtime_error(msg), frame(f) {}
};
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Irreducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Entry {
    Rational value;
    Rule rule = Rule::Seed;
    int depth = 0;
    std::vector<Key> children;
};

struct EngineOptions {
    int n_max = 5;
    int d_max = 3;
    bool solver_fallback = true;
    int depth_cap = 0;  // 0 means 10*(n_max+d_max)
};

// c + x*R where R is the outermost correlator under computation
struct Sym {
    Rational c;
    Rational x;
};

// c + k*T where T is the correlator the current relation is solved for
struct LinearValue {
    Sym c;
    Rational k;
};

class Engine {
public:
    Engine(const Theory& th, EngineOptions opt);

    const Theory& theory() const { return th_; }
    const EngineOptions& options() const { return opt_; }

    // any insertion list; axioms applied first
    Rational correlator(const std::vector<int>& ins, int d = 0);
    Rational correlator(const Key& k) { return correlator(k.ins, k.d); }

    // <g1,g2,S,g3*g4>_d expressed through the other terms of the WDVV relation
    Rational wdvv_rhs(int g1, int g2, int g3, int g4, const std::vector<int>& S, int d);
    // F(ab|ce) - F(ac|be): zero on a consistent store
    Rational wdvv_residual(int a, int b, int c, int e, const std::vector<int>& S, int d);

    QSeries three_point_series(int a, int b, int c, int D);
    std::vector<Rational> fjrw_top_series(const std::vector<int>& ins, int M);

    // computes every core key within caps
    void compute_all();

    const Entry* find(const Key& k) const;
    const std::map<Key, Entry>& store() const { return store_; }
    void insert(const Key& k, Entry e);  // cache loading
    void erase(const Key& k);

    std::size_t fallback_count() const { return fallbacks_; }
    int max_depth() const;

private:
    struct Frame {
        Key key;
        std::vector<Key> children;
    };
    struct Candidate {
        int x, y, z, w;
        std::vector<int> spect;
        int D;
        int score;
        std::string str(const Theory& th) const {
            std::string s = th.el(x).label + "," + th.el(y).label + "|" + th.el(z).label + "," + th.el(w).label + " S=";
            for (int i : spect) s += th.el(i).label + " ";
            return s + "D=" + std::to_string(D) + " score=" + std::to_string(score);
        }
    };

    Sym value(const Key& k);
    Sym compute(const Key& k);
    std::vector<Candidate> candidates(const Key& k) const;
    LinearValue channel(int x, int y, int z, int w, const std::vector<int>& S, int D, const Key* target);
    LinearValue relation(int x, int y, int z, int w, const std::vector<int>& S, int D, const Key* target);
    LinearValue term(const Reduced& r, const Key* target);
    Rule label(const Key& k) const;
    Rational fallback(const Key& k);

    const Theory& th_;
    EngineOptions opt_;
    std::map<Key, Entry> store_;
    std::map<Key, Rational> seed_;
    std::vector<Frame> stack_;
    std::unordered_set<Key, KeyHash> active_;
    // failed_[i]: keys with no usable relation while frame i stays on the stack
    std::vector<std::unordered_set<Key, KeyHash>> failed_;
    std::map<Key, std::pair<Sym, std::vector<Key>>> pending_;  // values still depending on the root
    std::unique_ptr<SolverResult> solved_;
    std::size_t fallbacks_ = 0;
};

}  // namespace ell
