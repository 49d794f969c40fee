#include "ell/shell.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace ell {

using nlohmann::json;

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Rewrite: return "rewrite";
        case Strategy::Solver: return "solver";
        case Strategy::Both: return "both";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
    for (Strategy x : {Strategy::Rewrite, Strategy::Solver, Strategy::Both})
        if (strategy_name(x) == s) return x;
    return std::nullopt;
}

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::Paper: return "paper";
        case Suite::Wdvv: return "wdvv";
        case Suite::Getzler: return "getzler";
        case Suite::Bounds: return "bounds";
        case Suite::Oracle: return "oracle";
        case Suite::All: return "all";
    }
    return "?";
}

std::optional<Suite> parse_suite(std::string_view s) {
    for (Suite x : {Suite::Paper, Suite::Wdvv, Suite::Getzler, Suite::Bounds, Suite::Oracle, Suite::All})
        if (suite_name(x) == s) return x;
    return std::nullopt;
}

void TheoryConfig::validate() const {
    if (n_max < 3) throw UsageError("--nmax must be at least 3");
    if (d_max < 0) throw UsageError("--dmax must be non-negative");
    if (order < -1) throw UsageError("--order must be non-negative");
    if (top_count_max < 0) throw UsageError("top count must be non-negative");
    if (top_count_max > 0 && top_count_max > n_max - 2)
        throw UsageError("top count exceeds n_max - 2");
}

json TheoryConfig::cache_fields() const {
    return {{"theory", theory_name(target)},
            {"sign", broad_sign == BroadSign::Plus ? "plus" : "minus"},
            {"n_max", n_max},
            {"d_max", degree_cap()},
            {"top_count_max", is_gw(target) ? 0 : top_count()},
            {"strategy", strategy_name(strategy)}};
}

std::filesystem::path default_cache_path(const TheoryConfig& c) {
    std::filesystem::path dir = ".";
    if (const char* env = std::getenv("ELLCALC_CACHE_DIR"); env != nullptr && *env != '\0') dir = env;
    std::string name = theory_name(c.target);
    std::replace(name.begin(), name.end(), ':', '_');
    if (c.broad_sign == BroadSign::Minus) name += "-minus";
    return dir / (name + ".jsonl");
}

std::filesystem::path cache_path(const TheoryConfig& c) {
    return c.cache_path.empty() ? default_cache_path(c) : c.cache_path;
}

namespace {

json labels_of(const Theory& th, const std::vector<int>& ins) {
    json a = json::array();
    for (int i : ins) a.push_back(th.el(i).label);
    return a;
}

std::vector<int> ids_of(const Theory& th, const json& labels) {
    std::vector<int> out;
    for (const auto& l : labels) {
        int id = th.space.find(l.get<std::string>());
        if (id < 0) throw IOError("unknown label in cache: " + l.get<std::string>());
        out.push_back(id);
    }
    return out;
}

std::vector<int> ids_or_usage(const Theory& th, const std::vector<std::string>& labels) {
    std::vector<int> out;
    for (const auto& l : labels) {
        int id = th.space.find(l);
        if (id < 0) throw UsageError("unknown label '" + l + "' for " + theory_name(th.id));
        out.push_back(id);
    }
    return out;
}

bool record_less(const CacheRecord& a, const CacheRecord& b) {
    if (a.genus != b.genus) return a.genus < b.genus;
    return a.key < b.key;
}

}  // namespace

std::string header_line(const TheoryConfig& c, const Theory& th) {
    json h = {{"engine_version", kEngineVersion}, {"seed_hash", seed_hash(th)}, {"config", c.cache_fields()}};
    return h.dump();
}

bool header_matches(const json& header, const TheoryConfig& c, const Theory& th) {
    return header.is_object() && header.value("engine_version", "") == kEngineVersion &&
           header.value("seed_hash", "") == seed_hash(th) && header.contains("config") &&
           header["config"] == c.cache_fields();
}

std::string record_line(const Theory& th, const CacheRecord& r) {
    json children = json::array();
    for (const auto& k : r.children) children.push_back({{"insertions", labels_of(th, k.ins)}, {"d", k.d}});
    json j = {{"theory", theory_name(th.id)},
              {"genus", r.genus},
              {"n", r.key.n()},
              {"insertions", labels_of(th, r.key.ins)},
              {"d", r.key.d},
              {"value", r.value.str()},
              {"rule", r.rule},
              {"depth", r.depth},
              {"children", children}};
    return j.dump();
}

CacheRecord parse_record(const Theory& th, const std::string& line) {
    try {
        json j = json::parse(line);
        if (j.at("theory").get<std::string>() != theory_name(th.id)) throw IOError("cache record for another theory");
        CacheRecord r;
        r.genus = j.at("genus").get<int>();
        r.key = make_key(ids_of(th, j.at("insertions")), j.at("d").get<int>());
        r.value = Rational::parse(j.at("value").get<std::string>());
        r.rule = j.at("rule").get<std::string>();
        r.depth = j.at("depth").get<int>();
        for (const auto& c : j.at("children")) r.children.push_back(make_key(ids_of(th, c.at("insertions")), c.at("d").get<int>()));
        if (r.key.n() != j.at("n").get<int>()) throw IOError("cache record marking count mismatch");
        return r;
    } catch (const json::exception& e) {
        throw IOError(std::string("malformed cache record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IOError(std::string("malformed cache value: ") + e.what());
    }
}

std::optional<CacheFile> read_cache(const std::filesystem::path& p, const Theory& th) {
    if (!std::filesystem::exists(p)) return std::nullopt;
    std::ifstream in(p);
    if (!in) throw IOError("cannot read " + p.string());
    CacheFile f;
    std::string line;
    if (!std::getline(in, line)) return f;
    try {
        f.header = json::parse(line);
    } catch (const json::exception&) {
        f.header = json();  // unusable header: treated as a mismatch
        return f;
    }
    while (std::getline(in, line))
        if (!line.empty()) f.records.push_back(parse_record(th, line));
    return f;
}

Key genus_one_key(const Theory& th, int u) {
    if (th.gw()) return make_key({th.top()}, u);
    return make_key(std::vector<int>(u, th.top()), 0);
}

Session::Session(const TheoryConfig& c)
    : cfg_(c), th_(get_theory(c.target, c.broad_sign)), path_(cache_path(c)) {
    cfg_.validate();
    engine_ = std::make_unique<Engine>(th_, EngineOptions{cfg_.n_max, cfg_.degree_cap(), true, 0});
    g1_ = std::make_unique<GenusOne>(*engine_);
}

int Session::genus_one_limit() const {
    if (cfg_.strategy == Strategy::Solver || cfg_.n_max < 4) return -1;
    return th_.gw() ? cfg_.degree_cap() : cfg_.top_count();
}

std::vector<CacheRecord> Session::records() const {
    std::vector<CacheRecord> out;
    for (int a = 0; a < th_.dim(); ++a)
        for (int b = a; b < th_.dim(); ++b)
            for (int c = b; c < th_.dim(); ++c)
                if (const Rational& v = th_.ring.three_point(a, b, c); !v.is_zero())
                    out.push_back({0, make_key({a, b, c}, 0), v, rule_name(Rule::CRProduct), 0, {}});
    for (const auto& [k, e] : engine_->store()) out.push_back({0, k, e.value, rule_name(e.rule), e.depth, e.children});
    for (const auto& [u, v] : g1_->store()) out.push_back({1, genus_one_key(th_, u), v, "Getzler", 0, {}});
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

void Session::run() {
    std::set<std::pair<int, Key>> present;
    bool fresh = true;
    if (auto f = read_cache(path_, th_)) {
        if (header_matches(f->header, cfg_, th_)) {
            fresh = false;
            for (const auto& r : f->records) {
                if (r.genus == 0 && r.key.n() == 3 && r.key.d == 0) {
                    // ring constants are read from the ring
                } else if (r.genus == 0) {
                    auto rule = parse_rule(r.rule);
                    if (!rule) throw IOError("unknown rule in cache: " + r.rule);
                    engine_->insert(r.key, Entry{r.value, *rule, r.depth, r.children});
                } else if (r.genus == 1) {
                    g1_->insert(th_.gw() ? r.key.d : r.key.n(), r.value);
                } else {
                    throw IOError("cache record with unsupported genus");
                }
                present.insert({r.genus, r.key});
            }
            loaded_ = f->records.size();
        } else {
            invalidated_ = true;
        }
    }

    const int dcap = cfg_.degree_cap();
    if (cfg_.strategy != Strategy::Solver) engine_->compute_all();
    if (cfg_.strategy != Strategy::Rewrite) {
        SolverResult sol = solve_system(th_, cfg_.n_max, dcap);
        for (const auto& [k, v] : sol.values) {
            if (cfg_.strategy == Strategy::Solver) {
                if (!engine_->find(k)) engine_->insert(k, Entry{v, Rule::SolverFallback, 0, {}});
            } else if (engine_->correlator(k) != v) {
                throw StrategyMismatch("rewrite and solver disagree on " + key_text(th_, k) + ": " +
                                       engine_->correlator(k).str() + " vs " + v.str());
            }
        }
    }
    if (int lim = genus_one_limit(); lim >= 0) {
        if (th_.gw())
            g1_->g1_series(1, lim);
        else if (lim >= 1)
            g1_->fjrw_sequence(lim);
    }

    std::ofstream out;
    if (fresh) {
        std::filesystem::path dir = path_.parent_path();
        if (!dir.empty()) std::filesystem::create_directories(dir);
        out.open(path_, std::ios::trunc);
        if (out) out << header_line(cfg_, th_) << '\n';
    } else {
        out.open(path_, std::ios::app);
    }
    if (!out) throw IOError("cannot write " + path_.string());
    for (const auto& r : records()) {
        if (present.count({r.genus, r.key})) continue;
        out << record_line(th_, r) << '\n';
        ++appended_;
    }
    if (!out) throw IOError("write failed for " + path_.string());
}

ComputeSummary cmd_compute(const TheoryConfig& c) {
    Session s(c);
    s.run();
    return {s.path(), s.loaded() + s.appended(), s.loaded(), s.appended(), s.invalidated()};
}

namespace {

struct SuiteResult {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    json extra = json::object();

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    void equal(const Rational& got, const Rational& want, const std::string& what) {
        check(got == want, what + ": got " + got.str() + ", expected " + want.str());
    }
    json to_json() const {
        json j = extra;
        j["pass"] = failures.empty();
        j["checks"] = checks;
        j["failures"] = failures;
        return j;
    }
};

std::vector<int> labels(const Theory& th, std::initializer_list<const char*> ls) {
    std::vector<int> out;
    for (auto l : ls) {
        int id = th.space.find(l);
        if (id < 0) throw std::logic_error(std::string("missing label ") + l);
        out.push_back(id);
    }
    return out;
}

std::vector<Rational> dense(const Theory& th, const SparseVec& v) {
    std::vector<Rational> out(th.dim());
    for (const auto& [i, c] : v) out[i] += c;
    return out;
}

std::vector<Rational> times(const Theory& th, const std::vector<Rational>& v, int c) {
    std::vector<Rational> out(th.dim());
    for (int i = 0; i < th.dim(); ++i)
        if (!v[i].is_zero())
            for (const auto& [j, x] : th.ring.product(i, c)) out[j] += v[i] * x;
    return out;
}

}  // namespace

// associativity and the Frobenius property over all basis triples
static void ring_checks(const Theory& th, SuiteResult& r) {
    bool assoc = true, frob = true;
    for (int a = 0; a < th.dim(); ++a)
        for (int b = 0; b < th.dim(); ++b)
            for (int c = 0; c < th.dim(); ++c) {
                auto left = times(th, dense(th, th.ring.product(a, b)), c);
                auto right_bc = dense(th, th.ring.product(b, c));
                std::vector<Rational> right(th.dim());
                for (int i = 0; i < th.dim(); ++i)
                    if (!right_bc[i].is_zero())
                        for (const auto& [j, x] : th.ring.product(a, i)) right[j] += right_bc[i] * x;
                if (left != right) assoc = false;
                Rational eta_ab_c, eta_a_bc;
                for (const auto& [i, x] : th.ring.product(a, b)) eta_ab_c += x * th.space.eta(i, c);
                for (const auto& [i, x] : th.ring.product(b, c)) eta_a_bc += x * th.space.eta(a, i);
                if (eta_ab_c != th.ring.three_point(a, b, c) || eta_a_bc != eta_ab_c) frob = false;
            }
    r.check(assoc, "ring is not associative");
    r.check(frob, "pairing is not invariant");
}

static SuiteResult suite_paper(Session& s) {
    const Theory& th = s.theory();
    Engine& e = s.engine();
    SuiteResult r;
    ring_checks(th, r);
    if (th.gw()) {
        r.equal(e.correlator(labels(th, {"Dx1", "Dy1", "Dz1"}), 1), 1, "degree one seed");
        for (const Key& k : core_keys(th, std::min(4, s.config().n_max), 0)) {
            Classification c = classify(th, k);
            if (c == Classification::Type1) r.equal(e.correlator(k), 0, key_text(th, k));
            if (c == Classification::Type3 || c == Classification::Type5) {
                Rational ord(th.el(k.ins[0]).order);
                r.equal(e.correlator(k), -(ord * ord).inverse(), key_text(th, k));
            }
        }
        int D = s.config().order;
        if (D < 0) D = th.id == TheoryId::GW_P333 ? 1 : th.id == TheoryId::GW_P442 ? 5 : 7;
        Engine series(th, {3, std::max(0, D - 1), true, 0});
        GoldenReport g = golden_check(series, D);
        json gj = json::array();
        for (const auto& sc : g.series) {
            json c = json::array();
            for (const auto& v : sc.computed) c.push_back(v.str());
            gj.push_back({{"name", sc.name}, {"coefficients", c}, {"pass", sc.pass}, {"note", sc.note}});
            r.check(sc.pass, "series " + sc.name);
        }
        r.extra["series"] = gj;

        Engine small(th, {5, 1, true, 0});
        GenusOne g1(small);
        const int P = th.top();
        r.equal(g1.getzler_solve({{P}, 0}), Rational(-1, 24), "<P>_{1,1,0}");
        for (int n = 2; n <= 4; ++n)
            r.equal(g1.getzler_solve({std::vector<int>(n, P), 0}), 0, "<P^" + std::to_string(n) + ">_{1,n,0}");
    } else {
        struct Seed {
            std::vector<int> ins;
            Rational value;
        };
        std::vector<Seed> seeds_expected, zeros;
        switch (th.id) {
            case TheoryId::FJRW_P8:
                seeds_expected = {{labels(th, {"e_x", "e_x", "e_x", "e_xyz"}), Rational(1, 3)}};
                zeros = {{labels(th, {"e_x", "e_y", "e_z", "e_xyz"}), 0}};
                break;
            case TheoryId::FJRW_X9T:
                seeds_expected = {{labels(th, {"e1", "e5", "e7", "e7"}), Rational(-1, 6)}};
                break;
            default:
                seeds_expected = {{labels(th, {"e8", "e8", "e8", "e10"}), Rational(1, 3)},
                                  {labels(th, {"e1", "e1", "e4", "e10"}), Rational(1, 3)}};
                zeros = {{labels(th, {"e1", "e8", "e5", "e10"}), 0}};
        }
        for (const auto& sd : seeds_expected) {
            std::array<int, 4> q{sd.ins[0], sd.ins[1], sd.ins[2], sd.ins[3]};
            r.equal(grr_four_point(th.id, q).value, sd.value, "GRR " + key_text(th, make_key(sd.ins)));
            r.equal(e.correlator(sd.ins), sd.value, key_text(th, make_key(sd.ins)));
        }
        for (const auto& z : zeros) {
            std::array<int, 4> q{z.ins[0], z.ins[1], z.ins[2], z.ins[3]};
            r.check(grr_four_point(th.id, q).status == GrrStatus::EmptyModuli, "empty moduli " + key_text(th, make_key(z.ins)));
            r.equal(e.correlator(z.ins), 0, key_text(th, make_key(z.ins)));
        }
        Engine small(th, {5, 0, true, 0});
        GenusOne g1(small);
        const Rational lead = th.id == TheoryId::FJRW_X9T ? Rational(-2, 3) : Rational(4, 3);
        const auto& q0 = seeds_expected.front().ins;
        G1Linear t = g1.stratum_terms(StratumId::D34, {q0[0], q0[1], q0[2], q0[3]}, 0, 0);
        auto it = t.coef.find(1);
        r.check(t.constant.is_zero() && t.coef.size() == 1 && it != t.coef.end() && it->second == lead,
                "d34 coefficient of <top>_{1,1}");
    }
    return r;
}

static void multisets(int dim, int n, const std::function<void(const std::vector<int>&)>& f) {
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

static SuiteResult suite_wdvv(Session& s) {
    const Theory& th = s.theory();
    Engine& e = s.engine();
    SuiteResult r;
    const int n_max = s.config().n_max, dcap = s.config().degree_cap();
    std::size_t trivial = 0;
    for (int extra = 0; 4 + extra <= n_max; ++extra)
        multisets(th.dim(), 4, [&](const std::vector<int>& q) {
            multisets(th.dim(), extra, [&](const std::vector<int>& S) {
                std::vector<int> all = q;
                all.insert(all.end(), S.begin(), S.end());
                if (!selection_ok(th, all)) {
                    ++trivial;
                    return;
                }
                for (int d = 0; d <= dcap; ++d) {
                    // ab|ce against ac|be and against ae|bc
                    Rational r1 = e.wdvv_residual(q[0], q[1], q[2], q[3], S, d);
                    Rational r2 = e.wdvv_residual(q[0], q[1], q[3], q[2], S, d);
                    std::string where = key_text(th, make_key(all, d));
                    r.check(r1.is_zero(), "residual " + r1.str() + " at " + where);
                    r.check(r2.is_zero(), "residual " + r2.str() + " at " + where);
                }
            });
        });
    r.extra["selection_zero"] = trivial;
    return r;
}

static SuiteResult suite_getzler(Session& s) {
    SuiteResult r;
    GenusOne* g = s.genus_one();
    const int lim = s.genus_one_limit();
    if (lim < 0 || g == nullptr) {
        r.extra["skipped"] = "caps too small for genus one";
        return r;
    }
    const Theory& th = s.theory();
    std::size_t skipped = 0;
    for (const auto& q : g->admissible_quadruples()) {
        std::vector<std::pair<int, int>> grid;  // (k, D)
        if (th.gw())
            for (int D = 0; D <= lim; ++D) grid.push_back({0, D});
        else
            for (int k = 0; k + 2 <= lim; ++k) grid.push_back({k, 0});
        for (auto [k, D] : grid) {
            try {
                Rational res = g->residual(q, k, D);
                r.check(res.is_zero(), "Getzler residual " + res.str() + " at k=" + std::to_string(k) +
                                           " D=" + std::to_string(D));
            } catch (const MissingDependency&) {
                ++skipped;
            }
        }
    }
    json values = json::object();
    for (int u = th.gw() ? 0 : 1; u <= lim; ++u) {
        Rational v = g->solve_basic(u);
        values[std::to_string(u)] = v.str();
        int used = 0;
        for (const auto& q : g->admissible_quadruples()) {
            std::optional<Rational> alt;
            try {
                alt = g->try_solve_with(u, q);
            } catch (const CapExceeded&) {
                continue;
            }
            if (!alt) continue;
            ++used;
            r.equal(*alt, v, "quadruple choice for unknown " + std::to_string(u));
        }
        r.check(used >= 1, "no quadruple isolates unknown " + std::to_string(u));
    }
    r.extra["basic_values"] = values;
    r.extra["residuals_skipped"] = skipped;
    return r;
}

static json bounds_json(Session& s, SuiteResult& r) {
    const Theory& th = s.theory();
    const int lim = s.genus_one_limit();
    GrowthCaps caps{s.config().n_max, s.config().degree_cap(), std::max(0, lim)};
    GrowthReport g = growth_table(s.engine(), lim >= 0 ? s.genus_one() : nullptr, caps);
    json table = json::array();
    for (const auto& [k, v] : g.table)
        table.push_back({{"g", std::get<0>(k)}, {"n", std::get<1>(k)}, {"d", std::get<2>(k)}, {"max_abs", v.str()}});
    for (const auto& v : g.violations) r.check(false, v);
    r.check(true, "growth table");
    InequalityReport ineq = inequality_checks(50, 60);
    for (const auto& row : ineq.rows)
        r.check(row.ok, row.name + " at " + std::to_string(row.parameter) + ": " + row.lhs.str() + " > " + row.rhs.str());
    json j = {{"theory", theory_name(th.id)},
              {"fitted_C", g.fitted_C.str()},
              {"fitted_C_decimal", g.fitted_C.raw().get_d()},
              {"small_constant", g.small_constant.str()},
              {"table", table},
              {"bounds", g.bounds.size()},
              {"inequality_rows", ineq.rows.size()}};
    return j;
}

static SuiteResult suite_bounds(Session& s) {
    SuiteResult r;
    r.extra["growth"] = bounds_json(s, r);
    return r;
}

static SuiteResult suite_oracle(Session& s) {
    const Theory& th = s.theory();
    SuiteResult r;
    try {
        SolverResult sol = solve_system(th, s.config().n_max, s.config().degree_cap());
        for (const auto& [k, v] : sol.values) r.equal(s.engine().correlator(k), v, key_text(th, k));
        r.extra["unknowns"] = sol.stats.unknowns;
        r.extra["relations"] = sol.stats.relations;
    } catch (const Underdetermined& u) {
        r.check(false, std::string("solver underdetermined: ") + u.what());
    }
    r.extra["fallbacks"] = s.engine().fallback_count();
    return r;
}

json cmd_verify(const TheoryConfig& c, Suite suite) {
    Session s(c);
    s.run();
    json out = {{"theory", theory_name(c.target)}, {"suites", json::object()}};
    bool pass = true;
    auto add = [&](Suite which, const std::function<SuiteResult(Session&)>& f) {
        if (suite != which && suite != Suite::All) return;
        SuiteResult r = f(s);
        pass = pass && r.failures.empty();
        out["suites"][suite_name(which)] = r.to_json();
    };
    add(Suite::Paper, suite_paper);
    add(Suite::Wdvv, suite_wdvv);
    add(Suite::Getzler, suite_getzler);
    add(Suite::Bounds, suite_bounds);
    add(Suite::Oracle, suite_oracle);
    out["pass"] = pass;
    return out;
}

json cmd_bounds(const TheoryConfig& c) {
    Session s(c);
    s.run();
    SuiteResult r;
    json j = bounds_json(s, r);
    j["pass"] = r.failures.empty();
    j["violations"] = r.failures;
    return j;
}

std::string cmd_explain(const TheoryConfig& c, const std::vector<std::string>& labels_in, int d, int genus) {
    c.validate();
    const Theory& th = get_theory(c.target, c.broad_sign);
    if (labels_in.empty()) throw UsageError("explain needs at least one insertion");
    if (genus != 0 && genus != 1) throw UsageError("genus must be 0 or 1");
    const Key want = make_key(ids_or_usage(th, labels_in), d);
    auto f = read_cache(cache_path(c), th);
    if (!f || !header_matches(f->header, c, th)) throw KeyNotFound("no usable cache for " + theory_name(th.id));
    std::map<std::pair<int, Key>, const CacheRecord*> index;
    for (const auto& r : f->records) index[{r.genus, r.key}] = &r;
    auto it = index.find({genus, want});
    if (it == index.end()) throw KeyNotFound("not cached: " + key_text(th, want) + " at genus " + std::to_string(genus));

    std::ostringstream os;
    const CacheRecord& root = *it->second;
    os << key_text(th, root.key) << (genus == 1 ? " genus 1" : "") << "  chain length " << root.depth << '\n';
    std::set<Key> shown;
    std::function<void(const CacheRecord&, int)> walk = [&](const CacheRecord& r, int indent) {
        os << std::string(2 * indent, ' ') << key_text(th, r.key) << " = " << r.value.str() << "  [" << r.rule
           << "] length " << r.depth;
        if (r.genus == 0 && !shown.insert(r.key).second && !r.children.empty()) {
            os << "  (expanded above)\n";
            return;
        }
        os << '\n';
        for (const auto& k : r.children) {
            auto c2 = index.find({0, k});
            if (c2 == index.end()) {
                os << std::string(2 * indent + 2, ' ') << key_text(th, k) << "  (not cached)\n";
                continue;
            }
            walk(*c2->second, indent + 1);
        }
    };
    walk(root, 1);
    return os.str();
}

void cmd_export(const TheoryConfig& c, ExportFormat fmt, std::ostream& out) {
    c.validate();
    const Theory& th = get_theory(c.target, c.broad_sign);
    std::vector<CacheRecord> recs;
    if (auto f = read_cache(cache_path(c), th); f && header_matches(f->header, c, th)) recs = f->records;
    std::sort(recs.begin(), recs.end(), record_less);
    if (fmt == ExportFormat::Csv) {
        out << "theory,genus,insertions,degree,value\n";
        for (const auto& r : recs) {
            std::string ins;
            for (int i : r.key.ins) ins += (ins.empty() ? "" : " ") + th.el(i).label;
            out << theory_name(th.id) << ',' << r.genus << ',' << ins << ',' << r.key.d << ',' << r.value.str() << '\n';
        }
    } else {
        json rows = json::array();
        for (const auto& r : recs)
            rows.push_back({{"genus", r.genus},
                            {"insertions", labels_of(th, r.key.ins)},
                            {"degree", r.key.d},
                            {"value", r.value.str()}});
        json j = {{"theory", theory_name(th.id)}, {"correlators", rows}};
        out << j.dump(1) << '\n';
    }
    if (!out) throw IOError("export write failed");
}

void cmd_export(const TheoryConfig& c, ExportFormat fmt, const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw IOError("cannot write " + p.string());
    cmd_export(c, fmt, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact genus-0/genus-1 correlator calculator"};
    app.require_subcommand(1);
    std::string theory = "gw:p333", strategy = "rewrite", sign = "plus", cache, out_path, suite = "all",
                format = "json";
    int n_max = 5, d_max = 3, order = -1, degree = 0, genus = 0, top = 0;
    std::vector<std::string> key_labels;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--theory", theory, "gw:p333 gw:p442 gw:p632 fjrw:p8 fjrw:x9t fjrw:j10t");
        sub->add_option("--nmax", n_max, "largest marking count");
        sub->add_option("--dmax", d_max, "largest degree (GW)");
        sub->add_option("--topmax", top, "genus-one marking cap (FJRW)");
        sub->add_option("--order", order, "series truncation");
        sub->add_option("--strategy", strategy, "rewrite, solver or both");
        sub->add_option("--sign", sign, "broad sector sign: plus or minus");
        sub->add_option("--cache", cache, "cache file");
        sub->add_option("--out", out_path, "output file");
    };
    CLI::App* compute = app.add_subcommand("compute", "compute and cache every correlator within caps");
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    CLI::App* explain = app.add_subcommand("explain", "print the derivation of a cached correlator");
    CLI::App* exporter = app.add_subcommand("export", "write the cache as json or csv");
    CLI::App* bounds = app.add_subcommand("bounds", "growth table and fitted constant");
    for (auto* sub : {compute, verify, explain, exporter, bounds}) common(sub);
    verify->add_option("--suite", suite, "paper, wdvv, getzler, bounds, oracle or all");
    explain->add_option("--key", key_labels, "insertion labels")->delimiter(',')->required();
    explain->add_option("--degree", degree, "curve degree");
    explain->add_option("--genus", genus, "0 or 1");
    exporter->add_option("--format", format, "json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 3;
    }

    auto emit = [&](const std::string& text) {
        if (out_path.empty() || exporter->parsed()) {
            out << text;
            return;
        }
        std::ofstream f(out_path, std::ios::trunc);
        if (!f) throw IOError("cannot write " + out_path);
        f << text;
    };

    try {
        TheoryConfig c;
        auto t = parse_theory(theory);
        if (!t) throw UsageError("unknown theory " + theory);
        c.target = *t;
        auto st = parse_strategy(strategy);
        if (!st) throw UsageError("unknown strategy " + strategy);
        c.strategy = *st;
        if (sign != "plus" && sign != "minus") throw UsageError("sign must be plus or minus");
        c.broad_sign = sign == "plus" ? BroadSign::Plus : BroadSign::Minus;
        c.n_max = n_max;
        c.d_max = d_max;
        c.order = order;
        c.top_count_max = top;
        c.cache_path = cache;
        c.validate();

        if (compute->parsed()) {
            ComputeSummary s = cmd_compute(c);
            json j = {{"cache", s.cache.string()},
                      {"records", s.records},
                      {"loaded", s.loaded},
                      {"appended", s.appended},
                      {"invalidated", s.invalidated}};
            emit(j.dump(1) + "\n");
            return 0;
        }
        if (verify->parsed()) {
            auto su = parse_suite(suite);
            if (!su) throw UsageError("unknown suite " + suite);
            json j = cmd_verify(c, *su);
            emit(j.dump(1) + "\n");
            return j["pass"].get<bool>() ? 0 : 1;
        }
        if (explain->parsed()) {
            emit(cmd_explain(c, key_labels, degree, genus));
            return 0;
        }
        if (exporter->parsed()) {
            if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
            ExportFormat f = format == "csv" ? ExportFormat::Csv : ExportFormat::Json;
            if (out_path.empty())
                cmd_export(c, f, out);
            else
                cmd_export(c, f, std::filesystem::path(out_path));
            return 0;
        }
        json j = cmd_bounds(c);
        emit(j.dump(1) + "\n");
        return j["pass"].get<bool>() ? 0 : 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 3;
    } catch (const StrategyMismatch& e) {
        err << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ell
