#include "doctest.h"
#include "ell/shell.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace ell;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("ellcalc-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TheoryConfig config(TheoryId t, int n, int d, const fs::path& cache) {
    TheoryConfig c;
    c.target = t;
    c.n_max = n;
    c.d_max = d;
    c.cache_path = cache;
    return c;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
    std::vector<const char*> argv{"ellcalc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    int rc = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    return rc;
}

}  // namespace

TEST_CASE("config validation and names") {
    TheoryConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_max = 2;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.n_max = 5;
    c.top_count_max = 4;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.top_count_max = 3;
    CHECK(c.top_count() == 3);
    CHECK(parse_strategy("both") == Strategy::Both);
    CHECK_FALSE(parse_strategy("guess"));
    CHECK(parse_suite("getzler") == Suite::Getzler);
    CHECK(suite_name(Suite::All) == "all");
    TheoryConfig f;
    f.target = TheoryId::FJRW_X9T;
    f.d_max = 7;
    CHECK(f.degree_cap() == 0);
    CHECK(f.cache_fields()["d_max"] == 0);
}

TEST_CASE("default cache location follows the environment") {
    TempDir tmp;
    TheoryConfig c;
    c.target = TheoryId::FJRW_J10T;
    c.broad_sign = BroadSign::Minus;
    ::setenv("ELLCALC_CACHE_DIR", tmp.path.c_str(), 1);
    CHECK(default_cache_path(c) == tmp.path / "fjrw_j10t-minus.jsonl");
    ::unsetenv("ELLCALC_CACHE_DIR");
    CHECK(default_cache_path(c) == fs::path(".") / "fjrw_j10t-minus.jsonl");
    c.cache_path = tmp.path / "x.jsonl";
    CHECK(cache_path(c) == tmp.path / "x.jsonl");
}

TEST_CASE("compute is deterministic and idempotent") {
    TempDir tmp;
    auto a = config(TheoryId::GW_P442, 5, 3, tmp.path / "a.jsonl");
    auto b = config(TheoryId::GW_P442, 5, 3, tmp.path / "b.jsonl");
    ComputeSummary s1 = cmd_compute(a);
    CHECK(s1.loaded == 0);
    CHECK(s1.appended > 0);
    cmd_compute(b);
    const std::string first = slurp(a.cache_path);
    CHECK(first == slurp(b.cache_path));

    ComputeSummary s2 = cmd_compute(a);
    CHECK(s2.appended == 0);
    CHECK(s2.loaded == s1.appended);
    CHECK(slurp(a.cache_path) == first);

    const Theory& th = get_theory(TheoryId::GW_P442);
    auto f = read_cache(a.cache_path, th);
    REQUIRE(f);
    CHECK(header_matches(f->header, a, th));
    CHECK(f->header["seed_hash"] == seed_hash(th));
    bool seed = false, genus_one = false;
    for (const auto& r : f->records) {
        CHECK(record_line(th, parse_record(th, record_line(th, r))) == record_line(th, r));
        if (r.key == make_key({th.space.find("Dx1"), th.space.find("Dy1"), th.space.find("Dz1")}, 1)) {
            seed = true;
            CHECK(r.rule == "Seed");
        }
        if (r.genus == 1 && r.key.d == 0) {
            genus_one = true;
            CHECK(r.value == Rational(-1, 24));
        }
    }
    CHECK(seed);
    CHECK(genus_one);
}

TEST_CASE("cache integrity") {
    TempDir tmp;
    auto c = config(TheoryId::GW_P333, 4, 1, tmp.path / "c.jsonl");
    cmd_compute(c);
    const std::string good = slurp(c.cache_path);

    // tampered seed hash
    {
        std::string bad = good;
        auto pos = bad.find(seed_hash(get_theory(TheoryId::GW_P333)));
        REQUIRE(pos != std::string::npos);
        bad.replace(pos, 4, "zzzz");
        std::ofstream(c.cache_path) << bad;
        ComputeSummary s = cmd_compute(c);
        CHECK(s.invalidated);
        CHECK(s.loaded == 0);
        CHECK(slurp(c.cache_path) == good);
    }
    // a different configuration does not reuse the file
    {
        auto other = c;
        other.d_max = 2;
        CHECK(cmd_compute(other).invalidated);
        CHECK(cmd_compute(c).invalidated);
        CHECK(slurp(c.cache_path) == good);
    }
    // a corrupt value is reported, not ignored
    {
        std::string bad = good;
        auto pos = bad.find("\"value\":\"");
        bad.insert(pos + 9, "x");
        std::ofstream(c.cache_path) << bad;
        CHECK_THROWS_AS(cmd_compute(c), IOError);
    }
}

TEST_CASE("ring constants only") {
    TempDir tmp;
    auto c = config(TheoryId::GW_P333, 3, 0, tmp.path / "r.jsonl");
    cmd_compute(c);
    auto f = read_cache(c.cache_path, get_theory(TheoryId::GW_P333));
    REQUIRE(f);
    int ring = 0;
    for (const auto& r : f->records) {
        CHECK(r.genus == 0);
        CHECK(r.key.n() == 3);
        if (r.rule == "CRProduct") ++ring;
    }
    CHECK(ring == 7);
}

TEST_CASE("solver and combined strategies") {
    TempDir tmp;
    auto s = config(TheoryId::FJRW_P8, 5, 0, tmp.path / "s.jsonl");
    s.strategy = Strategy::Solver;
    cmd_compute(s);
    auto both = config(TheoryId::FJRW_P8, 5, 0, tmp.path / "b.jsonl");
    both.strategy = Strategy::Both;
    CHECK_NOTHROW(cmd_compute(both));
    const Theory& th = get_theory(TheoryId::FJRW_P8);
    auto f = read_cache(s.cache_path, th);
    REQUIRE(f);
    for (const auto& r : f->records) CHECK(r.genus == 0);
    const auto seed = make_key({th.space.find("e_x"), th.space.find("e_x"), th.space.find("e_x"), th.space.find("e_xyz")});
    bool found = false;
    for (const auto& r : f->records)
        if (r.key == seed) {
            found = true;
            CHECK(r.value == Rational(1, 3));
        }
    CHECK(found);
}

TEST_CASE("explain") {
    TempDir tmp;
    auto c = config(TheoryId::GW_P333, 4, 1, tmp.path / "e.jsonl");
    CHECK_THROWS_AS(cmd_explain(c, {"Dx1", "Dy1", "Dz1"}, 1), KeyNotFound);
    cmd_compute(c);
    std::string seed = cmd_explain(c, {"Dz1", "Dx1", "Dy1"}, 1);
    CHECK(seed.find("[Seed]") != std::string::npos);
    CHECK(std::count(seed.begin(), seed.end(), '\n') == 2);

    std::string t3 = cmd_explain(c, {"Dx1", "Dx1", "Dx2", "Dx2"}, 0);
    CHECK(t3.find("[Type3]") != std::string::npos);
    CHECK(t3.find("-1/9") != std::string::npos);
    CHECK(t3.find("<Dx1,Dy1,Dz1>_d1 = 1  [Seed]") != std::string::npos);

    CHECK(cmd_explain(c, {"P"}, 0, 1).find("-1/24") != std::string::npos);
    CHECK_THROWS_AS(cmd_explain(c, {"Dx1", "Dy1", "Dz1"}, 7), KeyNotFound);
    CHECK_THROWS_AS(cmd_explain(c, {"nope"}, 0), UsageError);
}

TEST_CASE("export") {
    TempDir tmp;
    auto c = config(TheoryId::GW_P442, 4, 2, tmp.path / "x.jsonl");
    std::ostringstream empty;
    cmd_export(c, ExportFormat::Csv, empty);
    CHECK(empty.str() == "theory,genus,insertions,degree,value\n");
    std::ostringstream empty_json;
    cmd_export(c, ExportFormat::Json, empty_json);
    CHECK(nlohmann::json::parse(empty_json.str())["correlators"].empty());

    cmd_compute(c);
    std::ostringstream csv1, csv2, js1, js2;
    cmd_export(c, ExportFormat::Csv, csv1);
    cmd_export(c, ExportFormat::Csv, csv2);
    cmd_export(c, ExportFormat::Json, js1);
    cmd_export(c, ExportFormat::Json, js2);
    CHECK(csv1.str() == csv2.str());
    CHECK(js1.str() == js2.str());
    CHECK(csv1.str().find("gw:p442,0,Dx1 Dx1 Dx3 Dx3,0,-1/16\n") != std::string::npos);
    CHECK(csv1.str().find("gw:p442,1,P,0,-1/24\n") != std::string::npos);
    auto j = nlohmann::json::parse(js1.str());
    CHECK(j["theory"] == "gw:p442");
    CHECK_FALSE(j["correlators"].empty());

    CHECK_THROWS_AS(cmd_export(c, ExportFormat::Csv, tmp.path / "missing-dir" / "out.csv"), IOError);
}

TEST_CASE("verify suites") {
    TempDir tmp;
    auto c = config(TheoryId::FJRW_X9T, 5, 0, tmp.path / "v.jsonl");
    auto w = cmd_verify(c, Suite::Wdvv);
    CHECK(w["pass"] == true);
    CHECK(w["suites"].size() == 1);
    CHECK(w["suites"]["wdvv"]["checks"].get<int>() > 0);

    auto all = cmd_verify(config(TheoryId::GW_P333, 4, 2, tmp.path / "p.jsonl"), Suite::All);
    CHECK(all["pass"] == true);
    for (const char* s : {"paper", "wdvv", "getzler", "bounds", "oracle"}) {
        INFO(s);
        CHECK(all["suites"][s]["pass"] == true);
    }
    CHECK(all["suites"]["paper"]["series"][0]["coefficients"] == nlohmann::json::array({"0", "1"}));

    // genus one is skipped below four markings
    auto small = cmd_verify(config(TheoryId::FJRW_P8, 3, 0, tmp.path / "s.jsonl"), Suite::Getzler);
    CHECK(small["pass"] == true);
    CHECK(small["suites"]["getzler"].contains("skipped"));
}

TEST_CASE("command line exit codes") {
    TempDir tmp;
    const std::string cache = (tmp.path / "cli.jsonl").string();
    std::string out;
    CHECK(cli({"compute", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache}, &out) == 0);
    CHECK(nlohmann::json::parse(out)["records"].get<int>() > 0);
    CHECK(cli({"verify", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache, "--suite", "paper"}, &out) == 0);
    CHECK(nlohmann::json::parse(out)["pass"] == true);
    CHECK(cli({"explain", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache, "--key", "e_x,e_x,e_x,e_xyz"}, &out) == 0);
    CHECK(out.find("1/3") != std::string::npos);
    CHECK(cli({"explain", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache, "--key", "e_x,e_x,e_x"}) == 2);
    CHECK(cli({"export", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache, "--format", "csv"}, &out) == 0);
    CHECK(out.rfind("theory,genus,insertions,degree,value\n", 0) == 0);

    CHECK(cli({}) == 3);
    CHECK(cli({"compute", "--theory", "gw:p999"}) == 3);
    CHECK(cli({"compute", "--nmax", "1"}) == 3);
    CHECK(cli({"compute", "--strategy", "guess"}) == 3);
    CHECK(cli({"verify", "--suite", "everything", "--cache", cache}) == 3);
    CHECK(cli({"export", "--format", "xml", "--cache", cache}) == 3);
    CHECK(cli({"compute", "--nmax", "five"}) == 3);

    // a corrupt cache is an engine-side error
    std::ofstream(cache, std::ios::app) << "{not json\n";
    CHECK(cli({"compute", "--theory", "fjrw:p8", "--nmax", "5", "--cache", cache}) == 2);

    const std::string out_file = (tmp.path / "bounds.json").string();
    CHECK(cli({"bounds", "--theory", "fjrw:p8", "--nmax", "6", "--cache", (tmp.path / "b.jsonl").string(), "--out", out_file}) == 0);
    std::ifstream in(out_file);
    auto j = nlohmann::json::parse(in);
    CHECK(j["fitted_C"] == "1");
    CHECK(j["pass"] == true);
}
