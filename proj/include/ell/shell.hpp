#pragma once

#include "ell/bounds.hpp"
#include "ell/mirror.hpp"
#include "ell/recon1.hpp"
#include "ell/wstructure.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ell {

inline constexpr const char* kEngineVersion = "ell-engine/1";

enum class Strategy { Rewrite, Solver, Both };
enum class Suite { Paper, Wdvv, Getzler, Bounds, Oracle, All };
enum class ExportFormat { Json, Csv };

std::string strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);
std::string suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view s);

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct KeyNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// the two strategies disagree
struct StrategyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TheoryConfig {
    TheoryId target = TheoryId::GW_P333;
    int n_max = 5;
    int d_max = 3;          // forced to 0 for FJRW
    int top_count_max = 0;  // genus one, FJRW: 0 means n_max - 2
    Strategy strategy = Strategy::Rewrite;
    BroadSign broad_sign = BroadSign::Plus;
    std::filesystem::path cache_path;  // empty: default location
    int order = -1;                    // series truncation; -1: per suite default

    int degree_cap() const { return is_gw(target) ? d_max : 0; }
    int top_count() const { return top_count_max > 0 ? top_count_max : n_max - 2; }
    // throws UsageError
    void validate() const;
    // the part of the config that determines the cache contents
    nlohmann::json cache_fields() const;
};

// $ELLCALC_CACHE_DIR (or the working directory) / <theory>[-minus].jsonl
std::filesystem::path default_cache_path(const TheoryConfig& c);
std::filesystem::path cache_path(const TheoryConfig& c);

struct CacheRecord {
    int genus = 0;
    Key key;
    Rational value;
    std::string rule;
    int depth = 0;
    std::vector<Key> children;
};

struct CacheFile {
    nlohmann::json header;
    std::vector<CacheRecord> records;
};

std::string header_line(const TheoryConfig& c, const Theory& th);
std::string record_line(const Theory& th, const CacheRecord& r);
CacheRecord parse_record(const Theory& th, const std::string& line);
// nullopt when the file does not exist; IOError when unreadable or malformed
std::optional<CacheFile> read_cache(const std::filesystem::path& p, const Theory& th);
bool header_matches(const nlohmann::json& header, const TheoryConfig& c, const Theory& th);

// key under which a genus-one basic unknown is cached
Key genus_one_key(const Theory& th, int u);

// engines bound to a config, filled from the cache and then completed
class Session {
public:
    explicit Session(const TheoryConfig& c);

    const TheoryConfig& config() const { return cfg_; }
    const Theory& theory() const { return th_; }
    Engine& engine() { return *engine_; }
    GenusOne* genus_one() { return g1_.get(); }
    int genus_one_limit() const;  // largest basic unknown computed; -1 when skipped

    // loads the cache, computes what is missing, appends to the cache
    void run();

    std::size_t loaded() const { return loaded_; }
    std::size_t appended() const { return appended_; }
    bool invalidated() const { return invalidated_; }
    const std::filesystem::path& path() const { return path_; }
    std::vector<CacheRecord> records() const;

private:
    TheoryConfig cfg_;
    const Theory& th_;
    std::unique_ptr<Engine> engine_;
    std::unique_ptr<GenusOne> g1_;
    std::filesystem::path path_;
    std::size_t loaded_ = 0, appended_ = 0;
    bool invalidated_ = false;
};

struct ComputeSummary {
    std::filesystem::path cache;
    std::size_t records = 0;
    std::size_t loaded = 0;
    std::size_t appended = 0;
    bool invalidated = false;
};

ComputeSummary cmd_compute(const TheoryConfig& c);
// {"theory", "pass", "suites": {name: {"pass", "checks", "failures"}}}
nlohmann::json cmd_verify(const TheoryConfig& c, Suite s);
// reads the cache only
std::string cmd_explain(const TheoryConfig& c, const std::vector<std::string>& labels, int d, int genus = 0);
void cmd_export(const TheoryConfig& c, ExportFormat f, std::ostream& out);
void cmd_export(const TheoryConfig& c, ExportFormat f, const std::filesystem::path& out);
nlohmann::json cmd_bounds(const TheoryConfig& c);

// exit codes: 0 pass, 1 verification failure, 2 engine error, 3 usage error
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ell
