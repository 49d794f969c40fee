#pragma once

#include "ell/frobenius.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

namespace ell {

// Genus-0 primary correlator key: sorted insertion ids and curve degree (0 for FJRW).
struct Key {
    std::vector<int> ins;
    int d = 0;

    int n() const { return static_cast<int>(ins.size()); }
    friend bool operator==(const Key&, const Key&) = default;
    friend auto operator<=>(const Key& a, const Key& b) {
        if (auto c = a.d <=> b.d; c != 0) return c;
        if (auto c = a.ins.size() <=> b.ins.size(); c != 0) return c;
        return a.ins <=> b.ins;
    }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::size_t h = std::hash<int>{}(k.d);
        for (int i : k.ins) h = h * 1000003u ^ std::hash<int>{}(i + 17);
        return h;
    }
};

Key make_key(std::vector<int> ins, int d = 0);
std::string key_text(const Theory& th, const Key& k);

enum class Rule {
    Seed,
    Selection0,
    String0,
    Divisor,
    CRProduct,
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Type6,
    Basic5,
    NonBasicSplit,
    WDVVd0,
    SolverFallback,
};

std::string rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view s);

// Outcome of the string, divisor and selection axioms and the ring lookup.
struct Reduced {
    enum Kind { Zero, Constant, Core } kind = Zero;
    Rational scalar;  // the value for Constant, the prefactor for Core
    Key key;          // Core only
    Rule rule = Rule::Selection0;
};

Reduced reduce(const Theory& th, std::vector<int> ins, int d);
bool selection_ok(const Theory& th, const std::vector<int>& ins, int genus = 0);

// Registered seeds: the single degree-one GW invariant and the FJRW four-point values.
struct SeedEntry {
    Key key;
    Rational value;
};
std::vector<SeedEntry> seeds(const Theory& th);
std::string seed_hash(const Theory& th);

enum class Classification { NotBasic, Type1, Type2, Type3, Type4, Type5, Type6, Basic4, Basic5 };
std::string classification_name(Classification c);
Classification classify(const Theory& th, const Key& k);

// every core key (selection-admissible, no unit, no divisor class) with 3 <= n <= n_max at degree d
std::vector<Key> core_keys(const Theory& th, int n_max, int d);

}  // namespace ell
