#include "ell/correlator.hpp"

#include "ell/wstructure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ell {

Key make_key(std::vector<int> ins, int d) {
    std::sort(ins.begin(), ins.end());
    return Key{std::move(ins), d};
}

std::string key_text(const Theory& th, const Key& k) {
    std::string s = "<";
    for (std::size_t i = 0; i < k.ins.size(); ++i) {
        if (i) s += ",";
        s += th.el(k.ins[i]).label;
    }
    s += ">";
    if (th.gw()) s += "_d" + std::to_string(k.d);
    return s;
}

namespace {
constexpr std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Seed, "Seed"},         {Rule::Selection0, "Selection0"}, {Rule::String0, "String0"},
    {Rule::Divisor, "Divisor"},   {Rule::CRProduct, "CRProduct"},   {Rule::Type1, "Type1"},
    {Rule::Type2, "Type2"},       {Rule::Type3, "Type3"},           {Rule::Type4, "Type4"},
    {Rule::Type5, "Type5"},       {Rule::Type6, "Type6"},           {Rule::Basic5, "Basic5"},
    {Rule::NonBasicSplit, "NonBasicSplit"}, {Rule::WDVVd0, "WDVVd0"}, {Rule::SolverFallback, "SolverFallback"},
};
}  // namespace

std::string rule_name(Rule r) {
    for (auto [rule, name] : kRuleNames)
        if (rule == r) return name;
    return "?";
}

std::optional<Rule> parse_rule(std::string_view s) {
    for (auto [rule, name] : kRuleNames)
        if (s == name) return rule;
    return std::nullopt;
}

bool selection_ok(const Theory& th, const std::vector<int>& ins, int genus) {
    Rational sum;
    for (int i : ins) sum += th.el(i).degree;
    if (sum != Rational(2 * genus - 2 + static_cast<long>(ins.size()))) return false;
    if (th.gw()) return true;
    std::vector<GroupElement> dec;
    for (int i : ins) dec.push_back(sector_element(th.el(i)));
    return integral(line_bundle_degrees(genus, dec));
}

Reduced reduce(const Theory& th, std::vector<int> ins, int d) {
    Reduced r;
    if (!selection_ok(th, ins)) return r;
    std::sort(ins.begin(), ins.end());
    const int unit = th.unit();
    if (std::find(ins.begin(), ins.end(), unit) != ins.end()) {
        if (ins.size() == 3 && d == 0) {
            r.kind = Reduced::Constant;
            r.scalar = th.ring.three_point(ins[0], ins[1], ins[2]);
            r.rule = Rule::CRProduct;
        } else {
            r.rule = Rule::String0;
        }
        return r;
    }
    Rational scalar(1);
    bool divided = false;
    if (th.gw()) {
        const int top = th.top();
        while (ins.size() >= 4) {
            auto it = std::find(ins.begin(), ins.end(), top);
            if (it == ins.end()) break;
            if (d == 0) {
                r.rule = Rule::Divisor;
                return r;
            }
            ins.erase(it);
            scalar *= d;
            divided = true;
        }
    }
    if (ins.size() == 3 && (d == 0 || !th.gw())) {
        r.kind = Reduced::Constant;
        r.scalar = scalar * th.ring.three_point(ins[0], ins[1], ins[2]);
        r.rule = divided ? Rule::Divisor : Rule::CRProduct;
        if (r.scalar.is_zero()) r.kind = Reduced::Zero;
        return r;
    }
    r.kind = Reduced::Core;
    r.scalar = scalar;
    r.key = Key{std::move(ins), d};
    r.rule = divided ? Rule::Divisor : Rule::Seed;
    return r;
}

std::vector<SeedEntry> seeds(const Theory& th) {
    const auto& s = th.space;
    auto k = [&](std::vector<const char*> labels, int d) {
        std::vector<int> ids;
        for (auto l : labels) ids.push_back(s.find(l));
        return make_key(ids, d);
    };
    auto grr = [&](std::array<const char*, 4> labels) {
        std::array<int, 4> ids;
        for (int i = 0; i < 4; ++i) ids[i] = s.find(labels[i]);
        return SeedEntry{make_key({ids.begin(), ids.end()}), grr_four_point(th.id, ids).value};
    };
    switch (th.id) {
        case TheoryId::GW_P333:
        case TheoryId::GW_P442:
        case TheoryId::GW_P632:
            return {{k({"Dx1", "Dy1", "Dz1"}, 1), 1}};
        case TheoryId::FJRW_P8:
            return {grr({"e_x", "e_x", "e_x", "e_xyz"}), grr({"e_y", "e_y", "e_y", "e_xyz"}),
                    grr({"e_z", "e_z", "e_z", "e_xyz"}), grr({"e_x", "e_y", "e_z", "e_xyz"})};
        case TheoryId::FJRW_X9T:
            return {grr({"e1", "e5", "e7", "e7"})};
        case TheoryId::FJRW_J10T:
            return {grr({"e8", "e8", "e8", "e10"}), grr({"e1", "e1", "e4", "e10"}), grr({"e1", "e8", "e5", "e10"})};
    }
    return {};
}

std::string seed_hash(const Theory& th) {
    std::ostringstream os;
    os << theory_name(th.id) << (th.sign == BroadSign::Plus ? "+" : "-");
    for (int a = 0; a < th.dim(); ++a)
        for (int b = a; b < th.dim(); ++b) {
            os << "|" << th.space.eta(a, b).str();
            for (int c = b; c < th.dim(); ++c) os << "," << th.ring.three_point(a, b, c).str();
        }
    for (const auto& sd : seeds(th)) os << "|" << key_text(th, sd.key) << "=" << sd.value.str();
    // FNV-1a, rendered as hex
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::NotBasic: return "NotBasic";
        case Classification::Type1: return "Type1";
        case Classification::Type2: return "Type2";
        case Classification::Type3: return "Type3";
        case Classification::Type4: return "Type4";
        case Classification::Type5: return "Type5";
        case Classification::Type6: return "Type6";
        case Classification::Basic4: return "Basic4";
        case Classification::Basic5: return "Basic5";
    }
    return "?";
}

Classification classify(const Theory& th, const Key& k) {
    int nonprim = 0;
    for (int i : k.ins) nonprim += !th.el(i).primitive;
    if (nonprim > 2) return Classification::NotBasic;
    if (k.n() >= 5) return Classification::Basic5;
    if (!th.gw()) return Classification::Basic4;
    std::set<Support> sup;
    for (int i : k.ins) sup.insert(th.el(i).support);
    if (k.n() == 3) {
        if (sup.size() == 3) return Classification::Type2;
        if (sup.size() == 2) return Classification::Type4;
        return Classification::Type6;
    }
    if (sup.size() == 1) {
        const auto& g = th.el(k.ins[0]);
        const auto& h = th.el(k.ins[3]);
        bool shape = k.ins[0] == k.ins[1] && k.ins[2] == k.ins[3] && g.primitive &&
                     g.twist_index + h.twist_index == g.order;
        if (shape) {
            int max_order = 0;
            for (const auto& e : th.space.elements)
                if (e.primitive) max_order = std::max(max_order, e.order);
            return g.order == max_order ? Classification::Type3 : Classification::Type5;
        }
    }
    return Classification::Type1;
}

std::vector<Key> core_keys(const Theory& th, int n_max, int d) {
    std::vector<int> pool;
    for (const auto& e : th.space.elements)
        if (e.id != th.unit() && !(th.gw() && e.id == th.top())) pool.push_back(e.id);
    std::vector<Key> out;
    std::vector<int> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
            if (!selection_ok(th, cur)) return;
            int n = static_cast<int>(cur.size());
            if (n == 3 && (d == 0 || !th.gw())) return;
            out.push_back(Key{cur, d});
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            rec(i, left - 1);
            cur.pop_back();
        }
    };
    for (int n = 3; n <= n_max; ++n) rec(0, n);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ell
