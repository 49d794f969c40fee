#pragma once
#include "ell/recon0.hpp"
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ell {

struct MissingDependency : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StratumId { D22, D23, D24, D34, D03, D04, DBeta };
inline constexpr std::array<StratumId, 7> kAllStrata = {
    StratumId::D22, StratumId::D23, StratumId::D24, StratumId::D34,
    StratumId::D03, StratumId::D04, StratumId::DBeta};

std::string stratum_name(StratumId s);  // "d22", ..., "dbeta"
int stratum_coefficient(StratumId s);   // weight in the codimension-two relation

// Stable graph with the four fixed legs 0..3 placed on vertices.
struct StableGraph {
    struct Vertex {
        int genus = 0;
        std::vector<int> legs;
    };
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;  // a loop joins a vertex to itself
    Rational weight{1};                      // 1/|Aut|
};
// The S4 orbit making up one stratum class.
std::vector<StableGraph> stratum_graphs(StratumId s);

// c + sum coef[u] * U_u, where U_u is the basic genus-one unknown:
// GW: <P>_{1,1,u}; FJRW: <top,...,top>_{1,u}.
struct G1Linear {
    Rational constant;
    std::map<int, Rational> coef;
    G1Linear& operator+=(const G1Linear& o);
    G1Linear scaled(const Rational& s) const;
    bool is_constant() const;
};

struct G1Key {
    std::vector<int> ins;
    int d = 0;
};

using Quadruple = std::array<int, 4>;

class GenusOne {
public:
    // the genus-zero engine must have caps covering 5 + extra markings and total degree
    explicit GenusOne(Engine& g0);

    const Theory& theory() const { return g0_.theory(); }
    Engine& genus_zero() { return g0_; }

    // integral of the class with the fixed insertions plus k top insertions over one stratum
    G1Linear stratum_terms(StratumId s, const Quadruple& fixed, int k, int D);
    // same with every genus-one factor read from the store
    Rational stratum_contribution(StratumId s, const Quadruple& fixed, int k, int D);
    G1Linear relation(const Quadruple& fixed, int k, int D);
    // relation with known values substituted; throws MissingDependency
    Rational residual(const Quadruple& fixed, int k, int D);

    // solves for the basic unknown u (degree for GW, marking count for FJRW)
    // from one admissible relation; lower values are built first
    Rational solve_basic(int u);
    Rational solve_basic_with(int u, const Quadruple& fixed, int k, int D);
    // tries D (GW) or k (FJRW) for the given quadruple; nullopt when none isolates u
    std::optional<Rational> try_solve_with(int u, const Quadruple& fixed);

    Rational getzler_solve(const G1Key& target);
    // GW: coefficient list of <P,...,P>_{1,n,d}, d = 0..D
    QSeries g1_series(int n, int D);
    // FJRW: <top^n>_{1,n} for n = 1..N
    std::vector<Rational> fjrw_sequence(int N);

    // quadruples for which the given unknown is isolated; canonical one first
    Quadruple canonical_quadruple(int u) const;
    std::vector<Quadruple> admissible_quadruples() const;

    const std::map<int, Rational>& store() const { return store_; }
    void insert(int u, const Rational& v) { store_[u] = v; }

private:
    G1Linear graph_terms(const StableGraph& g, const std::vector<int>& ins, int k, int D);
    G1Linear vertex_genus_one(const std::vector<int>& ins, int d) const;
    Rational substitute(const G1Linear& e) const;

    Engine& g0_;
    std::map<int, Rational> store_;
};

}  // namespace ell
