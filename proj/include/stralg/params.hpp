#pragma once

#include <optional>

#include "stralg/approx.hpp"
#include "stralg/pp.hpp"

namespace stralg {

// G(M): size of a smallest generating system.  Computed over R/J (J the
// arrow ideal, nilpotent here, so Nakayama applies): the largest vertex
// block of M/JM.
long gen_number(const RModule& M);
Rat gen_number_normalized(const RModule& M); // g(M) = G(M)/dim M

// Exhaustive oracle: shortest chain of element adjunctions whose closure is
// all of M, memoized over the submodule lattice.  BudgetExceeded for modules
// above the cap.
long gen_number_bruteforce(const RModule& M, int dim_cap = 10);

// I(M): the largest k with an injective multiplication map R^k -> M.
struct IndepResult {
    long lower = 0;          // certified by the stored witness
    long upper = 0;          // floor(dim M / dim R)
    bool exact = false;
    std::vector<std::vector<Felt>> witness; // element coordinate vectors
};
IndepResult indep_number(const RModule& M, bool exact, uint64_t budget = 2'000'000,
                         uint64_t seed = 1);

// n_Q dim Q / dim M from the canonical component multiset.
Rat weight_of(const RModule& M, const std::string& tile_label);

Rat hom_param_L(const RModule& Q, const RModule& M); // dim Hom(Q,M) / dim M
Rat hom_param_R(const RModule& Q, const RModule& M); // dim Hom(M,Q) / dim M

struct ParameterId {
    enum class Kind { G, I, Weight, HomL, HomR, RankA } kind = Kind::G;
    std::optional<RModule> q;  // Weight / HomL / HomR payload
    std::optional<RMatrix> A;  // RankA payload
    std::string q_label;       // canonical label of q when known

    std::string name() const;
};

Rat eval_parameter(const ParameterId& p, const RModule& M);

// Stability probes: (1) random submodule trims of relative codimension <=
// delta, tabulating |p(M) - p(N)|; (2) the trajectory p(M^k).  Report only;
// stability is an asymptotic statement.
struct StabilityReport {
    std::vector<std::pair<Rat, Rat>> trims; // (1 - dim N / dim M, |p(M)-p(N)|)
    std::vector<Rat> power_trajectory;      // p(M^k), k = 1..K
    Rat max_deviation;
};
StabilityReport stability_probe(const ParameterId& p, const RModule& M, const Rat& delta,
                                long trials, uint64_t seed, int max_power = 4);

// largest submodule of M contained in the given column span
Matrix largest_submodule_inside(const RModule& M, const Matrix& subspace);

// The constant-size tester: test matrices, a tile catalog with precomputed
// rank profiles, and the parameter values p_j = p(Q_j^n).
struct Tester {
    ParameterId p;
    TestSuite suite;
    TileCatalog catalog;
    Rat kappa;
    Rat delta; // kappa / 2, the rank estimation budget
    int stab_power = 1;
    std::vector<std::vector<Rat>> tile_profiles; // [tile][test]
    std::vector<Rat> p_values;                   // p(Q_j^stab_power)
};

struct TesterConfig {
    int suite_s = 2, suite_h = 1;
    Rat kappa = Rat(1, 16);
    int max_string_len = 4;
    int band_dim_cap = 5;
    size_t explosion_limit = 4000;
    Rat stab_tol = Rat(1, 100); // stabilization probe tolerance
    int stab_power_cap = 4;
};

Tester build_tester(const ParameterId& p, Algebra R, const TesterConfig& config);

struct TestOutcome {
    bool ok = false;          // false means NoTileWithinKappa
    int tile = -1;
    Rat value;                // p_j of the selected tile
    Rat radius;               // achieved max_i |rk_tile(A_i) - estimate_i|
    std::string flag;
};
TestOutcome run_tester(const Tester& T, const std::vector<Rat>& rank_estimates);

} // namespace stralg
