#pragma once

#include <string>
#include <vector>

#include "stralg/rational.hpp"
#include "stralg/rmodule.hpp"
#include "stralg/rng.hpp"

namespace stralg {

// Deterministic enumeration of test matrices for a string algebra: the unit,
// every vertex idempotent, every basis path of positive length as a 1x1
// matrix with coefficient encodings 1..h, then for each size 2..s a
// lower-triangular ladder (unit diagonal, arrows cycling on the subdiagonal)
// and a diagonal of basis paths.  The order is fixed by (s, h) and the
// algebra, so rank profiles are comparable across runs.
struct TestSuite {
    Algebra R;
    int s = 3, h = 1;
    std::vector<RMatrix> mats;
    std::vector<std::string> names;

    std::string signature() const;
};

TestSuite make_test_suite(Algebra R, int s = 3, int h = 1,
                          std::vector<RMatrix> extras = {});

// phi^M_{k,l}: the (k dim M) x (l dim M) matrix over K acting blockwise.
Matrix blow_up(const RModule& M, const RMatrix& A);

// Normalized Sylvester rank rank(blow_up)/dim M, an exact rational.
Rat rk(const RModule& M, const RMatrix& A);

struct RankProfile {
    std::string suite_sig;
    std::vector<Rat> values;
};

RankProfile profile(const RModule& M, const TestSuite& suite);
// weighted l^1 distance sum_i 2^{-i} |p_i - q_i| over a common suite
Rat profile_distance(const RankProfile& p, const RankProfile& q);

// Exact verification of the four Sylvester axioms on random composable
// triples.  Any violation is an implementation bug, never tolerated.
struct AuditReport {
    bool ok = true;
    long trials = 0;
    std::vector<std::string> violations;
};

AuditReport sylvester_audit(const RModule& M, long trials, uint64_t seed,
                            int max_size = 2, int max_terms = 2);

// rk_{sum Q_i^{n_i}} == sum w_i rk_{Q_i} on every suite matrix, exactly.
AuditReport weight_identity_check(const std::vector<std::pair<RModule, int>>& components,
                                  const TestSuite& suite);

// |rk_M(A) - rk_N(A)| <= 2 eps l for a submodule N with
// dim N >= (1-eps) dim M, checked exactly on every suite matrix.
struct TrimReport {
    bool ok = true;
    Rat eps;
    std::vector<std::string> violations;
};
TrimReport trim_bound_check(const RModule& M, const Matrix& submodule_basis,
                            const TestSuite& suite);

} // namespace stralg
