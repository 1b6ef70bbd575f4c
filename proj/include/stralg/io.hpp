#pragma once

#include <json.hpp>

#include "stralg/params.hpp"

namespace stralg {

using Json = nlohmann::ordered_json;

// Algebra spec file:
//   field 2 1
//   vertices v w
//   arrow x: v -> w
//   forbid x y
// One forbidden path per line, arrow labels leftmost-applied-last; '#'
// starts a comment.
Algebra parse_algebra_file(const std::string& text);
std::string emit_algebra_file(const StringAlgebra& R);

// Module spec file: lines of
//   string: x y^-1 x      (or @v for a trivial word)
//   band: x y^-1 ; f=[1,1] ; n=2
//   raw: <json>           (vertex_of_basis + action matrices)
// The module is the direct sum of all lines.
RModule parse_module_file(const std::string& text, Algebra R);

// Strings file: one word per line.
std::vector<StringWord> parse_strings_file(const std::string& text, const StringAlgebra& R);

// Matrix file: one R-matrix per line in the bracket grammar.
std::vector<RMatrix> parse_matrix_file(const std::string& text, Algebra R);

// pp formula file:
//   t=1
//   phi: [[x, -1]]
//   psi: [[x, -1],[0, 1]]
// A single formula file may omit psi.
struct FormulaFile {
    PPFormula phi;
    std::optional<PPFormula> psi;
};
FormulaFile parse_formula_file(const std::string& text, Algebra R);

Poly parse_poly(const std::string& text); // "[c0,c1,...]"

Json profile_json(const RankProfile& p, const TestSuite& suite);
Json stats_json(const StatProfile& p, const StringAlgebra& R);
Json sampled_json(const SampledStats& s, const StringAlgebra& R);
Json tiling_json(const Tiling& t);
Json certificate_json(const IsoCertificate& c);
Json audit_json(const AuditReport& r);
Json tester_json(const Tester& T);
Tester tester_from_json(const Json& j, Algebra R);

std::string json_schema(const std::string& name); // shipped schemas by name

} // namespace stralg
