#include "stralg/io.hpp"

#include <sstream>

namespace stralg {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        lines.push_back(start == std::string::npos ? "" : line.substr(start));
    }
    return lines;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

Poly parse_poly(const std::string& text) {
    std::vector<Felt> c;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
    skip();
    if (i >= text.size() || text[i] != '[') fail("SyntaxError", "polynomial must look like [c0,c1,...]");
    ++i;
    while (true) {
        skip();
        if (i < text.size() && text[i] == ']') break;
        size_t j = i;
        while (j < text.size() && text[j] != ',' && text[j] != ']') ++j;
        std::string num = text.substr(i, j - i);
        try {
            c.push_back(static_cast<Felt>(std::stoul(num)));
        } catch (const std::exception&) {
            fail("SyntaxError", "bad polynomial coefficient '" + num + "'");
        }
        i = j;
        if (i < text.size() && text[i] == ',') ++i;
    }
    return Poly(std::move(c));
}

Algebra parse_algebra_file(const std::string& text) {
    uint32_t p = 0, k = 0;
    std::optional<Poly> modulus;
    Quiver Q;
    std::vector<std::vector<std::string>> forbid_lines;

    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        auto toks = split_ws(line);
        const std::string& head = toks[0];
        if (head == "field") {
            if (toks.size() < 3) fail("SyntaxError", "field line needs 'field p k'");
            p = static_cast<uint32_t>(std::stoul(toks[1]));
            k = static_cast<uint32_t>(std::stoul(toks[2]));
            if (toks.size() > 3) modulus = parse_poly(toks[3]);
        } else if (head == "vertices") {
            for (size_t i = 1; i < toks.size(); ++i) Q.vertices.push_back(toks[i]);
        } else if (head == "arrow") {
            // arrow x: a -> b
            if (toks.size() != 5 || toks[3] != "->")
                fail("SyntaxError", "arrow line needs 'arrow label: src -> dst'");
            std::string label = toks[1];
            if (!label.empty() && label.back() == ':') label.pop_back();
            int s = Q.vertex_index(toks[2]);
            int t = Q.vertex_index(toks[4]);
            if (s < 0 || t < 0) fail("SyntaxError", "arrow references an undeclared vertex");
            Q.arrows.push_back({label, s, t});
        } else if (head == "forbid") {
            forbid_lines.push_back({toks.begin() + 1, toks.end()});
        } else {
            fail("SyntaxError", "unknown directive '" + head + "'");
        }
    }
    if (p == 0) fail("SyntaxError", "missing field line");
    Field F = FiniteField::make(p, k, modulus);

    std::vector<Path> forbidden;
    for (const auto& labels : forbid_lines) {
        Path f;
        for (const std::string& l : labels) {
            int a = Q.arrow_index(l);
            if (a < 0) fail("SyntaxError", "forbid references unknown arrow '" + l + "'");
            f.arrows.push_back(a);
        }
        forbidden.push_back(std::move(f));
    }
    return StringAlgebra::make(std::move(Q), std::move(forbidden), F);
}

std::string emit_algebra_file(const StringAlgebra& R) {
    std::ostringstream os;
    os << "field " << R.field()->characteristic() << ' ' << R.field()->ext_degree();
    if (R.field()->ext_degree() > 1) os << ' ' << R.field()->modulus().str();
    os << "\nvertices";
    for (const auto& v : R.quiver().vertices) os << ' ' << v;
    os << '\n';
    for (const auto& a : R.quiver().arrows)
        os << "arrow " << a.label << ": " << R.quiver().vertices[static_cast<size_t>(a.src)]
           << " -> " << R.quiver().vertices[static_cast<size_t>(a.dst)] << '\n';
    for (const auto& f : R.forbidden()) {
        os << "forbid";
        for (int a : f.arrows) os << ' ' << R.quiver().arrows[static_cast<size_t>(a)].label;
        os << '\n';
    }
    return os.str();
}

RModule parse_module_file(const std::string& text, Algebra R) {
    RModule M = RModule::zero(R);
    bool any = false;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        if (line.rfind("string:", 0) == 0) {
            StringWord w = word_parse(line.substr(7), *R);
            M = RModule::direct_sum(M, RModule::string_module(w, R));
            any = true;
        } else if (line.rfind("band:", 0) == 0) {
            // band: <word> ; f=<poly> ; n=<power>
            std::string rest = line.substr(5);
            std::vector<std::string> parts;
            size_t start = 0;
            while (true) {
                size_t semi = rest.find(';', start);
                parts.push_back(rest.substr(start, semi - start));
                if (semi == std::string::npos) break;
                start = semi + 1;
            }
            if (parts.size() != 3) fail("SyntaxError", "band line needs 'band: word ; f=... ; n=...'");
            BandData B;
            B.word = word_parse(parts[0], *R);
            auto feq = parts[1].find("f=");
            auto neq = parts[2].find("n=");
            if (feq == std::string::npos || neq == std::string::npos)
                fail("SyntaxError", "band line needs f= and n= fields");
            B.f = parse_poly(parts[1].substr(feq + 2));
            B.power = std::stoi(parts[2].substr(neq + 2));
            M = RModule::direct_sum(M, RModule::band_module(B, R));
            any = true;
        } else if (line.rfind("raw:", 0) == 0) {
            Json j = Json::parse(line.substr(4), nullptr, true);
            std::vector<int> grading = j.at("vertex_of_basis").get<std::vector<int>>();
            std::vector<Matrix> action;
            for (const auto& a : R->quiver().arrows) {
                auto rows = j.at("action").at(a.label).get<std::vector<std::vector<long>>>();
                Matrix m(R->field(), grading.size(), grading.size());
                for (size_t r = 0; r < rows.size(); ++r)
                    for (size_t c = 0; c < rows[r].size(); ++c)
                        m.at(r, c) = static_cast<Felt>(rows[r][c]);
                action.push_back(std::move(m));
            }
            RModule riv = RModule::raw(R, std::move(grading), std::move(action));
            ModuleCheck chk = module_check(riv, *R);
            if (!chk.ok) fail("DecodeFailure", "raw module invalid: " + chk.violation);
            M = RModule::direct_sum(M, riv);
            any = true;
        } else {
            fail("SyntaxError", "unknown module line '" + line + "'");
        }
    }
    if (!any) fail("SyntaxError", "module file declares no components");
    return M;
}

std::vector<StringWord> parse_strings_file(const std::string& text, const StringAlgebra& R) {
    std::vector<StringWord> out;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        out.push_back(word_parse(line, R));
    }
    if (out.empty()) fail("SyntaxError", "strings file is empty");
    return out;
}

std::vector<RMatrix> parse_matrix_file(const std::string& text, Algebra R) {
    std::vector<RMatrix> out;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        out.push_back(rmatrix_parse(line, R));
    }
    if (out.empty()) fail("SyntaxError", "matrix file is empty");
    return out;
}

FormulaFile parse_formula_file(const std::string& text, Algebra R) {
    FormulaFile ff;
    size_t t = 1;
    bool have_phi = false;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        if (line.rfind("t=", 0) == 0) {
            t = static_cast<size_t>(std::stoul(line.substr(2)));
        } else if (line.rfind("phi:", 0) == 0) {
            ff.phi.A = rmatrix_parse(line.substr(4), R);
            have_phi = true;
        } else if (line.rfind("psi:", 0) == 0) {
            PPFormula psi;
            psi.A = rmatrix_parse(line.substr(4), R);
            ff.psi = psi;
        } else {
            fail("SyntaxError", "unknown formula line '" + line + "'");
        }
    }
    if (!have_phi) fail("SyntaxError", "formula file needs a phi: line");
    ff.phi.t = t;
    if (ff.psi) ff.psi->t = t;
    return ff;
}

Json profile_json(const RankProfile& p, const TestSuite& suite) {
    Json j;
    j["suite"] = suite.signature();
    Json vals = Json::array();
    for (size_t i = 0; i < p.values.size(); ++i) {
        Json row;
        row["test"] = suite.names[i];
        row["matrix"] = rmatrix_emit(suite.mats[i]);
        row["value"] = rat_str(p.values[i]);
        vals.push_back(row);
    }
    j["values"] = vals;
    return j;
}

Json stats_json(const StatProfile& p, const StringAlgebra& R) {
    Json j;
    j["radius"] = p.radius;
    j["observed"] = p.observed.str();
    Json freq = Json::object();
    for (const auto& [type, f] : p.freq) freq[type.str(R)] = rat_str(f);
    j["frequencies"] = freq;
    return j;
}

Json sampled_json(const SampledStats& s, const StringAlgebra& R) {
    Json j = stats_json(s.profile, R);
    j["samples"] = s.samples;
    j["confidence_delta"] = s.confidence_delta;
    j["hoeffding_eps"] = s.hoeffding_eps;
    return j;
}

Json tiling_json(const Tiling& t) {
    Json j;
    j["ambient_dim"] = t.ambient_dim;
    j["epsilon"] = rat_str(t.epsilon);
    j["coverage"] = rat_str(t.achieved_coverage);
    j["max_expansion"] = rat_str(t.achieved_expansion);
    j["bound_L"] = t.bound_L;
    j["m"] = t.m;
    j["m_eps"] = t.m_eps;
    Json pieces = Json::array();
    for (const TilePiece& p : t.pieces) {
        Json pj;
        pj["label"] = p.label;
        pj["dim"] = p.basis.cols();
        Json cols = Json::array();
        for (size_t c = 0; c < p.basis.cols(); ++c) {
            Json col = Json::array();
            for (size_t r = 0; r < p.basis.rows(); ++r) col.push_back(p.basis.at(r, c));
            cols.push_back(col);
        }
        pj["basis"] = cols;
        pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    return j;
}

Json certificate_json(const IsoCertificate& c) {
    Json j;
    j["eps_left"] = rat_str(c.eps_left);
    j["eps_right"] = rat_str(c.eps_right);
    Json m = Json::array();
    for (const auto& [a, b] : c.matches) {
        Json row;
        row["left"] = {{"component", a.component}, {"lo", a.lo}, {"hi", a.hi}};
        row["right"] = {{"component", b.component}, {"lo", b.lo}, {"hi", b.hi}};
        m.push_back(row);
    }
    j["matches"] = m;
    return j;
}

Json audit_json(const AuditReport& r) {
    Json j;
    j["ok"] = r.ok;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    return j;
}

Json tester_json(const Tester& T) {
    Json j;
    j["parameter"] = T.p.name();
    j["kappa"] = rat_str(T.kappa);
    j["delta"] = rat_str(T.delta);
    j["stab_power"] = T.stab_power;
    j["suite"] = {{"s", T.suite.s}, {"h", T.suite.h}};
    j["catalog"] = {{"max_string_len", T.catalog.max_string_len},
                    {"band_dim_cap", T.catalog.band_dim_cap}};
    Json tiles = Json::array();
    for (size_t i = 0; i < T.catalog.tiles.size(); ++i) {
        Json tj;
        tj["label"] = T.catalog.tiles[i].label;
        tj["dim"] = T.catalog.tiles[i].mod.dim();
        tj["p"] = rat_str(T.p_values[i]);
        Json prof = Json::array();
        for (const Rat& v : T.tile_profiles[i]) prof.push_back(rat_str(v));
        tj["profile"] = prof;
        tiles.push_back(tj);
    }
    j["tiles"] = tiles;
    return j;
}

Tester tester_from_json(const Json& j, Algebra R) {
    // rebuild deterministically from the recorded configuration, then check
    // the recorded tables match
    ParameterId p;
    std::string pname = j.at("parameter").get<std::string>();
    if (pname == "g") {
        p.kind = ParameterId::Kind::G;
    } else if (pname == "i") {
        p.kind = ParameterId::Kind::I;
    } else {
        fail("SyntaxError", "only parameter kinds without payload round-trip from JSON; got '" +
                                pname + "'");
    }
    TesterConfig cfg;
    cfg.suite_s = j.at("suite").at("s").get<int>();
    cfg.suite_h = j.at("suite").at("h").get<int>();
    cfg.kappa = rat_parse(j.at("kappa").get<std::string>());
    cfg.max_string_len = j.at("catalog").at("max_string_len").get<int>();
    cfg.band_dim_cap = j.at("catalog").at("band_dim_cap").get<int>();
    Tester T = build_tester(p, R, cfg);
    if (tester_json(T) != j) fail("DecodeFailure", "tester bundle does not match its config");
    return T;
}

std::string json_schema(const std::string& name) {
    if (name == "profile")
        return R"({"type":"object","properties":{"suite":{"type":"string"},"values":{"type":"array","items":{"type":"object","properties":{"test":{"type":"string"},"matrix":{"type":"string"},"value":{"type":"string","pattern":"^-?[0-9]+(/[0-9]+)?$"}},"required":["test","matrix","value"]}}},"required":["suite","values"]})";
    if (name == "stats")
        return R"({"type":"object","properties":{"radius":{"type":"integer"},"observed":{"type":"string"},"frequencies":{"type":"object","additionalProperties":{"type":"string","pattern":"^-?[0-9]+(/[0-9]+)?$"}}},"required":["radius","frequencies"]})";
    if (name == "tiling")
        return R"({"type":"object","properties":{"ambient_dim":{"type":"integer"},"epsilon":{"type":"string"},"coverage":{"type":"string"},"max_expansion":{"type":"string"},"bound_L":{"type":"integer"},"pieces":{"type":"array"}},"required":["ambient_dim","epsilon","coverage","pieces"]})";
    if (name == "certificate")
        return R"({"type":"object","properties":{"eps_left":{"type":"string"},"eps_right":{"type":"string"},"matches":{"type":"array"}},"required":["eps_left","eps_right","matches"]})";
    if (name == "tester")
        return R"({"type":"object","properties":{"parameter":{"type":"string"},"kappa":{"type":"string"},"delta":{"type":"string"},"stab_power":{"type":"integer"},"tiles":{"type":"array"}},"required":["parameter","kappa","tiles"]})";
    fail("SyntaxError", "no schema named '" + name + "'");
}

} // namespace stralg
