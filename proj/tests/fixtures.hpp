#pragma once

#include "stralg/algebra.hpp"
#include "stralg/rmodule.hpp"

namespace stralg::fixtures {

// one vertex, loops x and y, relations x^2, y^2, xy, yx
inline Algebra gp_algebra(uint32_t p = 2, uint32_t k = 1) {
    Quiver Q;
    Q.vertices = {"v"};
    Q.arrows = {{"x", 0, 0}, {"y", 0, 0}};
    std::vector<Path> forbidden;
    for (auto pair : {std::pair<int, int>{0, 0}, {1, 1}, {0, 1}, {1, 0}}) {
        Path f;
        f.arrows = {pair.first, pair.second};
        forbidden.push_back(f);
    }
    return StringAlgebra::make(Q, forbidden, FiniteField::make(p, k));
}

// two vertices, parallel arrows a b : 1 -> 2, no relations
inline Algebra kronecker_algebra(uint32_t p = 2, uint32_t k = 1) {
    Quiver Q;
    Q.vertices = {"1", "2"};
    Q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
    return StringAlgebra::make(Q, {}, FiniteField::make(p, k));
}

// two loops with x^3 = y^2 = xy = yx = 0; unlike the GP fixture this one has
// arbitrarily long primitive cyclic strings (mix "x y^-1" and "x x y^-1")
inline Algebra deep_loop_algebra(uint32_t p = 2, uint32_t k = 1) {
    Quiver Q;
    Q.vertices = {"v"};
    Q.arrows = {{"x", 0, 0}, {"y", 0, 0}};
    std::vector<Path> forbidden;
    Path xxx, yy, xy, yx;
    xxx.arrows = {0, 0, 0};
    yy.arrows = {1, 1};
    xy.arrows = {0, 1};
    yx.arrows = {1, 0};
    for (const Path& f : {xxx, yy, xy, yx}) forbidden.push_back(f);
    return StringAlgebra::make(Q, forbidden, FiniteField::make(p, k));
}

inline StringWord word(const StringAlgebra& R, const std::string& text) {
    return word_parse(text, R);
}

} // namespace stralg::fixtures
