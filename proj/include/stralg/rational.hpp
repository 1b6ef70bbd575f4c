#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "stralg/error.hpp"

namespace stralg {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical wire form is "num/den" ("3", "1/2", "-5/7"); never floats.
inline std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) fail("SyntaxError", "zero denominator in rational '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw;
    } catch (const std::exception&) {
        fail("SyntaxError", "bad rational literal '" + s + "'");
    }
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Smallest integer >= r.
inline BigInt rat_ceil(const Rat& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) < numerator(r)) ++q;
    return q;
}

inline long rat_ceil_long(const Rat& r) { return static_cast<long>(rat_ceil(r)); }

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

} // namespace stralg
