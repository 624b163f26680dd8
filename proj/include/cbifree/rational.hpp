#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace cbifree {

/// Exact scalar used throughout the combinatorial layer.
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& r) { return r.convert_to<double>(); }

/// Formats as "p" or "p/q" with q > 0.
inline std::string rational_to_string(const rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p" or "p/q"; rejects zero denominators and junk.
inline rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return rational(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw schema_error("zero denominator in rational \"" + s + "\"");
        return rational(num, den);
    } catch (const schema_error&) {
        throw;
    } catch (const std::exception&) {
        throw schema_error("malformed rational \"" + s + "\"");
    }
}

}  // namespace cbifree
