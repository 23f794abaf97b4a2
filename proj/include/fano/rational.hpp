#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fano {

// Exact rational arithmetic. mpq_class keeps values reduced with a positive
// denominator, which is exactly the invariant every table value here needs.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_i64(std::int64_t v) {
    Rat q;
    // mpq_class has no int64 constructor on LP64-free platforms; go via string.
    q = Rat(std::to_string(v));
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Renders "p/q", or plain "p" for integers.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline Rat pow_rat(const Rat& base, int e) {
    Rat r(1);
    Rat b = base;
    int k = e < 0 ? -e : e;
    for (int i = 0; i < k; ++i) r *= b;
    if (e < 0) {
        if (is_zero(r)) throw std::domain_error("pow_rat: zero to negative power");
        r = Rat(1) / r;
    }
    return r;
}

inline Rat factorial(int n) {
    Rat r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace fano
