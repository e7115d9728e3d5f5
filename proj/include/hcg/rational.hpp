#ifndef HCG_RATIONAL_HPP
#define HCG_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "hcg/errors.hpp"

namespace hcg {

// Exact rationals, always canonical (lowest terms, positive denominator).
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "n", "-n", "n/d"; canonicalizes. Rejects anything else.
Rat rat_from_string(const std::string& s);

// Canonical text: "n" or "n/d" with d > 1.
std::string rat_to_string(const Rat& q);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int rat_denominator(const Rat& q);

} // namespace hcg

#endif
