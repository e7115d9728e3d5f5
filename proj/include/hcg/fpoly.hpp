#ifndef HCG_FPOLY_HPP
#define HCG_FPOLY_HPP

#include <map>

#include "hcg/symcycle.hpp"

namespace hcg {

// Laurent polynomial over F with Monomial exponents; zero coefficients absent.
// Exact expansion scratchpad for the support identities and sanity checks.
struct FPoly {
    long level = 0;
    std::map<Monomial, CycloElem> terms;

    static FPoly zero(long N) {
        FPoly p;
        p.level = N;
        return p;
    }
    static FPoly constant(const CycloElem& c) {
        FPoly p;
        p.level = c.level();
        if (!c.is_zero()) p.terms[Monomial()] = c;
        return p;
    }
    static FPoly monomial(const Monomial& m, const CycloElem& c) {
        FPoly p;
        p.level = c.level();
        if (!c.is_zero()) p.terms[m] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    FPoly operator+(const FPoly& o) const {
        FPoly r = *this;
        for (const auto& [m, c] : o.terms) {
            auto it = r.terms.find(m);
            if (it == r.terms.end()) {
                r.terms.emplace(m, c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
        return r;
    }
    FPoly operator-(const FPoly& o) const {
        FPoly neg = o;
        for (auto& [m, c] : neg.terms) c = -c;
        return *this + neg;
    }
    FPoly operator*(const FPoly& o) const {
        FPoly r = zero(level ? level : o.level);
        for (const auto& [m1, c1] : terms)
            for (const auto& [m2, c2] : o.terms) {
                Monomial m = m1 * m2;
                CycloElem c = c1 * c2;
                auto it = r.terms.find(m);
                if (it == r.terms.end()) {
                    if (!c.is_zero()) r.terms.emplace(m, c);
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.terms.erase(it);
                }
            }
        return r;
    }
    bool operator==(const FPoly& o) const { return terms == o.terms; }
};

// Numerator / denominator expansion of a coordinate function: value = num/den.
struct FPolyFraction {
    FPoly num, den;
};
FPolyFraction expand_coord(const CoordFn& f);

} // namespace hcg

#endif
