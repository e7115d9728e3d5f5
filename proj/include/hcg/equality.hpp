#ifndef HCG_EQUALITY_HPP
#define HCG_EQUALITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hcg/symcycle.hpp"

namespace hcg {

enum class EqResult { Equal, Unequal, Undecidable };

struct EqualityOptions {
    int trials = 5;
    std::uint64_t seed = 42;
    int max_draws = 200;  // resampling budget per trial
};

// Support equality of two parametrized cycles, decided by exact rational
// sampling of `a` followed by triangular inversion of `b`'s parametrization
// over F. Coefficients are ignored. Never wrong, sometimes Undecidable.
EqResult cycles_equal(const ParamCycle& a, const ParamCycle& b,
                      const EqualityOptions& opt = {});

enum class ZeroResult { Zero, Nonzero, Undecidable };

struct SumClass {
    std::vector<size_t> members;  // indices into the input term list
    Rat total;                    // exact coefficient total of the class
    std::string representative;   // display form of the class representative
};

struct SumReport {
    ZeroResult verdict = ZeroResult::Zero;
    std::vector<SumClass> classes;
    std::vector<std::string> notes;
};

// Partitions the terms into support-equality classes and sums coefficients.
SumReport sum_is_zero(const CycleSum& s, const EqualityOptions& opt = {});

struct VerificationReport {
    bool pass = false;
    ZeroResult verdict = ZeroResult::Undecidable;
    size_t input_terms = 0;
    size_t boundary_terms = 0;
    SumReport classes;
    FaceDiagnostics diagnostics;
};

// boundary + sum_is_zero
VerificationReport verify_closed(const CycleSum& s, const EqualityOptions& opt = {});

} // namespace hcg

#endif
