#ifndef HCG_CONSTRUCTIONS_HPP
#define HCG_CONSTRUCTIONS_HPP

#include <string>

#include "hcg/symcycle.hpp"

namespace hcg {

enum class Variant { Auto, K3, K5, K7First, K7Second, K9Appendix, General };

Variant variant_from_string(const std::string& s);
std::string variant_to_string(Variant v);

struct CycleSpec {
    long n = 2;
    long N = 2;
    long b = 1;
    Variant variant = Variant::Auto;

    // validates ranges and coprimality, reduces b mod N, resolves Auto
    CycleSpec resolved() const;
    CycloElem xi() const;  // omega^b at level N
};

struct NormalizationConstants {
    Rat xi_norm;      // (-1)^n / N^{n-1}
    long epsilon_n;   // 1, 2, n-3 for n = 2, 3, >= 4
};
NormalizationConstants normalization(long n, long N);

// The 2n-1 tuple with n-1 torus parameters, coefficient 1.
ParamCycle build_Z(const CycleSpec& spec);

// The W1 piece (empty for n = 2). Exact coefficients per variant.
CycleSum build_W1(const CycleSpec& spec);

// The W2 piece (empty for n <= 3); identically-empty components drop.
CycleSum build_W2(const CycleSpec& spec);

// Z + W1 + W2 for the resolved variant.
CycleSum assemble_tildeZ(const CycleSpec& spec);

// Unsigned building blocks (coefficient 1), exposed for the boundary
// bookkeeping checks: the W1 tuple, and the i-th W2 component (1-based,
// 1 <= i <= n-1). A component that normalizes away returns Empty status.
ParamCycle build_W1_tuple(const CycleSpec& spec);
NormalizeResult build_W2_component(const CycleSpec& spec, long i);

// Verifies the support identity of a W_i term: the product of t(z_k) over
// the first n-i coordinate functions simplifies exactly to omega^{-b},
// where t(z) = z/(z-1). Returns false when the product is not that constant.
bool support_check(const ParamCycle& term, long n, long i, long b);

// Applies the ring map w -> w^c to every field constant in the sum.
CycleSum galois_conjugate(const CycleSum& s, long c);

// lcm of the coefficient denominators of the sum
Int integrality_scale(const CycleSum& s);
// the documented clearing scale of the variant (epsilon_n, except the
// two-term K7 presentation which carries an extra factor 2)
Int expected_integrality_scale(const CycleSpec& spec);

} // namespace hcg

#endif
