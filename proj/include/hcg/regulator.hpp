#ifndef HCG_REGULATOR_HPP
#define HCG_REGULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hcg/constructions.hpp"
#include "hcg/cyclo.hpp"

namespace hcg {

// Li_n(z) for |z| <= 1 (z = 1 needs n >= 2). Guaranteed |err| < tol: partial
// sums with a geometric tail bound inside the disk and a summation-by-parts
// bound 4/(|1-z| K^n) on the circle.
Cplx polylog(long n, Cplx z, double tol = 1e-12);

// Li_n at the exact root of unity e^{2 pi i m / N}; exact phase reduction.
Cplx polylog_root_of_unity(long n, long N, long m, double tol = 1e-12);

// Euler-Maclaurin zeta, absolute error < 1e-13.
double zeta(long n);

// Hurwitz zeta(s, a) for integer s >= 2, 0 < a <= 1, same machinery.
double hurwitz_zeta(long s, double a);

struct RegulatorValue {
    Cplx raw;         // (-1)^n N^{n-1} Li_n(e^{2 pi i ab/N}), the cycle value
    Cplx normalized;  // Li_n(e^{2 pi i ab/N})
};
RegulatorValue regulator_closed_form(long n, long N, long b, long a, double tol = 1e-12);

enum class IntegralMethod { TensorGauss, MonteCarlo };

struct IntegralJob {
    long n = 2;
    long N = 2;
    long b = 1;
    long a = 1;
    IntegralMethod method = IntegralMethod::TensorGauss;
    long order_or_samples = 64;
    std::uint64_t seed = 42;
};

struct IntegralResult {
    Cplx value;          // (-N)^{n-1} * integral, the cycle value
    double std_error;    // Monte Carlo standard error (scaled); 0 for quadrature
    long evaluations;
};

// (-N)^{n-1} int_{[0,1]^{n-1}} log(1 - zeta^{ab} t_1...t_{n-1}) prod dt_k/t_k,
// integrand extended by its limit at prod t -> 0.
IntegralResult regulator_integral(const IntegralJob& job);

// ---------------------------------------------------------------------------
// Branch-cut emptiness checks gating the reduced integral formula.
// ---------------------------------------------------------------------------
struct MalteseTermVerdict {
    std::string term;   // short display
    long i = 0;         // which companion family (1 or 2)
    bool support_ok = false;
    bool ray_ok = false;
};

struct MalteseReport {
    std::vector<MalteseTermVerdict> w_terms;
    bool z_ok = false;
    std::string z_case;
    bool pass = false;
};

// s must be an assembled sum from the builders; terms are classified by their
// parameter lists (t's only: main term; +u: first companion; +u,v: second).
MalteseReport maltese_check(const CycleSum& s, long n, long b, long a);

// ---------------------------------------------------------------------------
// Embedding-indexed value vectors.
// ---------------------------------------------------------------------------
std::vector<long> index_set_A(long N);   // units a with 1 <= a <= floor(N/2)

// real projection: Re for n odd, Im for n even
double pi_n_real(long n, Cplx z);
// complex projection: Re(z) resp. i*Im(z)
Cplx pi_n_cplx(long n, Cplx z);

// (pi_n(Li_n(e^{2 pi i a b / N})))_{a in A} as real numbers
std::vector<double> embedding_value_vector(long n, long N, long b, double tol = 1e-10);

} // namespace hcg

#endif
