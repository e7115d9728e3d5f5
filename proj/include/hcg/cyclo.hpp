#ifndef HCG_CYCLO_HPP
#define HCG_CYCLO_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hcg/rational.hpp"

namespace hcg {

using Cplx = std::complex<double>;

// Euler phi, by trial-division factorization (desk-scale N).
long euler_phi(long n);

long gcd_long(long a, long b);

// N-th cyclotomic polynomial, monic with integer coefficients,
// computed by exact division of x^N - 1 by the product of all proper
// divisors' cyclotomic polynomials. Coefficients ascending, degree phi(N).
std::vector<Int> cyclotomic_poly(long N);

// An element of F = Q[w]/(Phi_N(w)), stored on the power basis
// 1, w, ..., w^{phi(N)-1}. Immutable value semantics; all arithmetic
// reduces mod Phi_N exactly.
class CycloElem {
  public:
    CycloElem() : level_(0) {}  // uninitialized sentinel; level 0 means "no level yet"
    explicit CycloElem(long N);                     // zero at level N
    CycloElem(long N, const Rat& constant);         // rational constant
    CycloElem(long N, std::vector<Rat> coeffs);     // coefficients, reduced if oversized

    static CycloElem omega(long N);                 // the generator w
    static CycloElem omega_pow(long N, long k);     // w^k, k any integer (k<0 uses w^{N+k mod N})
    static CycloElem one(long N) { return CycloElem(N, Rat(1)); }
    static CycloElem zero(long N) { return CycloElem(N); }

    long level() const { return level_; }
    long degree() const { return static_cast<long>(coeffs_.size()); }  // = phi(N)
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;      // all coefficients beyond the constant vanish
    Rat rational_part() const;     // constant coefficient

    CycloElem operator+(const CycloElem& o) const;
    CycloElem operator-(const CycloElem& o) const;
    CycloElem operator-() const;
    CycloElem operator*(const CycloElem& o) const;
    CycloElem operator/(const CycloElem& o) const;  // exact, via extended Euclid
    CycloElem inverse() const;
    CycloElem pow(long e) const;                    // e any integer

    bool operator==(const CycloElem& o) const;
    bool operator!=(const CycloElem& o) const { return !(*this == o); }
    // total order for use as container key; no arithmetic meaning
    bool operator<(const CycloElem& o) const;

    // Ring map w -> w^c, gcd(c, N) = 1.
    CycloElem galois(long c) const;

    // Complex embedding w -> exp(2*pi*i*a/N), gcd(a, N) = 1.
    Cplx embed(long a) const;

    // Canonical text form, e.g. "1 - 2/3*w^2". Round-trips bit-exactly.
    std::string to_string() const;
    static CycloElem from_string(long N, const std::string& s);

  private:
    long level_;
    std::vector<Rat> coeffs_;
    void reduce(std::vector<Rat>& raw) const;       // mod Phi_N, in place
    void check_same_level(const CycloElem& o) const;
};

enum class FieldOp { Add, Sub, Mul, Div };

CycloElem field_arith(const CycloElem& a, const CycloElem& b, FieldOp op);

} // namespace hcg

#endif
