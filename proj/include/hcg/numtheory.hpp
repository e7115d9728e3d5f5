#ifndef HCG_NUMTHEORY_HPP
#define HCG_NUMTHEORY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcg/cyclo.hpp"

namespace hcg {

// Exact Bernoulli numbers B_0..B_upto via the defining recurrence; B_1 = -1/2.
std::vector<Rat> bernoulli_numbers(long upto);

// Exact B_n(x) = sum_j C(n,j) B_j x^{n-j}.
Rat bernoulli_poly(long n, const Rat& x);

// ---------------------------------------------------------------------------
// Torsion invariants.
// ---------------------------------------------------------------------------
struct TorsionWeight {
    long N = 2;
    std::map<long, long> values;  // residue mod N -> integer; zero off units

    long at(long r) const;
    // parity f(-b) = (-1)^n f(b); also requires support on units
    bool parity_matches(long n) const;
};

struct TorsionResult {
    Rat signed_value;
    Rat abs_value;
    Int order_factor;  // denominator of the reduced value
};

// epsilon_n N^{n-1} / (2 n!) * sum_b f(b) B_n(b/N), exact.
TorsionResult torsion_tau(long n, long N, const TorsionWeight& f);

// raw weighted Bernoulli sum (no prefactor); vanishes for wrong parity
Rat torsion_weight_sum(long n, long N, const TorsionWeight& f);

// N = 2 closed form: -eps_{2m} (2^{2m-1}-1) B_{2m} / (2 (2m)!), signed.
Rat torsion_tau_N2(long m);

// ---------------------------------------------------------------------------
// Dirichlet characters, represented by exponents on fixed generators of the
// CRT factors of (Z/N)^*; values are exact roots of unity.
// ---------------------------------------------------------------------------
struct UnitGen {
    long g;      // generator lifted mod N (g = gen mod p^k, 1 mod the rest)
    long order;
    long factor; // the prime power it came from
};

std::vector<UnitGen> unit_group(long N);
long units_order(long N);  // phi(N)

class DirichletChar {
  public:
    DirichletChar() = default;
    DirichletChar(long N, std::vector<long> exps);  // one exponent per generator

    long modulus() const { return N_; }
    const std::vector<long>& exponents() const { return exps_; }
    const std::vector<UnitGen>& generators() const { return gens_; }

    bool is_principal() const;
    int parity() const;  // chi(-1): +1 or -1
    // exact value as a fraction of a full turn in [0,1), or nullopt off units
    std::optional<Rat> value_exponent(long x) const;
    Cplx value(long x) const;               // 0 off units
    CycloElem value_symbolic(long x, long level) const;  // root of unity at `level`
    DirichletChar conjugate() const;

    bool operator==(const DirichletChar& o) const {
        return N_ == o.N_ && exps_ == o.exps_;
    }
    std::string label() const;  // e.g. "chi_12(5)=..." style exponent list

  private:
    long N_ = 1;
    std::vector<UnitGen> gens_;
    std::vector<long> exps_;
};

std::vector<DirichletChar> characters(long N);

long mobius(long d);

struct ConductorData {
    long N0;
    DirichletChar chi0;
};
ConductorData conductor(const DirichletChar& chi);
bool is_primitive(const DirichletChar& chi);

Cplx gauss_sum(const DirichletChar& chi0);

// L(chi, n) = sum_r chi(r) N^{-n} HurwitzZeta(n, r/N), abs error < tol.
Cplx dirichlet_L(const DirichletChar& chi, long n, double tol = 1e-13);

struct ZagierValue {
    Cplx moebius_form;
    Cplx euler_form;
};
// v_1^chi in both shapes; requires chi(-1) = (-1)^{n-1}.
ZagierValue zagier_v1(const DirichletChar& chi, long n);

// character combinations of the embedding vectors, indexed by a in A:
// the A-sum and the half full-period sum (they agree analytically)
std::vector<Cplx> character_combo_A(const DirichletChar& chi, long n, double tol = 1e-11);
std::vector<Cplx> character_combo_full(const DirichletChar& chi, long n, double tol = 1e-11);

// ---------------------------------------------------------------------------
// Rank computations.
// ---------------------------------------------------------------------------
struct RankReport {
    long rank = 0;
    long expected = 0;
    std::vector<double> pivots;       // accepted pivot magnitudes, descending
    double min_accepted_pivot = 0.0;
    double max_eigen_residual = 0.0;  // worst permutation-eigenvector residual
};

RankReport rank_check(long n, long N, double threshold = 1e-8);

struct SubfieldRankReport {
    long expected = 0;
    long computed = 0;
    long degree = 0;        // [E : Q]
    bool totally_real = false;
    std::vector<long> subgroup;  // the full subgroup, sorted
};

SubfieldRankReport subfield_rank(long n, long N, const std::vector<long>& subgroup_gens,
                                 double threshold = 1e-8);

// numerical rank of a small dense matrix by row reduction with a relative
// pivot threshold; pivot magnitudes are reported for auditability
long matrix_rank(std::vector<std::vector<double>> m, double threshold,
                 std::vector<double>* pivots_out = nullptr);

} // namespace hcg

#endif
