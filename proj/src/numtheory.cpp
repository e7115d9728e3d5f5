#include "hcg/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hcg/errors.hpp"
#include "hcg/regulator.hpp"

namespace hcg {

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials
// ---------------------------------------------------------------------------

std::vector<Rat> bernoulli_numbers(long upto) {
    if (upto < 0) throw DomainError("bernoulli_numbers needs upto >= 0");
    std::vector<Rat> B(static_cast<size_t>(upto) + 1);
    std::vector<std::vector<Int>> choose(static_cast<size_t>(upto) + 2);
    for (size_t i = 0; i < choose.size(); ++i) {
        choose[i].resize(i + 1);
        choose[i][0] = 1;
        choose[i][i] = 1;
        for (size_t j = 1; j < i; ++j) choose[i][j] = choose[i - 1][j - 1] + choose[i - 1][j];
    }
    B[0] = 1;
    for (long m = 1; m <= upto; ++m) {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat acc(0);
        for (long j = 0; j < m; ++j)
            acc += Rat(choose[static_cast<size_t>(m) + 1][static_cast<size_t>(j)]) *
                   B[static_cast<size_t>(j)];
        Rat bm = -acc / Rat(choose[static_cast<size_t>(m) + 1][static_cast<size_t>(m)]);
        bm.canonicalize();
        B[static_cast<size_t>(m)] = bm;
    }
    return B;
}

Rat bernoulli_poly(long n, const Rat& x) {
    if (n < 0) throw DomainError("bernoulli_poly needs n >= 0");
    std::vector<Rat> B = bernoulli_numbers(n);
    Rat acc(0);
    Int binom = 1;  // C(n, j)
    Rat xp(1);
    // sum_j C(n,j) B_j x^{n-j}: iterate j descending so x powers ascend
    std::vector<Rat> terms(static_cast<size_t>(n) + 1);
    for (long j = 0; j <= n; ++j) {
        if (j > 0) binom = binom * (n - j + 1) / j;
        terms[static_cast<size_t>(j)] = Rat(binom) * B[static_cast<size_t>(j)];
    }
    for (long j = n; j >= 0; --j) {
        acc += terms[static_cast<size_t>(j)] * xp;
        xp *= x;
    }
    acc.canonicalize();
    return acc;
}

// ---------------------------------------------------------------------------
// Torsion
// ---------------------------------------------------------------------------

long TorsionWeight::at(long r) const {
    long m = ((r % N) + N) % N;
    auto it = values.find(m);
    return it == values.end() ? 0 : it->second;
}

bool TorsionWeight::parity_matches(long n) const {
    for (const auto& [r, v] : values) {
        if (v == 0) continue;
        if (gcd_long(r, N) != 1) return false;  // supported off the units
        long sign = (n % 2 == 0) ? 1 : -1;
        if (at(N - r) != sign * v) return false;
    }
    return true;
}

Rat torsion_weight_sum(long n, long N, const TorsionWeight& f) {
    Rat acc(0);
    for (long b = 0; b < N; ++b) {
        long w = f.at(b);
        if (w == 0) continue;
        acc += Rat(w) * bernoulli_poly(n, Rat(b, N));
    }
    acc.canonicalize();
    return acc;
}

TorsionResult torsion_tau(long n, long N, const TorsionWeight& f) {
    if (n < 2) throw DomainError("torsion_tau needs n >= 2");
    if (N < 2) throw DomainError("torsion_tau needs N >= 2");
    if (f.N != N) throw DomainError("weight modulus mismatch");
    if (!f.parity_matches(n)) throw ParityViolation("weight parity must be (-1)^n");
    long eps = (n == 2) ? 1 : (n == 3 ? 2 : n - 3);
    Int npow = 1;
    for (long i = 1; i < n; ++i) npow *= N;
    Int fact = 1;
    for (long i = 2; i <= n; ++i) fact *= i;
    Rat pref = Rat(Int(eps) * npow, 2 * fact);
    pref.canonicalize();
    TorsionResult out;
    out.signed_value = pref * torsion_weight_sum(n, N, f);
    out.signed_value.canonicalize();
    out.abs_value = out.signed_value < 0 ? Rat(-out.signed_value) : out.signed_value;
    out.order_factor = rat_denominator(out.signed_value);
    return out;
}

Rat torsion_tau_N2(long m) {
    if (m < 1) throw DomainError("torsion_tau_N2 needs m >= 1");
    long n = 2 * m;
    long eps = (n == 2) ? 1 : (n == 3 ? 2 : n - 3);
    std::vector<Rat> B = bernoulli_numbers(n);
    Int two_pow = 1;
    for (long i = 0; i < n - 1; ++i) two_pow *= 2;
    Int fact = 1;
    for (long i = 2; i <= n; ++i) fact *= i;
    Rat val = Rat(-eps) * Rat(two_pow - 1) * B[static_cast<size_t>(n)] / Rat(2 * fact);
    val.canonicalize();
    return val;
}

// ---------------------------------------------------------------------------
// The unit group and characters
// ---------------------------------------------------------------------------

namespace {

long pow_mod(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

std::vector<std::pair<long, long>> factorize(long n) {
    std::vector<std::pair<long, long>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        f.emplace_back(p, k);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

long primitive_root(long q, long p) {  // q = p^k, p odd prime
    long phi = q / p * (p - 1);
    std::vector<long> prime_factors;
    for (auto [pp, kk] : factorize(phi)) prime_factors.push_back(pp);
    for (long g = 2; g < q; ++g) {
        if (gcd_long(g, q) != 1) continue;
        bool ok = true;
        for (long pp : prime_factors)
            if (pow_mod(g, phi / pp, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw Error("no primitive root found");
}

// CRT lift: x = r mod q, x = 1 mod N/q
long crt_lift(long r, long q, long N) {
    long rest = N / q;
    for (long x = 1; x <= N; ++x)
        if (x % q == r % q && (rest == 1 || x % rest == 1) && gcd_long(x, N) == 1) return x;
    throw Error("CRT lift failed");
}

// discrete log of x on a generator of order `ord` within the factor q
long dlog_in_factor(long x, long g, long ord, long q) {
    long val = x % q;
    long acc = 1 % q;
    for (long d = 0; d < ord; ++d) {
        if (acc == val) return d;
        acc = (acc * g) % q;
    }
    throw Error("discrete log failed");
}

}  // namespace

long units_order(long N) { return euler_phi(N); }

std::vector<UnitGen> unit_group(long N) {
    if (N < 1) throw DomainError("unit_group needs N >= 1");
    std::vector<UnitGen> gens;
    if (N <= 2) return gens;  // trivial group
    for (auto [p, k] : factorize(N)) {
        long q = 1;
        for (long i = 0; i < k; ++i) q *= p;
        if (p == 2) {
            if (k == 1) continue;  // trivial factor
            // 4: <-1>; 2^k >= 8: <-1> x <5>
            gens.push_back({crt_lift(q - 1, q, N), 2, q});
            if (k >= 3) gens.push_back({crt_lift(5, q, N), q / 4, q});
        } else {
            long g = primitive_root(q, p);
            gens.push_back({crt_lift(g, q, N), q / p * (p - 1), q});
        }
    }
    return gens;
}

DirichletChar::DirichletChar(long N, std::vector<long> exps)
    : N_(N), gens_(unit_group(N)), exps_(std::move(exps)) {
    if (exps_.size() != gens_.size()) throw DomainError("character exponent count mismatch");
    for (size_t i = 0; i < exps_.size(); ++i) {
        exps_[i] %= gens_[i].order;
        if (exps_[i] < 0) exps_[i] += gens_[i].order;
    }
}

bool DirichletChar::is_principal() const {
    for (long e : exps_)
        if (e != 0) return false;
    return true;
}

namespace {

// exponent vector of x on the generator list; follows the push order of
// unit_group (odd/4 factors: one entry; 2^k >= 8: the pair (-1)-index, 5-index)
std::vector<long> dlog_vector(long x, const std::vector<UnitGen>& gens) {
    std::vector<long> out(gens.size(), 0);
    for (size_t i = 0; i < gens.size(); ++i) {
        long qf = gens[i].factor;
        if (qf % 2 == 0 && qf >= 8) {
            // x = (-1)^s 5^t mod 2^k; this entry is the (-1) generator and
            // the next one is the 5 generator
            long mm = x % qf;
            bool done = false;
            for (long s = 0; s < 2 && !done; ++s) {
                long target = (s == 0) ? mm : (qf - mm) % qf;
                long acc = 1;
                for (long t = 0; t < qf / 4; ++t) {
                    if (acc == target) {
                        out[i] = s;
                        out[i + 1] = t;
                        done = true;
                        break;
                    }
                    acc = (acc * 5) % qf;
                }
            }
            if (!done) throw Error("2-part discrete log failed");
            ++i;  // the 5 entry was filled above
        } else {
            out[i] = dlog_in_factor(x, gens[i].g, gens[i].order, qf);
        }
    }
    return out;
}

}  // namespace

std::optional<Rat> DirichletChar::value_exponent(long x) const {
    long m = ((x % N_) + N_) % N_;
    if (N_ == 1) return Rat(0);
    if (gcd_long(m, N_) != 1) return std::nullopt;
    std::vector<long> d = dlog_vector(m, gens_);
    Rat q(0);
    for (size_t i = 0; i < gens_.size(); ++i) q += Rat(exps_[i] * d[i], gens_[i].order);
    Rat one(1);
    while (q < 0) q += one;
    while (q >= one) q -= one;
    q.canonicalize();
    return q;
}

int DirichletChar::parity() const {
    auto q = value_exponent(N_ - 1);
    if (!q) return 1;  // N <= 2
    return (*q == 0) ? 1 : -1;
}

Cplx DirichletChar::value(long x) const {
    auto q = value_exponent(x);
    if (!q) return {0.0, 0.0};
    double ang = 2.0 * M_PI * q->get_d();
    return {std::cos(ang), std::sin(ang)};
}

CycloElem DirichletChar::value_symbolic(long x, long level) const {
    auto q = value_exponent(x);
    if (!q) return CycloElem::zero(level);
    Rat scaled = *q * level;
    scaled.canonicalize();
    if (scaled.get_den() != 1)
        throw DomainError("symbolic level does not contain the character values");
    return CycloElem::omega_pow(level, scaled.get_num().get_si());
}

DirichletChar DirichletChar::conjugate() const {
    std::vector<long> e = exps_;
    for (long& x : e) x = -x;
    return DirichletChar(N_, std::move(e));
}

std::string DirichletChar::label() const {
    std::ostringstream out;
    out << "chi mod " << N_ << " [";
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (i) out << ",";
        out << exps_[i] << "/" << gens_[i].order;
    }
    out << "]";
    return out.str();
}

std::vector<DirichletChar> characters(long N) {
    std::vector<UnitGen> gens = unit_group(N);
    std::vector<DirichletChar> out;
    std::vector<long> exps(gens.size(), 0);
    while (true) {
        out.push_back(DirichletChar(N, exps));
        size_t i = 0;
        while (i < gens.size() && ++exps[i] == gens[i].order) {
            exps[i] = 0;
            ++i;
        }
        if (i == gens.size()) break;
    }
    return out;
}

long mobius(long d) {
    if (d < 1) throw DomainError("mobius needs d >= 1");
    long out = 1;
    for (auto [p, k] : factorize(d)) {
        if (k >= 2) return 0;
        out = -out;
    }
    return out;
}

ConductorData conductor(const DirichletChar& chi) {
    long N = chi.modulus();
    for (long d = 1; d <= N; ++d) {
        if (N % d != 0) continue;
        bool factors = true;
        for (long x = 1; x <= N && factors; ++x) {
            if (gcd_long(x, N) != 1 || x % d != 1 % d) continue;
            auto q = chi.value_exponent(x);
            if (!q || *q != 0) factors = false;
        }
        if (!factors) continue;
        // build chi0 mod d by matching values on lifted generators
        std::vector<UnitGen> gens0 = unit_group(d);
        std::vector<long> exps0;
        for (const UnitGen& g : gens0) {
            long lift = -1;
            for (long x = g.g % d; x <= N + d; x += d) {
                long xx = ((x % N) + N) % N;
                if (xx != 0 && gcd_long(xx, N) == 1 && xx % d == g.g % d) {
                    lift = xx;
                    break;
                }
            }
            if (lift < 0) throw Error("no coprime lift for conductor generator");
            auto q = chi.value_exponent(lift);
            if (!q) throw Error("conductor lift not a unit");
            Rat scaled = *q * g.order;
            scaled.canonicalize();
            if (scaled.get_den() != 1) throw Error("conductor exponent not integral");
            exps0.push_back(scaled.get_num().get_si());
        }
        ConductorData out;
        out.N0 = d;
        out.chi0 = DirichletChar(d, std::move(exps0));
        return out;
    }
    throw Error("conductor search failed");
}

bool is_primitive(const DirichletChar& chi) { return conductor(chi).N0 == chi.modulus(); }

Cplx gauss_sum(const DirichletChar& chi0) {
    long N0 = chi0.modulus();
    if (N0 == 1) return {1.0, 0.0};
    Cplx acc{0.0, 0.0};
    for (long x = 0; x < N0; ++x) {
        Cplx cv = chi0.value(x);
        if (cv == Cplx(0.0, 0.0)) continue;
        double ang = 2.0 * M_PI * static_cast<double>(x) / static_cast<double>(N0);
        acc += cv * Cplx(std::cos(ang), std::sin(ang));
    }
    return acc;
}

Cplx dirichlet_L(const DirichletChar& chi, long n, double tol) {
    if (n < 2) throw DomainError("dirichlet_L needs n >= 2");
    (void)tol;  // the Euler-Maclaurin kernel is far below any requested tol
    long N = chi.modulus();
    if (N == 1) return {zeta(n), 0.0};
    Cplx acc{0.0, 0.0};
    double scale = std::pow(static_cast<double>(N), -static_cast<double>(n));
    for (long r = 1; r <= N; ++r) {
        Cplx cv = chi.value(r);
        if (cv == Cplx(0.0, 0.0)) continue;
        acc += cv * hurwitz_zeta(n, static_cast<double>(r) / static_cast<double>(N));
    }
    return acc * scale;
}

ZagierValue zagier_v1(const DirichletChar& chi, long n) {
    long want = (n % 2 == 1) ? 1 : -1;  // chi(-1) = (-1)^{n-1}
    if (chi.parity() != want) throw ParityViolation("character parity must be (-1)^{n-1}");
    ConductorData cd = conductor(chi);
    long M = chi.modulus() / cd.N0;
    Cplx tauL = gauss_sum(cd.chi0) * dirichlet_L(cd.chi0.conjugate(), n);
    double mpow = std::pow(static_cast<double>(M), static_cast<double>(n - 1));

    Cplx moebius_sum{0.0, 0.0};
    for (long d = 1; d <= M; ++d) {
        if (M % d != 0) continue;
        long mu = mobius(d);
        if (mu == 0) continue;
        Cplx cv = cd.chi0.value(d);
        moebius_sum += static_cast<double>(mu) * cv *
                       std::pow(static_cast<double>(d), static_cast<double>(n - 1));
    }
    Cplx euler_prod{1.0, 0.0};
    for (auto p = 2L; p <= M; ++p) {
        if (M % p != 0) continue;
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        euler_prod *= Cplx(1.0, 0.0) - cd.chi0.value(p) *
                                           std::pow(static_cast<double>(p),
                                                    static_cast<double>(n - 1));
    }
    ZagierValue out;
    out.moebius_form = moebius_sum * tauL / (2.0 * mpow);
    out.euler_form = euler_prod * tauL / (2.0 * mpow);
    return out;
}

std::vector<Cplx> character_combo_A(const DirichletChar& chi, long n, double tol) {
    long want = (n % 2 == 1) ? 1 : -1;
    if (chi.parity() != want) throw ParityViolation("character parity must be (-1)^{n-1}");
    long N = chi.modulus();
    std::vector<long> A = index_set_A(N);
    std::vector<Cplx> out;
    for (long a : A) {
        Cplx acc{0.0, 0.0};
        for (long b : A)
            acc += chi.value(b) * pi_n_cplx(n, polylog_root_of_unity(n, N, a * b, tol));
        out.push_back(acc);
    }
    return out;
}

std::vector<Cplx> character_combo_full(const DirichletChar& chi, long n, double tol) {
    long want = (n % 2 == 1) ? 1 : -1;
    if (chi.parity() != want) throw ParityViolation("character parity must be (-1)^{n-1}");
    long N = chi.modulus();
    std::vector<Cplx> out;
    for (long a : index_set_A(N)) {
        Cplx acc{0.0, 0.0};
        for (long b = 1; b <= N; ++b) {
            Cplx cv = chi.value(b);
            if (cv == Cplx(0.0, 0.0)) continue;
            acc += cv * pi_n_cplx(n, polylog_root_of_unity(n, N, a * b, tol));
        }
        out.push_back(acc * 0.5);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ranks
// ---------------------------------------------------------------------------

long matrix_rank(std::vector<std::vector<double>> m, double threshold,
                 std::vector<double>* pivots_out) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    double maxabs = 0.0;
    for (const auto& row : m)
        for (double x : row) maxabs = std::max(maxabs, std::abs(x));
    if (maxabs == 0.0) return 0;
    double cut = threshold * maxabs;
    long rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        for (size_t i = r + 1; i < rows; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        if (std::abs(m[piv][c]) <= cut) continue;
        std::swap(m[piv], m[r]);
        if (pivots_out) pivots_out->push_back(std::abs(m[r][c]));
        for (size_t i = r + 1; i < rows; ++i) {
            double f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

RankReport rank_check(long n, long N, double threshold) {
    if (N < 3) throw DomainError("rank_check needs N >= 3");
    std::vector<long> A = index_set_A(N);
    RankReport rep;
    rep.expected = static_cast<long>(A.size());

    std::vector<std::vector<double>> m;
    for (long b : A) {
        std::vector<double> row;
        for (long a : A) row.push_back(pi_n_real(n, polylog_root_of_unity(n, N, a * b, 1e-10)));
        m.push_back(std::move(row));
    }
    rep.rank = matrix_rank(m, threshold, &rep.pivots);
    std::sort(rep.pivots.rbegin(), rep.pivots.rend());
    rep.min_accepted_pivot = rep.pivots.empty() ? 0.0 : rep.pivots.back();

    // permutation-eigenvector property of the character combinations:
    // rho_alpha v^chi = conj(chi(alpha)) v^chi
    long want = (n % 2 == 1) ? 1 : -1;
    double worst = 0.0;
    for (const DirichletChar& chi : characters(N)) {
        if (chi.parity() != want) continue;
        std::vector<Cplx> v = character_combo_A(chi, n);
        for (long alpha = 1; alpha < N; ++alpha) {
            if (gcd_long(alpha, N) != 1) continue;
            Cplx ev = std::conj(chi.value(alpha));
            for (size_t ai = 0; ai < A.size(); ++ai) {
                long img = (alpha * A[ai]) % N;
                double sign = 1.0;
                if (2 * img > N) {  // fold with the reflection sign
                    img = N - img;
                    sign = (n % 2 == 0) ? -1.0 : 1.0;
                }
                size_t idx = static_cast<size_t>(
                    std::find(A.begin(), A.end(), img) - A.begin());
                Cplx lhs = sign * v[idx];
                Cplx rhs = ev * v[ai];
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    }
    rep.max_eigen_residual = worst;
    return rep;
}

SubfieldRankReport subfield_rank(long n, long N, const std::vector<long>& subgroup_gens,
                                 double threshold) {
    if (N < 3) throw DomainError("subfield_rank needs N >= 3");
    for (long g : subgroup_gens)
        if (gcd_long(((g % N) + N) % N, N) != 1)
            throw InvalidSubgroup("generator not a unit mod N");
    // close under multiplication
    std::vector<long> H = {1};
    std::vector<long> frontier = {1};
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long h : frontier)
            for (long g : subgroup_gens) {
                long x = (h * (((g % N) + N) % N)) % N;
                if (std::find(H.begin(), H.end(), x) == H.end()) {
                    H.push_back(x);
                    next.push_back(x);
                }
            }
        frontier = std::move(next);
    }
    std::sort(H.begin(), H.end());

    SubfieldRankReport rep;
    rep.subgroup = H;
    long phi = euler_phi(N);
    if (phi % static_cast<long>(H.size()) != 0) throw InvalidSubgroup("subgroup order");
    rep.degree = phi / static_cast<long>(H.size());
    rep.totally_real = std::find(H.begin(), H.end(), N - 1) != H.end();
    long r1 = rep.totally_real ? rep.degree : 0;
    long r2 = rep.totally_real ? 0 : rep.degree / 2;
    rep.expected = (n % 2 == 0) ? r2 : (r1 + r2);

    std::vector<long> A = index_set_A(N);
    std::vector<std::vector<double>> m;
    for (long b : A) {
        std::vector<double> row;
        for (long a : A) {
            double acc = 0.0;
            for (long c : H)
                acc += pi_n_real(n, polylog_root_of_unity(n, N, a * ((c * b) % N), 1e-10));
            row.push_back(acc);
        }
        m.push_back(std::move(row));
    }
    rep.computed = matrix_rank(m, threshold);
    return rep;
}

} // namespace hcg
