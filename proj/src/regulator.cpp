#include "hcg/regulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "hcg/errors.hpp"
#include "hcg/precision.hpp"

namespace hcg {

namespace {

constexpr long double kTau = 6.283185307179586476925286766559L;  // 2*pi

// B_2..B_32 as exact fractions, for the Euler-Maclaurin corrections.
struct BernFrac {
    long long num;
    long long den;
};
constexpr BernFrac kEvenBernoulli[] = {
    {1, 6},          {-1, 30},         {1, 42},         {-1, 30},
    {5, 66},         {-691, 2730},     {7, 6},          {-3617, 510},
    {43867, 798},    {-174611, 330},   {854513, 138},   {-236364091, 2730},
    {8553103, 6},    {-23749461029LL, 870}, {8615841276005LL, 14322},
    {-7709321041217LL, 510},
};

template <typename R>
struct Kahan {
    R sum = 0, c = 0;
    void add(R x) {
        R y = x - c;
        R t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

template <typename R>
std::complex<R> polylog_series(long n, R re, R im, long K) {
    // iterate z^k by multiplication with periodic renormalization of |z|=1
    Kahan<R> sre, sim;
    R zr = re, zi = im;
    R r2 = re * re + im * im;
    bool on_circle = std::abs(r2 - R(1)) < R(1e-9);
    for (long k = 1; k <= K; ++k) {
        R kn = R(1);
        for (long j = 0; j < n; ++j) kn *= R(k);
        sre.add(zr / kn);
        sim.add(zi / kn);
        R nr = zr * re - zi * im;
        R ni = zr * im + zi * re;
        zr = nr;
        zi = ni;
        if (on_circle && (k & 1023) == 0) {
            // pull the modulus back onto the circle so drift stays bounded
            R m = std::sqrt(zr * zr + zi * zi);
            zr /= m;
            zi /= m;
        }
    }
    return {sre.sum, sim.sum};
}

template <typename R>
std::complex<R> polylog_root_series(long n, long N, long m, long K) {
    // reflection-symmetric phase table: conjugation symmetry then holds
    // exactly in the working arithmetic
    std::vector<R> cs(static_cast<size_t>(N)), is(static_cast<size_t>(N));
    for (long j = 0; j <= N / 2; ++j) {
        R ang = R(kTau) * R(j) / R(N);
        cs[j] = std::cos(ang);
        is[j] = std::sin(ang);
        if (j > 0 && j < N - j) {
            cs[N - j] = cs[j];
            is[N - j] = -is[j];
        }
    }
    if (N % 2 == 0) is[N / 2] = 0;
    Kahan<R> sre, sim;
    long r = 0;
    long mm = ((m % N) + N) % N;
    for (long k = 1; k <= K; ++k) {
        r += mm;
        if (r >= N) r -= N;
        R kn = R(1);
        for (long j = 0; j < n; ++j) kn *= R(k);
        sre.add(cs[r] / kn);
        sim.add(is[r] / kn);
    }
    return {sre.sum, sim.sum};
}

long choose_terms_on_circle(long n, double dist_to_one, double tol) {
    // summation-by-parts tail bound 4 / (|1-z| K^n) < tol
    double target = 4.0 / (dist_to_one * tol);
    long K = static_cast<long>(std::ceil(std::pow(target, 1.0 / static_cast<double>(n)))) + 2;
    return std::max<long>(K, 16);
}

template <typename R>
R hurwitz_impl(long s, R a) {
    // Euler-Maclaurin with M leading terms and J correction terms
    const int M = 28, J = 14;
    Kahan<R> acc;
    for (int k = 0; k < M; ++k) acc.add(std::pow(a + R(k), R(-s)));
    R am = a + R(M);
    acc.add(std::pow(am, R(1 - s)) / R(s - 1));
    acc.add(std::pow(am, R(-s)) / R(2));
    R rising = R(s);                 // s (s+1) ... (s + 2j - 2)
    R power = std::pow(am, R(-s - 1));
    for (int j = 1; j <= J; ++j) {
        R b2j = R(kEvenBernoulli[j - 1].num) / R(kEvenBernoulli[j - 1].den);
        R fact = R(1);
        for (int i = 2; i <= 2 * j; ++i) fact *= R(i);
        acc.add(b2j / fact * rising * power);
        rising *= R(s + 2 * j - 1) * R(s + 2 * j);
        power /= am * am;
    }
    return acc.sum;
}

}  // namespace

double zeta(long n) {
    if (n < 2) throw DomainError("zeta requires n >= 2");
    if (precision_mode() == Precision::Extended)
        return static_cast<double>(hurwitz_impl<long double>(n, 1.0L));
    return hurwitz_impl<double>(n, 1.0);
}

double hurwitz_zeta(long s, double a) {
    if (s < 2) throw DomainError("hurwitz_zeta requires s >= 2");
    if (a <= 0.0 || a > 1.0) throw DomainError("hurwitz_zeta requires 0 < a <= 1");
    if (precision_mode() == Precision::Extended)
        return static_cast<double>(hurwitz_impl<long double>(s, static_cast<long double>(a)));
    return hurwitz_impl<double>(s, a);
}

Cplx polylog(long n, Cplx z, double tol) {
    if (n < 2) throw DomainError("polylog implemented for n >= 2");
    if (tol < 1e-14) tol = 1e-14;
    double r = std::abs(z);
    if (r > 1.0 + 1e-12) throw DomainError("polylog requires |z| <= 1");
    if (std::abs(z - Cplx(1, 0)) < 1e-15) return {zeta(n), 0.0};

    long K;
    if (r < 0.999) {
        // geometric bound r^{K+1} / (1 - r) < tol
        K = static_cast<long>(std::ceil(std::log(tol * (1.0 - r)) / std::log(r))) + 2;
        K = std::max<long>(K, 8);
    } else {
        K = choose_terms_on_circle(n, std::abs(Cplx(1, 0) - z), tol);
    }
    if (precision_mode() == Precision::Extended) {
        auto v = polylog_series<long double>(n, static_cast<long double>(z.real()),
                                             static_cast<long double>(z.imag()), K);
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    auto v = polylog_series<double>(n, z.real(), z.imag(), K);
    return {v.real(), v.imag()};
}

Cplx polylog_root_of_unity(long n, long N, long m, double tol) {
    if (n < 2) throw DomainError("polylog implemented for n >= 2");
    if (tol < 1e-14) tol = 1e-14;
    long mm = ((m % N) + N) % N;
    if (mm == 0) return {zeta(n), 0.0};

    // the same values recur across rank and character computations
    static std::mutex cache_mutex;
    static std::map<std::tuple<long, long, long, double, int>, Cplx> cache;
    auto key = std::make_tuple(n, N, mm, tol, static_cast<int>(precision_mode()));
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    double dist = std::abs(Cplx(1, 0) - std::polar(1.0, static_cast<double>(kTau) * mm / N));
    long K = choose_terms_on_circle(n, dist, tol);
    Cplx out;
    if (precision_mode() == Precision::Extended) {
        auto v = polylog_root_series<long double>(n, N, mm, K);
        out = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    } else {
        auto v = polylog_root_series<double>(n, N, mm, K);
        out = {v.real(), v.imag()};
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, out);
    return out;
}

RegulatorValue regulator_closed_form(long n, long N, long b, long a, double tol) {
    if (gcd_long(b, N) != 1 || gcd_long(a, N) != 1)
        throw NotCoprime("regulator indices must be coprime to N");
    RegulatorValue out;
    out.normalized = polylog_root_of_unity(n, N, a * b, tol);
    double scale = std::pow(static_cast<double>(N), static_cast<double>(n - 1));
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.raw = sign * scale * out.normalized;
    return out;
}

// ---------------------------------------------------------------------------
// The reduced integral
// ---------------------------------------------------------------------------

namespace {

// log(1 - w), stable for small |w|
template <typename R>
std::complex<R> log1m(std::complex<R> w) {
    R re = w.real(), im = w.imag();
    R mag2 = -2 * re + re * re + im * im;               // |1-w|^2 - 1
    R lg = std::log1p(mag2) / R(2);
    R arg = std::atan2(-im, R(1) - re);
    return {lg, arg};
}

// integrand log(1 - zeta^c P)/P extended by -zeta^c at P = 0
template <typename R>
std::complex<R> integrand(std::complex<R> zc, R P) {
    if (P <= R(0)) return -zc;
    std::complex<R> w = zc * P;
    std::complex<R> l = log1m(w);
    return {l.real() / P, l.imag() / P};
}

// Gauss-Legendre nodes/weights on [0,1], Newton on the recurrence.
template <typename R>
void gauss_legendre(long K, std::vector<R>& nodes, std::vector<R>& weights) {
    nodes.resize(static_cast<size_t>(K));
    weights.resize(static_cast<size_t>(K));
    for (long i = 0; i < K; ++i) {
        R x = std::cos(R(M_PI) * (R(i) + R(0.75)) / (R(K) + R(0.5)));
        for (int it = 0; it < 100; ++it) {
            R p0 = 1, p1 = x;
            for (long k = 2; k <= K; ++k) {
                R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / R(k);
                p0 = p1;
                p1 = p2;
            }
            R dp = R(K) * (x * p1 - p0) / (x * x - 1);
            R dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < R(1e-17)) break;
        }
        R p0 = 1, p1 = x;
        for (long k = 2; k <= K; ++k) {
            R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / R(k);
            p0 = p1;
            p1 = p2;
        }
        R dp = R(K) * (x * p1 - p0) / (x * x - 1);
        // map [-1,1] -> [0,1]; reversed cos ordering keeps nodes ascending
        nodes[static_cast<size_t>(K - 1 - i)] = (x + 1) / 2;
        weights[static_cast<size_t>(K - 1 - i)] = 1 / ((1 - x * x) * dp * dp);
    }
}

template <typename R>
IntegralResult tensor_gauss_impl(const IntegralJob& job) {
    const long d = job.n - 1;
    const long K = job.order_or_samples;
    long c = ((job.a * job.b) % job.N + job.N) % job.N;
    std::complex<R> zc = std::polar(R(1), R(kTau) * R(c) / R(job.N));
    std::vector<R> x, w;
    gauss_legendre<R>(K, x, w);

    std::vector<long> idx(static_cast<size_t>(d), 0);
    Kahan<R> sre, sim;
    long evals = 0;
    while (true) {
        R P = 1, W = 1;
        for (long k = 0; k < d; ++k) {
            P *= x[static_cast<size_t>(idx[static_cast<size_t>(k)])];
            W *= w[static_cast<size_t>(idx[static_cast<size_t>(k)])];
        }
        std::complex<R> f = integrand<R>(zc, P);
        sre.add(W * f.real());
        sim.add(W * f.imag());
        ++evals;
        long k = d - 1;
        while (k >= 0 && ++idx[static_cast<size_t>(k)] == K) {
            idx[static_cast<size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    R scale = 1;
    for (long k = 0; k < d; ++k) scale *= R(-job.N);
    IntegralResult out;
    out.value = Cplx(static_cast<double>(scale * sre.sum), static_cast<double>(scale * sim.sum));
    out.std_error = 0.0;
    out.evaluations = evals;
    return out;
}

template <typename R>
IntegralResult monte_carlo_impl(const IntegralJob& job) {
    const long d = job.n - 1;
    const long S = job.order_or_samples;
    long c = ((job.a * job.b) % job.N + job.N) % job.N;
    std::complex<R> zc = std::polar(R(1), R(kTau) * R(c) / R(job.N));
    std::mt19937_64 rng(job.seed);
    Kahan<R> sre, sim, s2re, s2im;
    for (long s = 0; s < S; ++s) {
        R P = 1;
        for (long k = 0; k < d; ++k) {
            // strictly interior uniform, bit-reproducible across platforms
            R u = (R(rng() >> 11) + R(0.5)) * R(1.0 / 9007199254740992.0);
            P *= u;
        }
        std::complex<R> f = integrand<R>(zc, P);
        sre.add(f.real());
        sim.add(f.imag());
        s2re.add(f.real() * f.real());
        s2im.add(f.imag() * f.imag());
    }
    R mre = sre.sum / R(S), mim = sim.sum / R(S);
    R vre = std::max<R>(0, s2re.sum / R(S) - mre * mre);
    R vim = std::max<R>(0, s2im.sum / R(S) - mim * mim);
    R se = std::sqrt((vre + vim) / R(S));
    R scale = 1;
    for (long k = 0; k < d; ++k) scale *= R(-job.N);
    IntegralResult out;
    out.value = Cplx(static_cast<double>(scale * mre), static_cast<double>(scale * mim));
    out.std_error = static_cast<double>(std::abs(scale) * se);
    out.evaluations = S;
    return out;
}

}  // namespace

IntegralResult regulator_integral(const IntegralJob& job) {
    if (gcd_long(job.b, job.N) != 1 || gcd_long(job.a, job.N) != 1)
        throw NotCoprime("integral job indices must be coprime to N");
    if (job.n < 2) throw DomainError("n >= 2 required");
    if (job.method == IntegralMethod::TensorGauss) {
        if (job.n > 6) throw UnsupportedDimension("tensor quadrature supports n <= 6");
        if (job.order_or_samples < 2 || job.order_or_samples > 512)
            throw DomainError("tensor order out of range");
        if (precision_mode() == Precision::Extended) return tensor_gauss_impl<long double>(job);
        return tensor_gauss_impl<double>(job);
    }
    if (job.order_or_samples < 1) throw DomainError("sample count out of range");
    if (precision_mode() == Precision::Extended) return monte_carlo_impl<long double>(job);
    return monte_carlo_impl<double>(job);
}

// ---------------------------------------------------------------------------
// Branch-cut checks
// ---------------------------------------------------------------------------

MalteseReport maltese_check(const CycleSum& s, long n, long b, long a) {
    MalteseReport rep;
    long N = s.level;
    long r = ((a * b) % N + N) % N;
    bool ray_ok = (r != 0);  // e^{-2 pi i ab/N} in (0,1] iff ab = 0 mod N

    bool saw_z = false;
    bool all_ok = true;
    for (const ParamCycle& t : s.terms) {
        bool has_u = false, has_v = false;
        for (Param p : t.params) {
            if (p.is_u()) has_u = true;
            if (p.is_v()) has_v = true;
        }
        if (!has_u && !has_v) {
            // the main term: R_- meets 1 - zeta^{ab}[0,1] nowhere
            saw_z = true;
            if (r == 0) {
                rep.z_ok = false;
                rep.z_case = "zeta^{ab} = 1 (excluded by coprimality)";
            } else if (2 * r == N) {
                rep.z_ok = true;
                rep.z_case = "zeta^{ab} = -1: the segment is [1,2], disjoint from R_-";
            } else {
                rep.z_ok = true;
                rep.z_case = "Im zeta^{ab} != 0: the segment meets R only at z = 1";
            }
            all_ok = all_ok && rep.z_ok;
            continue;
        }
        MalteseTermVerdict v;
        v.i = has_v ? 2 : 1;
        v.term = t.to_string().substr(0, 90);
        v.support_ok = support_check(t, n, v.i, b);
        v.ray_ok = ray_ok;
        all_ok = all_ok && v.support_ok && v.ray_ok;
        rep.w_terms.push_back(std::move(v));
    }
    rep.pass = all_ok && saw_z;
    return rep;
}

// ---------------------------------------------------------------------------
// Value vectors
// ---------------------------------------------------------------------------

std::vector<long> index_set_A(long N) {
    std::vector<long> A;
    for (long x = 1; 2 * x <= N; ++x)
        if (gcd_long(x, N) == 1) A.push_back(x);
    return A;
}

double pi_n_real(long n, Cplx z) { return (n % 2 == 1) ? z.real() : z.imag(); }

Cplx pi_n_cplx(long n, Cplx z) {
    return (n % 2 == 1) ? Cplx(z.real(), 0.0) : Cplx(0.0, z.imag());
}

std::vector<double> embedding_value_vector(long n, long N, long b, double tol) {
    if (N < 3) throw DomainError("index-set vectors need N >= 3");
    if (gcd_long(b, N) != 1) throw NotCoprime("b must be coprime to N");
    std::vector<double> out;
    for (long a : index_set_A(N))
        out.push_back(pi_n_real(n, polylog_root_of_unity(n, N, a * b, tol)));
    return out;
}

} // namespace hcg
