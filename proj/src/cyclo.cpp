#include "hcg/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "hcg/errors.hpp"
#include "hcg/precision.hpp"

namespace hcg {

Precision precision_mode() {
    static const Precision mode = [] {
        const char* env = std::getenv("HCG_PRECISION");
        if (env && std::string(env) == "extended") return Precision::Extended;
        return Precision::F64;
    }();
    return mode;
}

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Exact division of integer polynomials, quotient must be exact.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (num.size() >= den.size()) {
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.size() < den.size()) break;
        Int lead = num.back() / den.back();
        size_t shift = num.size() - den.size();
        quot[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
    }
    for (const Int& c : num)
        if (c != 0) throw Error("inexact polynomial division");
    while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
    return quot;
}

std::mutex g_cyclo_mutex;
std::map<long, std::vector<Int>> g_cyclo_cache;
std::map<long, std::vector<Rat>> g_phi_monic_cache;  // rational copy used in reductions

}  // namespace

std::vector<Int> cyclotomic_poly(long N) {
    if (N < 1) throw DomainError("cyclotomic_poly requires N >= 1");
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(N);
    if (it != g_cyclo_cache.end()) return it->second;

    // Work outside the cache lookup recursion: compute all divisors iteratively.
    std::vector<long> divisors;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) divisors.push_back(d);

    for (long d : divisors) {
        if (g_cyclo_cache.count(d)) continue;
        // x^d - 1
        std::vector<Int> num(d + 1, Int(0));
        num[0] = -1;
        num[d] = 1;
        for (long e : divisors) {
            if (e >= d || d % e != 0) continue;
            num = poly_div_exact(std::move(num), g_cyclo_cache.at(e));
        }
        g_cyclo_cache[d] = std::move(num);
    }
    return g_cyclo_cache.at(N);
}

namespace {

const std::vector<Rat>& phi_monic(long N) {
    {
        std::lock_guard<std::mutex> lock(g_cyclo_mutex);
        auto it = g_phi_monic_cache.find(N);
        if (it != g_phi_monic_cache.end()) return it->second;
    }
    std::vector<Int> zpoly = cyclotomic_poly(N);
    std::vector<Rat> qpoly(zpoly.size());
    for (size_t i = 0; i < zpoly.size(); ++i) qpoly[i] = Rat(zpoly[i]);
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    return g_phi_monic_cache.emplace(N, std::move(qpoly)).first->second;
}

// Remainder of p mod the monic polynomial m, over Q.
void poly_mod(std::vector<Rat>& p, const std::vector<Rat>& m) {
    const size_t dm = m.size() - 1;  // degree of m
    while (p.size() > dm) {
        Rat lead = p.back();
        if (lead != 0) {
            size_t shift = p.size() - 1 - dm;
            for (size_t i = 0; i < dm; ++i) {
                p[shift + i] -= lead * m[i];
                p[shift + i].canonicalize();
            }
        }
        p.pop_back();
    }
    p.resize(dm, Rat(0));
}

}  // namespace

CycloElem::CycloElem(long N) : level_(N) {
    if (N < 2) throw DomainError("CycloElem level must be >= 2");
    coeffs_.assign(euler_phi(N), Rat(0));
}

CycloElem::CycloElem(long N, const Rat& constant) : CycloElem(N) {
    coeffs_[0] = constant;
    coeffs_[0].canonicalize();
}

CycloElem::CycloElem(long N, std::vector<Rat> coeffs) : level_(N) {
    if (N < 2) throw DomainError("CycloElem level must be >= 2");
    reduce(coeffs);
    coeffs_ = std::move(coeffs);
}

void CycloElem::reduce(std::vector<Rat>& raw) const {
    const std::vector<Rat>& m = phi_monic(level_);
    for (Rat& c : raw) c.canonicalize();
    poly_mod(raw, m);
}

CycloElem CycloElem::omega(long N) { return omega_pow(N, 1); }

CycloElem CycloElem::omega_pow(long N, long k) {
    k %= N;
    if (k < 0) k += N;
    std::vector<Rat> c(static_cast<size_t>(k) + 1, Rat(0));
    c[k] = 1;
    return CycloElem(N, std::move(c));
}

bool CycloElem::is_zero() const {
    for (const Rat& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycloElem::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool CycloElem::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rat CycloElem::rational_part() const { return coeffs_[0]; }

void CycloElem::check_same_level(const CycloElem& o) const {
    if (level_ != o.level_) throw LevelMismatch();
}

CycloElem CycloElem::operator+(const CycloElem& o) const {
    check_same_level(o);
    CycloElem r(*this);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        r.coeffs_[i] += o.coeffs_[i];
        r.coeffs_[i].canonicalize();
    }
    return r;
}

CycloElem CycloElem::operator-(const CycloElem& o) const {
    check_same_level(o);
    CycloElem r(*this);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        r.coeffs_[i] -= o.coeffs_[i];
        r.coeffs_[i].canonicalize();
    }
    return r;
}

CycloElem CycloElem::operator-() const {
    CycloElem r(*this);
    for (Rat& c : r.coeffs_) c = -c;
    return r;
}

CycloElem CycloElem::operator*(const CycloElem& o) const {
    check_same_level(o);
    std::vector<Rat> prod(2 * coeffs_.size(), Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return CycloElem(level_, std::move(prod));
}

namespace {

// Extended Euclid over Q[x]: returns s with s*a == gcd (mod m), gcd normalized to 1.
// a must be invertible mod m (true for any nonzero element when m = Phi_N and
// a has degree < deg m, since Phi_N is irreducible over Q).
std::vector<Rat> poly_inverse_mod(std::vector<Rat> a, std::vector<Rat> m) {
    auto deg = [](const std::vector<Rat>& p) -> long {
        for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    auto trim = [&](std::vector<Rat>& p) { p.resize(static_cast<size_t>(deg(p) + 1)); };

    // invariants: r0 = s0*a (mod original m), r1 = s1*a (mod original m)
    std::vector<Rat> r0 = m, r1 = a;
    std::vector<Rat> s0 = {Rat(0)}, s1 = {Rat(1)};
    trim(r1);
    while (deg(r1) >= 0) {
        // divide r0 by r1
        std::vector<Rat> q(std::max<long>(deg(r0) - deg(r1) + 1, 1), Rat(0));
        std::vector<Rat> rem = r0;
        long dr1 = deg(r1);
        Rat lead1 = r1[dr1];
        while (deg(rem) >= dr1) {
            long dr = deg(rem);
            Rat f = rem[dr] / lead1;
            f.canonicalize();
            q[dr - dr1] += f;
            for (long i = 0; i <= dr1; ++i) {
                rem[dr - dr1 + i] -= f * r1[i];
                rem[dr - dr1 + i].canonicalize();
            }
        }
        trim(rem);
        // s_new = s0 - q*s1
        std::vector<Rat> snew(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) {
                snew[i + j] -= q[i] * s1[j];
                snew[i + j].canonicalize();
            }
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
        if (r1.empty()) r1 = {Rat(0)};
    }
    long d0 = deg(r0);
    if (d0 != 0) throw DivisionByZero("element not invertible (gcd not constant)");
    Rat g = r0[0];
    for (Rat& c : s0) {
        c /= g;
        c.canonicalize();
    }
    return s0;
}

}  // namespace

CycloElem CycloElem::inverse() const {
    if (is_zero()) throw DivisionByZero("inverting zero cyclotomic element");
    std::vector<Rat> inv = poly_inverse_mod(coeffs_, phi_monic(level_));
    return CycloElem(level_, std::move(inv));
}

CycloElem CycloElem::operator/(const CycloElem& o) const {
    check_same_level(o);
    return *this * o.inverse();
}

CycloElem CycloElem::pow(long e) const {
    if (e == 0) return one(level_);
    CycloElem base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    CycloElem acc = one(level_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool CycloElem::operator==(const CycloElem& o) const {
    return level_ == o.level_ && coeffs_ == o.coeffs_;
}

bool CycloElem::operator<(const CycloElem& o) const {
    if (level_ != o.level_) return level_ < o.level_;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], o.coeffs_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

CycloElem CycloElem::galois(long c) const {
    long N = level_;
    c %= N;
    if (c < 0) c += N;
    if (gcd_long(c, N) != 1) throw NotCoprime("galois exponent not coprime to level");
    std::vector<Rat> out(static_cast<size_t>(N), Rat(0));
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        size_t e = static_cast<size_t>((static_cast<long>(k) * c) % N);
        out[e] += coeffs_[k];
    }
    return CycloElem(N, std::move(out));
}

Cplx CycloElem::embed(long a) const {
    long N = level_;
    a %= N;
    if (a < 0) a += N;
    if (gcd_long(a, N) != 1) throw NotCoprime("embedding index not coprime to level");
    const long double tau = 6.283185307179586476925286766559L;  // 2*pi
    long double re = 0, im = 0;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        long double c = static_cast<long double>(coeffs_[k].get_d());
        // exact residue keeps the argument small regardless of k
        long r = (static_cast<long>(k) * a) % N;
        long double ang = tau * static_cast<long double>(r) / static_cast<long double>(N);
        re += c * std::cos(ang);
        im += c * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

CycloElem field_arith(const CycloElem& a, const CycloElem& b, FieldOp op) {
    switch (op) {
        case FieldOp::Add: return a + b;
        case FieldOp::Sub: return a - b;
        case FieldOp::Mul: return a * b;
        case FieldOp::Div: return a / b;
    }
    throw Error("unreachable");
}

std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    std::string s = c.get_num().get_str();
    if (c.get_den() != 1) s += "/" + c.get_den().get_str();
    return s;
}

Rat rat_from_string(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw ParseError("empty rational");
    size_t slash = t.find('/');
    try {
        Rat q;
        if (slash == std::string::npos) {
            q = Rat(Int(t));
        } else {
            Int num(t.substr(0, slash));
            Int den(t.substr(slash + 1));
            if (den == 0) throw DivisionByZero("rational with zero denominator");
            q = Rat(num, den);
        }
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + s);
    }
}

Int rat_denominator(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_den();
}

std::string CycloElem::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const Rat& c = coeffs_[k];
        if (c == 0) continue;
        Rat a = c > 0 ? c : Rat(-c);
        a.canonicalize();
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unit_coeff = (a == 1) && k > 0;
        if (!unit_coeff) out << rat_to_string(a);
        if (k > 0) {
            if (!unit_coeff) out << "*";
            out << "w";
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

CycloElem CycloElem::from_string(long N, const std::string& s) {
    // terms separated by +/-; term = rational ['*' w['^'k]] | [rational '*'] w['^'k]
    std::vector<Rat> acc(static_cast<size_t>(N), Rat(0));
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == s.size()) throw ParseError("empty cyclotomic element");
    bool any = false;
    int sign = 1;
    if (s[i] == '-') {
        sign = -1;
        ++i;
    } else if (s[i] == '+') {
        ++i;
    }
    while (true) {
        skip_ws();
        if (i >= s.size()) throw ParseError("dangling sign in: " + s);
        Rat coeff(1);
        bool saw_number = false;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
            coeff = rat_from_string(s.substr(i, j - i));
            i = j;
            saw_number = true;
        }
        skip_ws();
        long power = 0;
        if (i < s.size() && (s[i] == '*' || s[i] == 'w')) {
            if (s[i] == '*') {
                ++i;
                skip_ws();
                if (i >= s.size() || s[i] != 'w') throw ParseError("expected w after * in: " + s);
            }
            ++i;  // consume 'w'
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw ParseError("expected exponent in: " + s);
                power = std::stol(s.substr(i, j - i));
                i = j;
            }
        } else if (!saw_number) {
            throw ParseError("expected term in: " + s);
        }
        if (power >= N) throw ParseError("exponent too large in: " + s);
        acc[static_cast<size_t>(power)] += sign * coeff;
        any = true;
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '+') sign = 1;
        else if (s[i] == '-') sign = -1;
        else throw ParseError("unexpected character in: " + s);
        ++i;
    }
    if (!any) throw ParseError("no terms in: " + s);
    return CycloElem(N, std::move(acc));
}

} // namespace hcg
