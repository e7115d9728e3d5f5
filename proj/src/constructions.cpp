#include "hcg/constructions.hpp"

#include <algorithm>

#include "hcg/errors.hpp"
#include "hcg/fpoly.hpp"

namespace hcg {

Variant variant_from_string(const std::string& s) {
    if (s == "auto") return Variant::Auto;
    if (s == "k3") return Variant::K3;
    if (s == "k5") return Variant::K5;
    if (s == "k7_first") return Variant::K7First;
    if (s == "k7_second") return Variant::K7Second;
    if (s == "k9_appendix") return Variant::K9Appendix;
    if (s == "general") return Variant::General;
    throw DomainError("unknown variant: " + s);
}

std::string variant_to_string(Variant v) {
    switch (v) {
        case Variant::Auto: return "auto";
        case Variant::K3: return "k3";
        case Variant::K5: return "k5";
        case Variant::K7First: return "k7_first";
        case Variant::K7Second: return "k7_second";
        case Variant::K9Appendix: return "k9_appendix";
        case Variant::General: return "general";
    }
    return "?";
}

CycleSpec CycleSpec::resolved() const {
    CycleSpec r = *this;
    if (r.n < 2) throw DomainError("n must be >= 2");
    if (r.N < 2) throw DomainError("N must be >= 2");
    r.b %= r.N;
    if (r.b < 0) r.b += r.N;
    if (gcd_long(r.b, r.N) != 1) throw DomainError("b must be coprime to N");
    if (r.variant == Variant::Auto) {
        if (r.n == 2) r.variant = Variant::K3;
        else if (r.n == 3) r.variant = Variant::K5;
        else r.variant = Variant::General;
    }
    switch (r.variant) {
        case Variant::K3:
            if (r.n != 2) throw VariantMismatch("k3 requires n = 2");
            break;
        case Variant::K5:
            if (r.n != 3) throw VariantMismatch("k5 requires n = 3");
            break;
        case Variant::K7First:
        case Variant::K7Second:
            if (r.n != 4) throw VariantMismatch("k7 variants require n = 4");
            break;
        case Variant::K9Appendix:
            if (r.n != 5) throw VariantMismatch("k9_appendix requires n = 5");
            break;
        case Variant::General:
            if (r.n < 4) throw VariantMismatch("general construction requires n >= 4");
            break;
        case Variant::Auto:
            break;
    }
    return r;
}

CycloElem CycleSpec::xi() const { return CycloElem::omega_pow(N, b); }

NormalizationConstants normalization(long n, long N) {
    NormalizationConstants k;
    Int pw = 1;
    for (long i = 1; i < n; ++i) pw *= N;
    k.xi_norm = Rat(Int(n % 2 == 0 ? 1 : -1), pw);
    k.xi_norm.canonicalize();
    k.epsilon_n = (n == 2) ? 1 : (n == 3 ? 2 : n - 3);
    return k;
}

// ---------------------------------------------------------------------------
// Coordinate factories. Every display below is fed through CoordBuilder, so
// orientation flips and unit extraction are automatic.
// ---------------------------------------------------------------------------

namespace {

Monomial t_prod(long from, long to, int exp = 1) {  // t_from * ... * t_to, each ^exp
    Monomial m;
    for (long i = from; i <= to; ++i) m.set_exponent(Param::t(static_cast<int>(i)), exp);
    return m;
}

// t_i / (t_i - 1)
CoordFn mobius(long level, long i) {
    CoordBuilder b(level);
    b.mul_mono(Monomial::param(Param::t(static_cast<int>(i))));
    b.mul_atom(Monomial::param(Param::t(static_cast<int>(i))), CycloElem::one(level),
               Monomial(), -1);
    return b.build();
}

// (1 - xi t_1...t_k)^exp
CoordFn f_power(long level, const CycloElem& xi, long k, int exp) {
    CoordBuilder b(level);
    b.mul_atom(Monomial(), xi, t_prod(1, k), exp);
    return b.build();
}

CoordFn mono_coord(long level, const Monomial& m) {
    CoordBuilder b(level);
    b.mul_mono(m);
    return b.build();
}

Monomial tN(long i, long Npow) {
    return Monomial::param(Param::t(static_cast<int>(i)), static_cast<int>(Npow));
}

}  // namespace

ParamCycle build_Z(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    const long n = spec.n, N = spec.N;
    ParamCycle Z;
    Z.level = N;
    Z.coeff = 1;
    for (long i = 1; i <= n - 1; ++i) Z.params.push_back(Param::t(static_cast<int>(i)));
    for (long i = 1; i <= n - 1; ++i) Z.coords.push_back(mobius(N, i));
    Z.coords.push_back(f_power(N, spec.xi(), n - 1, 1));
    for (long i = 1; i <= n - 1; ++i) Z.coords.push_back(mono_coord(N, tN(i, N)));
    return Z;
}

ParamCycle build_W1_tuple(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    const long n = spec.n, N = spec.N;
    if (n < 3) throw VariantMismatch("W1 needs n >= 3");
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    for (long i = 1; i <= n - 2; ++i) W.params.push_back(Param::t(static_cast<int>(i)));
    W.params.push_back(Param::u());
    Monomial u = Monomial::param(Param::u());
    CycloElem one = CycloElem::one(N);

    if (n == 3) {
        // (t1/(t1-1), 1/(1-xi t1), (u-t1^N)(u-t1^-N)/(u-1)^2, t1^N u, u/t1^N)
        W.coords.push_back(mobius(N, 1));
        W.coords.push_back(f_power(N, spec.xi(), 1, -1));
        CoordBuilder big(N);
        big.mul_atom(u, one, tN(1, N), 1);
        big.mul_atom(u, one, tN(1, -N), 1);
        big.mul_atom(u, one, Monomial(), -2);
        W.coords.push_back(big.build());
        W.coords.push_back(mono_coord(N, tN(1, N) * u));
        W.coords.push_back(mono_coord(N, u * tN(1, -N)));
        return W;
    }

    // n >= 4: (moebius t_i ..., 1/(1 - xi t1..t_{n-2}),
    //          prod_i (u - t_i^N) / ((u - t1^N..t_{n-2}^N)(u-1)^{n-3}),
    //          t_i^N/u ..., u / prod t^N)
    for (long i = 1; i <= n - 2; ++i) W.coords.push_back(mobius(N, i));
    W.coords.push_back(f_power(N, spec.xi(), n - 2, -1));
    CoordBuilder big(N);
    for (long i = 1; i <= n - 2; ++i) big.mul_atom(u, one, tN(i, N), 1);
    big.mul_atom(u, one, t_prod(1, n - 2, static_cast<int>(N)), -1);
    big.mul_atom(u, one, Monomial(), -static_cast<int>(n - 3));
    W.coords.push_back(big.build());
    for (long i = 1; i <= n - 2; ++i)
        W.coords.push_back(mono_coord(N, tN(i, N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, u * t_prod(1, n - 2, -static_cast<int>(N))));
    return W;
}

namespace {

// First K7 presentation: the two W1 companions and the (v, u) W2 term.
ParamCycle k7_first_w1(const CycleSpec& spec, int which) {
    const long N = spec.N;
    Monomial u = Monomial::param(Param::u());
    CycloElem one = CycloElem::one(N);
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    W.params = {Param::t(1), Param::t(2), Param::u()};
    W.coords.push_back(mobius(N, 1));
    W.coords.push_back(mobius(N, 2));
    W.coords.push_back(f_power(N, spec.xi(), 2, -1));
    CoordBuilder big(N);
    big.mul_atom(u, one, tN(1, N), 1);
    big.mul_atom(u, one, tN(2, N), 1);
    big.mul_atom(u, one, Monomial(), -1);
    big.mul_atom(u, one, tN(1, N) * tN(2, N), -1);
    W.coords.push_back(big.build());
    if (which == 1) {
        W.coords.push_back(mono_coord(N, u * tN(1, -N)));
        W.coords.push_back(mono_coord(N, u * tN(2, -N)));
        W.coords.push_back(mono_coord(N, u.pow(-1)));
    } else {
        W.coords.push_back(mono_coord(N, tN(1, N) * u.pow(-1)));
        W.coords.push_back(mono_coord(N, tN(2, N) * u.pow(-1)));
        W.coords.push_back(mono_coord(N, u * tN(1, -N) * tN(2, -N)));
    }
    return W;
}

ParamCycle k7_first_w2(const CycleSpec& spec) {
    const long N = spec.N;
    Monomial u = Monomial::param(Param::u());
    Monomial v = Monomial::param(Param::v());
    CycloElem one = CycloElem::one(N);
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    W.params = {Param::t(1), Param::u(), Param::v()};
    W.coords.push_back(mobius(N, 1));
    W.coords.push_back(f_power(N, spec.xi(), 1, -1));
    {
        // (v - t1^N u)(v - u t1^-N) / ((v - u^2)(v - 1))
        CoordBuilder big(N);
        big.mul_atom(v, one, tN(1, N) * u, 1);
        big.mul_atom(v, one, u * tN(1, -N), 1);
        big.mul_atom(v, one, u.pow(2), -1);
        big.mul_atom(v, one, Monomial(), -1);
        W.coords.push_back(big.build());
    }
    {
        // (u - t1^N)(u - v t1^-N) / (u - v)^2
        CoordBuilder big(N);
        big.mul_atom(u, one, tN(1, N), 1);
        big.mul_atom(u, one, v * tN(1, -N), 1);
        big.mul_atom(u, one, v, -2);
        W.coords.push_back(big.build());
    }
    W.coords.push_back(mono_coord(N, v * tN(1, N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, v * tN(1, -N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, u * v.pow(-1)));
    return W;
}

// Literal K9 displays (independent presentation of the n = 5 construction).
ParamCycle k9_w1(const CycleSpec& spec) {
    const long N = spec.N;
    Monomial u = Monomial::param(Param::u());
    CycloElem one = CycloElem::one(N);
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    W.params = {Param::t(1), Param::t(2), Param::t(3), Param::u()};
    W.coords.push_back(mobius(N, 1));
    W.coords.push_back(mobius(N, 2));
    W.coords.push_back(mobius(N, 3));
    W.coords.push_back(f_power(N, spec.xi(), 3, -1));
    CoordBuilder big(N);
    big.mul_atom(u, one, tN(1, N), 1);
    big.mul_atom(u, one, tN(2, N), 1);
    big.mul_atom(u, one, tN(3, N), 1);
    big.mul_atom(u, one, Monomial(), -2);
    big.mul_atom(u, one, t_prod(1, 3, static_cast<int>(N)), -1);
    W.coords.push_back(big.build());
    W.coords.push_back(mono_coord(N, tN(1, N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, tN(2, N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, tN(3, N) * u.pow(-1)));
    W.coords.push_back(mono_coord(N, u * t_prod(1, 3, -static_cast<int>(N))));
    return W;
}

ParamCycle k9_w2(const CycleSpec& spec, int i) {
    const long N = spec.N;
    Monomial u = Monomial::param(Param::u());
    Monomial v = Monomial::param(Param::v());
    CycloElem one = CycloElem::one(N);
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    W.params = {Param::t(1), Param::t(2), Param::u(), Param::v()};
    W.coords.push_back(mobius(N, 1));
    W.coords.push_back(mobius(N, 2));
    W.coords.push_back(f_power(N, spec.xi(), 2, -1));
    if (i <= 3) {
        CoordBuilder big(N);
        big.mul_atom(u, one, tN(1, N) * v, 1);
        big.mul_atom(u, one, tN(2, N) * v, 1);
        big.mul_atom(u, one, t_prod(1, 2, static_cast<int>(N)) * v, -1);
        big.mul_atom(u, one, v, -1);
        W.coords.push_back(big.build());
        std::vector<Monomial> block = {v * tN(1, N) * u.pow(-1), v * tN(2, N) * u.pow(-1)};
        block.insert(block.begin() + (i - 1), v * u.pow(-1));
        for (const Monomial& m : block) W.coords.push_back(mono_coord(N, m));
        W.coords.push_back(mono_coord(N, u * v.pow(-1) * t_prod(1, 2, -static_cast<int>(N))));
    } else {
        CoordBuilder big(N);
        big.mul_atom(u, one, tN(1, N) * v, 1);
        big.mul_atom(u, one, tN(2, N) * v, 1);
        big.mul_atom(u, one, v * t_prod(1, 2, -static_cast<int>(N)), 1);
        big.mul_atom(u, one, v, -3);
        W.coords.push_back(big.build());
        W.coords.push_back(mono_coord(N, v * tN(1, N) * u.pow(-1)));
        W.coords.push_back(mono_coord(N, v * tN(2, N) * u.pow(-1)));
        W.coords.push_back(mono_coord(N, v * u.pow(-1) * t_prod(1, 2, -static_cast<int>(N))));
        W.coords.push_back(mono_coord(N, u * v.pow(-1)));
    }
    CoordBuilder vm1(N);
    vm1.mul_atom(v, one, Monomial(), 1);
    W.coords.push_back(vm1.build());
    return W;
}

ParamCycle general_w2_component(const CycleSpec& spec, long i) {
    const long n = spec.n, N = spec.N;
    Monomial u = Monomial::param(Param::u());
    Monomial v = Monomial::param(Param::v());
    CycloElem one = CycloElem::one(N);
    ParamCycle W;
    W.level = N;
    W.coeff = 1;
    for (long k = 1; k <= n - 3; ++k) W.params.push_back(Param::t(static_cast<int>(k)));
    W.params.push_back(Param::u());
    W.params.push_back(Param::v());

    for (long k = 1; k <= n - 3; ++k) W.coords.push_back(mobius(N, k));
    W.coords.push_back(f_power(N, spec.xi(), n - 3, -1));

    if (i <= n - 2) {
        CoordBuilder big(N);
        for (long k = 1; k <= n - 3; ++k) big.mul_atom(u, one, tN(k, N) * v, 1);
        big.mul_atom(u, one, t_prod(1, n - 3, static_cast<int>(N)) * v, -1);
        big.mul_atom(u, one, v, -static_cast<int>(n - 4));
        W.coords.push_back(big.build());
        std::vector<Monomial> block;
        for (long k = 1; k <= n - 3; ++k) block.push_back(v * tN(k, N) * u.pow(-1));
        block.insert(block.begin() + (i - 1), v * u.pow(-1));
        for (const Monomial& m : block) W.coords.push_back(mono_coord(N, m));
        W.coords.push_back(mono_coord(N, u * v.pow(-1) * t_prod(1, n - 3, -static_cast<int>(N))));
    } else {
        // the last companion: extra (u - v/prod t^N) upstairs, (u-v)^{n-2} downstairs
        CoordBuilder big(N);
        for (long k = 1; k <= n - 3; ++k) big.mul_atom(u, one, tN(k, N) * v, 1);
        big.mul_atom(u, one, v * t_prod(1, n - 3, -static_cast<int>(N)), 1);
        big.mul_atom(u, one, v, -static_cast<int>(n - 2));
        W.coords.push_back(big.build());
        for (long k = 1; k <= n - 3; ++k)
            W.coords.push_back(mono_coord(N, v * tN(k, N) * u.pow(-1)));
        W.coords.push_back(mono_coord(N, v * u.pow(-1) * t_prod(1, n - 3, -static_cast<int>(N))));
        W.coords.push_back(mono_coord(N, u * v.pow(-1)));
    }
    CoordBuilder vm1(N);
    vm1.mul_atom(v, one, Monomial(), 1);
    W.coords.push_back(vm1.build());
    return W;
}

}  // namespace

NormalizeResult build_W2_component(const CycleSpec& spec0, long i) {
    CycleSpec spec = spec0.resolved();
    if (spec.n < 4) throw VariantMismatch("W2 needs n >= 4");
    if (i < 1 || i > spec.n - 1) throw DomainError("W2 component index out of range");
    return normalize(general_w2_component(spec, i));
}

CycleSum build_W1(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    if (spec.n < 3) throw VariantMismatch("W1 needs n >= 3");
    CycleSum out;
    out.level = spec.N;
    switch (spec.variant) {
        case Variant::K5: {
            ParamCycle W = build_W1_tuple(spec);
            W.coeff = Rat(1, 2);
            accumulate(out, W);
            return out;
        }
        case Variant::K7First: {
            ParamCycle a = k7_first_w1(spec, 1), b = k7_first_w1(spec, 2);
            a.coeff = Rat(1, 2);
            b.coeff = Rat(1, 2);
            accumulate(out, a);
            accumulate(out, b);
            return out;
        }
        case Variant::K9Appendix: {
            ParamCycle W = k9_w1(spec);
            W.coeff = Rat(1, 2);
            accumulate(out, W);
            return out;
        }
        case Variant::K7Second:
        case Variant::General: {
            // Coefficient +1/(n-3): the boundary bookkeeping forces the
            // positive sign for every n, and it reproduces both displayed
            // special cases n = 4 and n = 5.
            ParamCycle W = build_W1_tuple(spec);
            W.coeff = Rat(1, spec.n - 3);
            W.coeff.canonicalize();
            accumulate(out, W);
            return out;
        }
        default:
            throw VariantMismatch("no W1 for this variant");
    }
}

CycleSum build_W2(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    if (spec.n < 4) throw VariantMismatch("W2 needs n >= 4");
    CycleSum out;
    out.level = spec.N;
    switch (spec.variant) {
        case Variant::K7First: {
            ParamCycle W = k7_first_w2(spec);
            W.coeff = Rat(-1, 2);
            accumulate(out, W);
            return out;
        }
        case Variant::K9Appendix: {
            for (int i = 1; i <= 4; ++i) {
                ParamCycle W = k9_w2(spec, i);
                W.coeff = Rat((i % 2 == 1) ? 1 : -1, 2);
                accumulate(out, W);
            }
            return out;
        }
        case Variant::K7Second:
        case Variant::General: {
            for (long i = 1; i <= spec.n - 1; ++i) {
                NormalizeResult comp = normalize(general_w2_component(spec, i));
                if (comp.status != NormStatus::Ok) continue;  // identically empty component
                ParamCycle W = comp.cycle;
                W.coeff = Rat((i % 2 == 1) ? 1 : -1, spec.n - 3);
                W.coeff.canonicalize();
                accumulate(out, W);
            }
            return out;
        }
        default:
            throw VariantMismatch("no W2 for this variant");
    }
}

CycleSum assemble_tildeZ(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    CycleSum out;
    out.level = spec.N;
    accumulate(out, build_Z(spec));
    if (spec.n >= 3)
        for (const ParamCycle& t : build_W1(spec).terms) accumulate(out, t);
    if (spec.n >= 4)
        for (const ParamCycle& t : build_W2(spec).terms) accumulate(out, t);
    return out;
}

// ---------------------------------------------------------------------------
// Support identity
// ---------------------------------------------------------------------------

FPolyFraction expand_coord(const CoordFn& f) {
    if (!f.is_fn()) throw DomainError("cannot expand constant 0/oo coordinate");
    long N = f.unit().level();
    FPolyFraction r;
    r.num = FPoly::constant(f.unit());
    r.den = FPoly::constant(CycloElem::one(N));
    Monomial pos, neg;
    for (const auto& [p, e] : f.mono().exps())
        (e > 0 ? pos : neg).set_exponent(p, std::abs(e));
    r.num = r.num * FPoly::monomial(pos, CycloElem::one(N));
    r.den = r.den * FPoly::monomial(neg, CycloElem::one(N));
    for (const auto& [a, e] : f.factors()) {
        FPoly atom = FPoly::monomial(a.lead, CycloElem::one(N)) -
                     FPoly::monomial(a.trail, a.c);
        for (int k = 0; k < std::abs(e); ++k)
            (e > 0 ? r.num : r.den) = (e > 0 ? r.num : r.den) * atom;
    }
    return r;
}

bool support_check(const ParamCycle& term, long n, long i, long b) {
    if (i < 1 || i >= n) return false;
    long prefix = n - i;
    if (static_cast<long>(term.coords.size()) < prefix) return false;
    long N = term.level;
    // t(z) = z/(z-1) = P/(P-Q) for z = P/Q; accumulate the product exactly
    FPoly num = FPoly::constant(CycloElem::one(N));
    FPoly den = num;
    for (long k = 0; k < prefix; ++k) {
        const CoordFn& f = term.coords[static_cast<size_t>(k)];
        if (!f.is_fn()) return false;
        FPolyFraction z = expand_coord(f);
        num = num * z.num;
        den = den * (z.num - z.den);
    }
    FPoly target = den * FPoly::constant(CycloElem::omega_pow(N, -b));
    return num == target;
}

CycleSum galois_conjugate(const CycleSum& s, long c) {
    if (gcd_long(c, s.level) != 1) throw NotCoprime("galois conjugation index");
    CycleSum out;
    out.level = s.level;
    for (const ParamCycle& t : s.terms) {
        ParamCycle g;
        g.level = t.level;
        g.params = t.params;
        g.coeff = t.coeff;
        for (const CoordFn& f : t.coords) {
            if (!f.is_fn()) {
                g.coords.push_back(f);
                continue;
            }
            CoordBuilder b(t.level);
            b.mul_unit(f.unit().galois(c));
            b.mul_mono(f.mono());
            for (const auto& [a, e] : f.factors())
                b.mul_atom(a.lead, a.c.galois(c), a.trail, e);
            g.coords.push_back(b.build());
        }
        accumulate(out, g);
    }
    return out;
}

Int integrality_scale(const CycleSum& s) {
    Int l = 1;
    for (const ParamCycle& t : s.terms) {
        Int d = rat_denominator(t.coeff);
        Int g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
    }
    return l;
}

Int expected_integrality_scale(const CycleSpec& spec0) {
    CycleSpec spec = spec0.resolved();
    if (spec.variant == Variant::K7First) return 2;  // the averaged two-term W1
    return Int(normalization(spec.n, spec.N).epsilon_n);
}

} // namespace hcg
