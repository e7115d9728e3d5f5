#include "doctest.h"

#include <random>

#include "hcg/constructions.hpp"
#include "hcg/errors.hpp"
#include "hcg/symcycle.hpp"

using namespace hcg;

namespace {

CycleSpec spec_n(long n, long N = 5, long b = 1) {
    CycleSpec s;
    s.n = n;
    s.N = N;
    s.b = b;
    return s.resolved();
}

}  // namespace

TEST_CASE("atoms canonicalize with orientation flips") {
    long N = 5;
    CycloElem xi = CycloElem::omega(N);
    // 1 - xi*t  ->  unit -xi, atom (t - xi^{-1})
    CoordBuilder b(N);
    b.mul_atom(Monomial(), xi, Monomial::param(Param::t(1)), 1);
    CoordFn f = b.build();
    REQUIRE(f.is_fn());
    CHECK(f.unit() == -xi);
    REQUIRE(f.factors().size() == 1);
    const Atom& a = f.factors()[0].first;
    CHECK(a.lead == Monomial::param(Param::t(1)));
    CHECK(a.trail == Monomial());
    CHECK(a.c == xi.inverse());

    // (u - t1^{-5}) -> mono t1^{-5}, atom (u*t1^5 - 1)
    CoordBuilder b2(N);
    b2.mul_atom(Monomial::param(Param::u()), CycloElem::one(N),
                Monomial::param(Param::t(1), -5), 1);
    CoordFn g = b2.build();
    CHECK(g.mono() == Monomial::param(Param::t(1), -5));
    REQUIRE(g.factors().size() == 1);
    CHECK(g.factors()[0].first.lead ==
          Monomial::param(Param::u()) * Monomial::param(Param::t(1), 5));
    CHECK(g.factors()[0].first.trail == Monomial());
}

TEST_CASE("substitute by (1, p) is the identity") {
    ParamCycle Z = build_Z(spec_n(3));
    SubstFinite id{CycloElem::one(5), Monomial::param(Param::t(1))};
    ParamCycle same = substitute(Z, Param::t(1), SubstValue(id));
    CHECK(cycle_key(same) == cycle_key(Z));
    CHECK(same.params.size() == Z.params.size());
}

TEST_CASE("substitute t1 -> 0 on Z takes leading-order limits") {
    ParamCycle Z = build_Z(spec_n(3));  // (t1/(t1-1), t2/(t2-1), 1-xi t1 t2, t1^N, t2^N)
    ParamCycle lim = substitute(Z, Param::t(1), SubstValue(SubstZero{}));
    REQUIRE(lim.coords.size() == 5);
    CHECK(lim.coords[0].kind() == CoordFn::Kind::Zero);   // t1/(t1-1) -> 0
    CHECK(lim.coords[1].is_fn());                         // untouched
    CHECK(lim.coords[2].is_constant_one());               // 1 - xi*0 = 1
    CHECK(lim.coords[3].kind() == CoordFn::Kind::Zero);   // t1^N -> 0
    CHECK(lim.coords[4].is_fn());
    // the whole piece is empty (coordinate 3 is the constant 1)
    CHECK(normalize(lim).status == NormStatus::Empty);
}

TEST_CASE("substituting the solved coordinate value collapses it to zero") {
    // on (t/(t-1), 1-xi t, t^N), the substitution t := xi^{-1} makes the
    // middle coordinate identically 0, the first the constant 1/(1-xi), the
    // last the constant 1
    CycleSpec s = spec_n(2);
    ParamCycle Z = build_Z(s);
    CycloElem xi_inv = s.xi().inverse();
    ParamCycle sub = substitute(Z, Param::t(1), SubstValue(SubstFinite{xi_inv, Monomial()}));
    REQUIRE(sub.coords.size() == 3);
    CHECK(sub.coords[0].is_constant());
    CHECK(sub.coords[0].unit() ==
          CycloElem::one(5) / (CycloElem::one(5) - s.xi()));
    CHECK(sub.coords[1].kind() == CoordFn::Kind::Zero);
    CHECK(sub.coords[2].is_constant_one());
    CHECK(sub.params.empty());
}

TEST_CASE("face of the n=2 cycle at coordinate 2 is empty") {
    ParamCycle Z = build_Z(spec_n(2));
    FaceDiagnostics diag;
    CycleSum f = face(Z, 1, Eps::Zero, &diag);  // coordinate 2, 0-based index 1
    CHECK(f.empty());
    CHECK(diag.dropped_empty == 1);  // solved t = xi^{-1}; t^N became the constant 1
}

TEST_CASE("all faces of the n=2 cycle vanish") {
    for (long N : {2, 3, 5, 7, 12}) {
        for (long b = 1; b < N; ++b) {
            if (gcd_long(b, N) != 1) continue;
            ParamCycle Z = build_Z(spec_n(2, N, b));
            CHECK(boundary(Z).empty());
        }
    }
}

TEST_CASE("the nonzero face of the n=3 cycle matches the display") {
    // face(Z, 3, 0) = (t1/(t1-1), 1/(1-xi t1), t1^N, t1^{-N}) with coefficient 1
    CycleSpec s = spec_n(3);
    ParamCycle Z = build_Z(s);
    CycleSum f = face(Z, 2, Eps::Zero);
    REQUIRE(f.terms.size() == 1);
    const ParamCycle& t = f.terms[0];
    CHECK(t.coeff == 1);
    REQUIRE(t.coords.size() == 4);
    REQUIRE(t.params.size() == 1);

    ParamCycle expect;
    expect.level = 5;
    expect.coeff = 1;
    expect.params = {Param::t(1)};
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(1)));
        b.mul_atom(Monomial::param(Param::t(1)), CycloElem::one(5), Monomial(), -1);
        expect.coords.push_back(b.build());
    }
    {
        CoordBuilder b(5);
        b.mul_atom(Monomial(), s.xi(), Monomial::param(Param::t(1)), -1);
        expect.coords.push_back(b.build());
    }
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(1), 5));
        expect.coords.push_back(b.build());
    }
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(1), -5));
        expect.coords.push_back(b.build());
    }
    CHECK(cycle_key(t) == cycle_key(expect));
}

TEST_CASE("the squared factor contributes multiplicity two") {
    CycleSpec s = spec_n(3);
    CycleSum W1 = build_W1(s);
    REQUIRE(W1.terms.size() == 1);
    CycleSum f = face(W1.terms[0], 2, Eps::Infinity);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].coeff == 1);  // (1/2) * 2

    // and it cancels the Z-face exactly inside the boundary
    ParamCycle Z = build_Z(s);
    CycleSum bd = boundary(concat(CycleSum{5, {Z}}, W1));
    CHECK(bd.empty());
}

TEST_CASE("normalize rules") {
    // constant-1 coordinate means empty
    ParamCycle c;
    c.level = 5;
    c.coeff = 1;
    c.params = {Param::t(1)};
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(1)));
        b.mul_atom(Monomial::param(Param::t(1)), CycloElem::one(5), Monomial(), -1);
        c.coords.push_back(b.build());
    }
    c.coords.push_back(CoordFn::zero_const());
    {
        CoordBuilder one(5);
        c.coords.push_back(one.build());
    }
    CHECK(normalize(c).status == NormStatus::Empty);

    // a free parameter in a single coordinate is degenerate
    ParamCycle d;
    d.level = 5;
    d.coeff = 1;
    d.params = {Param::t(1), Param::t(2)};
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(1)));
        b.mul_atom(Monomial::param(Param::t(1)), CycloElem::one(5), Monomial(), -1);
        d.coords.push_back(b.build());
    }
    {
        CoordBuilder b(5);
        b.mul_mono(Monomial::param(Param::t(2)));
        d.coords.push_back(b.build());
    }
    CHECK(normalize(d).status == NormStatus::Degenerate);

    // nothing fires on the n=2 cycle
    ParamCycle Z = build_Z(spec_n(2));
    NormalizeResult ok = normalize(Z);
    CHECK(ok.status == NormStatus::Ok);
    CHECK(cycle_key(ok.cycle) == cycle_key(Z));
}

TEST_CASE("n=3 boundary of Z + W1 vanishes structurally") {
    for (long N : {2, 3, 5, 7, 12}) {
        for (long b = 1; b < N; ++b) {
            if (gcd_long(b, N) != 1) continue;
            CycleSpec s = spec_n(3, N, b);
            CycleSum sum = assemble_tildeZ(s);
            REQUIRE(sum.terms.size() == 2);
            CHECK(boundary(sum).empty());
        }
    }
}

TEST_CASE("numeric consistency of substitute") {
    // evaluating before and after a finite substitution agrees exactly over F
    std::mt19937_64 rng(23);
    CycleSpec s = spec_n(4, 3, 1);
    std::uniform_int_distribution<int> dist(2, 11);
    CycleSum W2 = build_W2(s);
    REQUIRE(!W2.terms.empty());
    const ParamCycle& W = W2.terms[0];
    for (int rep = 0; rep < 5; ++rep) {
        // p := unit * mono with unit = w^2, mono = t1^2
        SubstFinite repl{CycloElem::omega_pow(3, 2), Monomial::param(Param::t(1), 2)};
        ParamCycle after = substitute(W, Param::u(), SubstValue(repl));

        std::map<Param, CycloElem> pt;
        for (Param p : after.params) {
            Rat q(dist(rng), dist(rng) + 1);
            q.canonicalize();
            pt.emplace(p, CycloElem(3, q));
        }
        // the pre-substitution point carries u = w^2 * t1^2
        std::map<Param, CycloElem> pt_before = pt;
        CycloElem uval = CycloElem::omega_pow(3, 2) * pt.at(Param::t(1)).pow(2);
        pt_before.emplace(Param::u(), uval);

        for (size_t j = 0; j < W.coords.size(); ++j) {
            auto before = eval_coord(W.coords[j], pt_before);
            auto post = eval_coord(after.coords[j], pt);
            REQUIRE(before.has_value());
            REQUIRE(post.has_value());
            CHECK(before->infinite == post->infinite);
            if (!before->infinite) CHECK(before->value == post->value);
        }
    }
}

TEST_CASE("face commutation on the n=3 cycle") {
    // face(face(c,j,d), i,e) == face(face(c,i,e), j-1,d) for i < j
    CycleSpec s = spec_n(3, 5, 1);
    for (const ParamCycle& c : {build_Z(s), build_W1(s).terms[0]}) {
        for (size_t i = 0; i + 1 < c.coords.size(); ++i) {
            for (size_t j = i + 1; j < c.coords.size(); ++j) {
                for (Eps e1 : {Eps::Zero, Eps::Infinity}) {
                    for (Eps e2 : {Eps::Zero, Eps::Infinity}) {
                        CycleSum left;
                        left.level = 5;
                        for (const ParamCycle& t : face(c, j, e2).terms)
                            for (const ParamCycle& tt : face(t, i, e1).terms)
                                accumulate(left, tt);
                        CycleSum right;
                        right.level = 5;
                        for (const ParamCycle& t : face(c, i, e1).terms)
                            for (const ParamCycle& tt : face(t, j - 1, e2).terms)
                                accumulate(right, tt);
                        // compare structurally after combining
                        CycleSum diff = left;
                        for (ParamCycle t : right.terms) {
                            t.coeff = -t.coeff;
                            accumulate(diff, t);
                        }
                        CHECK(diff.empty());
                    }
                }
            }
        }
    }
}
