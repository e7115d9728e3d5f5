#include "doctest.h"

#include "hcg/constructions.hpp"
#include "hcg/serialize.hpp"

using namespace hcg;

TEST_CASE("cycle JSON round-trips bit-exactly") {
    for (auto [n, N, b, var] : std::vector<std::tuple<long, long, long, Variant>>{
             {2, 5, 1, Variant::K3},
             {3, 12, 5, Variant::K5},
             {4, 3, 1, Variant::K7First},
             {5, 7, 2, Variant::K9Appendix},
             {6, 2, 1, Variant::General}}) {
        CycleSpec s;
        s.n = n;
        s.N = N;
        s.b = b;
        s.variant = var;
        CycleSum sum = assemble_tildeZ(s.resolved());
        Json j = sum_to_json(sum);
        CycleSum back = sum_from_json(j);
        REQUIRE(back.terms.size() == sum.terms.size());
        for (size_t i = 0; i < sum.terms.size(); ++i) {
            CHECK(cycle_key(back.terms[i]) == cycle_key(sum.terms[i]));
            CHECK(back.terms[i].coeff == sum.terms[i].coeff);
            CHECK(back.terms[i].params == sum.terms[i].params);
        }
        // the serialized form itself is stable
        CHECK(sum_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("single-cycle JSON carries the documented fields") {
    CycleSpec s;
    s.n = 3;
    s.N = 5;
    s.b = 1;
    Json j = cycle_to_json(build_Z(s.resolved()));
    CHECK(j.at("level") == 5);
    CHECK(j.at("coeff") == "1");
    CHECK(j.at("params").size() == 2);
    CHECK(j.at("coords").size() == 5);
    const Json& f = j.at("coords").at(2);  // 1 - xi t1 t2
    CHECK(f.at("unit") == "-w");
    CHECK(f.at("atoms").size() == 1);
    CHECK(f.at("atoms").at(0).at("exp") == 1);
}

TEST_CASE("boundary constants serialize") {
    Json z = coord_to_json(CoordFn::zero_const());
    Json i = coord_to_json(CoordFn::inf_const());
    CHECK(coord_from_json(5, z).kind() == CoordFn::Kind::Zero);
    CHECK(coord_from_json(5, i).kind() == CoordFn::Kind::Inf);
}

TEST_CASE("verification report JSON shape") {
    CycleSpec s;
    s.n = 3;
    s.N = 5;
    s.b = 1;
    VerificationReport rep = verify_closed(assemble_tildeZ(s.resolved()));
    Json j = verification_report_to_json(rep);
    CHECK(j.at("pass") == true);
    CHECK(j.at("classes").at("verdict") == "zero");
    CHECK(j.contains("face_diagnostics"));
}
