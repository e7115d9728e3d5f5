#include "hcg/serialize.hpp"

#include "hcg/errors.hpp"

namespace hcg {

Json monomial_to_json(const Monomial& m) {
    Json j = Json::object();
    for (const auto& [p, e] : m.exps()) j[p.name()] = e;
    return j;
}

Monomial monomial_from_json(const Json& j) {
    Monomial m;
    for (auto it = j.begin(); it != j.end(); ++it)
        m.set_exponent(Param::from_string(it.key()), it.value().get<int>());
    return m;
}

Json coord_to_json(const CoordFn& f) {
    Json j = Json::object();
    if (f.kind() == CoordFn::Kind::Zero) {
        j["const"] = "0";
        return j;
    }
    if (f.kind() == CoordFn::Kind::Inf) {
        j["const"] = "oo";
        return j;
    }
    j["unit"] = f.unit().to_string();
    j["mono"] = monomial_to_json(f.mono());
    Json atoms = Json::array();
    for (const auto& [a, e] : f.factors()) {
        Json aj = Json::object();
        aj["lead"] = monomial_to_json(a.lead);
        aj["c"] = a.c.to_string();
        aj["trail"] = monomial_to_json(a.trail);
        aj["exp"] = e;
        atoms.push_back(std::move(aj));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

CoordFn coord_from_json(long level, const Json& j) {
    if (j.contains("const")) {
        std::string c = j["const"].get<std::string>();
        if (c == "0") return CoordFn::zero_const();
        if (c == "oo") return CoordFn::inf_const();
        throw ParseError("bad coordinate constant: " + c);
    }
    CoordBuilder b(level);
    b.mul_unit(CycloElem::from_string(level, j.at("unit").get<std::string>()));
    b.mul_mono(monomial_from_json(j.at("mono")));
    for (const Json& aj : j.at("atoms")) {
        b.mul_atom(monomial_from_json(aj.at("lead")),
                   CycloElem::from_string(level, aj.at("c").get<std::string>()),
                   monomial_from_json(aj.at("trail")), aj.at("exp").get<int>());
    }
    return b.build();
}

Json cycle_to_json(const ParamCycle& c) {
    Json j = Json::object();
    j["level"] = c.level;
    Json params = Json::array();
    for (Param p : c.params) params.push_back(p.name());
    j["params"] = std::move(params);
    j["coeff"] = rat_to_string(c.coeff);
    Json coords = Json::array();
    for (const CoordFn& f : c.coords) coords.push_back(coord_to_json(f));
    j["coords"] = std::move(coords);
    return j;
}

ParamCycle cycle_from_json(const Json& j) {
    ParamCycle c;
    c.level = j.at("level").get<long>();
    for (const Json& pj : j.at("params")) c.params.push_back(Param::from_string(pj.get<std::string>()));
    std::sort(c.params.begin(), c.params.end());
    c.coeff = rat_from_string(j.at("coeff").get<std::string>());
    for (const Json& fj : j.at("coords")) c.coords.push_back(coord_from_json(c.level, fj));
    return c;
}

Json sum_to_json(const CycleSum& s) {
    Json j = Json::object();
    j["level"] = s.level;
    Json terms = Json::array();
    for (const ParamCycle& t : s.terms) terms.push_back(cycle_to_json(t));
    j["terms"] = std::move(terms);
    return j;
}

CycleSum sum_from_json(const Json& j) {
    CycleSum s;
    s.level = j.at("level").get<long>();
    for (const Json& tj : j.at("terms")) s.terms.push_back(cycle_from_json(tj));
    return s;
}

Json sum_report_to_json(const SumReport& r) {
    Json j = Json::object();
    switch (r.verdict) {
        case ZeroResult::Zero: j["verdict"] = "zero"; break;
        case ZeroResult::Nonzero: j["verdict"] = "nonzero"; break;
        case ZeroResult::Undecidable: j["verdict"] = "undecidable"; break;
    }
    Json classes = Json::array();
    for (const SumClass& cls : r.classes) {
        Json cj = Json::object();
        Json members = Json::array();
        for (size_t m : cls.members) members.push_back(m + 1);  // 1-based for humans
        cj["members"] = std::move(members);
        cj["total"] = rat_to_string(cls.total);
        cj["representative"] = cls.representative;
        classes.push_back(std::move(cj));
    }
    j["classes"] = std::move(classes);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

Json verification_report_to_json(const VerificationReport& r) {
    Json j = Json::object();
    j["pass"] = r.pass;
    j["input_terms"] = r.input_terms;
    j["boundary_terms"] = r.boundary_terms;
    j["classes"] = sum_report_to_json(r.classes);
    Json diag = Json::object();
    diag["dropped_empty"] = r.diagnostics.dropped_empty;
    diag["dropped_degenerate"] = r.diagnostics.dropped_degenerate;
    diag["overlap_warnings"] = r.diagnostics.overlap_warnings;
    j["face_diagnostics"] = std::move(diag);
    return j;
}

} // namespace hcg
