#ifndef HCG_SERIALIZE_HPP
#define HCG_SERIALIZE_HPP

#include "json.hpp"

#include "hcg/equality.hpp"
#include "hcg/symcycle.hpp"

namespace hcg {

using Json = nlohmann::ordered_json;

// Exact-string JSON forms; round-trips are bit-exact for canonical values.
Json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);

Json coord_to_json(const CoordFn& f);
CoordFn coord_from_json(long level, const Json& j);

Json cycle_to_json(const ParamCycle& c);
ParamCycle cycle_from_json(const Json& j);

Json sum_to_json(const CycleSum& s);
CycleSum sum_from_json(const Json& j);

Json sum_report_to_json(const SumReport& r);
Json verification_report_to_json(const VerificationReport& r);

} // namespace hcg

#endif
