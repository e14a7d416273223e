#pragma once

// JSON encodings. Integers and rationals travel as decimal strings
// ("num/den" for rationals) so nothing is lost to floating point.

#include "thinset/thinsets.hpp"
#include "thinset/witness.hpp"

#include <json.hpp>

namespace thinset::json_io {

using json = nlohmann::ordered_json;

json to_json(const ArithmeticSequence& s);
ArithmeticSequence sequence_from_json(const json& j);

json to_json(const DigitExpansion& e);
DigitExpansion expansion_from_json(const json& j);

json to_json(const SetDescriptor& s);
SetDescriptor set_from_json(const json& j);

json to_json(const IdealDescriptor& i);
/// Accepts the tagged object or a spec string ("density", "summable:1/2").
IdealDescriptor ideal_from_json(const json& j);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

json to_json(const RatInterval& r);
RatInterval interval_from_json(const json& j);

json to_json(const ConvergenceReport& r);
json to_json(const SummabilityReport& r);

json to_json(const WitnessPlan& p);
WitnessPlan plan_from_json(const json& j);

json to_json(const WitnessCertificate& c);
/// Throws schema_error on malformed input.
WitnessCertificate certificate_from_json(const json& j);

json to_json(const VerifyReport& r);

} // namespace thinset::json_io
