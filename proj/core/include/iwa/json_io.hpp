#pragma once

#include <json.hpp>

#include "iwa/kernel_verify.hpp"
#include "iwa/normality.hpp"

namespace iwa {

using json = nlohmann::json;

json root_system_to_json(const RootSystem& rs);

// Canonical series format: variables frozen in the Lazard order, terms in
// graded-lexicographic order.
json series_to_json(const Series& s);
Series series_from_json(const Ctx& ctx, const json& j);

// debugging view of a model element as plain integer arrays
json group_element_to_json(const GroupElement& g);

json report_to_json(const VerificationReport& r);
json obstruction_to_json(const RootSystem& rs, const ObstructionReport& r);
json witness_to_json(const MembershipWitness& w);
json chase_to_json(const RootSystem& rs, const ChaseCertificate& c);
json hom_to_json(const HomPoly& h);

}  // namespace iwa
