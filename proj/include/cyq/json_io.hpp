#pragma once

#include <string>

#include "json.hpp"

#include "cyq/ainfty.hpp"
#include "cyq/calculus.hpp"
#include "cyq/dgla.hpp"
#include "cyq/quiver.hpp"

namespace cyq {

using Json = nlohmann::ordered_json;

Json quiver_to_json(const GradedQuiver& q);
GradedQuiver quiver_from_json(const Json& j);
Json ext_table_to_json(const ExtTable& t);
ExtTable ext_table_from_json(const Json& j);
OrientationChoice orientation_from_json(const Json& j, const ExtTable& t);
Json validation_to_json(const ValidationReport& r);

Json rational_to_json(const Rational& q);
Json master_to_json(const MasterReport& r);
Json integer_or_infinity(int p);
Json products_to_json(const StructureConstants& m);
Json ainfty_to_json(const AinftyReport& r, const Alphabet& a);
Json cyclicity_to_json(const CyclicityReport& r);
Json dgla_to_json(const DglaReport& r);
Json psi_to_json(const PsiReport& r);

// Map from coordinate id to an open-path expression; unspecified letters are fixed.
Automorphism automorphism_from_json(const Json& j, const AlphabetPtr& alphabet);

Json parse_json(const std::string& text);

}  // namespace cyq
