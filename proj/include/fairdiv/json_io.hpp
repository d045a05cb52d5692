#pragma once

#include <json.hpp>

#include "fairdiv/axioms.hpp"
#include "fairdiv/core_model.hpp"
#include "fairdiv/ef_geometry.hpp"
#include "fairdiv/egalitarian.hpp"
#include "fairdiv/instance_corpus.hpp"
#include "fairdiv/kkt_engine.hpp"

namespace fairdiv {

using Json = nlohmann::ordered_json;

/// "a/b" in lowest terms, "a" for integers.
Json to_json(const Rational& value);
Json to_json(const std::vector<Rational>& values);
Json to_json(const RationalMatrix& matrix);

/// Integer or "a/b" string; throws ValidationError(ParseError) otherwise.
Rational rational_from_json(const Json& value);
std::vector<Rational> vector_from_json(const Json& value);
RationalMatrix matrix_from_json(const Json& value);

/// {"kind", "agents", "items", "u"}; ids default to "1".."n" and "a".."z" when omitted.
Json problem_to_json(const Problem& problem);
Problem problem_from_json(const Json& value);

/// Matrix rows in the problem's agent order.
Allocation allocation_from_json(const Problem& problem, const Json& value);
UtilityProfile profile_from_json(const Problem& problem, const Json& value);

Json certificate_to_json(const Problem& problem, const KktCertificate& certificate);
Json rejection_to_json(const Problem& problem, const Rejection& rejection);
Json descriptor_to_json(const Problem& problem, const CutSplitDescriptor& descriptor);
Json division_to_json(const Problem& problem, const CompetitiveDivision& division);
Json egalitarian_to_json(const Problem& problem, const EgalitarianResult& result);
Json report_to_json(const Problem& problem, const AxiomReport& report);
Json components_to_json(const Problem& problem, const ComponentStructure& structure);
Json fixture_to_json(const Fixture& fixture);

/// Error object; indices are translated to ids when the id lists are known.
Json error_to_json(const Error& error, const std::vector<std::string>& agents = {},
                   const std::vector<std::string>& items = {});

/// Canonical text form shared by every output path.
std::string dump(const Json& value);

}  // namespace fairdiv
