#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diffam/classify.hpp"
#include "diffam/construct.hpp"
#include "diffam/group.hpp"
#include "diffam/search.hpp"

namespace diffam {

/// All certificates use key-order-preserving JSON so equal objects
/// serialize byte-identically.
using Json = nlohmann::ordered_json;

// ---- element (de)serialization ----
// Cyclic and twisted-addition groups carry integer elements; all other
// groups use their label strings.

Json element_json(const FiniteGroup& group, Elem x);
Elem element_from_json(const FiniteGroup& group, const Json& value);
Json elements_json(const FiniteGroup& group, const std::vector<Elem>& elems);
Json blocks_json(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks);
std::vector<std::vector<Elem>> blocks_from_json(const FiniteGroup& group, const Json& value);

// ---- JSON certificates ----

Json report_json(const FiniteGroup& group, const DesignReport& report);
Json construction_json(const ConstructionResult& result);
Json verification_json(const ConstructionResult& result, const VerificationOutcome& outcome);
Json search_json(const SearchSpec& spec, const SearchOutcome& outcome);
Json transfer_json(const FiniteGroup& base, const FiniteGroup& spence,
                   const SpenceTransferReport& report);

// ---- human-readable renderings ----

std::string set_text(const FiniteGroup& group, const std::vector<Elem>& elems);
std::string report_text(const FiniteGroup& group, const DesignReport& report);
std::string verification_text(const ConstructionResult& result,
                              const VerificationOutcome& outcome);
std::string search_text(const SearchSpec& spec, const SearchOutcome& outcome);
std::string transfer_text(const FiniteGroup& base, const FiniteGroup& spence,
                          const SpenceTransferReport& report);

}  // namespace diffam
