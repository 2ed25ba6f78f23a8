#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "wsc/composer.hpp"
#include "wsc/knowledge.hpp"
#include "wsc/ontology.hpp"

namespace wsc {

// Term resolution for JSON-LD style annotations. The context is either
// an IRI prefix (terms are appended to it) or an inline term map, with
// an optional "@vocab" fallback. Remote contexts are never fetched.
struct ContextMapping {
    std::string contextIri;                       // prefix, may be empty
    std::map<std::string, std::string> termMap;   // term -> IRI
    std::string vocab;                            // fallback prefix, may be empty
};

ContextMapping parseContext(const nlohmann::json& context);

// Looks a term up in the mapping; absent if unmapped. Used for the
// datatype-name -> concept bindings shipped alongside a service group.
std::optional<std::string> mapJsonDatatype(const ContextMapping& mapping,
                                           const std::string& term);

// Resolves an annotation term to an IRI: absolute IRIs pass through,
// otherwise the term map, then @vocab / prefix concatenation. Throws
// ValidationError if nothing applies.
std::string resolveTerm(const ContextMapping& mapping, const std::string& term);

// Native repository-JSON:
//   { "services": [ { "id", "name",
//       "in":  [ { "concept": IRI, "props": [IRI] } ],
//       "out": [ { "concept": IRI, "props": [IRI] } ] } ] }
Repository loadRepositoryNative(const nlohmann::json& doc, const Ontology& ont);
nlohmann::json repositoryToJson(const Repository& repo);

// Query-JSON: { "init": [PDC...], "goal": [PDC...] } with the same
// { "concept", "props" } shape.
Query loadQuery(const nlohmann::json& doc, const Ontology& ont);
nlohmann::json queryToJson(const Query& query);

// Chain-JSON: { "chain": [service ids] }; a bare array is accepted too.
Chain loadChain(const nlohmann::json& doc);
nlohmann::json chainToJson(const Chain& chain);

// Builds one WebService per OpenAPI operation, with inputs/outputs taken
// from a JSON-LD annotation sidecar keyed by operationId:
//   [ { "operationId", "@context": IRI-or-object,
//       "inputs":  [ { "name", "@type": IRI-or-term, "properties": [..] } ],
//       "outputs": [ { "@type", "properties": [..] } ] } ]
// Inputs bind to declared parameters (or "body" for a requestBody);
// outputs apply only when the operation declares a 2xx response. In
// strict mode any unannotated parameter or operation is an error; in
// lenient mode it is skipped with a warning on stderr.
Repository loadRepositoryFromOpenApi(const nlohmann::json& openapiDoc,
                                     const nlohmann::json& annotations,
                                     const Ontology& ont, bool strict = true);

nlohmann::json readJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const nlohmann::json& doc);

}  // namespace wsc
