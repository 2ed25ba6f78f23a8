#include "wsc/codec.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

bool isAbsoluteIri(const std::string& s) {
    return s.find("://") != std::string::npos || s.rfind("urn:", 0) == 0;
}

PdcSet parsePdcArray(const nlohmann::json& arr, const Ontology& ont,
                     const std::string& what) {
    if (!arr.is_array()) throw ParseError(what + " must be an array");
    PdcSet pdcs;
    for (const auto& entry : arr) {
        try {
            ConceptId c = entry.at("concept").get<std::string>();
            auto& props = pdcs[c];  // duplicates merge by union
            for (const auto& p : entry.value("props", nlohmann::json::array()))
                props.insert(p.get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("malformed PDC in " + what + ": " + e.what());
        }
    }
    validatePdcSet(ont, pdcs, what);
    return pdcs;
}

nlohmann::json pdcSetToJson(const PdcSet& pdcs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [c, props] : pdcs) {
        nlohmann::json entry{{"concept", c}, {"props", nlohmann::json::array()}};
        for (const auto& p : props) entry["props"].push_back(p);
        arr.push_back(std::move(entry));
    }
    return arr;
}

}  // namespace

ContextMapping parseContext(const nlohmann::json& context) {
    ContextMapping mapping;
    if (context.is_string()) {
        mapping.contextIri = context.get<std::string>();
    } else if (context.is_object()) {
        for (const auto& [term, target] : context.items()) {
            if (!target.is_string())
                throw ParseError("@context term '" + term + "' must map to a string");
            if (term == "@vocab")
                mapping.vocab = target.get<std::string>();
            else
                mapping.termMap[term] = target.get<std::string>();
        }
    } else if (!context.is_null()) {
        throw ParseError("@context must be an IRI string or an inline object");
    }
    return mapping;
}

std::optional<std::string> mapJsonDatatype(const ContextMapping& mapping,
                                           const std::string& term) {
    auto it = mapping.termMap.find(term);
    if (it == mapping.termMap.end()) return std::nullopt;
    return it->second;
}

std::string resolveTerm(const ContextMapping& mapping, const std::string& term) {
    if (isAbsoluteIri(term)) return term;
    if (auto mapped = mapJsonDatatype(mapping, term)) return *mapped;
    if (!mapping.vocab.empty()) return mapping.vocab + term;
    if (!mapping.contextIri.empty()) return mapping.contextIri + term;
    throw ValidationError("cannot resolve annotation term '" + term +
                          "' (no context mapping)");
}

Repository loadRepositoryNative(const nlohmann::json& doc, const Ontology& ont) {
    if (!doc.is_object() || !doc.contains("services") || !doc["services"].is_array())
        throw ParseError("repository document must be an object with a 'services' array");
    Repository repo;
    for (const auto& js : doc["services"]) {
        WebService w;
        try {
            w.id = js.at("id").get<std::string>();
            w.name = js.value("name", w.id);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed service entry: ") + e.what());
        }
        w.inputs = parsePdcArray(js.value("in", nlohmann::json::array()), ont,
                                 "inputs of " + w.id);
        w.outputs = parsePdcArray(js.value("out", nlohmann::json::array()), ont,
                                  "outputs of " + w.id);
        repo.add(std::move(w));
    }
    return repo;
}

nlohmann::json repositoryToJson(const Repository& repo) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& id : repo.order) {
        const WebService& w = repo.services.at(id);
        arr.push_back({{"id", w.id},
                       {"name", w.name},
                       {"in", pdcSetToJson(w.inputs)},
                       {"out", pdcSetToJson(w.outputs)}});
    }
    return nlohmann::json{{"services", std::move(arr)}};
}

Query loadQuery(const nlohmann::json& doc, const Ontology& ont) {
    if (!doc.is_object())
        throw ParseError("query document must be an object with 'init' and 'goal'");
    Query q;
    q.init = parsePdcArray(doc.value("init", nlohmann::json::array()), ont, "init");
    q.goal = parsePdcArray(doc.value("goal", nlohmann::json::array()), ont, "goal");
    return q;
}

nlohmann::json queryToJson(const Query& query) {
    return nlohmann::json{{"init", pdcSetToJson(query.init)},
                          {"goal", pdcSetToJson(query.goal)}};
}

Chain loadChain(const nlohmann::json& doc) {
    const nlohmann::json* arr = nullptr;
    if (doc.is_array())
        arr = &doc;
    else if (doc.is_object() && doc.contains("chain") && doc["chain"].is_array())
        arr = &doc["chain"];
    else
        throw ParseError("chain document must be an array or { \"chain\": [...] }");
    Chain chain;
    for (const auto& id : *arr) chain.push_back(id.get<std::string>());
    return chain;
}

nlohmann::json chainToJson(const Chain& chain) {
    return nlohmann::json{{"chain", chain}};
}

namespace {

const char* kHttpMethods[] = {"get", "put", "post", "delete",
                              "options", "head", "patch", "trace"};

bool hasSuccessResponse(const nlohmann::json& op) {
    if (!op.contains("responses") || !op["responses"].is_object()) return false;
    for (const auto& [code, resp] : op["responses"].items())
        if (code.size() == 3 && code[0] == '2') return true;
    return false;
}

PdcSet bindAnnotatedPdcs(const nlohmann::json& entries, const ContextMapping& ctx,
                         const Ontology& ont, const std::string& what) {
    PdcSet pdcs;
    for (const auto& entry : entries) {
        if (!entry.contains("@type"))
            throw ParseError(what + ": annotation entry lacks @type");
        ConceptId c = resolveTerm(ctx, entry["@type"].get<std::string>());
        if (!ont.contains(c))
            throw ValidationError(what + ": unresolved concept " + c);
        auto& props = pdcs[c];
        for (const auto& jp : entry.value("properties", nlohmann::json::array())) {
            PropertyId p = resolveTerm(ctx, jp.get<std::string>());
            if (!ont.declaringConcept(p))
                throw ValidationError(what + ": unresolved property " + p);
            props.insert(p);
        }
    }
    validatePdcSet(ont, pdcs, what);
    return pdcs;
}

}  // namespace

Repository loadRepositoryFromOpenApi(const nlohmann::json& openapiDoc,
                                     const nlohmann::json& annotations,
                                     const Ontology& ont, bool strict) {
    if (!openapiDoc.is_object() || !openapiDoc.contains("openapi"))
        throw ParseError("not an OpenAPI document (missing 'openapi' field)");
    std::string version = openapiDoc["openapi"].get<std::string>();
    if (!version.starts_with("3."))
        throw ParseError("unsupported OpenAPI version: " + version);
    if (!annotations.is_array())
        throw ParseError("annotation sidecar must be an array");

    std::map<std::string, const nlohmann::json*> byOperation;
    for (const auto& entry : annotations) {
        if (!entry.contains("operationId"))
            throw ParseError("annotation entry lacks operationId");
        byOperation[entry["operationId"].get<std::string>()] = &entry;
    }

    Repository repo;
    std::set<std::string> seenOperations;
    const auto paths = openapiDoc.value("paths", nlohmann::json::object());
    for (const auto& [path, item] : paths.items()) {
        for (const char* method : kHttpMethods) {
            if (!item.contains(method)) continue;
            const auto& op = item[method];
            if (!op.contains("operationId"))
                throw ParseError("operation " + std::string(method) + " " + path +
                                 " lacks an operationId");
            std::string opId = op["operationId"].get<std::string>();
            seenOperations.insert(opId);

            // names the annotation inputs may bind to
            std::set<std::string> paramNames;
            for (const auto& jp : op.value("parameters", nlohmann::json::array()))
                paramNames.insert(jp.at("name").get<std::string>());
            if (op.contains("requestBody")) paramNames.insert("body");

            WebService w;
            w.id = opId;
            w.name = op.value("summary", opId);

            auto annIt = byOperation.find(opId);
            if (annIt == byOperation.end()) {
                if (strict)
                    throw ValidationError("operation " + opId + " has no annotation");
                std::cerr << "warning: operation " << opId
                          << " has no annotation; ingested without parameters\n";
                repo.add(std::move(w));
                continue;
            }
            const nlohmann::json& ann = *annIt->second;
            ContextMapping ctx = parseContext(ann.value("@context", nlohmann::json()));

            std::set<std::string> annotatedNames;
            for (const auto& in : ann.value("inputs", nlohmann::json::array())) {
                std::string name = in.value("name", "");
                if (!paramNames.contains(name))
                    throw ValidationError("annotation of " + opId +
                                          " binds unknown parameter '" + name + "'");
                annotatedNames.insert(name);
            }
            for (const auto& name : paramNames) {
                if (annotatedNames.contains(name)) continue;
                if (strict)
                    throw ValidationError("parameter '" + name + "' of " + opId +
                                          " is not annotated");
                std::cerr << "warning: parameter '" << name << "' of " << opId
                          << " is not annotated; excluded\n";
            }

            w.inputs = bindAnnotatedPdcs(ann.value("inputs", nlohmann::json::array()),
                                         ctx, ont, "inputs of " + opId);
            if (hasSuccessResponse(op))
                w.outputs = bindAnnotatedPdcs(
                    ann.value("outputs", nlohmann::json::array()), ctx, ont,
                    "outputs of " + opId);
            repo.add(std::move(w));
        }
    }

    for (const auto& [opId, entry] : byOperation) {
        if (!seenOperations.contains(opId))
            throw ValidationError("annotation references unknown operation " + opId);
    }
    return repo;
}

nlohmann::json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return doc;
}

void writeJsonFile(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace wsc
