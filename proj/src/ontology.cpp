#include "wsc/ontology.hpp"

#include <cctype>
#include <fstream>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

bool validIri(const std::string& s) {
    if (s.empty()) return false;
    // absolute IRI: a scheme followed by ':', no whitespace or control chars
    std::size_t colon = s.find(':');
    if (colon == std::string::npos || colon == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < colon; ++i) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (!std::isalnum(ch) && ch != '+' && ch != '-' && ch != '.') return false;
    }
    for (unsigned char ch : s) {
        if (std::isspace(ch) || std::iscntrl(ch)) return false;
    }
    return true;
}

}  // namespace

Ontology Ontology::build(std::vector<Concept> concepts) {
    Ontology ont;
    for (auto& c : concepts) {
        if (!validIri(c.id))
            throw ValidationError("invalid concept IRI: '" + c.id + "'");
        if (!ont.concepts_.emplace(c.id, c).second)
            throw ValidationError("duplicate concept IRI: " + c.id);
    }

    for (const auto& [id, c] : ont.concepts_) {
        if (c.parent && !ont.concepts_.contains(*c.parent))
            throw ValidationError("unknown parent '" + *c.parent + "' of concept " + id);
        for (const auto& p : c.declared) {
            if (!validIri(p.id))
                throw ValidationError("invalid property IRI: '" + p.id + "'");
            if (!ont.concepts_.contains(p.range))
                throw ValidationError("unknown range '" + p.range + "' of property " + p.id);
            if (!ont.declaredAt_.emplace(p.id, id).second)
                throw ValidationError("property declared more than once: " + p.id);
            ont.properties_.emplace(p.id, p);
        }
    }

    // depths double as cycle detection: a parent chain longer than the
    // concept count must loop
    for (const auto& [id, c] : ont.concepts_) {
        int depth = 0;
        const Concept* cur = &c;
        while (cur->parent) {
            if (++depth > static_cast<int>(ont.concepts_.size()))
                throw ValidationError("isA cycle through concept " + id);
            cur = &ont.concepts_.at(*cur->parent);
        }
        ont.depth_[id] = depth;
    }

    for (const auto& [id, c] : ont.concepts_) {
        std::set<PropertyId>& eff = ont.effective_[id];
        const Concept* cur = &c;
        while (true) {
            for (const auto& p : cur->declared) eff.insert(p.id);
            if (!cur->parent) break;
            cur = &ont.concepts_.at(*cur->parent);
        }
    }
    return ont;
}

Ontology Ontology::fromJson(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("concepts") || !doc["concepts"].is_array())
        throw ParseError("ontology document must be an object with a 'concepts' array");
    std::vector<Concept> concepts;
    for (const auto& jc : doc["concepts"]) {
        Concept c;
        try {
            c.id = jc.at("id").get<std::string>();
            c.name = jc.value("name", c.id);
            if (jc.contains("parent") && !jc["parent"].is_null())
                c.parent = jc["parent"].get<std::string>();
            for (const auto& jp : jc.value("properties", nlohmann::json::array())) {
                Property p;
                p.id = jp.at("id").get<std::string>();
                p.name = jp.value("name", p.id);
                p.range = jp.at("range").get<std::string>();
                c.declared.push_back(std::move(p));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed concept entry: ") + e.what());
        }
        concepts.push_back(std::move(c));
    }
    return build(std::move(concepts));
}

Ontology Ontology::loadFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ontology file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return fromJson(doc);
}

nlohmann::json Ontology::toJson() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [id, c] : concepts_) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["name"] = c.name;
        jc["parent"] = c.parent ? nlohmann::json(*c.parent) : nlohmann::json(nullptr);
        nlohmann::json props = nlohmann::json::array();
        for (const auto& p : c.declared)
            props.push_back({{"id", p.id}, {"name", p.name}, {"range", p.range}});
        jc["properties"] = std::move(props);
        arr.push_back(std::move(jc));
    }
    return nlohmann::json{{"concepts", std::move(arr)}};
}

const Concept& Ontology::conceptAt(const ConceptId& c) const {
    auto it = concepts_.find(c);
    if (it == concepts_.end()) throw LookupError("unknown concept: " + c);
    return it->second;
}

std::vector<ConceptId> Ontology::conceptIds() const {
    std::vector<ConceptId> ids;
    ids.reserve(concepts_.size());
    for (const auto& [id, c] : concepts_) ids.push_back(id);
    return ids;
}

bool Ontology::isA(const ConceptId& a, const ConceptId& b) const {
    conceptAt(b);
    const Concept* cur = &conceptAt(a);
    while (true) {
        if (cur->id == b) return true;
        if (!cur->parent) return false;
        cur = &concepts_.at(*cur->parent);
    }
}

const std::set<PropertyId>& Ontology::effectiveProperties(const ConceptId& c) const {
    auto it = effective_.find(c);
    if (it == effective_.end()) throw LookupError("unknown concept: " + c);
    return it->second;
}

bool Ontology::hasProperty(const ConceptId& c, const PropertyId& p) const {
    return effectiveProperties(c).contains(p);
}

std::optional<ConceptId> Ontology::mostGeneralHolder(const ConceptId& c,
                                                     const PropertyId& p) const {
    if (!hasProperty(c, p)) return std::nullopt;
    return declaredAt_.at(p);
}

std::optional<ConceptId> Ontology::declaringConcept(const PropertyId& p) const {
    auto it = declaredAt_.find(p);
    if (it == declaredAt_.end()) return std::nullopt;
    return it->second;
}

const Property& Ontology::property(const PropertyId& p) const {
    auto it = properties_.find(p);
    if (it == properties_.end()) throw LookupError("unknown property: " + p);
    return it->second;
}

std::vector<ConceptId> Ontology::ancestorsOf(const ConceptId& c) const {
    std::vector<ConceptId> chain;
    const Concept* cur = &conceptAt(c);
    while (true) {
        chain.push_back(cur->id);
        if (!cur->parent) break;
        cur = &concepts_.at(*cur->parent);
    }
    return chain;
}

}  // namespace wsc
