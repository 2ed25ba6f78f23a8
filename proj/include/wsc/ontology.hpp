#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace wsc {

// Concepts and properties are identified by absolute IRIs.
using ConceptId = std::string;
using PropertyId = std::string;

struct Property {
    PropertyId id;
    std::string name;   // display label, non-semantic
    ConceptId range;    // a concept in the same ontology

    bool operator==(const Property&) const = default;
};

struct Concept {
    ConceptId id;
    std::string name;
    std::optional<ConceptId> parent;   // absent for roots
    std::vector<Property> declared;    // properties declared here (not inherited)

    bool operator==(const Concept&) const = default;
};

// The shared taxonomy: a forest of concepts under single inheritance,
// with each property declared on exactly one concept (its most general
// holder) and inherited by every descendant. Immutable after load; safe
// to read concurrently.
class Ontology {
  public:
    Ontology() = default;   // empty ontology; populate via build/fromJson

    // Builds and validates an ontology from the concept list. Throws
    // ValidationError on cycles, duplicate IRIs or dangling references.
    static Ontology build(std::vector<Concept> concepts);

    // Ontology-JSON: { "concepts": [ { "id", "name", "parent": IRI|null,
    //   "properties": [ { "id", "name", "range" } ] } ] }
    static Ontology fromJson(const nlohmann::json& doc);
    static Ontology loadFile(const std::string& path);
    nlohmann::json toJson() const;

    bool contains(const ConceptId& c) const { return concepts_.contains(c); }
    const Concept& conceptAt(const ConceptId& c) const;
    std::size_t size() const { return concepts_.size(); }

    // Deterministic (sorted) listing of all concept ids.
    std::vector<ConceptId> conceptIds() const;

    // Reflexive, transitive subsumption: true iff b is an ancestor of a
    // or a itself.
    bool isA(const ConceptId& a, const ConceptId& b) const;

    // Declared plus inherited properties of c.
    const std::set<PropertyId>& effectiveProperties(const ConceptId& c) const;

    // True iff p is declared on c or on one of its ancestors.
    bool hasProperty(const ConceptId& c, const PropertyId& p) const;

    // The highest ancestor of c (possibly c) holding p; absent when c
    // itself lacks p. With unique declaration sites this is simply the
    // declaring concept.
    std::optional<ConceptId> mostGeneralHolder(const ConceptId& c,
                                               const PropertyId& p) const;

    // Declaring concept of a property id, if the property exists at all.
    std::optional<ConceptId> declaringConcept(const PropertyId& p) const;

    const Property& property(const PropertyId& p) const;

    // c, parent, grandparent, ... up to the root (inclusive).
    std::vector<ConceptId> ancestorsOf(const ConceptId& c) const;

    bool operator==(const Ontology& other) const {
        return concepts_ == other.concepts_;
    }

  private:

    std::map<ConceptId, Concept> concepts_;
    std::map<ConceptId, int> depth_;
    std::map<ConceptId, std::set<PropertyId>> effective_;
    std::map<PropertyId, ConceptId> declaredAt_;
    std::map<PropertyId, Property> properties_;
};

}  // namespace wsc
