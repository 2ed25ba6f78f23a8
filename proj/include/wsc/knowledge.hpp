#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wsc/ontology.hpp"

namespace wsc {

// A set of partially defined concepts, merged per concept: at most one
// entry per concept id, holding the union of its property sets. The
// property set may be empty (the concept is required/known to exist,
// nothing more).
using PdcSet = std::map<ConceptId, std::set<PropertyId>>;

// Throws ValidationError if any entry references an unknown concept or
// lists a property the concept does not hold.
void validatePdcSet(const Ontology& ont, const PdcSet& pdcs,
                    const std::string& what);

struct WebService {
    std::string id;
    std::string name;
    PdcSet inputs;
    PdcSet outputs;

    bool operator==(const WebService&) const = default;
};

struct Query {
    PdcSet init;
    PdcSet goal;
};

struct AbsorbDelta;
class KnowledgeState;
AbsorbDelta absorb(const Ontology& ont, KnowledgeState& k, const PdcSet& outputs);

// What is currently known, aggregated per concept. `knownProps(c)` is
// kept upward-closed: a property learned on a concept is also recorded
// on every ancestor that holds it, and a known concept's ancestors are
// known to exist too. `matches` relies on that closure.
class KnowledgeState {
  public:
    bool knows(const ConceptId& c) const { return exist_.contains(c); }

    const std::set<PropertyId>& knownProps(const ConceptId& c) const {
        static const std::set<PropertyId> kEmpty;
        auto it = known_.find(c);
        return it == known_.end() ? kEmpty : it->second;
    }

    const std::set<ConceptId>& knownConcepts() const { return exist_; }

    // Pointwise containment: other knows at least everything this knows.
    bool subsumedBy(const KnowledgeState& other) const;

    bool operator==(const KnowledgeState&) const = default;

  private:
    std::map<ConceptId, std::set<PropertyId>> known_;
    std::set<ConceptId> exist_;

    friend AbsorbDelta absorb(const Ontology&, KnowledgeState&, const PdcSet&);
};

// What a single absorption newly contributed, in discovery order.
struct AbsorbDelta {
    std::vector<ConceptId> discovered;                        // newly existing
    std::vector<std::pair<ConceptId, PropertyId>> learned;    // newly known props

    bool empty() const { return discovered.empty() && learned.empty(); }
};

KnowledgeState emptyKnowledge();

// Adds a service's outputs to k, propagating each learned property and
// the existence marker up the parent chain. The walk stops once a level
// gains nothing new; given the upward-closure invariant this yields the
// same state as walking to the root. Throws ValidationError when an
// output lists a property its concept does not hold.
AbsorbDelta absorb(const Ontology& ont, KnowledgeState& k, const PdcSet& outputs);

// True iff every input of w is covered: the input concept is known to
// exist and all required properties are known for it.
bool matches(const Ontology& ont, const KnowledgeState& k, const WebService& w);

// Equivalent to matching a mock service whose inputs are the goal set.
bool satisfiesGoal(const Ontology& ont, const KnowledgeState& k, const PdcSet& goal);

}  // namespace wsc
