#include "wsc/knowledge.hpp"

#include <algorithm>

#include "wsc/errors.hpp"

namespace wsc {

void validatePdcSet(const Ontology& ont, const PdcSet& pdcs,
                    const std::string& what) {
    for (const auto& [c, props] : pdcs) {
        const auto& eff = ont.effectiveProperties(c);  // throws on unknown concept
        for (const auto& p : props) {
            if (!eff.contains(p))
                throw ValidationError(what + ": concept " + c +
                                      " does not hold property " + p);
        }
    }
}

bool KnowledgeState::subsumedBy(const KnowledgeState& other) const {
    if (!std::includes(other.exist_.begin(), other.exist_.end(),
                       exist_.begin(), exist_.end()))
        return false;
    for (const auto& [c, props] : known_) {
        const auto& theirs = other.knownProps(c);
        if (!std::includes(theirs.begin(), theirs.end(), props.begin(), props.end()))
            return false;
    }
    return true;
}

KnowledgeState emptyKnowledge() { return KnowledgeState{}; }

AbsorbDelta absorb(const Ontology& ont, KnowledgeState& k, const PdcSet& outputs) {
    validatePdcSet(ont, outputs, "absorb");

    AbsorbDelta delta;
    for (const auto& [outConcept, propSet] : outputs) {
        const Concept* cur = &ont.conceptAt(outConcept);
        bool added = true;
        while (added) {
            added = false;
            if (k.exist_.insert(cur->id).second) {
                added = true;
                delta.discovered.push_back(cur->id);
            }
            for (const auto& p : propSet) {
                if (!ont.hasProperty(cur->id, p)) continue;
                if (k.known_[cur->id].insert(p).second) {
                    added = true;
                    delta.learned.emplace_back(cur->id, p);
                }
            }
            if (!added || !cur->parent) break;
            cur = &ont.conceptAt(*cur->parent);
        }
    }
    return delta;
}

bool matches(const Ontology& ont, const KnowledgeState& k, const WebService& w) {
    return satisfiesGoal(ont, k, w.inputs);
}

bool satisfiesGoal(const Ontology& ont, const KnowledgeState& k, const PdcSet& goal) {
    validatePdcSet(ont, goal, "matches");
    for (const auto& [c, props] : goal) {
        if (!k.knows(c)) return false;
        const auto& have = k.knownProps(c);
        if (!std::includes(have.begin(), have.end(), props.begin(), props.end()))
            return false;
    }
    return true;
}

}  // namespace wsc
