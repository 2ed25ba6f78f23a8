#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsc/knowledge.hpp"
#include "wsc/ontology.hpp"

namespace wsc {

using ServiceId = std::string;
using Chain = std::vector<ServiceId>;  // ordered, duplicate-free

// Reserved ids for the mock services materializing the user query.
inline constexpr const char* kInitServiceId = "__init__";
inline constexpr const char* kGoalServiceId = "__goal__";

struct Repository {
    std::map<ServiceId, WebService> services;
    std::vector<ServiceId> order;   // load order, drives the fifo strategy

    void add(WebService w);
    const WebService& service(const ServiceId& id) const;
    bool operator==(const Repository& other) const {
        return services == other.services;
    }
};

enum class Strategy { Fifo, Heuristic };

struct ComposeOptions {
    Strategy strategy = Strategy::Fifo;
    bool prune = false;
};

// Index structures driving the search. `required` maps (concept,
// property) to the services needing it at input; `requiredExist` is the
// existence analogue. `remaining` tracks what each service still lacks;
// a service whose remaining empties is appended to `callable` exactly
// once.
struct SearchIndexes {
    struct Remaining {
        std::map<ConceptId, std::set<PropertyId>> props;
        std::set<ConceptId> exist;
        bool empty() const { return props.empty() && exist.empty(); }
    };

    std::map<ConceptId, std::map<PropertyId, std::set<ServiceId>>> required;
    std::map<ConceptId, std::set<ServiceId>> requiredExist;
    std::map<ServiceId, Remaining> remaining;
    std::vector<ServiceId> callable;   // insertion order
    std::set<ServiceId> enqueued;

    bool goalDischarged() const { return remaining.at(kGoalServiceId).empty(); }
};

// Populates the indexes for every repository service plus the Goal mock
// service. Services with no inputs (and Goal, when the goal set is
// empty) are callable immediately, in repository order. Throws
// ValidationError if the repository uses a reserved id.
SearchIndexes initialize(const Ontology& ont, const Repository& repo,
                         const Query& query);

// Absorbs w's outputs into k and discharges every index entry the newly
// learned facts cover. Precondition: matches(ont, k, w).
void callWebService(const Ontology& ont, KnowledgeState& k, SearchIndexes& idx,
                    const WebService& w);

// How many still-pending index entries (property and existence, over all
// services including Goal) calling w right now would discharge.
// Precondition: matches(ont, k, w).
int heuristicScore(const Ontology& ont, const KnowledgeState& k,
                   const SearchIndexes& idx, const WebService& w);

// Indexed forward chaining: absorb Init, then repeatedly call a callable
// service (fifo insertion order, or best heuristic score with ties going
// to the lexicographically smaller id) until the goal is discharged or
// no callable service remains. Absent means no chain over this
// repository reaches the goal.
std::optional<Chain> findComposition(const Ontology& ont, const Repository& repo,
                                     const Query& query,
                                     const ComposeOptions& options = {});

// Independent naive re-evaluation: each service must match the knowledge
// accumulated from Init plus its predecessors, and the goal must hold at
// the end. Rejects duplicate ids. Throws LookupError on unknown ids.
bool validateChain(const Ontology& ont, const Repository& repo,
                   const Query& query, const Chain& chain);

// Backward pass: from last to first, drop any service whose removal
// keeps the chain valid. Precondition: validateChain(chain).
Chain pruneBackward(const Ontology& ont, const Repository& repo,
                    const Query& query, const Chain& chain);

// Test oracle: breadth-first enumeration of duplicate-free chains up to
// maxLen using only matches/absorb semantics. Returns a shortest valid
// chain. Intended for small repositories only.
std::optional<Chain> bruteForceSearch(const Ontology& ont, const Repository& repo,
                                      const Query& query, std::size_t maxLen);

}  // namespace wsc
