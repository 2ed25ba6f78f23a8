#include "wsc/composer.hpp"

#include <algorithm>
#include <cassert>

#include "wsc/errors.hpp"

namespace wsc {

void Repository::add(WebService w) {
    if (services.contains(w.id))
        throw ValidationError("duplicate service id: " + w.id);
    order.push_back(w.id);
    services.emplace(w.id, std::move(w));
}

const WebService& Repository::service(const ServiceId& id) const {
    auto it = services.find(id);
    if (it == services.end()) throw LookupError("unknown service id: " + id);
    return it->second;
}

namespace {

void indexService(SearchIndexes& idx, const WebService& w) {
    auto& rem = idx.remaining[w.id];
    for (const auto& [c, props] : w.inputs) {
        idx.requiredExist[c].insert(w.id);
        rem.exist.insert(c);
        for (const auto& p : props) {
            idx.required[c][p].insert(w.id);
            rem.props[c].insert(p);
        }
    }
}

void enqueueIfCallable(SearchIndexes& idx, const ServiceId& id) {
    if (idx.remaining.at(id).empty() && idx.enqueued.insert(id).second)
        idx.callable.push_back(id);
}

}  // namespace

SearchIndexes initialize(const Ontology& ont, const Repository& repo,
                         const Query& query) {
    if (repo.services.contains(kInitServiceId) || repo.services.contains(kGoalServiceId))
        throw ValidationError("repository uses a reserved service id");
    validatePdcSet(ont, query.init, "query init");
    validatePdcSet(ont, query.goal, "query goal");
    for (const auto& id : repo.order) {
        const auto& w = repo.services.at(id);
        validatePdcSet(ont, w.inputs, "inputs of " + id);
        validatePdcSet(ont, w.outputs, "outputs of " + id);
    }

    SearchIndexes idx;
    for (const auto& id : repo.order) indexService(idx, repo.services.at(id));

    WebService goal{kGoalServiceId, "Goal", query.goal, {}};
    indexService(idx, goal);
    idx.remaining.try_emplace(kGoalServiceId);  // present even when goal is empty

    for (const auto& id : repo.order) enqueueIfCallable(idx, id);
    enqueueIfCallable(idx, kGoalServiceId);
    return idx;
}

void callWebService(const Ontology& ont, KnowledgeState& k, SearchIndexes& idx,
                    const WebService& w) {
    assert(matches(ont, k, w));
    AbsorbDelta delta = absorb(ont, k, w.outputs);

    for (const auto& c : delta.discovered) {
        auto it = idx.requiredExist.find(c);
        if (it == idx.requiredExist.end()) continue;
        for (const auto& ws : it->second) {
            idx.remaining.at(ws).exist.erase(c);
            enqueueIfCallable(idx, ws);
        }
    }
    for (const auto& [c, p] : delta.learned) {
        auto cit = idx.required.find(c);
        if (cit == idx.required.end()) continue;
        auto pit = cit->second.find(p);
        if (pit == cit->second.end()) continue;
        for (const auto& ws : pit->second) {
            auto& rem = idx.remaining.at(ws);
            auto rit = rem.props.find(c);
            if (rit == rem.props.end()) continue;
            rit->second.erase(p);
            if (rit->second.empty()) rem.props.erase(rit);
            enqueueIfCallable(idx, ws);
        }
    }
}

int heuristicScore(const Ontology& ont, const KnowledgeState& k,
                   const SearchIndexes& idx, const WebService& w) {
    KnowledgeState scratch = k;
    AbsorbDelta delta = absorb(ont, scratch, w.outputs);

    int score = 0;
    for (const auto& c : delta.discovered) {
        auto it = idx.requiredExist.find(c);
        if (it == idx.requiredExist.end()) continue;
        for (const auto& ws : it->second)
            if (idx.remaining.at(ws).exist.contains(c)) ++score;
    }
    for (const auto& [c, p] : delta.learned) {
        auto cit = idx.required.find(c);
        if (cit == idx.required.end()) continue;
        auto pit = cit->second.find(p);
        if (pit == cit->second.end()) continue;
        for (const auto& ws : pit->second) {
            const auto& rem = idx.remaining.at(ws);
            auto rit = rem.props.find(c);
            if (rit != rem.props.end() && rit->second.contains(p)) ++score;
        }
    }
    return score;
}

namespace {

// Picks the next service to call from the callable list, or nullopt when
// every callable service has been called already.
std::optional<ServiceId> pickNext(const Ontology& ont, const KnowledgeState& k,
                                  const SearchIndexes& idx, const Repository& repo,
                                  const std::set<ServiceId>& called,
                                  Strategy strategy, std::size_t& fifoCursor) {
    if (strategy == Strategy::Fifo) {
        while (fifoCursor < idx.callable.size()) {
            const ServiceId& id = idx.callable[fifoCursor++];
            if (!called.contains(id) && id != kGoalServiceId) return id;
        }
        return std::nullopt;
    }

    std::optional<ServiceId> best;
    int bestScore = -1;
    for (const auto& id : idx.callable) {
        if (called.contains(id) || id == kGoalServiceId) continue;
        int score = heuristicScore(ont, k, idx, repo.services.at(id));
        if (score > bestScore || (score == bestScore && best && id < *best)) {
            best = id;
            bestScore = score;
        }
    }
    return best;
}

}  // namespace

std::optional<Chain> findComposition(const Ontology& ont, const Repository& repo,
                                     const Query& query,
                                     const ComposeOptions& options) {
    SearchIndexes idx = initialize(ont, repo, query);
    KnowledgeState k = emptyKnowledge();

    WebService init{kInitServiceId, "Init", {}, query.init};
    callWebService(ont, k, idx, init);

    Chain composition;
    std::set<ServiceId> called;
    std::size_t fifoCursor = 0;
    while (!idx.goalDischarged()) {
        auto next = pickNext(ont, k, idx, repo, called, options.strategy, fifoCursor);
        if (!next) break;
        called.insert(*next);
        composition.push_back(*next);
        callWebService(ont, k, idx, repo.services.at(*next));
    }

    if (!idx.goalDischarged()) return std::nullopt;
    if (options.prune) composition = pruneBackward(ont, repo, query, composition);
    return composition;
}

bool validateChain(const Ontology& ont, const Repository& repo,
                   const Query& query, const Chain& chain) {
    std::set<ServiceId> seen;
    for (const auto& id : chain) {
        repo.service(id);  // throws on unknown id
        if (!seen.insert(id).second) return false;
    }

    KnowledgeState k = emptyKnowledge();
    absorb(ont, k, query.init);
    for (const auto& id : chain) {
        const WebService& w = repo.service(id);
        if (!matches(ont, k, w)) return false;
        absorb(ont, k, w.outputs);
    }
    return satisfiesGoal(ont, k, query.goal);
}

Chain pruneBackward(const Ontology& ont, const Repository& repo,
                    const Query& query, const Chain& chain) {
    if (!validateChain(ont, repo, query, chain))
        throw ValidationError("pruneBackward requires a valid chain");

    Chain pruned = chain;
    for (std::size_t i = pruned.size(); i-- > 0;) {
        Chain candidate = pruned;
        candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
        if (validateChain(ont, repo, query, candidate)) pruned = std::move(candidate);
    }
    return pruned;
}

std::optional<Chain> bruteForceSearch(const Ontology& ont, const Repository& repo,
                                      const Query& query, std::size_t maxLen) {
    struct Node {
        Chain chain;
        KnowledgeState k;
    };

    KnowledgeState k0 = emptyKnowledge();
    absorb(ont, k0, query.init);
    if (satisfiesGoal(ont, k0, query.goal)) return Chain{};

    std::vector<Node> frontier{{Chain{}, std::move(k0)}};
    for (std::size_t len = 1; len <= maxLen && !frontier.empty(); ++len) {
        std::vector<Node> next;
        for (const auto& node : frontier) {
            for (const auto& id : repo.order) {
                if (std::find(node.chain.begin(), node.chain.end(), id) !=
                    node.chain.end())
                    continue;
                const WebService& w = repo.services.at(id);
                if (!matches(ont, node.k, w)) continue;
                Node ext{node.chain, node.k};
                ext.chain.push_back(id);
                absorb(ont, ext.k, w.outputs);
                if (satisfiesGoal(ont, ext.k, query.goal)) return ext.chain;
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace wsc
