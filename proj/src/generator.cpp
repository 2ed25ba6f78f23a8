#include "wsc/generator.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "wsc/errors.hpp"
#include "wsc/rng.hpp"

namespace wsc {

namespace {

constexpr double kRootProbability = 0.2;  // as 1-in-5 draws

std::string conceptIri(int i) { return "urn:wsc:gen:concept:" + std::to_string(i); }
std::string propertyIri(int i) { return "urn:wsc:gen:property:" + std::to_string(i); }
std::string serviceIri(int i) { return "urn:wsc:gen:service:" + std::to_string(i); }

Ontology randomOntology(const GeneratorParams& params, SplitMix64& rng) {
    std::vector<Concept> concepts;
    for (int i = 0; i < params.numConcepts; ++i) {
        Concept c;
        c.id = conceptIri(i);
        c.name = "concept" + std::to_string(i);
        if (i > 0 && rng.below(5) != 0)  // root with probability kRootProbability
            c.parent = conceptIri(static_cast<int>(rng.below(i)));
        concepts.push_back(std::move(c));
    }
    for (int i = 0; i < params.numProperties; ++i) {
        Property p;
        p.id = propertyIri(i);
        p.name = "property" + std::to_string(i);
        p.range = conceptIri(static_cast<int>(rng.below(params.numConcepts)));
        auto holder = rng.below(params.numConcepts);
        concepts[holder].declared.push_back(std::move(p));
    }
    return Ontology::build(std::move(concepts));
}

// Uniformly random concept with a random subset of its effective
// properties (each included with probability 1/2).
void addRandomPdc(PdcSet& pdcs, const Ontology& ont, SplitMix64& rng,
                  const std::vector<ConceptId>& ids) {
    const ConceptId& c = ids[rng.below(ids.size())];
    auto& props = pdcs[c];
    for (const auto& p : ont.effectiveProperties(c))
        if (rng.coin()) props.insert(p);
}

PdcSet randomPdcSet(const Ontology& ont, SplitMix64& rng,
                    const std::vector<ConceptId>& ids) {
    PdcSet pdcs;
    std::size_t n = 1 + rng.below(3);
    for (std::size_t i = 0; i < n; ++i) addRandomPdc(pdcs, ont, rng, ids);
    return pdcs;
}

// One input PDC drawable from the current knowledge: a known concept (or
// one of its ancestors still holding the drawn properties) with a subset
// of its known properties.
void addSatisfiablePdc(PdcSet& pdcs, const Ontology& ont, SplitMix64& rng,
                       const KnowledgeState& k) {
    std::vector<ConceptId> knownIds(k.knownConcepts().begin(),
                                    k.knownConcepts().end());
    const ConceptId& learned = knownIds[rng.below(knownIds.size())];
    std::set<PropertyId> props;
    for (const auto& p : k.knownProps(learned))
        if (rng.coin()) props.insert(p);

    ConceptId chosen = learned;
    if (rng.coin()) {
        std::vector<ConceptId> candidates;
        for (const auto& anc : ont.ancestorsOf(learned)) {
            if (anc == learned) continue;
            bool holdsAll = std::all_of(props.begin(), props.end(),
                                        [&](const PropertyId& p) {
                                            return ont.hasProperty(anc, p);
                                        });
            if (holdsAll) candidates.push_back(anc);
        }
        if (!candidates.empty()) chosen = candidates[rng.below(candidates.size())];
    }
    auto& slot = pdcs[chosen];
    for (const auto& p : props)
        if (ont.hasProperty(chosen, p)) slot.insert(p);
}

}  // namespace

GeneratedInstance generate(const GeneratorParams& params) {
    if (params.numConcepts <= 0 || params.numProperties <= 0 ||
        params.numServices <= 0 || params.dependencyListSize <= 0)
        throw ValidationError("generator parameters must be positive");
    if (params.dependencyListSize > params.numServices)
        throw ValidationError("dependency list size exceeds service count");

    SplitMix64 rng(params.seed);
    GeneratedInstance inst;
    inst.ontology = randomOntology(params, rng);
    const std::vector<ConceptId> ids = inst.ontology.conceptIds();

    // raw services with fully random parameters
    std::vector<WebService> services;
    for (int i = 0; i < params.numServices; ++i) {
        WebService w;
        w.id = serviceIri(i);
        w.name = "service" + std::to_string(i);
        w.inputs = randomPdcSet(inst.ontology, rng, ids);
        w.outputs = randomPdcSet(inst.ontology, rng, ids);
        services.push_back(std::move(w));
    }

    inst.query.init = randomPdcSet(inst.ontology, rng, ids);

    // pick the dependency list: a random ordered selection of distinct
    // services (partial Fisher-Yates)
    std::vector<int> indices(services.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);
    for (int i = 0; i < params.dependencyListSize; ++i) {
        std::size_t j = i + rng.below(indices.size() - i);
        std::swap(indices[i], indices[j]);
    }

    // rebuild each list service's inputs so it is callable from Init plus
    // all previous list services' outputs (possibly via generalizations)
    KnowledgeState k = emptyKnowledge();
    absorb(inst.ontology, k, inst.query.init);
    std::vector<PdcSet> listOutputs;
    for (int i = 0; i < params.dependencyListSize; ++i) {
        WebService& w = services[indices[i]];
        PdcSet rebuilt;
        std::size_t n = 1 + rng.below(3);
        for (std::size_t j = 0; j < n; ++j)
            addSatisfiablePdc(rebuilt, inst.ontology, rng, k);
        w.inputs = std::move(rebuilt);
        absorb(inst.ontology, k, w.outputs);
        listOutputs.push_back(w.outputs);
        inst.dependencyList.push_back(w.id);
    }

    // Goal: a nonempty random subset of the list services' output PDCs
    PdcSet allOutputs;
    for (const auto& out : listOutputs)
        for (const auto& [c, props] : out) allOutputs[c].insert(props.begin(), props.end());
    for (const auto& [c, props] : allOutputs)
        if (rng.coin()) inst.query.goal[c] = props;
    if (inst.query.goal.empty() && !allOutputs.empty()) {
        auto it = allOutputs.begin();
        std::advance(it, rng.below(allOutputs.size()));
        inst.query.goal[it->first] = it->second;
    }

    for (auto& w : services) inst.repository.add(std::move(w));
    return inst;
}

std::vector<BenchRow> bench(const std::vector<GeneratorParams>& rows,
                            int repetitions, const ComposeOptions& options) {
    std::vector<BenchRow> report;
    if (repetitions <= 0) return report;
    for (const auto& params : rows) {
        std::vector<double> times;
        std::vector<int> sizes;
        for (int r = 0; r < repetitions; ++r) {
            GeneratorParams p = params;
            p.seed = params.seed + static_cast<uint64_t>(r);
            GeneratedInstance inst = generate(p);
            auto t0 = std::chrono::steady_clock::now();
            auto chain = findComposition(inst.ontology, inst.repository,
                                         inst.query, options);
            auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
            sizes.push_back(chain ? static_cast<int>(chain->size()) : -1);
        }
        std::sort(times.begin(), times.end());
        std::sort(sizes.begin(), sizes.end());
        BenchRow row;
        row.ontologySize = params.numConcepts + params.numProperties;
        row.numServices = params.numServices;
        row.timeS = times[times.size() / 2];
        row.compSize = sizes[sizes.size() / 2];
        row.depListSize = params.dependencyListSize;
        report.push_back(row);
    }
    return report;
}

std::string benchReportCsv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "ontology_size,num_services,time_s,comp_size,dep_list_size\n";
    for (const auto& r : rows)
        out << r.ontologySize << ',' << r.numServices << ',' << r.timeS << ','
            << r.compSize << ',' << r.depListSize << '\n';
    return out.str();
}

}  // namespace wsc
