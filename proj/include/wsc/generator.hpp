#pragma once

#include <cstdint>
#include <vector>

#include "wsc/composer.hpp"
#include "wsc/knowledge.hpp"
#include "wsc/ontology.hpp"

namespace wsc {

struct GeneratorParams {
    int numConcepts = 0;
    int numProperties = 0;
    int numServices = 0;
    int dependencyListSize = 0;   // must be <= numServices
    uint64_t seed = 0;
};

// A random but solvable problem instance. `dependencyList` is an ordered
// list of repository services forming a valid (not necessarily minimal)
// composition, hidden among the randomly parameterized rest.
struct GeneratedInstance {
    Ontology ontology;
    Repository repository;
    Query query;
    Chain dependencyList;
};

// Deterministic for a fixed seed (SplitMix64 stream, sorted containers,
// no platform-dependent iteration). Throws ValidationError on invalid
// parameters.
GeneratedInstance generate(const GeneratorParams& params);

struct BenchRow {
    int ontologySize = 0;    // numConcepts + numProperties
    int numServices = 0;
    double timeS = 0.0;      // median compose wall-clock over repetitions
    int compSize = 0;        // median found-composition length
    int depListSize = 0;
};

// Runs `repetitions` seeded instances per parameter row (seeds
// params.seed, params.seed+1, ...) and reports the Table-style columns.
std::vector<BenchRow> bench(const std::vector<GeneratorParams>& rows,
                            int repetitions, const ComposeOptions& options = {});

// CSV with header: ontology_size,num_services,time_s,comp_size,dep_list_size
std::string benchReportCsv(const std::vector<BenchRow>& rows);

}  // namespace wsc
