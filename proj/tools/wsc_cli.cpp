#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsc/codec.hpp"
#include "wsc/composer.hpp"
#include "wsc/errors.hpp"
#include "wsc/generator.hpp"
#include "wsc/ontology.hpp"

namespace {

// exit codes: 0 ok/valid, 1 unsolvable/invalid, 2 input error
constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

struct Options {
    std::string ontologyPath;
    std::string repoPath;
    std::string openapiPath;
    std::string annotationsPath;
    std::string queryPath;
    std::string chainPath;
    std::string outPath;
    std::string strategy = "fifo";
    std::string format = "text";
    bool prune = false;
    bool lenient = false;
    uint64_t seed = 0;
    int concepts = 10;
    int properties = 10;
    int services = 20;
    int listSize = 10;
    int repetitions = 10;
    std::vector<std::string> benchRows;
};

wsc::Repository loadRepository(const Options& opt, const wsc::Ontology& ont) {
    if (!opt.repoPath.empty())
        return wsc::loadRepositoryNative(wsc::readJsonFile(opt.repoPath), ont);
    return wsc::loadRepositoryFromOpenApi(wsc::readJsonFile(opt.openapiPath),
                                          wsc::readJsonFile(opt.annotationsPath),
                                          ont, !opt.lenient);
}

wsc::ComposeOptions composeOptions(const Options& opt) {
    wsc::ComposeOptions options;
    options.strategy = opt.strategy == "heuristic" ? wsc::Strategy::Heuristic
                                                   : wsc::Strategy::Fifo;
    options.prune = opt.prune;
    return options;
}

int runCompose(const Options& opt) {
    wsc::Ontology ont = wsc::Ontology::loadFile(opt.ontologyPath);
    wsc::Repository repo = loadRepository(opt, ont);
    wsc::Query query = wsc::loadQuery(wsc::readJsonFile(opt.queryPath), ont);

    auto chain = wsc::findComposition(ont, repo, query, composeOptions(opt));
    bool validated = chain && wsc::validateChain(ont, repo, query, *chain);

    if (opt.format == "json") {
        nlohmann::json out;
        out["solvable"] = chain.has_value();
        out["chain"] = chain ? nlohmann::json(*chain) : nlohmann::json::array();
        out["validated"] = validated;
        std::cout << out.dump(2) << '\n';
    } else if (chain) {
        for (const auto& id : *chain)
            std::cout << id << "  (" << repo.service(id).name << ")\n";
        if (chain->empty()) std::cout << "(empty composition: goal already satisfied)\n";
    } else {
        std::cout << "no valid composition\n";
    }
    if (!chain) return kExitNegative;
    if (!validated) {
        std::cerr << "internal error: composed chain failed validation\n";
        return kExitInputError;
    }
    return kExitOk;
}

int runValidate(const Options& opt) {
    wsc::Ontology ont = wsc::Ontology::loadFile(opt.ontologyPath);
    wsc::Repository repo = loadRepository(opt, ont);
    wsc::Query query = wsc::loadQuery(wsc::readJsonFile(opt.queryPath), ont);
    wsc::Chain chain = wsc::loadChain(wsc::readJsonFile(opt.chainPath));

    bool ok = wsc::validateChain(ont, repo, query, chain);
    std::cout << (ok ? "valid" : "invalid") << '\n';
    return ok ? kExitOk : kExitNegative;
}

int runGenerate(const Options& opt) {
    wsc::GeneratorParams params{opt.concepts, opt.properties, opt.services,
                                opt.listSize, opt.seed};
    wsc::GeneratedInstance inst = wsc::generate(params);

    std::filesystem::path dir = opt.outPath.empty() ? "." : opt.outPath;
    std::filesystem::create_directories(dir);
    wsc::writeJsonFile((dir / "ontology.json").string(), inst.ontology.toJson());
    wsc::writeJsonFile((dir / "repository.json").string(),
                       wsc::repositoryToJson(inst.repository));
    wsc::writeJsonFile((dir / "query.json").string(), wsc::queryToJson(inst.query));
    wsc::writeJsonFile((dir / "dependency_list.json").string(),
                       wsc::chainToJson(inst.dependencyList));
    std::cerr << "wrote instance to " << dir.string() << '\n';
    return kExitOk;
}

std::vector<wsc::GeneratorParams> benchParams(const Options& opt) {
    std::vector<wsc::GeneratorParams> rows;
    if (opt.benchRows.empty()) {
        // the default benchmark grid: concepts+properties, services, list size
        rows = {{5, 5, 10, 5, opt.seed},
                {10, 10, 20, 10, opt.seed},
                {30, 20, 20, 20, opt.seed},
                {10, 10, 50, 20, opt.seed}};
        return rows;
    }
    for (const auto& spec : opt.benchRows) {
        wsc::GeneratorParams p;
        p.seed = opt.seed;
        if (std::sscanf(spec.c_str(), "%d,%d,%d,%d", &p.numConcepts, &p.numProperties,
                        &p.numServices, &p.dependencyListSize) != 4)
            throw wsc::ParseError("bad --row (expected C,P,S,L): " + spec);
        rows.push_back(p);
    }
    return rows;
}

int runBench(const Options& opt) {
    auto report = wsc::bench(benchParams(opt), opt.repetitions, composeOptions(opt));
    std::string csv = wsc::benchReportCsv(report);
    if (opt.outPath.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(opt.outPath);
        if (!out) throw wsc::Error("cannot write " + opt.outPath);
        out << csv;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic Web-service composition engine"};
    app.require_subcommand(1);
    Options opt;

    auto addInputFlags = [&](CLI::App* cmd, bool needQuery) {
        cmd->add_option("--ontology", opt.ontologyPath, "ontology-JSON path")
            ->required();
        auto* repo = cmd->add_option("--repo", opt.repoPath, "native repository-JSON path");
        auto* api = cmd->add_option("--openapi", opt.openapiPath, "OpenAPI 3.x JSON path");
        cmd->add_option("--annotations", opt.annotationsPath,
                        "JSON-LD annotation sidecar path")
            ->needs(api);
        repo->excludes(api);
        cmd->add_flag("--lenient", opt.lenient,
                      "skip unannotated OpenAPI parameters instead of failing");
        if (needQuery)
            cmd->add_option("--query", opt.queryPath, "query-JSON path")->required();
    };

    auto* compose = app.add_subcommand("compose", "find a service composition");
    addInputFlags(compose, true);
    compose->add_option("--strategy", opt.strategy, "service selection strategy")
        ->check(CLI::IsMember({"fifo", "heuristic"}));
    compose->add_flag("--prune", opt.prune, "drop useless services (backward pass)");
    compose->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* validate = app.add_subcommand("validate", "check a chain against a query");
    addInputFlags(validate, true);
    validate->add_option("--chain", opt.chainPath, "chain-JSON path")->required();

    auto* generate = app.add_subcommand("generate", "emit a random solvable instance");
    generate->add_option("--concepts", opt.concepts, "number of concepts");
    generate->add_option("--properties", opt.properties, "number of properties");
    generate->add_option("--services", opt.services, "number of services");
    generate->add_option("--list-size", opt.listSize, "embedded dependency list size");
    generate->add_option("--seed", opt.seed, "PRNG seed");
    generate->add_option("--out", opt.outPath, "output directory");

    auto* bench = app.add_subcommand("bench", "benchmark over random instances");
    bench->add_option("--row", opt.benchRows,
                      "parameter row as concepts,properties,services,list-size "
                      "(repeatable; default: built-in grid)");
    bench->add_option("--repetitions", opt.repetitions, "instances per row");
    bench->add_option("--seed", opt.seed, "base PRNG seed");
    bench->add_option("--strategy", opt.strategy, "service selection strategy")
        ->check(CLI::IsMember({"fifo", "heuristic"}));
    bench->add_flag("--prune", opt.prune, "prune before measuring size");
    bench->add_option("--out", opt.outPath, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compose->parsed()) return runCompose(opt);
        if (validate->parsed()) return runValidate(opt);
        if (generate->parsed()) return runGenerate(opt);
        if (bench->parsed()) return runBench(opt);
    } catch (const wsc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
