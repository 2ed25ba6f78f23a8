#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "wsc/composer.hpp"
#include "wsc/errors.hpp"

using namespace wsc;
using namespace wsc::test;

namespace {

Chain paperOrder() {
    return {"getCountryFromLocation", "getTransportCompany", "getClosestCity",
            "getLocalSubsidiary",     "getVehicle",          "makeArrangements"};
}

}  // namespace

TEST_CASE("initialize populates the indexes") {
    auto f = loadTransport();
    auto idx = initialize(f.ontology, f.repository, f.query);

    SUBCASE("makeArrangements needs 3 concepts / 5 properties") {
        const auto& rem = idx.remaining.at("makeArrangements");
        CHECK(rem.exist.size() == 3);
        std::size_t props = 0;
        for (const auto& [c, ps] : rem.props) props += ps.size();
        CHECK(props == 5);
    }
    SUBCASE("no service is callable before Init is absorbed") {
        CHECK(idx.callable.empty());
    }
    SUBCASE("goal requirements are indexed like a service's") {
        CHECK(idx.required.at(schema("Action"))
                  .at(schema("location"))
                  .contains(kGoalServiceId));
        CHECK_FALSE(idx.goalDischarged());
    }
    SUBCASE("reserved ids are rejected") {
        Repository bad = f.repository;
        bad.add(WebService{kGoalServiceId, "impostor", {}, {}});
        CHECK_THROWS_AS(initialize(f.ontology, bad, f.query), ValidationError);
    }
}

TEST_CASE("services with empty inputs are callable immediately") {
    auto f = loadTransport();
    Repository repo;
    repo.add(WebService{"urn:ex:free", "free", {}, {{schema("City"), {schema("name")}}}});
    auto idx = initialize(f.ontology, repo, f.query);
    CHECK(idx.callable == Chain{"urn:ex:free"});
}

TEST_CASE("goal contained in init needs no services") {
    auto f = loadTransport();
    Query q;
    q.init = f.query.init;
    q.goal = {{schema("Vehicle"), {schema("payload")}}};

    Repository empty;
    auto idx = initialize(f.ontology, empty, q);
    KnowledgeState k = emptyKnowledge();
    callWebService(f.ontology, k, idx, WebService{kInitServiceId, "Init", {}, q.init});
    CHECK(idx.goalDischarged());
    CHECK(idx.callable == Chain{kGoalServiceId});

    auto chain = findComposition(f.ontology, empty, q);
    REQUIRE(chain.has_value());
    CHECK(chain->empty());
}

TEST_CASE("callWebService discharges dependent index entries") {
    auto f = loadTransport();
    auto idx = initialize(f.ontology, f.repository, f.query);
    KnowledgeState k = emptyKnowledge();
    callWebService(f.ontology, k, idx,
                   WebService{kInitServiceId, "Init", {}, f.query.init});

    for (const char* id : {"getCountryFromLocation", "getTransportCompany",
                           "getClosestCity", "getLocalSubsidiary"})
        callWebService(f.ontology, k, idx, f.repository.service(id));

    SUBCASE("getLocalSubsidiary discharged makeArrangements' Organization email") {
        const auto& rem = idx.remaining.at("makeArrangements");
        CHECK_FALSE(rem.props.contains(schema("Organization")));
        CHECK(rem.props.contains(schema("Vehicle")));  // VIN still missing
    }
    SUBCASE("re-absorbing already known outputs changes nothing") {
        auto callableBefore = idx.callable;
        callWebService(f.ontology, k, idx, f.repository.service("getClosestCity"));
        CHECK(idx.callable == callableBefore);
    }
}

TEST_CASE("learning on a specialization discharges a generalization requirement") {
    Concept physical{"urn:ex:physicalObject", "physicalObject", std::nullopt, {}};
    Concept color{"urn:ex:Color", "Color", std::nullopt, {}};
    Concept fruit{"urn:ex:fruit",
                  "fruit",
                  "urn:ex:physicalObject",
                  {{"urn:ex:hasColor", "hasColor", "urn:ex:Color"}}};
    Concept apple{"urn:ex:apple", "apple", "urn:ex:fruit", {}};
    auto ont = Ontology::build({physical, color, fruit, apple});

    Repository repo;
    repo.add(WebService{"urn:ex:needsFruit", "needsFruit",
                        {{"urn:ex:fruit", {"urn:ex:hasColor"}}}, {}});
    Query q;  // empty goal
    auto idx = initialize(ont, repo, q);
    KnowledgeState k = emptyKnowledge();
    callWebService(ont, k, idx,
                   WebService{kInitServiceId, "Init", {},
                              {{"urn:ex:apple", {"urn:ex:hasColor"}}}});
    CHECK(std::find(idx.callable.begin(), idx.callable.end(), "urn:ex:needsFruit") !=
          idx.callable.end());
}

TEST_CASE("case-study composition (fifo)") {
    auto f = loadTransport();
    auto chain = findComposition(f.ontology, f.repository, f.query);
    REQUIRE(chain.has_value());
    CHECK(chain->size() == 6);
    CHECK(chain->back() == "makeArrangements");
    for (const auto& id : paperOrder())
        CHECK(std::find(chain->begin(), chain->end(), id) != chain->end());
    CHECK(validateChain(f.ontology, f.repository, f.query, *chain));

    SUBCASE("deterministic across runs") {
        CHECK(findComposition(f.ontology, f.repository, f.query) == chain);
    }
    SUBCASE("heuristic strategy also solves and validates") {
        auto h = findComposition(f.ontology, f.repository, f.query,
                                 {Strategy::Heuristic, false});
        REQUIRE(h.has_value());
        CHECK(validateChain(f.ontology, f.repository, f.query, *h));
        CHECK(h->back() == "makeArrangements");
    }
}

TEST_CASE("unreachable goal yields no composition") {
    auto f = loadTransport();
    Query q = f.query;
    q.init = {};  // nothing known, nothing callable
    CHECK_FALSE(findComposition(f.ontology, f.repository, q).has_value());
    CHECK_FALSE(bruteForceSearch(f.ontology, f.repository, q, 6).has_value());
}

TEST_CASE("validateChain re-evaluates the chain naively") {
    auto f = loadTransport();
    CHECK(validateChain(f.ontology, f.repository, f.query, paperOrder()));

    SUBCASE("makeArrangements first is invalid") {
        Chain bad = paperOrder();
        std::rotate(bad.begin(), bad.end() - 1, bad.end());
        CHECK_FALSE(validateChain(f.ontology, f.repository, f.query, bad));
    }
    SUBCASE("reversed order is invalid") {
        Chain bad = paperOrder();
        std::reverse(bad.begin(), bad.end());
        CHECK_FALSE(validateChain(f.ontology, f.repository, f.query, bad));
    }
    SUBCASE("duplicates are rejected") {
        Chain bad = paperOrder();
        bad.push_back(bad.front());
        CHECK_FALSE(validateChain(f.ontology, f.repository, f.query, bad));
    }
    SUBCASE("unknown id is an error") {
        CHECK_THROWS_AS(validateChain(f.ontology, f.repository, f.query, {"urn:ex:nope"}),
                        LookupError);
    }
    SUBCASE("empty chain with goal in init") {
        Query q;
        q.init = q.goal = {{schema("City"), {schema("name")}}};
        CHECK(validateChain(f.ontology, f.repository, q, {}));
    }
}

TEST_CASE("pruneBackward drops useless services") {
    auto f = loadTransport();

    SUBCASE("a prepended irrelevant service is removed") {
        Repository repo = f.repository;
        repo.add(WebService{"aaaUseless", "useless", {},
                            {{schema("DateTime"), {}}}});
        Chain padded{"aaaUseless"};
        auto rest = paperOrder();
        padded.insert(padded.end(), rest.begin(), rest.end());
        REQUIRE(validateChain(f.ontology, repo, f.query, padded));
        CHECK(pruneBackward(f.ontology, repo, f.query, padded) == paperOrder());
    }
    SUBCASE("an already-minimal chain is unchanged") {
        CHECK(pruneBackward(f.ontology, f.repository, f.query, paperOrder()) ==
              paperOrder());
    }
    SUBCASE("one of two services with identical outputs is dropped") {
        Repository repo = f.repository;
        repo.add(WebService{"getCountryAgain", "duplicate",
                            f.repository.service("getCountryFromLocation").inputs,
                            f.repository.service("getCountryFromLocation").outputs});
        Chain padded{"getCountryAgain"};
        auto rest = paperOrder();
        padded.insert(padded.end(), rest.begin(), rest.end());
        REQUIRE(validateChain(f.ontology, repo, f.query, padded));
        auto pruned = pruneBackward(f.ontology, repo, f.query, padded);
        CHECK(pruned.size() == 6);
        CHECK(validateChain(f.ontology, repo, f.query, pruned));
    }
    SUBCASE("invalid input chain is a precondition violation") {
        Chain bad = paperOrder();
        std::reverse(bad.begin(), bad.end());
        CHECK_THROWS_AS(pruneBackward(f.ontology, f.repository, f.query, bad),
                        ValidationError);
    }
}

TEST_CASE("heuristic score counts dischargeable index entries") {
    auto f = loadTransport();
    auto idx = initialize(f.ontology, f.repository, f.query);
    KnowledgeState k = emptyKnowledge();
    callWebService(f.ontology, k, idx,
                   WebService{kInitServiceId, "Init", {}, f.query.init});

    // getCountryFromLocation discharges getTransportCompany's
    // AdministrativeArea{name} need via Country isA AdministrativeArea
    CHECK(heuristicScore(f.ontology, k, idx,
                         f.repository.service("getCountryFromLocation")) >= 1);

    SUBCASE("a service whose outputs are all known scores zero") {
        WebService echo{"urn:ex:echo", "echo", {}, f.query.init};
        CHECK(heuristicScore(f.ontology, k, idx, echo) == 0);
    }
}

TEST_CASE("brute force finds the six-service chain") {
    auto f = loadTransport();
    auto chain = bruteForceSearch(f.ontology, f.repository, f.query, 6);
    REQUIRE(chain.has_value());
    CHECK(chain->size() == 6);
    CHECK(validateChain(f.ontology, f.repository, f.query, *chain));
    CHECK_FALSE(bruteForceSearch(f.ontology, f.repository, f.query, 5).has_value());
}

TEST_CASE("search agrees with the brute-force oracle on random instances") {
    SplitMix64 rng(0xC0FFEE);
    int solvable = 0, unsolvable = 0;
    for (int iter = 0; iter < 150; ++iter) {
        auto inst = randomInstance(rng, 3 + static_cast<int>(rng.below(8)),
                                   1 + static_cast<int>(rng.below(6)),
                                   1 + static_cast<int>(rng.below(6)));
        auto fast = findComposition(inst.ontology, inst.repository, inst.query);
        auto oracle = bruteForceSearch(inst.ontology, inst.repository, inst.query,
                                       inst.repository.order.size());
        REQUIRE(fast.has_value() == oracle.has_value());
        if (fast) {
            REQUIRE(validateChain(inst.ontology, inst.repository, inst.query, *fast));
            // the oracle minimum never exceeds the pruned result
            auto pruned = pruneBackward(inst.ontology, inst.repository, inst.query, *fast);
            REQUIRE(validateChain(inst.ontology, inst.repository, inst.query, pruned));
            REQUIRE(oracle->size() <= pruned.size());
            REQUIRE(pruned.size() <= fast->size());
            ++solvable;
        } else {
            ++unsolvable;
        }
    }
    // both outcomes must actually occur for the check to mean anything
    CHECK(solvable > 10);
    CHECK(unsolvable > 10);
}

TEST_CASE("heuristic and pruning never lose solvability") {
    SplitMix64 rng(0xFACADE);
    for (int iter = 0; iter < 80; ++iter) {
        auto inst = randomInstance(rng, 3 + static_cast<int>(rng.below(8)),
                                   1 + static_cast<int>(rng.below(6)),
                                   1 + static_cast<int>(rng.below(6)));
        auto fifo = findComposition(inst.ontology, inst.repository, inst.query);
        auto heur = findComposition(inst.ontology, inst.repository, inst.query,
                                    {Strategy::Heuristic, false});
        auto prunedOpt = findComposition(inst.ontology, inst.repository, inst.query,
                                         {Strategy::Fifo, true});
        REQUIRE(fifo.has_value() == heur.has_value());
        REQUIRE(fifo.has_value() == prunedOpt.has_value());
        if (fifo) {
            REQUIRE(validateChain(inst.ontology, inst.repository, inst.query, *heur));
            REQUIRE(validateChain(inst.ontology, inst.repository, inst.query, *prunedOpt));
            REQUIRE(prunedOpt->size() <= fifo->size());
        }
    }
}
