#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "wsc/errors.hpp"
#include "wsc/ontology.hpp"

using namespace wsc;
using namespace wsc::test;

namespace {

// the fruit taxonomy used throughout: apple isA fruit isA physicalObject,
// hasColor declared on fruit
Ontology fruitOntology() {
    Concept physical{"urn:ex:physicalObject", "physicalObject", std::nullopt, {}};
    Concept color{"urn:ex:Color", "Color", std::nullopt, {}};
    Concept fruit{"urn:ex:fruit",
                  "fruit",
                  "urn:ex:physicalObject",
                  {{"urn:ex:hasColor", "hasColor", "urn:ex:Color"}}};
    Concept apple{"urn:ex:apple", "apple", "urn:ex:fruit", {}};
    return Ontology::build({physical, color, fruit, apple});
}

}  // namespace

TEST_CASE("loading the transport fixture resolves the schema.org taxonomy") {
    auto ont = Ontology::loadFile(fixturePath("transport/ontology.json"));
    CHECK(ont.size() == 13);
    CHECK(ont.conceptAt(schema("LocalBusiness")).parent == schema("Organization"));
    CHECK(ont.isA(schema("LocalBusiness"), schema("Organization")));
    CHECK(ont.isA(schema("Country"), schema("AdministrativeArea")));
    CHECK_FALSE(ont.isA(schema("Organization"), schema("Place")));
}

TEST_CASE("single-concept document loads") {
    auto ont = Ontology::fromJson(nlohmann::json::parse(
        R"({"concepts":[{"id":"urn:ex:root","name":"root","parent":null,"properties":[]}]})"));
    CHECK(ont.size() == 1);
    CHECK(ont.effectiveProperties("urn:ex:root").empty());
}

TEST_CASE("load rejects invariant violations") {
    SUBCASE("isA cycle") {
        CHECK_THROWS_AS(Ontology::build({{"urn:ex:a", "a", "urn:ex:b", {}},
                                         {"urn:ex:b", "b", "urn:ex:a", {}}}),
                        ValidationError);
    }
    SUBCASE("duplicate concept IRI") {
        CHECK_THROWS_AS(Ontology::build({{"urn:ex:a", "a", std::nullopt, {}},
                                         {"urn:ex:a", "a2", std::nullopt, {}}}),
                        ValidationError);
    }
    SUBCASE("duplicate property IRI across unrelated subtrees") {
        Concept a{"urn:ex:a", "a", std::nullopt,
                  {{"urn:ex:p", "p", "urn:ex:a"}}};
        Concept b{"urn:ex:b", "b", std::nullopt,
                  {{"urn:ex:p", "p", "urn:ex:b"}}};
        CHECK_THROWS_AS(Ontology::build({a, b}), ValidationError);
    }
    SUBCASE("dangling parent") {
        CHECK_THROWS_AS(Ontology::build({{"urn:ex:a", "a", "urn:ex:missing", {}}}),
                        ValidationError);
    }
    SUBCASE("dangling property range") {
        Concept a{"urn:ex:a", "a", std::nullopt,
                  {{"urn:ex:p", "p", "urn:ex:missing"}}};
        CHECK_THROWS_AS(Ontology::build({a}), ValidationError);
    }
    SUBCASE("invalid IRI") {
        CHECK_THROWS_AS(Ontology::build({{"not an iri", "a", std::nullopt, {}}}),
                        ValidationError);
        CHECK_THROWS_AS(Ontology::build({{"", "a", std::nullopt, {}}}),
                        ValidationError);
    }
    SUBCASE("malformed document") {
        CHECK_THROWS_AS(Ontology::fromJson(nlohmann::json::parse("[1,2]")), ParseError);
        CHECK_THROWS_AS(
            Ontology::fromJson(nlohmann::json::parse(R"({"concepts":[{"name":"x"}]})")),
            ParseError);
    }
}

TEST_CASE("isA is reflexive") {
    auto ont = fruitOntology();
    for (const auto& c : ont.conceptIds()) CHECK(ont.isA(c, c));
    CHECK_THROWS_AS(ont.isA("urn:ex:nope", "urn:ex:apple"), LookupError);
}

TEST_CASE("effective properties are inherited") {
    auto ont = fruitOntology();
    CHECK(ont.effectiveProperties("urn:ex:apple").contains("urn:ex:hasColor"));
    CHECK(ont.effectiveProperties("urn:ex:physicalObject").empty());
}

TEST_CASE("three-level chain accumulates one property per level") {
    // expected sets computed by brute-force union along the parent chain
    Concept a{"urn:ex:a", "a", std::nullopt, {{"urn:ex:p1", "p1", "urn:ex:a"}}};
    Concept b{"urn:ex:b", "b", "urn:ex:a", {{"urn:ex:p2", "p2", "urn:ex:a"}}};
    Concept c{"urn:ex:c", "c", "urn:ex:b", {{"urn:ex:p3", "p3", "urn:ex:a"}}};
    auto ont = Ontology::build({a, b, c});
    CHECK(ont.effectiveProperties("urn:ex:c") ==
          std::set<PropertyId>{"urn:ex:p1", "urn:ex:p2", "urn:ex:p3"});
    CHECK(ont.effectiveProperties("urn:ex:b") ==
          std::set<PropertyId>{"urn:ex:p1", "urn:ex:p2"});
}

TEST_CASE("mostGeneralHolder finds the declaration site") {
    auto ont = fruitOntology();
    CHECK(ont.mostGeneralHolder("urn:ex:apple", "urn:ex:hasColor") == "urn:ex:fruit");
    CHECK(ont.mostGeneralHolder("urn:ex:fruit", "urn:ex:hasColor") == "urn:ex:fruit");
    CHECK_FALSE(
        ont.mostGeneralHolder("urn:ex:physicalObject", "urn:ex:hasColor").has_value());
}

TEST_CASE("serialize/load round-trip is identity") {
    auto ont = Ontology::loadFile(fixturePath("transport/ontology.json"));
    auto again = Ontology::fromJson(ont.toJson());
    CHECK(ont == again);
    CHECK(ont.toJson() == again.toJson());
}

TEST_CASE("subsumption and inheritance laws on random ontologies") {
    SplitMix64 rng(0xA11CE);
    int transitivityChecks = 0;
    for (int iter = 0; iter < 60; ++iter) {
        auto ont = randomOntology(rng, 2 + static_cast<int>(rng.below(10)),
                                  1 + static_cast<int>(rng.below(8)));
        auto ids = ont.conceptIds();
        for (const auto& a : ids) {
            REQUIRE(ont.isA(a, a));
            for (const auto& b : ids) {
                if (!ont.isA(a, b)) continue;
                // inheritance monotonicity
                const auto& effA = ont.effectiveProperties(a);
                for (const auto& p : ont.effectiveProperties(b))
                    REQUIRE(effA.contains(p));
                // transitivity
                for (const auto& c : ids) {
                    if (ont.isA(b, c)) {
                        REQUIRE(ont.isA(a, c));
                        ++transitivityChecks;
                    }
                }
            }
        }
        // mostGeneralHolder is an ancestor holding p whose parent does not
        for (const auto& a : ids) {
            for (const auto& p : ont.effectiveProperties(a)) {
                auto holder = ont.mostGeneralHolder(a, p);
                REQUIRE(holder.has_value());
                REQUIRE(ont.isA(a, *holder));
                REQUIRE(ont.hasProperty(*holder, p));
                const auto& parent = ont.conceptAt(*holder).parent;
                if (parent) REQUIRE_FALSE(ont.hasProperty(*parent, p));
            }
        }
    }
    CHECK(transitivityChecks > 1000);
}

TEST_CASE("random ontologies round-trip through JSON") {
    SplitMix64 rng(0xBEEF);
    for (int iter = 0; iter < 25; ++iter) {
        auto ont = randomOntology(rng, 2 + static_cast<int>(rng.below(12)),
                                  1 + static_cast<int>(rng.below(10)));
        CHECK(Ontology::fromJson(ont.toJson()) == ont);
    }
}
