#include <gtest/gtest.h>

#include <algorithm>

#include "accord/error.hpp"
#include "accord/ontology.hpp"
#include "support/generators.hpp"

using namespace accord;
using testing_support::fixture;

TEST(OntologyParse, MinimalDocument) {
  const Ontology o = parse_ontology(R"({"name": "p1", "version": 0, "classes": []})");
  EXPECT_EQ(o.name, "p1");
  EXPECT_EQ(o.version, 0);
  EXPECT_TRUE(o.classes.empty());
}

TEST(OntologyParse, DanglingParentRejected) {
  EXPECT_THROW(parse_ontology(R"({"name": "p1", "version": 0, "classes": [
      {"id": "c1", "label": "Job", "parent": "c9", "properties": []}]})"),
               ValidationError);
}

TEST(OntologyParse, UnknownKeyRejected) {
  EXPECT_THROW(parse_ontology(R"({"name": "p1", "version": 0, "classes": [], "extra": 1})"), ValidationError);
}

TEST(OntologyParse, MalformedJsonCarriesOffset) {
  try {
    parse_ontology(R"({"name": "p1", "version": )");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
}

TEST(OntologyParse, CyclicParentsRejected) {
  Ontology o{"p", 0, {{"a", "A", "b", {}}, {"b", "B", "a", {}}}};
  EXPECT_THROW(validate(o), ValidationError);
}

TEST(OntologyParse, FixtureHasSeekerAndProviderRoots) {
  const Ontology& o = fixture().common;
  std::vector<std::string> roots;
  for (const auto& c : o.classes)
    if (!c.parent) roots.push_back(c.id);
  EXPECT_EQ(roots, (std::vector<std::string>{"provider", "seeker"}));
}

TEST(OntologySerialize, EmptyOntology) {
  EXPECT_EQ(serialize_ontology(Ontology{"p1", 0, {}}),
            "{\n  \"name\": \"p1\",\n  \"version\": 0,\n  \"classes\": []\n}\n");
}

TEST(OntologySerialize, ClassOrderDoesNotMatter) {
  Ontology a = fixture().common;
  Ontology b = a;
  std::reverse(b.classes.begin(), b.classes.end());
  for (auto& c : b.classes) std::reverse(c.properties.begin(), c.properties.end());
  EXPECT_EQ(serialize_ontology(a), serialize_ontology(b));
}

TEST(OntologySerialize, RoundTrip) {
  const std::string text = serialize_ontology(fixture().common);
  EXPECT_EQ(serialize_ontology(parse_ontology(text)), text);
  EXPECT_EQ(parse_ontology(text), fixture().common);
}

TEST(OntologySize, EmptyIsFlooredAtOne) { EXPECT_EQ(ontology_size(Ontology{"p", 0, {}}), 1u); }

TEST(OntologySize, ClassesPlusProperties) {
  Ontology o{"p", 0, {{"a", "A", std::nullopt, {{"x", "X", Datatype::String}}}, {"b", "B", std::nullopt, {}}}};
  EXPECT_EQ(ontology_size(o), 3u);
}

TEST(OntologySize, FixtureHandCount) {
  // 20 classes; properties per class counted off the fixture file.
  EXPECT_EQ(fixture().common.classes.size(), 20u);
  EXPECT_EQ(ontology_size(fixture().common), 77u);
}
