#include <gtest/gtest.h>

#include "accord/error.hpp"
#include "accord/matcher.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace accord;
using testing_support::fixture;
using testing_support::fixture_path;

namespace {

Ontology single(const std::string& id, const std::string& label) {
  return Ontology{"o", 0, {{id, label, std::nullopt, {}}}};
}

ClassDef with_properties(std::vector<std::string> labels) {
  ClassDef c{"c", "Thing", std::nullopt, {}};
  for (std::size_t i = 0; i < labels.size(); ++i)
    c.properties.push_back({"p" + std::to_string(i), labels[i], Datatype::String});
  return c;
}

}  // namespace

TEST(MatchConfig, Validation) {
  MatchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.alpha = 0.6;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = MatchConfig{};
  cfg.tau = 1.5;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(SimpleMatch, IdenticalCopyMapsEveryClass) {
  const Ontology& o = fixture().common;
  const Agreement a = simple_match(o, o, *fixture().sim, MatchConfig{});
  ASSERT_EQ(a.correspondences.size(), o.classes.size());
  for (const auto& c : a.correspondences) {
    EXPECT_EQ(c.local, c.common);
    EXPECT_EQ(c.score, 1.0);
  }
}

TEST(SimpleMatch, OccupationToJob) {
  MatchConfig cfg;
  cfg.tau = 0.3;
  const Agreement a = simple_match(single("l", "occupation"), single("c", "job"), *fixture().minimal_sim, cfg);
  ASSERT_EQ(a.correspondences.size(), 1u);
  EXPECT_NEAR(a.correspondences[0].score, 0.373974, 1e-6);
  cfg.tau = 0.5;
  EXPECT_TRUE(simple_match(single("l", "occupation"), single("c", "job"), *fixture().minimal_sim, cfg)
                  .correspondences.empty());
}

TEST(Internal, IdenticalPropertySets) {
  const ClassDef c = with_properties({"jobTitle", "salary"});
  EXPECT_EQ(internal_similarity(c, c, *fixture().sim, MatchConfig{}), 1.0);
}

TEST(Internal, OneSideEmpty) {
  EXPECT_EQ(internal_similarity(with_properties({"name"}), with_properties({}), *fixture().sim, MatchConfig{}), 0.0);
  EXPECT_EQ(internal_similarity(with_properties({}), with_properties({}), *fixture().sim, MatchConfig{}), 1.0);
}

TEST(Internal, DiceOfMaximumPairing) {
  const auto& sim = *fixture().sim;
  MatchConfig cfg;
  cfg.tau_prop = 0.3;
  const std::vector<std::string> a{"jobTitle", "salary"}, b{"title", "compensation"};
  oracle::Matrix m(2, std::vector<double>(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m[i][j] = sim.label_similarity(a[i], b[j]);
  const double want = 2.0 * static_cast<double>(oracle::max_pair_count(m, 0.3)) / 4.0;
  EXPECT_DOUBLE_EQ(internal_similarity(with_properties(a), with_properties(b), sim, cfg), want);
  EXPECT_DOUBLE_EQ(want, 1.0);
}

TEST(External, RootsWithoutChildren) {
  const Ontology a = single("x", "Job"), b = single("y", "Occupation");
  EXPECT_EQ(external_similarity("x", "y", a, b, *fixture().sim, MatchConfig{}), 1.0);
}

TEST(External, IdenticalSubtrees) {
  const Ontology& o = fixture().common;
  EXPECT_EQ(external_similarity("seeker", "seeker", o, o, *fixture().sim, MatchConfig{}), 1.0);
  EXPECT_EQ(external_similarity("vacancy", "vacancy", o, o, *fixture().sim, MatchConfig{}), 1.0);
}

TEST(External, SeekerWithOneChildRenamed) {
  // Seeker has seven children; one gets a label nothing can match. Both are roots, so the
  // parent term is 1 and six of seven children still pair.
  const Ontology& common = fixture().common;
  Ontology local = common;
  local.find_class("skill")->label = "Xq";
  const double want = 0.5 * 1.0 + 0.5 * (2.0 * 6.0 / (7.0 + 7.0));
  EXPECT_NEAR(external_similarity("seeker", "seeker", local, common, *fixture().sim, MatchConfig{}), want, 1e-12);
}

TEST(ComplexMatch, IdenticalCopyScoresOne) {
  const Ontology& o = fixture().common;
  const Agreement a = complex_match(o, o, *fixture().sim, MatchConfig{});
  ASSERT_EQ(a.correspondences.size(), o.classes.size());
  for (const auto& c : a.correspondences) {
    EXPECT_EQ(c.local, c.common);
    EXPECT_EQ(c.score, 1.0);
  }
}

TEST(ComplexMatch, LabelOnlyWeightsEqualSimple) {
  const Ontology local = load_ontology_file(fixture_path("local_renamed.onto.json"));
  MatchConfig cfg;
  cfg.alpha = 1.0;
  cfg.beta = cfg.gamma = 0.0;
  EXPECT_EQ(complex_match(local, fixture().common, *fixture().sim, cfg),
            simple_match(local, fixture().common, *fixture().sim, cfg));
}

TEST(ComplexMatch, ScoresAreTheWeightedTerms) {
  const auto& sim = *fixture().sim;
  const Ontology& common = fixture().common;
  Ontology local = load_ontology_file(fixture_path("local_renamed.onto.json"));
  local.find_class("l_skill")->properties.push_back({"p_extra", "yearsExperience", Datatype::Integer});
  const MatchConfig cfg;
  const Agreement a = complex_match(local, common, sim, cfg);
  ASSERT_FALSE(a.correspondences.empty());
  for (const auto& c : a.correspondences) {
    const ClassDef& l = *local.find_class(c.local);
    const ClassDef& k = *common.find_class(c.common);
    const double want = cfg.alpha * sim.label_similarity(l.label, k.label) +
                        cfg.beta * internal_similarity(l, k, sim, cfg) +
                        cfg.gamma * external_similarity(l.id, k.id, local, common, sim, cfg);
    EXPECT_NEAR(c.score, want, 1e-12) << c.local;
  }
  const auto* skill = a.find_local("l_skill");
  ASSERT_NE(skill, nullptr);
  EXPECT_EQ(skill->common, "skill");
  EXPECT_LT(skill->score, 1.0);
}

TEST(GreedyPairing, TieBreakAndThreshold) {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.2;
  EXPECT_EQ(greedy_pair_count(m, 0.3), 1u);
  EXPECT_EQ(greedy_pair_count(m, 0.1), 2u);
  EXPECT_DOUBLE_EQ(dice_similarity(m, 0.3), 0.5);
  EXPECT_EQ(dice_similarity(Eigen::MatrixXd(0, 0), 0.3), 1.0);
  EXPECT_EQ(dice_similarity(Eigen::MatrixXd(2, 0), 0.3), 0.0);
}

TEST(Agreement, SerializationRoundsScores) {
  Agreement a{"hr", 1, 2, {{"l1", "c1", 0.1234567}}};
  const Agreement back = parse_agreement(serialize_agreement(a));
  EXPECT_EQ(back.peer, "hr");
  EXPECT_EQ(back.correspondences[0].score, 0.123457);
}
