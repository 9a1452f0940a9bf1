#include <gtest/gtest.h>

#include <stdexcept>

#include "accord/error.hpp"
#include "accord/maintenance.hpp"
#include "support/generators.hpp"

using namespace accord;
using testing_support::fixture;
using testing_support::fixture_path;

namespace {

Ontology versioned(std::int64_t v) { return Ontology{"o", v, {}}; }

// A small common ontology so that a handful of added classes crosses the border.
Ontology small_common() {
  Ontology o{"common", 1, {}};
  for (const char* label : {"Job", "Salary", "Skill", "Education", "Interview", "Company", "Contract", "Resume"})
    o.classes.push_back({std::string("c_") + label, label, std::nullopt, {}});
  return canonicalize(o);
}

}  // namespace

TEST(DetectChange, Cases) {
  EXPECT_EQ(detect_change(3, 1, versioned(3), versioned(1)), Trigger::None);
  EXPECT_EQ(detect_change(3, 1, versioned(4), versioned(1)), Trigger::Local);
  EXPECT_EQ(detect_change(3, 1, versioned(3), versioned(2)), Trigger::Common);
  EXPECT_EQ(detect_change(3, 1, versioned(4), versioned(2)), Trigger::Both);
  EXPECT_THROW(detect_change(3, 1, versioned(2), versioned(1)), ValidationError);
}

TEST(SelectAlgorithm, Border) {
  MaintenancePolicy p;
  EXPECT_EQ(p.border, 0.15);
  EXPECT_EQ(select_algorithm(0.05, p), Algorithm::Simple);
  EXPECT_EQ(select_algorithm(0.15, p), Algorithm::Complex);
  EXPECT_EQ(select_algorithm(0.40, p), Algorithm::Complex);
  EXPECT_THROW(select_algorithm(0.0, p), std::invalid_argument);
}

TEST(Maintain, NoChange) {
  const auto& f = fixture();
  const Ontology local = load_ontology_file(fixture_path("local.onto.json"));
  const PeerState s = initial_state("hr", local, f.common, *f.sim, MaintenancePolicy{});
  const MaintenanceResult r = maintain(s, local, f.common, *f.sim, MaintenancePolicy{});
  EXPECT_EQ(r.report.trigger, Trigger::None);
  EXPECT_FALSE(r.report.selected);
  EXPECT_EQ(r.report.comparisons, 0u);
  EXPECT_EQ(r.report.agreement, s.agreement);
}

TEST(Maintain, RenameTakesSimplePath) {
  const auto& f = fixture();
  const Ontology local = load_ontology_file(fixture_path("local.onto.json"));
  const Ontology renamed = load_ontology_file(fixture_path("local_renamed.onto.json"));
  const PeerState s = initial_state("hr", local, f.common, *f.sim, MaintenancePolicy{});
  const MaintenanceResult r = maintain(s, renamed, f.common, *f.sim, MaintenancePolicy{});
  EXPECT_EQ(r.report.trigger, Trigger::Local);
  ASSERT_TRUE(r.report.selected);
  EXPECT_EQ(*r.report.selected, Algorithm::Simple);
  EXPECT_NEAR(r.report.magnitude, 1.0 / 77.0, 1e-12);
  // Only the renamed class is re-scored, against every common class.
  EXPECT_EQ(r.report.comparisons, f.common.classes.size());
  for (const auto& c : s.agreement.correspondences) {
    if (c.local == "l_skill") continue;
    const auto* now = r.report.agreement.find_local(c.local);
    ASSERT_NE(now, nullptr) << c.local;
    EXPECT_EQ(*now, c);
  }
  ASSERT_NE(r.report.agreement.find_local("l_skill"), nullptr);
  EXPECT_EQ(r.report.agreement.find_local("l_skill")->common, "skill");
  EXPECT_EQ(r.state.local_snapshot, renamed);
  EXPECT_EQ(r.state.agreement.local_version, renamed.version);
}

TEST(Maintain, CommonGrowthTakesComplexPath) {
  const auto& f = fixture();
  const Ontology common = small_common();
  Ontology local = common;
  local.name = "hr";
  const PeerState s = initial_state("hr", local, common, *f.sim, MaintenancePolicy{});
  Ontology grown = common;
  grown.version = 2;
  for (const char* label : {"Vacancy", "Benefit", "Training", "Department", "Location"})
    grown.classes.push_back({std::string("n_") + label, label, std::nullopt, {}});
  grown = canonicalize(grown);
  const MaintenanceResult r = maintain(s, local, grown, *f.sim, MaintenancePolicy{});
  EXPECT_EQ(r.report.trigger, Trigger::Common);
  EXPECT_NEAR(r.report.magnitude, 5.0 / 8.0, 1e-12);
  ASSERT_TRUE(r.report.selected);
  EXPECT_EQ(*r.report.selected, Algorithm::Complex);
  EXPECT_EQ(r.report.comparisons, local.classes.size() * grown.classes.size());
}

TEST(Maintain, DeletedCommonClassDropsCorrespondence) {
  const auto& f = fixture();
  const Ontology common = small_common();
  const PeerState s = initial_state("hr", common, common, *f.sim, MaintenancePolicy{});
  Ontology shrunk = common;
  shrunk.version = 2;
  std::erase_if(shrunk.classes, [](const ClassDef& c) { return c.id == "c_Resume"; });
  MaintenancePolicy p;
  p.force = Algorithm::Simple;
  const MaintenanceResult r = maintain(s, common, shrunk, *f.sim, p);
  EXPECT_EQ(r.report.dropped, 1u);
  EXPECT_EQ(r.report.agreement.find_local("c_Resume"), nullptr);
  EXPECT_EQ(r.report.agreement.correspondences.size(), 7u);
}

TEST(Maintain, ForcedComplexOnTinyChange) {
  const auto& f = fixture();
  const Ontology local = load_ontology_file(fixture_path("local.onto.json"));
  const Ontology renamed = load_ontology_file(fixture_path("local_renamed.onto.json"));
  MaintenancePolicy p;
  const PeerState s = initial_state("hr", local, f.common, *f.sim, p);
  p.force = Algorithm::Complex;
  const MaintenanceResult r = maintain(s, renamed, f.common, *f.sim, p);
  EXPECT_EQ(*r.report.selected, Algorithm::Complex);
  EXPECT_EQ(r.report.comparisons, local.classes.size() * f.common.classes.size());
}

TEST(Maintain, StaleVersionRejected) {
  const auto& f = fixture();
  const Ontology local = load_ontology_file(fixture_path("local_renamed.onto.json"));
  const PeerState s = initial_state("hr", local, f.common, *f.sim, MaintenancePolicy{});
  Ontology older = local;
  older.version = 0;
  EXPECT_THROW(maintain(s, older, f.common, *f.sim, MaintenancePolicy{}), ValidationError);
}

TEST(Report, SerializesSelectedAlgorithm) {
  MaintenanceReport r;
  r.peer = "hr";
  r.selected = Algorithm::Simple;
  const std::string text = serialize_report(r);
  EXPECT_NE(text.find("\"selected\": \"simple\""), std::string::npos);
  EXPECT_NE(text.find("\"trigger\": \"none\""), std::string::npos);
}

TEST(ChangeSetJson, Empty) {
  EXPECT_EQ(serialize_change_set(ChangeSet{}), "{\n  \"ops\": [],\n  \"magnitude\": 0.0\n}\n");
}
