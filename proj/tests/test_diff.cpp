#include <gtest/gtest.h>

#include "accord/diff.hpp"
#include "accord/error.hpp"
#include "accord/simulation.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace accord;
using testing_support::fixture;
using testing_support::fixture_path;

namespace {

Ontology small() {
  return Ontology{"hr", 1, {{"c1", "Salary", std::nullopt, {{"p1", "amount", Datatype::Decimal}}},
                            {"c2", "Person", std::nullopt, {}}}};
}

}  // namespace

TEST(Diff, IdenticalVersionsGiveNothing) {
  const ChangeSet cs = diff_versions(small(), small());
  EXPECT_TRUE(cs.empty());
  EXPECT_EQ(cs.magnitude, 0.0);
}

TEST(Diff, AddedClass) {
  Ontology n = small();
  n.version = 2;
  n.classes.push_back({"c3", "Company", std::nullopt, {}});
  const ChangeSet cs = diff_versions(small(), n);
  ASSERT_EQ(cs.ops.size(), 1u);
  EXPECT_EQ(cs.ops[0].kind, ChangeKind::AddClass);
  EXPECT_EQ(cs.ops[0].class_id, "c3");
  ASSERT_TRUE(cs.ops[0].added_class);
  EXPECT_EQ(cs.ops[0].added_class->label, "Company");
  EXPECT_NEAR(cs.magnitude, 1.0 / 3.0, 1e-12);
}

TEST(Diff, RenamedClass) {
  Ontology n = small();
  n.version = 2;
  n.find_class("c1")->label = "Compensation";
  const ChangeSet cs = diff_versions(small(), n);
  ASSERT_EQ(cs.ops.size(), 1u);
  EXPECT_EQ(cs.ops[0].kind, ChangeKind::RenameClass);
  EXPECT_EQ(cs.ops[0].old_label, "Salary");
  EXPECT_EQ(cs.ops[0].new_label, "Compensation");
  EXPECT_NEAR(cs.magnitude, 1.0 / 3.0, 1e-12);
}

TEST(Diff, WeightsScaleMagnitude) {
  Ontology n = small();
  n.version = 2;
  n.find_class("c1")->label = "Compensation";
  n.classes.push_back({"c3", "Company", std::nullopt, {}});
  DiffOptions opts;
  opts.weights.rename_class = 0.5;
  opts.weights.add_class = 2.0;
  EXPECT_NEAR(diff_versions(small(), n, opts).magnitude, 2.5 / 3.0, 1e-12);
}

TEST(Diff, ParentChangeIsDeleteThenAdd) {
  Ontology n = small();
  n.version = 2;
  n.find_class("c1")->parent = "c2";
  const ChangeSet cs = diff_versions(small(), n);
  ASSERT_EQ(cs.ops.size(), 2u);
  EXPECT_EQ(cs.ops[0].kind, ChangeKind::DeleteClass);
  EXPECT_EQ(cs.ops[1].kind, ChangeKind::AddClass);
}

TEST(Diff, VersionGoingBackwardsRejected) {
  Ontology n = small();
  n.version = 0;
  EXPECT_THROW(diff_versions(small(), n), ValidationError);
}

TEST(Diff, NameMismatchRejected) {
  Ontology n = small();
  n.name = "other";
  EXPECT_THROW(diff_versions(small(), n), ValidationError);
}

TEST(Diff, RescuePairsMovedClassWithSimilarLabel) {
  Ontology n = small();
  n.version = 2;
  n.classes[0].id = "c9";
  n.classes[0].label = "Wage";
  n = canonicalize(n);
  DiffOptions opts;
  EXPECT_EQ(diff_versions(small(), n, opts).ops.size(), 2u);
  opts.rescue = fixture().sim.get();
  const ChangeSet cs = diff_versions(small(), n, opts);
  ASSERT_EQ(cs.ops.size(), 1u);
  EXPECT_EQ(cs.ops[0].kind, ChangeKind::RenameClass);
  EXPECT_EQ(cs.ops[0].class_id, "c1");
  EXPECT_EQ(cs.ops[0].new_id, "c9");
}

TEST(Diff, RescueSkipsDissimilarLabels) {
  Ontology n = small();
  n.version = 2;
  n.classes[0].id = "c9";
  n.classes[0].label = "Interview";
  n = canonicalize(n);
  DiffOptions opts;
  opts.rescue = fixture().sim.get();
  EXPECT_EQ(diff_versions(small(), n, opts).ops.size(), 2u);
}

TEST(Diff, FixtureVersions) {
  const Ontology v2 = load_ontology_file(fixture_path("common_v2.onto.json"));
  const ChangeSet cs = diff_versions(fixture().common, v2);
  ASSERT_EQ(cs.ops.size(), 1u);
  EXPECT_EQ(cs.ops[0].kind, ChangeKind::AddClass);
  EXPECT_NEAR(cs.magnitude, 1.0 / 77.0, 1e-12);
}

TEST(Apply, EmptyChangeSetBumpsVersion) {
  const Ontology o = apply_changes(small(), ChangeSet{});
  EXPECT_EQ(o.version, 2);
  EXPECT_EQ(o.classes, small().classes);
}

TEST(Apply, DeleteThenDiff) {
  ChangeOp op;
  op.kind = ChangeKind::DeleteClass;
  op.class_id = "c2";
  const ChangeSet cs = diff_versions(small(), apply_changes(small(), {op}));
  ASSERT_EQ(cs.ops.size(), 1u);
  EXPECT_EQ(cs.ops[0], op);
}

TEST(Apply, UnknownSubjectRejected) {
  ChangeOp op;
  op.kind = ChangeKind::DeleteClass;
  op.class_id = "nope";
  EXPECT_THROW(apply_changes(small(), {op}), ValidationError);
}

TEST(Apply, DeletingAParentRejected) {
  Ontology o = small();
  o.classes[0].parent = "c2";
  ChangeOp op;
  op.kind = ChangeKind::DeleteClass;
  op.class_id = "c2";
  EXPECT_THROW(apply_changes(o, {op}), ValidationError);
}

TEST(Apply, RandomFixtureChangeSetsRoundTrip) {
  const Mutator mutator(fixture().taxonomy);
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed({5, s}));
    std::vector<MutationKind> kinds;
    const std::size_t k = 1 + rng.index(5);
    for (std::size_t i = 0; i < k; ++i) kinds.push_back(static_cast<MutationKind>(rng.index(3)));
    std::vector<ChangeOp> ops = mutator.plan(fixture().common, kinds, MutationTarget::Any, rng);
    std::vector<ChangeOp> back = diff_versions(fixture().common, apply_changes(fixture().common, ops)).ops;
    sort_ops(ops);
    ASSERT_EQ(back, ops) << "seed " << s;
  }
}

TEST(DiffLaws, GeneratedOntologies) {
  const auto r = testing_support::check_diff_laws(11, 100, 100);
  EXPECT_TRUE(r.pass) << r.detail;
}
