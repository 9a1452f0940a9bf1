#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "accord/diff.hpp"
#include "accord/matcher.hpp"
#include "accord/ontology.hpp"
#include "accord/similarity.hpp"

namespace accord {

/// Border value shipped as the default; chosen by the border sweep in the acceptance suite.
inline constexpr double kDefaultBorder = 0.15;

struct MaintenancePolicy {
  double border = kDefaultBorder;
  OpWeights weights;
  MatchConfig match;
  /// Overrides the border decision (experiments and `--force`).
  std::optional<Algorithm> force;

  void validate() const;
};

enum class Trigger { None, Local, Common, Both };
std::string_view to_string(Trigger t);

/// What the peer's agreement was last built against.
struct PeerState {
  Agreement agreement;
  Ontology local_snapshot;
  Ontology common_snapshot;
};

struct MaintenanceReport {
  std::string peer;
  Trigger trigger = Trigger::None;
  ChangeSet local_changes;
  ChangeSet common_changes;
  double magnitude = 0.0;  // max of the two sides
  std::optional<Algorithm> selected;  // nullopt: nothing to do
  Agreement agreement;
  std::size_t dropped = 0;
  std::size_t comparisons = 0;
};

struct MaintenanceResult {
  MaintenanceReport report;
  PeerState state;  // what to persist
};

/// Throws ValidationError if either current version is older than the stored one.
Trigger detect_change(std::int64_t stored_local, std::int64_t stored_common, const Ontology& current_local,
                      const Ontology& current_common);

/// Complex at or above the border, simple below. Throws std::invalid_argument for a
/// magnitude that is not strictly positive.
Algorithm select_algorithm(double magnitude, const MaintenancePolicy& policy);

/// Initial agreement for a newly registered peer: a full complex match.
PeerState initial_state(std::string peer, const Ontology& local, const Ontology& common,
                        const SemanticSimilarity& sim, const MaintenancePolicy& policy);

/// One maintenance run: detect, diff, select, re-match, drop stale correspondences.
///
/// The simple path re-scores only classes touched by the change (plus local classes mapped to
/// touched common classes) against the whole common ontology and keeps every other
/// correspondence. The complex path re-matches everything.
MaintenanceResult maintain(const PeerState& stored, const Ontology& current_local, const Ontology& current_common,
                           const SemanticSimilarity& sim, const MaintenancePolicy& policy);

/// Structured-text rendering of a report (pretty JSON).
std::string serialize_report(const MaintenanceReport& r);
std::string serialize_change_set(const ChangeSet& cs);

}  // namespace accord
