#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "accord/ontology.hpp"
#include "accord/similarity.hpp"

namespace accord {

struct MatchConfig {
  double alpha = 0.5;   // label
  double beta = 0.25;   // internal (properties)
  double gamma = 0.25;  // external (parent and children)
  double tau = 0.5;     // acceptance threshold for a correspondence
  double tau_prop = 0.3;  // pairing threshold for properties and children

  /// Throws ValidationError unless all values lie in [0,1] and alpha+beta+gamma = 1.
  void validate() const;
  bool operator==(const MatchConfig&) const = default;
};

enum class Algorithm { Simple, Complex };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct Correspondence {
  std::string local;
  std::string common;
  double score = 0.0;

  bool operator==(const Correspondence&) const = default;
};

/// One peer's one-to-one class mapping onto the common ontology.
struct Agreement {
  std::string peer;
  std::int64_t local_version = 0;
  std::int64_t common_version = 0;
  std::vector<Correspondence> correspondences;  // sorted by local id

  const Correspondence* find_local(std::string_view local_id) const;
  bool operator==(const Agreement&) const = default;
};

/// Scores rounded to 6 decimals, correspondences ordered by local id.
std::string serialize_agreement(const Agreement& a);
Agreement parse_agreement(std::string_view text);

/// Labels of one ontology pre-tokenized and its hierarchy pre-indexed.
class IndexedOntology {
 public:
  explicit IndexedOntology(const Ontology& o);

  const Ontology& ontology() const { return *onto_; }
  std::size_t size() const { return labels_.size(); }
  std::optional<std::size_t> index_of(std::string_view class_id) const;
  const ClassDef& cls(std::size_t i) const { return onto_->classes[i]; }
  const TokenizedLabel& label(std::size_t i) const { return labels_[i]; }
  const std::vector<TokenizedLabel>& property_labels(std::size_t i) const { return property_labels_[i]; }
  std::optional<std::size_t> parent(std::size_t i) const { return parents_[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }

 private:
  const Ontology* onto_;
  std::vector<TokenizedLabel> labels_;
  std::vector<std::vector<TokenizedLabel>> property_labels_;
  std::vector<std::optional<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

/// Greedy one-to-one pairing by descending score of items whose score clears `threshold`.
/// Ties go to the smaller (row, column). Returns the number of pairs.
std::size_t greedy_pair_count(const Eigen::MatrixXd& scores, double threshold);

/// Dice coefficient of the greedy pairing; 1 when both sides are empty, 0 when one is.
double dice_similarity(const Eigen::MatrixXd& scores, double threshold);

/// Property-set similarity of two classes.
double internal_similarity(const ClassDef& local, const ClassDef& common, const SemanticSimilarity& sim,
                           const MatchConfig& cfg);

/// Neighbourhood similarity: half parent-label agreement, half children Dice.
double external_similarity(std::string_view local_id, std::string_view common_id, const Ontology& local,
                           const Ontology& common, const SemanticSimilarity& sim, const MatchConfig& cfg);

/// Label-only matching.
Agreement simple_match(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                       const MatchConfig& cfg);

/// alpha * label + beta * internal + gamma * external, same extraction as simple_match.
Agreement complex_match(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                        const MatchConfig& cfg);

/// Scoring restricted to a subset of local classes, with some common classes unavailable.
/// Used by incremental maintenance; `comparisons` counts the pair scores evaluated.
struct MatchRequest {
  Algorithm algorithm = Algorithm::Complex;
  std::optional<std::set<std::string>> local_subset;  // nullopt = every local class
  std::set<std::string> blocked_common;
};

struct MatchOutcome {
  std::vector<Correspondence> correspondences;  // sorted by local id
  std::size_t comparisons = 0;
};

MatchOutcome match_classes(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                           const MatchConfig& cfg, const MatchRequest& req);

/// Pairwise scores for the whole local-by-common grid under one algorithm.
Eigen::MatrixXd score_matrix(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                             const MatchConfig& cfg, Algorithm algorithm);

}  // namespace accord
