#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace accord {

struct ConceptNode {
  std::string id;
  std::vector<std::string> words;    // lowercase, sorted, unique
  std::vector<std::string> parents;  // sorted, unique; empty only for the root

  bool operator==(const ConceptNode&) const = default;
};

/// Reference taxonomy: a single-rooted DAG of concepts carrying words.
///
/// Concepts are stored sorted by id, so concept indices order the same way ids do.
/// Ancestor and descendant closures (both reflexive) are computed at construction.
class Taxonomy {
 public:
  /// Validates and indexes. Throws ValidationError on duplicate ids, dangling parents,
  /// cycles, or a root count other than one.
  explicit Taxonomy(std::vector<ConceptNode> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<ConceptNode>& concepts() const { return nodes_; }
  const ConceptNode& node(std::size_t i) const { return nodes_[i]; }
  const std::string& id(std::size_t i) const { return nodes_[i].id; }

  std::size_t root() const { return root_; }
  const std::string& root_id() const { return nodes_[root_].id; }

  bool contains(std::string_view concept_id) const { return index_.contains(std::string(concept_id)); }
  /// Throws ValidationError for an unknown id.
  std::size_t index_of(std::string_view concept_id) const;

  /// Sorted indices of all ancestors of `i`, including `i`.
  std::span<const std::size_t> ancestors(std::size_t i) const { return ancestors_[i]; }
  /// Sorted indices of all descendants of `i`, including `i`.
  std::span<const std::size_t> descendants(std::size_t i) const { return descendants_[i]; }

  /// Concepts that carry `word` directly; empty for out-of-vocabulary words.
  std::span<const std::size_t> senses(std::string_view word) const;

  /// Every word attached to this concept or any of its descendants.
  std::vector<std::string> subsumed_words(std::size_t i) const;

  /// All words that appear anywhere in the taxonomy, sorted.
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

 private:
  std::vector<ConceptNode> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::vector<std::size_t>> senses_;
  std::vector<std::vector<std::size_t>> ancestors_;
  std::vector<std::vector<std::size_t>> descendants_;
  std::vector<std::string> vocabulary_;
  std::size_t root_ = 0;
};

/// Word frequencies. `total` is N: the sum of counts restricted to words present in the
/// taxonomy the counts were built against.
struct CorpusCounts {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count(std::string_view word) const;
};

CorpusCounts make_corpus_counts(std::map<std::string, std::uint64_t> counts, const Taxonomy& t);

/// `.tax.json`: {"concepts": [{"id", "words", "parents"}]}
Taxonomy load_taxonomy(std::string_view text);
/// `.counts.json`: {"counts": {"word": n}}; N is derived against `t`.
CorpusCounts load_counts(std::string_view text, const Taxonomy& t);

Taxonomy load_taxonomy_file(const std::string& path);
CorpusCounts load_counts_file(const std::string& path, const Taxonomy& t);

/// Corpus probability of a concept: word mass of everything it subsumes over N.
/// A concept with zero mass gets 1/(N+1). Throws ValidationError when N = 0.
double probability(std::string_view concept_id, const Taxonomy& t, const CorpusCounts& k);

/// -ln p(c), in nats.
double information_content(std::string_view concept_id, const Taxonomy& t, const CorpusCounts& k);

/// Information content precomputed for every concept of one taxonomy.
class ICTable {
 public:
  ICTable(const Taxonomy& t, const CorpusCounts& k);

  double operator[](std::size_t i) const { return ic_[static_cast<Eigen::Index>(i)]; }
  double at(std::string_view concept_id) const { return (*this)[taxonomy_->index_of(concept_id)]; }
  const Eigen::VectorXd& values() const { return ic_; }
  const Taxonomy& taxonomy() const { return *taxonomy_; }

 private:
  const Taxonomy* taxonomy_;
  Eigen::VectorXd ic_;
};

/// Lowest common subsumer: the common ancestor of maximum IC, smallest id on ties.
std::size_t lcs(std::size_t a, std::size_t b, const Taxonomy& t, const ICTable& ic);
std::string lcs(std::string_view c1, std::string_view c2, const Taxonomy& t, const ICTable& ic);

}  // namespace accord
