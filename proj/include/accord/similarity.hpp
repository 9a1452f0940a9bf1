#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "accord/taxonomy.hpp"

namespace accord {

/// IC(a) + IC(b) - 2 IC(lcs(a, b)), clamped at 0 against rounding.
double jcn_distance(std::size_t a, std::size_t b, const Taxonomy& t, const ICTable& ic);

/// Bounded form of the Jiang-Conrath similarity: 1 / (1 + distance).
inline double similarity_from_distance(double distance) { return 1.0 / (1.0 + distance); }

/// Lowercase tokens split at camelCase humps, letter/digit transitions and any
/// non-alphanumeric byte. "HR-XML_Position" gives {"hr", "xml", "position"}.
std::vector<std::string> tokenize_label(std::string_view label);

/// Jiang-Conrath scoring over one taxonomy and corpus.
///
/// Owns the IC table and a dense concept-by-concept distance matrix, so every query after
/// construction is a lookup. The taxonomy must outlive this object.
class SemanticSimilarity {
 public:
  SemanticSimilarity(const Taxonomy& t, const CorpusCounts& k);

  const Taxonomy& taxonomy() const { return *taxonomy_; }
  const ICTable& ic() const { return ic_; }
  const Eigen::MatrixXd& distances() const { return distance_; }

  double jcn_distance(std::string_view c1, std::string_view c2) const;
  double jcn_similarity(std::string_view c1, std::string_view c2) const;
  double jcn_similarity(std::size_t a, std::size_t b) const {
    return similarity_from_distance(distance_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
  }

  /// 1 for identical strings, otherwise the best JCN similarity over the senses of the two
  /// words, otherwise 0 (either word out of vocabulary).
  double token_similarity(std::string_view w1, std::string_view w2) const;

  /// Greedy one-to-one token alignment by descending score; the aligned total is divided
  /// by the longer token list.
  double label_similarity(std::span<const std::string> tokens1, std::span<const std::string> tokens2) const;
  double label_similarity(std::string_view l1, std::string_view l2) const;

 private:
  const Taxonomy* taxonomy_;
  ICTable ic_;
  Eigen::MatrixXd distance_;
};

/// A label together with its tokens, for callers that score the same label many times.
struct TokenizedLabel {
  std::string text;
  std::vector<std::string> tokens;

  explicit TokenizedLabel(std::string label) : text(std::move(label)), tokens(tokenize_label(text)) {}
};

double label_similarity(const SemanticSimilarity& sim, const TokenizedLabel& a, const TokenizedLabel& b);

}  // namespace accord
