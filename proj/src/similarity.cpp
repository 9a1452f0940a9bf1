#include "accord/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace accord {

double jcn_distance(std::size_t a, std::size_t b, const Taxonomy& t, const ICTable& ic) {
  const double d = ic[a] + ic[b] - 2.0 * ic[lcs(a, b, t, ic)];
  return d < 0.0 ? 0.0 : d;
}

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) || c >= 0x80; }
bool is_upper(unsigned char c) { return std::isupper(c) != 0; }
bool is_lower(unsigned char c) { return std::islower(c) != 0; }
bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }

}  // namespace

std::vector<std::string> tokenize_label(std::string_view label) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < label.size(); ++i) {
    const auto c = static_cast<unsigned char>(label[i]);
    if (!is_alnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      const auto prev = static_cast<unsigned char>(label[i - 1]);
      const bool next_lower = i + 1 < label.size() && is_lower(static_cast<unsigned char>(label[i + 1]));
      const bool hump = is_upper(c) && (is_lower(prev) || is_digit(prev) || (is_upper(prev) && next_lower));
      const bool digit_edge = is_digit(c) != is_digit(prev);
      if (hump || digit_edge) flush();
    }
    cur.push_back(static_cast<char>(std::tolower(c)));
  }
  flush();
  return tokens;
}

SemanticSimilarity::SemanticSimilarity(const Taxonomy& t, const CorpusCounts& k)
    : taxonomy_(&t), ic_(t, k) {
  const auto n = static_cast<Eigen::Index>(t.size());
  distance_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    distance_(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double d = accord::jcn_distance(static_cast<std::size_t>(a), static_cast<std::size_t>(b), t, ic_);
      distance_(a, b) = d;
      distance_(b, a) = d;
    }
  }
}

double SemanticSimilarity::jcn_distance(std::string_view c1, std::string_view c2) const {
  return distance_(static_cast<Eigen::Index>(taxonomy_->index_of(c1)),
                   static_cast<Eigen::Index>(taxonomy_->index_of(c2)));
}

double SemanticSimilarity::jcn_similarity(std::string_view c1, std::string_view c2) const {
  return similarity_from_distance(jcn_distance(c1, c2));
}

double SemanticSimilarity::token_similarity(std::string_view w1, std::string_view w2) const {
  if (w1 == w2) return 1.0;
  const auto s1 = taxonomy_->senses(w1);
  const auto s2 = taxonomy_->senses(w2);
  double best = 0.0;
  for (auto a : s1)
    for (auto b : s2) best = std::max(best, jcn_similarity(a, b));
  return best;
}

double SemanticSimilarity::label_similarity(std::span<const std::string> tokens1,
                                            std::span<const std::string> tokens2) const {
  const std::size_t longest = std::max(tokens1.size(), tokens2.size());
  if (longest == 0) return 0.0;
  if (tokens1.empty() || tokens2.empty()) return 0.0;

  struct Pair {
    double score;
    std::string_view lo, hi;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(tokens1.size() * tokens2.size());
  for (std::size_t i = 0; i < tokens1.size(); ++i)
    for (std::size_t j = 0; j < tokens2.size(); ++j) {
      const std::string_view a = tokens1[i], b = tokens2[j];
      pairs.push_back({token_similarity(a, b), std::min(a, b), std::max(a, b), i, j});
    }
  // The string-pair key makes the order independent of argument order, which keeps the
  // greedy result symmetric; equal strings are interchangeable, so i/j only settle ties
  // between identical candidates.
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.score != y.score) return x.score > y.score;
    return std::tie(x.lo, x.hi, x.i, x.j) < std::tie(y.lo, y.hi, y.i, y.j);
  });
  std::vector<bool> used1(tokens1.size()), used2(tokens2.size());
  double total = 0.0;
  std::size_t aligned = 0;
  for (const auto& p : pairs) {
    if (used1[p.i] || used2[p.j]) continue;
    used1[p.i] = used2[p.j] = true;
    total += p.score;
    if (++aligned == std::min(tokens1.size(), tokens2.size())) break;
  }
  return total / static_cast<double>(longest);
}

double SemanticSimilarity::label_similarity(std::string_view l1, std::string_view l2) const {
  const auto t1 = tokenize_label(l1);
  const auto t2 = tokenize_label(l2);
  if (t1.empty() && t2.empty()) return l1 == l2 ? 1.0 : 0.0;
  return label_similarity(t1, t2);
}

double label_similarity(const SemanticSimilarity& sim, const TokenizedLabel& a, const TokenizedLabel& b) {
  if (a.tokens.empty() && b.tokens.empty()) return a.text == b.text ? 1.0 : 0.0;
  return sim.label_similarity(a.tokens, b.tokens);
}

}  // namespace accord
