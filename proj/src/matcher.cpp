#include "accord/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "accord/error.hpp"
#include "accord/io.hpp"
#include "json_util.hpp"

namespace accord {

void MatchConfig::validate() const {
  for (double v : {alpha, beta, gamma, tau, tau_prop})
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("match config values must lie in [0,1]");
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-9) throw ValidationError("alpha + beta + gamma must equal 1");
}

std::string_view to_string(Algorithm a) { return a == Algorithm::Simple ? "simple" : "complex"; }

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "simple") return Algorithm::Simple;
  if (s == "complex") return Algorithm::Complex;
  return std::nullopt;
}

const Correspondence* Agreement::find_local(std::string_view local_id) const {
  for (const auto& c : correspondences)
    if (c.local == local_id) return &c;
  return nullptr;
}

std::string serialize_agreement(const Agreement& a) {
  auto sorted = a.correspondences;
  std::sort(sorted.begin(), sorted.end(),
            [](const Correspondence& x, const Correspondence& y) { return x.local < y.local; });
  nlohmann::ordered_json doc;
  doc["peer"] = a.peer;
  doc["local_version"] = a.local_version;
  doc["common_version"] = a.common_version;
  doc["correspondences"] = nlohmann::ordered_json::array();
  for (const auto& c : sorted) {
    nlohmann::ordered_json jc;
    jc["local"] = c.local;
    jc["common"] = c.common;
    jc["score"] = round_to(c.score, 6);
    doc["correspondences"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

Agreement parse_agreement(std::string_view text) {
  const auto doc = detail::parse_json(text);
  detail::require_keys(doc, {"peer", "local_version", "common_version", "correspondences"}, "agreement");
  Agreement a;
  a.peer = detail::get_string(doc, "peer", "agreement");
  a.local_version = detail::get_integer(doc, "local_version", "agreement");
  a.common_version = detail::get_integer(doc, "common_version", "agreement");
  if (a.local_version < 0 || a.common_version < 0) throw ValidationError("agreement: negative version");
  const auto& list = doc.at("correspondences");
  if (!list.is_array()) throw ValidationError("agreement: 'correspondences' must be an array");
  std::set<std::string> locals, commons;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "correspondences[" + std::to_string(i) + "]";
    detail::require_keys(list[i], {"local", "common", "score"}, where);
    Correspondence c{detail::get_string(list[i], "local", where), detail::get_string(list[i], "common", where),
                     detail::get_number(list[i], "score", where)};
    if (!(c.score >= 0.0 && c.score <= 1.0)) throw ValidationError(where + ": score outside [0,1]");
    if (!locals.insert(c.local).second || !commons.insert(c.common).second)
      throw ValidationError(where + ": agreement is not one-to-one");
    a.correspondences.push_back(std::move(c));
  }
  std::sort(a.correspondences.begin(), a.correspondences.end(),
            [](const Correspondence& x, const Correspondence& y) { return x.local < y.local; });
  return a;
}

IndexedOntology::IndexedOntology(const Ontology& o) : onto_(&o) {
  const std::size_t n = o.classes.size();
  labels_.reserve(n);
  property_labels_.resize(n);
  parents_.resize(n);
  children_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels_.emplace_back(o.classes[i].label);
    for (const auto& p : o.classes[i].properties) property_labels_[i].emplace_back(p.label);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!o.classes[i].parent) continue;
    const auto p = index_of(*o.classes[i].parent);
    parents_[i] = p;
    if (p) children_[*p].push_back(i);
  }
}

std::optional<std::size_t> IndexedOntology::index_of(std::string_view class_id) const {
  for (std::size_t i = 0; i < onto_->classes.size(); ++i)
    if (onto_->classes[i].id == class_id) return i;
  return std::nullopt;
}

std::size_t greedy_pair_count(const Eigen::MatrixXd& scores, double threshold) {
  struct Cell {
    double score;
    Eigen::Index r, c;
  };
  std::vector<Cell> cells;
  for (Eigen::Index r = 0; r < scores.rows(); ++r)
    for (Eigen::Index c = 0; c < scores.cols(); ++c)
      if (scores(r, c) >= threshold) cells.push_back({scores(r, c), r, c});
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.r, a.c) < std::tie(b.r, b.c);
  });
  std::vector<bool> used_r(static_cast<std::size_t>(scores.rows())), used_c(static_cast<std::size_t>(scores.cols()));
  std::size_t pairs = 0;
  for (const auto& cell : cells) {
    const auto r = static_cast<std::size_t>(cell.r);
    const auto c = static_cast<std::size_t>(cell.c);
    if (used_r[r] || used_c[c]) continue;
    used_r[r] = used_c[c] = true;
    ++pairs;
  }
  return pairs;
}

double dice_similarity(const Eigen::MatrixXd& scores, double threshold) {
  const auto total = scores.rows() + scores.cols();
  if (scores.rows() == 0 && scores.cols() == 0) return 1.0;
  if (scores.rows() == 0 || scores.cols() == 0) return 0.0;
  return 2.0 * static_cast<double>(greedy_pair_count(scores, threshold)) / static_cast<double>(total);
}

namespace {

double label_dice(const std::vector<TokenizedLabel>& a, const std::vector<TokenizedLabel>& b,
                  const SemanticSimilarity& sim, double threshold) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 1.0 : 0.0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = label_similarity(sim, a[i], b[j]);
  return dice_similarity(m, threshold);
}

/// Pair scoring between two indexed ontologies. Class-label similarities are memoized
/// because parent and children terms reuse them.
class PairScorer {
 public:
  PairScorer(const IndexedOntology& local, const IndexedOntology& common, const SemanticSimilarity& sim,
             const MatchConfig& cfg)
      : local_(local),
        common_(common),
        sim_(sim),
        cfg_(cfg),
        labels_(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(local.size()),
                                          static_cast<Eigen::Index>(common.size()),
                                          std::numeric_limits<double>::quiet_NaN())) {}

  double label(std::size_t i, std::size_t j) {
    double& slot = labels_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (std::isnan(slot)) slot = label_similarity(sim_, local_.label(i), common_.label(j));
    return slot;
  }

  double internal(std::size_t i, std::size_t j) const {
    return label_dice(local_.property_labels(i), common_.property_labels(j), sim_, cfg_.tau_prop);
  }

  double external(std::size_t i, std::size_t j) {
    const auto pi = local_.parent(i);
    const auto pj = common_.parent(j);
    double parent_term = 0.0;
    if (!pi && !pj) {
      parent_term = 1.0;
    } else if (pi && pj) {
      parent_term = label(*pi, *pj);
    }
    const auto& ci = local_.children(i);
    const auto& cj = common_.children(j);
    double children_term = 0.0;
    if (ci.empty() && cj.empty()) {
      children_term = 1.0;
    } else if (!ci.empty() && !cj.empty()) {
      Eigen::MatrixXd m(static_cast<Eigen::Index>(ci.size()), static_cast<Eigen::Index>(cj.size()));
      for (std::size_t a = 0; a < ci.size(); ++a)
        for (std::size_t b = 0; b < cj.size(); ++b)
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = label(ci[a], cj[b]);
      children_term = dice_similarity(m, cfg_.tau_prop);
    }
    return 0.5 * parent_term + 0.5 * children_term;
  }

  double score(std::size_t i, std::size_t j, Algorithm algorithm) {
    const double l = label(i, j);
    if (algorithm == Algorithm::Simple) return l;
    double s = cfg_.alpha * l;
    if (cfg_.beta != 0.0) s += cfg_.beta * internal(i, j);
    if (cfg_.gamma != 0.0) s += cfg_.gamma * external(i, j);
    return std::clamp(s, 0.0, 1.0);
  }

 private:
  const IndexedOntology& local_;
  const IndexedOntology& common_;
  const SemanticSimilarity& sim_;
  const MatchConfig& cfg_;
  Eigen::MatrixXd labels_;
};

}  // namespace

double internal_similarity(const ClassDef& local, const ClassDef& common, const SemanticSimilarity& sim,
                           const MatchConfig& cfg) {
  std::vector<TokenizedLabel> a, b;
  for (const auto& p : local.properties) a.emplace_back(p.label);
  for (const auto& p : common.properties) b.emplace_back(p.label);
  return label_dice(a, b, sim, cfg.tau_prop);
}

double external_similarity(std::string_view local_id, std::string_view common_id, const Ontology& local,
                           const Ontology& common, const SemanticSimilarity& sim, const MatchConfig& cfg) {
  const IndexedOntology li(local), ci(common);
  const auto i = li.index_of(local_id);
  const auto j = ci.index_of(common_id);
  if (!i) throw ValidationError("unknown local class '" + std::string(local_id) + "'");
  if (!j) throw ValidationError("unknown common class '" + std::string(common_id) + "'");
  PairScorer scorer(li, ci, sim, cfg);
  return scorer.external(*i, *j);
}

Eigen::MatrixXd score_matrix(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                             const MatchConfig& cfg, Algorithm algorithm) {
  const IndexedOntology li(local), ci(common);
  PairScorer scorer(li, ci, sim, cfg);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(li.size()), static_cast<Eigen::Index>(ci.size()));
  for (std::size_t i = 0; i < li.size(); ++i)
    for (std::size_t j = 0; j < ci.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scorer.score(i, j, algorithm);
  return m;
}

MatchOutcome match_classes(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                           const MatchConfig& cfg, const MatchRequest& req) {
  const IndexedOntology li(local), ci(common);
  PairScorer scorer(li, ci, sim, cfg);

  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < li.size(); ++i)
    if (!req.local_subset || req.local_subset->contains(li.cls(i).id)) rows.push_back(i);
  for (std::size_t j = 0; j < ci.size(); ++j) cols.push_back(j);

  struct Candidate {
    double score;
    std::size_t i, j;
  };
  MatchOutcome out;
  std::vector<Candidate> cands;
  for (auto i : rows)
    for (auto j : cols) {
      const double s = scorer.score(i, j, req.algorithm);
      ++out.comparisons;
      if (s >= cfg.tau && !req.blocked_common.contains(ci.cls(j).id)) cands.push_back({s, i, j});
    }
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(li.cls(a.i).id, ci.cls(a.j).id) < std::tie(li.cls(b.i).id, ci.cls(b.j).id);
  });
  std::vector<bool> used_l(li.size()), used_c(ci.size());
  for (const auto& c : cands) {
    if (used_l[c.i] || used_c[c.j]) continue;
    used_l[c.i] = used_c[c.j] = true;
    out.correspondences.push_back({li.cls(c.i).id, ci.cls(c.j).id, c.score});
  }
  std::sort(out.correspondences.begin(), out.correspondences.end(),
            [](const Correspondence& x, const Correspondence& y) { return x.local < y.local; });
  return out;
}

namespace {

Agreement full_match(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                     const MatchConfig& cfg, Algorithm algorithm) {
  MatchRequest req;
  req.algorithm = algorithm;
  Agreement a;
  a.local_version = local.version;
  a.common_version = common.version;
  a.correspondences = match_classes(local, common, sim, cfg, req).correspondences;
  return a;
}

}  // namespace

Agreement simple_match(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                       const MatchConfig& cfg) {
  return full_match(local, common, sim, cfg, Algorithm::Simple);
}

Agreement complex_match(const Ontology& local, const Ontology& common, const SemanticSimilarity& sim,
                        const MatchConfig& cfg) {
  return full_match(local, common, sim, cfg, Algorithm::Complex);
}

}  // namespace accord
