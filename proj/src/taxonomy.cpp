#include "accord/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "accord/error.hpp"
#include "accord/io.hpp"
#include "json_util.hpp"

namespace accord {

namespace {

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::size_t> merge_sorted(const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::size_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Taxonomy::Taxonomy(std::vector<ConceptNode> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const ConceptNode& a, const ConceptNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& n = nodes_[i];
    if (n.id.empty()) throw ValidationError("taxonomy: concept with empty id");
    if (!index_.emplace(n.id, i).second) throw ValidationError("taxonomy: duplicate concept '" + n.id + "'");
    for (auto& w : n.words)
      std::transform(w.begin(), w.end(), w.begin(), [](unsigned char ch) { return std::tolower(ch); });
    sort_unique(n.words);
    sort_unique(n.parents);
  }

  std::vector<std::size_t> roots;
  std::vector<std::vector<std::size_t>> parent_idx(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto& p : nodes_[i].parents) {
      const auto it = index_.find(p);
      if (it == index_.end())
        throw ValidationError("taxonomy: concept '" + nodes_[i].id + "' has dangling parent '" + p + "'");
      if (it->second == i) throw ValidationError("taxonomy: cycle at '" + nodes_[i].id + "'");
      parent_idx[i].push_back(it->second);
    }
    if (parent_idx[i].empty()) roots.push_back(i);
  }
  if (roots.size() != 1)
    throw ValidationError("taxonomy: expected exactly one root, found " + std::to_string(roots.size()));
  root_ = roots.front();

  // Ancestor closure by iterative DFS; state 1 = on stack, 2 = done.
  ancestors_.assign(nodes_.size(), {});
  std::vector<int> state(nodes_.size(), 0);
  for (std::size_t start = 0; start < nodes_.size(); ++start) {
    if (state[start] == 2) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < parent_idx[v].size()) {
        const std::size_t p = parent_idx[v][next++];
        if (state[p] == 1) throw ValidationError("taxonomy: cycle through '" + nodes_[p].id + "'");
        if (state[p] == 0) {
          state[p] = 1;
          stack.emplace_back(p, 0);
        }
        continue;
      }
      std::vector<std::vector<std::size_t>> parts{{v}};
      for (auto p : parent_idx[v]) parts.push_back(ancestors_[p]);
      ancestors_[v] = merge_sorted(parts);
      state[v] = 2;
      stack.pop_back();
    }
  }

  descendants_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (auto a : ancestors_[i]) descendants_[a].push_back(i);

  std::set<std::string> vocab;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (const auto& w : nodes_[i].words) {
      senses_[w].push_back(i);
      vocab.insert(w);
    }
  vocabulary_.assign(vocab.begin(), vocab.end());
}

std::size_t Taxonomy::index_of(std::string_view concept_id) const {
  const auto it = index_.find(std::string(concept_id));
  if (it == index_.end()) throw ValidationError("unknown concept '" + std::string(concept_id) + "'");
  return it->second;
}

std::span<const std::size_t> Taxonomy::senses(std::string_view word) const {
  const auto it = senses_.find(std::string(word));
  if (it == senses_.end()) return {};
  return it->second;
}

std::vector<std::string> Taxonomy::subsumed_words(std::size_t i) const {
  std::vector<std::string> out;
  for (auto d : descendants_[i]) out.insert(out.end(), nodes_[d].words.begin(), nodes_[d].words.end());
  sort_unique(out);
  return out;
}

std::uint64_t CorpusCounts::count(std::string_view word) const {
  const auto it = counts.find(std::string(word));
  return it == counts.end() ? 0 : it->second;
}

CorpusCounts make_corpus_counts(std::map<std::string, std::uint64_t> counts, const Taxonomy& t) {
  CorpusCounts k;
  k.counts = std::move(counts);
  for (const auto& [word, n] : k.counts)
    if (!t.senses(word).empty()) k.total += n;
  return k;
}

Taxonomy load_taxonomy(std::string_view text) {
  const auto doc = detail::parse_json(text);
  detail::require_keys(doc, {"concepts"}, "taxonomy");
  const auto& arr = doc.at("concepts");
  if (!arr.is_array()) throw ValidationError("taxonomy: 'concepts' must be an array");
  std::vector<ConceptNode> nodes;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "concepts[" + std::to_string(i) + "]";
    detail::require_keys(arr[i], {"id", "words", "parents"}, where);
    ConceptNode n;
    n.id = detail::get_string(arr[i], "id", where);
    for (const char* key : {"words", "parents"}) {
      const auto& list = arr[i].at(key);
      if (!list.is_array()) throw ValidationError(where + ": '" + key + "' must be an array");
      for (const auto& s : list) {
        if (!s.is_string()) throw ValidationError(where + ": '" + key + "' entries must be strings");
        (std::string_view(key) == "words" ? n.words : n.parents).push_back(s.get<std::string>());
      }
    }
    nodes.push_back(std::move(n));
  }
  return Taxonomy(std::move(nodes));
}

CorpusCounts load_counts(std::string_view text, const Taxonomy& t) {
  const auto doc = detail::parse_json(text);
  detail::require_keys(doc, {"counts"}, "counts");
  const auto& obj = doc.at("counts");
  if (!obj.is_object()) throw ValidationError("counts: 'counts' must be an object");
  std::map<std::string, std::uint64_t> counts;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it->is_number_integer() || it->get<long long>() < 0)
      throw ValidationError("counts: '" + it.key() + "' must be a non-negative integer");
    std::string word = it.key();
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char ch) { return std::tolower(ch); });
    counts[word] += it->get<std::uint64_t>();
  }
  return make_corpus_counts(std::move(counts), t);
}

Taxonomy load_taxonomy_file(const std::string& path) { return load_taxonomy(read_text_file(path)); }

CorpusCounts load_counts_file(const std::string& path, const Taxonomy& t) {
  return load_counts(read_text_file(path), t);
}

namespace {

double probability_at(std::size_t i, const Taxonomy& t, const CorpusCounts& k) {
  if (k.total == 0) throw ValidationError("corpus has no counted taxonomy words (N = 0)");
  std::uint64_t mass = 0;
  for (const auto& w : t.subsumed_words(i)) mass += k.count(w);
  if (mass == 0) return 1.0 / (static_cast<double>(k.total) + 1.0);
  return static_cast<double>(mass) / static_cast<double>(k.total);
}

}  // namespace

double probability(std::string_view concept_id, const Taxonomy& t, const CorpusCounts& k) {
  return probability_at(t.index_of(concept_id), t, k);
}

double information_content(std::string_view concept_id, const Taxonomy& t, const CorpusCounts& k) {
  return -std::log(probability(concept_id, t, k));
}

ICTable::ICTable(const Taxonomy& t, const CorpusCounts& k)
    : taxonomy_(&t), ic_(static_cast<Eigen::Index>(t.size())) {
  for (std::size_t i = 0; i < t.size(); ++i) ic_[static_cast<Eigen::Index>(i)] = -std::log(probability_at(i, t, k));
}

std::size_t lcs(std::size_t a, std::size_t b, const Taxonomy& t, const ICTable& ic) {
  const auto aa = t.ancestors(a);
  const auto bb = t.ancestors(b);
  std::size_t best = t.root();
  double best_ic = -1.0;
  // Both lists are sorted by index, which is id order, so the first maximum wins ties.
  auto i = aa.begin();
  auto j = bb.begin();
  while (i != aa.end() && j != bb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      if (ic[*i] > best_ic) {
        best_ic = ic[*i];
        best = *i;
      }
      ++i;
      ++j;
    }
  }
  return best;
}

std::string lcs(std::string_view c1, std::string_view c2, const Taxonomy& t, const ICTable& ic) {
  return t.id(lcs(t.index_of(c1), t.index_of(c2), t, ic));
}

}  // namespace accord
