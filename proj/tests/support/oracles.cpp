#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace oracle {

namespace {

const accord::ConceptNode& find(const std::vector<accord::ConceptNode>& nodes, const std::string& id) {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw std::out_of_range("no concept " + id);
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

std::set<std::string> ancestors(const std::vector<accord::ConceptNode>& nodes, const std::string& id) {
  std::set<std::string> seen{id};
  std::deque<std::string> todo{id};
  while (!todo.empty()) {
    const std::string cur = todo.front();
    todo.pop_front();
    for (const auto& p : find(nodes, cur).parents)
      if (seen.insert(p).second) todo.push_back(p);
  }
  return seen;
}

double probability(const std::vector<accord::ConceptNode>& nodes, const Counts& counts, const std::string& id) {
  std::set<std::string> all_words, below;
  for (const auto& n : nodes) {
    for (const auto& w : n.words) all_words.insert(lower(w));
    if (ancestors(nodes, n.id).contains(id))
      for (const auto& w : n.words) below.insert(lower(w));
  }
  auto count = [&](const std::string& w) {
    const auto it = counts.find(w);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second);
  };
  double total = 0.0, mass = 0.0;
  for (const auto& w : all_words) total += count(w);
  for (const auto& w : below) mass += count(w);
  return mass > 0.0 ? mass / total : 1.0 / (total + 1.0);
}

double information_content(const std::vector<accord::ConceptNode>& nodes, const Counts& counts,
                           const std::string& id) {
  return -std::log(probability(nodes, counts, id));
}

ICMap ic_table(const std::vector<accord::ConceptNode>& nodes, const Counts& counts) {
  ICMap out;
  for (const auto& n : nodes) out[n.id] = information_content(nodes, counts, n.id);
  return out;
}

std::string lcs(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& a,
                const std::string& b) {
  const auto aa = ancestors(nodes, a);
  const auto bb = ancestors(nodes, b);
  std::string best;
  double best_ic = -1.0;
  for (const auto& c : aa) {  // std::set iterates in id order
    if (!bb.contains(c)) continue;
    const double v = ic.at(c);
    if (v > best_ic) {
      best_ic = v;
      best = c;
    }
  }
  return best;
}

double jcn_distance(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& a,
                    const std::string& b) {
  const double d = ic.at(a) + ic.at(b) - 2.0 * ic.at(lcs(nodes, ic, a, b));
  return std::max(0.0, d);
}

std::string tree_lca(const std::vector<accord::ConceptNode>& nodes, const std::string& a, const std::string& b) {
  auto depth = [&](std::string id) {
    int d = 0;
    while (!find(nodes, id).parents.empty()) {
      id = find(nodes, id).parents.front();
      ++d;
    }
    return d;
  };
  std::string x = a, y = b;
  int dx = depth(x), dy = depth(y);
  while (dx > dy) {
    x = find(nodes, x).parents.front();
    --dx;
  }
  while (dy > dx) {
    y = find(nodes, y).parents.front();
    --dy;
  }
  while (x != y) {
    x = find(nodes, x).parents.front();
    y = find(nodes, y).parents.front();
  }
  return x;
}

double token_similarity(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& w1,
                        const std::string& w2) {
  if (w1 == w2) return 1.0;
  double best = 0.0;
  for (const auto& n1 : nodes) {
    if (std::find(n1.words.begin(), n1.words.end(), w1) == n1.words.end()) continue;
    for (const auto& n2 : nodes) {
      if (std::find(n2.words.begin(), n2.words.end(), w2) == n2.words.end()) continue;
      best = std::max(best, 1.0 / (1.0 + jcn_distance(nodes, ic, n1.id, n2.id)));
    }
  }
  return best;
}

double best_alignment_total(const Matrix& m) {
  if (m.empty() || m.front().empty()) return 0.0;
  const std::size_t rows = m.size(), cols = m.front().size();
  double best = 0.0;
  // Each row takes a distinct column or stays unaligned; scores are non-negative.
  std::vector<bool> used(cols);
  std::function<void(std::size_t, double)> go = [&](std::size_t r, double acc) {
    if (r == rows) {
      best = std::max(best, acc);
      return;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      go(r + 1, acc + m[r][c]);
      used[c] = false;
    }
    go(r + 1, acc);
  };
  go(0, 0.0);
  return best;
}

std::size_t max_pair_count(const Matrix& m, double threshold) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t best = 0;
  std::vector<bool> used(cols);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t r, std::size_t acc) {
    if (r == rows) {
      best = std::max(best, acc);
      return;
    }
    go(r + 1, acc);
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c] || m[r][c] < threshold) continue;
      used[c] = true;
      go(r + 1, acc + 1);
      used[c] = false;
    }
  };
  go(0, 0);
  return best;
}

}  // namespace oracle
