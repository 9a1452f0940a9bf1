#pragma once

// Brute-force reference implementations. They work on plain ids and strings and share no
// code with the library beyond the data types.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "accord/taxonomy.hpp"

namespace oracle {

using Counts = std::map<std::string, std::uint64_t>;
using Matrix = std::vector<std::vector<double>>;

std::set<std::string> ancestors(const std::vector<accord::ConceptNode>& nodes, const std::string& id);
double probability(const std::vector<accord::ConceptNode>& nodes, const Counts& counts, const std::string& id);
double information_content(const std::vector<accord::ConceptNode>& nodes, const Counts& counts,
                           const std::string& id);
using ICMap = std::map<std::string, double>;
ICMap ic_table(const std::vector<accord::ConceptNode>& nodes, const Counts& counts);

std::string lcs(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& a,
                const std::string& b);
double jcn_distance(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& a,
                    const std::string& b);

/// Lowest common ancestor in a tree by walking up from the deeper node.
std::string tree_lca(const std::vector<accord::ConceptNode>& nodes, const std::string& a, const std::string& b);

/// Word-level similarity recomputed from scratch (exact match, else best sense pair, else 0).
double token_similarity(const std::vector<accord::ConceptNode>& nodes, const ICMap& ic, const std::string& w1,
                        const std::string& w2);

/// Best total over all one-to-one alignments between the rows and columns.
double best_alignment_total(const Matrix& m);

/// Largest one-to-one pairing using only cells at or above `threshold`.
std::size_t max_pair_count(const Matrix& m, double threshold);

}  // namespace oracle
