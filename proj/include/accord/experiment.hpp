#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "accord/maintenance.hpp"
#include "accord/simulation.hpp"

namespace accord {

struct ExperimentConfig {
  std::vector<MutationKind> types{MutationKind::Add, MutationKind::Delete, MutationKind::Rename};
  /// Fraction of classes plus properties modified per run; k = max(1, round(rate * size)), 0 means none.
  std::vector<double> rates{0.05, 0.10, 0.20, 0.30, 0.40};
  std::size_t seeds = 30;
  std::uint64_t seed_base = 1;
  /// Policy rows are produced for each border; one border gives the plain "policy" label.
  std::vector<double> borders{kDefaultBorder};
  std::size_t peers = 10;
  std::uint64_t peer_seed = 7;
  TwinConfig twin;
  RenameStyle rename;

  void validate() const;
};

/// `.experiment.json` reader (strict; twin and rename blocks optional).
ExperimentConfig parse_experiment_config(std::string_view text);

struct ExperimentRow {
  std::string peer;
  MutationKind type = MutationKind::Add;
  double rate = 0.0;
  std::string algorithm;  // simple | complex | policy | policy@<B>
  std::size_t seed = 0;
  EvalReport eval;
  std::size_t comparisons = 0;
  double magnitude = 0.0;  // not written to CSV
};

struct AggregateRow {
  MutationKind type = MutationKind::Add;
  double rate = 0.0;
  std::string algorithm;
  double f_mean = 0.0;
  double f_std = 0.0;  // sample deviation over seeds of the per-seed mean
  double comparisons_mean = 0.0;
  double magnitude_mean = 0.0;  // not written to CSV
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // (peer, type, rate, algorithm, seed) order
  std::vector<AggregateRow> aggregates;  // (type, rate, algorithm) order
};

std::string policy_label(double border, std::size_t border_count);

/// Runs every (peer, type, rate, seed) cell on `jobs` threads. Each cell mutates one twin
/// peer's schema and maintains it with both algorithms forced; policy rows reuse the run the
/// border would select.
ExperimentResult run_experiment(const Ontology& common, const Taxonomy& t, const SemanticSimilarity& sim,
                                const MaintenancePolicy& policy, const ExperimentConfig& cfg, std::size_t jobs = 1);

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows);

std::string rows_csv(const std::vector<ExperimentRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace accord
