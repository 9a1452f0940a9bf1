#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>

#include "accord/matcher.hpp"

namespace accord {

/// (local id, common id); scores play no part in evaluation.
using PairSet = std::set<std::pair<std::string, std::string>>;

PairSet pairs_of(const Agreement& a);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t hits = 0;
};

/// Precision over `retrieved`, recall over `gold`. Empty retrieved gives P = 0; empty gold
/// gives R = 1; F is 0 when P + R = 0.
EvalReport score(const PairSet& retrieved, const PairSet& gold);

/// Harmonic mean with the P + R = 0 convention.
double f_measure(double precision, double recall);

}  // namespace accord
