#include "accord/evaluation.hpp"

namespace accord {

PairSet pairs_of(const Agreement& a) {
  PairSet out;
  for (const auto& c : a.correspondences) out.emplace(c.local, c.common);
  return out;
}

double f_measure(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

EvalReport score(const PairSet& retrieved, const PairSet& gold) {
  EvalReport r;
  r.retrieved = retrieved.size();
  r.relevant = gold.size();
  for (const auto& p : retrieved)
    if (gold.contains(p)) ++r.hits;
  r.precision = r.retrieved == 0 ? 0.0 : static_cast<double>(r.hits) / static_cast<double>(r.retrieved);
  r.recall = r.relevant == 0 ? 1.0 : static_cast<double>(r.hits) / static_cast<double>(r.relevant);
  r.f_measure = f_measure(r.precision, r.recall);
  return r;
}

}  // namespace accord
