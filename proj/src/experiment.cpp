#include "accord/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

#include "accord/error.hpp"
#include "json_util.hpp"

namespace accord {

namespace {

struct CellResult {
  MaintenanceReport simple;
  MaintenanceReport complex;
  EvalReport simple_eval;
  EvalReport complex_eval;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

double unit_interval(const nlohmann::json& j, std::string_view key, const std::string& where) {
  const double v = detail::get_number(j, key, where);
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(where + ": '" + std::string(key) + "' must lie in [0,1]");
  return v;
}

std::size_t positive(const nlohmann::json& j, std::string_view key, const std::string& where) {
  const long long v = detail::get_integer(j, key, where);
  if (v < 1) throw ValidationError(where + ": '" + std::string(key) + "' must be at least 1");
  return static_cast<std::size_t>(v);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (types.empty()) throw ValidationError("experiment: no modification types");
  if (rates.empty()) throw ValidationError("experiment: no modification rates");
  for (double r : rates)
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("experiment: rates must lie in [0,1]");
  if (seeds == 0) throw ValidationError("experiment: seeds must be at least 1");
  if (peers == 0) throw ValidationError("experiment: peers must be at least 1");
  if (borders.empty()) throw ValidationError("experiment: no borders");
  for (double b : borders)
    if (!(b > 0.0)) throw ValidationError("experiment: borders must be positive");
  if (twin.keep_label + twin.synonym_label > 1.0) throw ValidationError("experiment: twin label shares exceed 1");
  if (rename.synonym + rename.related > 1.0) throw ValidationError("experiment: rename shares exceed 1");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  const auto doc = detail::parse_json(text);
  const std::string where = "experiment";
  detail::allow_keys(doc, {"types", "rates", "seeds", "seed_base", "borders", "peers", "peer_seed", "twin", "rename"},
                     where);
  for (auto key : {"types", "rates", "seeds", "seed_base", "borders", "peers", "peer_seed"})
    if (!doc.contains(key)) throw ValidationError(where + ": missing key '" + std::string(key) + "'");

  ExperimentConfig cfg;
  const auto& types = doc.at("types");
  if (!types.is_array()) throw ValidationError(where + ": 'types' must be an array");
  cfg.types.clear();
  for (const auto& v : types) {
    const auto k = v.is_string() ? parse_mutation_kind(v.get<std::string>()) : std::nullopt;
    if (!k) throw ValidationError(where + ": types must be add, delete or rename");
    cfg.types.push_back(*k);
  }
  auto numbers = [&](std::string_view key) {
    const auto& arr = doc.at(key);
    if (!arr.is_array()) throw ValidationError(where + ": '" + std::string(key) + "' must be an array");
    std::vector<double> out;
    for (const auto& v : arr) {
      if (!v.is_number()) throw ValidationError(where + ": '" + std::string(key) + "' must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };
  cfg.rates = numbers("rates");
  cfg.borders = numbers("borders");
  cfg.seeds = positive(doc, "seeds", where);
  cfg.peers = positive(doc, "peers", where);
  cfg.seed_base = static_cast<std::uint64_t>(detail::get_integer(doc, "seed_base", where));
  cfg.peer_seed = static_cast<std::uint64_t>(detail::get_integer(doc, "peer_seed", where));
  if (doc.contains("twin")) {
    const auto& j = doc.at("twin");
    detail::require_keys(j, {"keep_label", "synonym_label", "synonym_property"}, where + ".twin");
    cfg.twin.keep_label = unit_interval(j, "keep_label", where + ".twin");
    cfg.twin.synonym_label = unit_interval(j, "synonym_label", where + ".twin");
    cfg.twin.synonym_property = unit_interval(j, "synonym_property", where + ".twin");
  }
  if (doc.contains("rename")) {
    const auto& j = doc.at("rename");
    detail::require_keys(j, {"synonym", "related", "spread"}, where + ".rename");
    cfg.rename.synonym = unit_interval(j, "synonym", where + ".rename");
    cfg.rename.related = unit_interval(j, "related", where + ".rename");
    cfg.rename.spread = unit_interval(j, "spread", where + ".rename");
  }
  cfg.validate();
  return cfg;
}

std::string policy_label(double border, std::size_t border_count) {
  if (border_count <= 1) return "policy";
  return "policy@" + fixed(border, 2);
}

ExperimentResult run_experiment(const Ontology& common, const Taxonomy& t, const SemanticSimilarity& sim,
                                const MaintenancePolicy& policy, const ExperimentConfig& cfg, std::size_t jobs) {
  cfg.validate();
  policy.validate();
  const auto peers = make_twin_peers(common, t, cfg.peers, cfg.peer_seed, cfg.twin);
  const Mutator mutator(t, cfg.rename);

  std::vector<PeerState> initial;
  for (const auto& p : peers) initial.push_back(initial_state(p.id, p.local, common, sim, policy));

  const std::size_t n_types = cfg.types.size(), n_rates = cfg.rates.size();
  const std::size_t n_cells = peers.size() * n_types * n_rates * cfg.seeds;
  auto cell_index = [&](std::size_t p, std::size_t ti, std::size_t ri, std::size_t s) {
    return ((p * n_types + ti) * n_rates + ri) * cfg.seeds + s;
  };
  std::vector<CellResult> cells(n_cells);

  auto run_cell = [&](std::size_t idx) {
    const std::size_t s = idx % cfg.seeds;
    const std::size_t ri = (idx / cfg.seeds) % n_rates;
    const std::size_t ti = (idx / cfg.seeds / n_rates) % n_types;
    const std::size_t p = idx / cfg.seeds / n_rates / n_types;
    const double rate = cfg.rates[ri];
    SimplePeer peer = peers[p];
    if (rate > 0.0) {
      const auto size = static_cast<double>(ontology_size(peer.local));
      const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(rate * size)));
      Rng rng(derive_seed({cfg.seed_base, p, static_cast<std::uint64_t>(cfg.types[ti]),
                           static_cast<std::uint64_t>(std::llround(rate * 1e6)), s}));
      apply_to_peer(peer, mutator.plan(peer.local, cfg.types[ti], MutationTarget::Any, k, rng));
    }
    CellResult& out = cells[idx];
    MaintenancePolicy forced = policy;
    forced.force = Algorithm::Simple;
    out.simple = maintain(initial[p], peer.local, common, sim, forced).report;
    forced.force = Algorithm::Complex;
    out.complex = maintain(initial[p], peer.local, common, sim, forced).report;
    out.simple_eval = score(pairs_of(out.simple.agreement), peer.gold);
    out.complex_eval = score(pairs_of(out.complex.agreement), peer.gold);
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, n_cells));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        (void)w;
        for (std::size_t i = next++; i < n_cells && !failed; i = next++) {
          try {
            run_cell(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult result;
  for (std::size_t p = 0; p < peers.size(); ++p)
    for (std::size_t ti = 0; ti < n_types; ++ti)
      for (std::size_t ri = 0; ri < n_rates; ++ri) {
        auto emit = [&](const std::string& algorithm, auto choose) {
          for (std::size_t s = 0; s < cfg.seeds; ++s) {
            const CellResult& c = cells[cell_index(p, ti, ri, s)];
            const bool complex = choose(c);
            ExperimentRow row;
            row.peer = peers[p].id;
            row.type = cfg.types[ti];
            row.rate = cfg.rates[ri];
            row.algorithm = algorithm;
            row.seed = s;
            row.eval = complex ? c.complex_eval : c.simple_eval;
            row.comparisons = complex ? c.complex.comparisons : c.simple.comparisons;
            row.magnitude = c.complex.magnitude;
            result.rows.push_back(std::move(row));
          }
        };
        emit("simple", [](const CellResult&) { return false; });
        emit("complex", [](const CellResult&) { return true; });
        for (double b : cfg.borders) {
          MaintenancePolicy bp = policy;
          bp.border = b;
          emit(policy_label(b, cfg.borders.size()), [&](const CellResult& c) {
            // Nothing changed: both runs return the stored agreement.
            if (c.complex.magnitude <= 0.0) return false;
            return select_algorithm(c.complex.magnitude, bp) == Algorithm::Complex;
          });
        }
      }
  result.aggregates = aggregate(result.rows);
  return result;
}

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows) {
  struct Acc {
    std::map<std::size_t, std::pair<double, std::size_t>> per_seed;  // F sum, count
    double comparisons = 0.0;
    double magnitude = 0.0;
    std::size_t n = 0;
  };
  std::map<std::tuple<int, double, std::string>, Acc> groups;
  for (const auto& r : rows) {
    Acc& a = groups[{static_cast<int>(r.type), r.rate, r.algorithm}];
    auto& s = a.per_seed[r.seed];
    s.first += r.eval.f_measure;
    s.second += 1;
    a.comparisons += static_cast<double>(r.comparisons);
    a.magnitude += r.magnitude;
    a.n += 1;
  }
  std::vector<AggregateRow> out;
  for (const auto& [key, a] : groups) {
    AggregateRow row;
    row.type = static_cast<MutationKind>(std::get<0>(key));
    row.rate = std::get<1>(key);
    row.algorithm = std::get<2>(key);
    std::vector<double> means;
    for (const auto& [seed, s] : a.per_seed) means.push_back(s.first / static_cast<double>(s.second));
    double sum = 0.0;
    for (double m : means) sum += m;
    row.f_mean = sum / static_cast<double>(means.size());
    if (means.size() > 1) {
      double ss = 0.0;
      for (double m : means) ss += (m - row.f_mean) * (m - row.f_mean);
      row.f_std = std::sqrt(ss / static_cast<double>(means.size() - 1));
    }
    row.comparisons_mean = a.comparisons / static_cast<double>(a.n);
    row.magnitude_mean = a.magnitude / static_cast<double>(a.n);
    out.push_back(std::move(row));
  }
  return out;
}

std::string rows_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "peer,type,rate,algorithm,seed,precision,recall,f_measure,comparisons\n";
  for (const auto& r : rows) {
    out += r.peer + ',' + std::string(to_string(r.type)) + ',' + fixed(r.rate, 2) + ',' + r.algorithm + ',' +
           std::to_string(r.seed) + ',' + fixed(r.eval.precision, 6) + ',' + fixed(r.eval.recall, 6) + ',' +
           fixed(r.eval.f_measure, 6) + ',' + std::to_string(r.comparisons) + '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::string out = "type,rate,algorithm,f_mean,f_std,comparisons_mean\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.type)) + ',' + fixed(r.rate, 2) + ',' + r.algorithm + ',' + fixed(r.f_mean, 6) +
           ',' + fixed(r.f_std, 6) + ',' + fixed(r.comparisons_mean, 3) + '\n';
  }
  return out;
}

}  // namespace accord
