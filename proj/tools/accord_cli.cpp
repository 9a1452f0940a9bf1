// accord: diff, register, maintain, simulate, evaluate.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "accord/config.hpp"
#include "accord/diff.hpp"
#include "accord/error.hpp"
#include "accord/experiment.hpp"
#include "accord/io.hpp"
#include "accord/maintenance.hpp"
#include "accord/matcher.hpp"
#include "accord/ontology.hpp"
#include "accord/simulation.hpp"
#include "accord/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace accord;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

ToolkitConfig resolve_config(const std::string& flag) {
  if (!flag.empty()) return load_config_file(flag);
  if (const char* env = std::getenv("ACCORD_CONFIG"); env && *env) return load_config_file(env);
  return default_config();
}

struct Toolkit {
  ToolkitConfig cfg;
  Taxonomy taxonomy;
  CorpusCounts counts;
  Ontology common;
  std::unique_ptr<SemanticSimilarity> sim;

  explicit Toolkit(ToolkitConfig c)
      : cfg(std::move(c)),
        taxonomy(load_taxonomy_file(cfg.taxonomy)),
        counts(load_counts_file(cfg.counts, taxonomy)),
        common(load_ontology_file(cfg.common)),
        sim(std::make_unique<SemanticSimilarity>(taxonomy, counts)) {}
};

fs::path peer_dir(const ToolkitConfig& cfg, const std::string& peer) {
  if (peer.empty() || peer.find_first_of("/\\") != std::string::npos || peer == "." || peer == "..")
    throw ValidationError("invalid peer id '" + peer + "'");
  return fs::path(cfg.state_dir) / peer;
}

void save_state(const fs::path& dir, const PeerState& s) {
  write_text_file((dir / "agreement.agree.json").string(), serialize_agreement(s.agreement));
  save_ontology_file((dir / "local.snapshot.onto.json").string(), s.local_snapshot);
  save_ontology_file((dir / "common.snapshot.onto.json").string(), s.common_snapshot);
}

PeerState load_state(const fs::path& dir, const std::string& peer) {
  if (!fs::exists(dir / "agreement.agree.json")) throw ValidationError("peer '" + peer + "' is not registered");
  PeerState s;
  try {
    s.agreement = parse_agreement(read_text_file((dir / "agreement.agree.json").string()));
    s.local_snapshot = load_ontology_file((dir / "local.snapshot.onto.json").string());
    s.common_snapshot = load_ontology_file((dir / "common.snapshot.onto.json").string());
  } catch (const ValidationError& e) {
    throw RuntimeFailure("corrupt state for peer '" + peer + "': " + e.what());
  }
  if (s.agreement.local_version != s.local_snapshot.version ||
      s.agreement.common_version != s.common_snapshot.version)
    throw RuntimeFailure("state for peer '" + peer + "' is inconsistent: snapshot versions differ from agreement");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic agreement maintenance toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Toolkit config file (falls back to $ACCORD_CONFIG)")
      ->check(CLI::ExistingFile);

  auto* diff = app.add_subcommand("diff", "Changes between two versions of an ontology");
  std::string old_path, new_path;
  diff->add_option("old", old_path)->required()->check(CLI::ExistingFile);
  diff->add_option("new", new_path)->required()->check(CLI::ExistingFile);

  auto* reg = app.add_subcommand("register", "Register a peer and build its initial agreement");
  std::string peer_id, local_path;
  reg->add_option("--peer", peer_id)->required();
  reg->add_option("--local", local_path)->required()->check(CLI::ExistingFile);

  auto* maint = app.add_subcommand("maintain", "Maintain a registered peer's agreement");
  std::string force;
  maint->add_option("--peer", peer_id)->required();
  maint->add_option("--local", local_path)->required()->check(CLI::ExistingFile);
  maint->add_option("--force", force)->check(CLI::IsMember({"simple", "complex"}));

  auto* sim = app.add_subcommand("simulate", "Run a scenario over generated peers");
  std::string scenario_path, out_path;
  std::optional<std::uint64_t> seed;
  sim->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_path)->required();
  sim->add_option("--seed", seed);

  auto* eval = app.add_subcommand("evaluate", "Run an experiment grid and write CSV tables");
  std::string exp_path, out_dir;
  std::size_t jobs = 1;
  eval->add_option("experiment", exp_path)->required()->check(CLI::ExistingFile);
  eval->add_option("--out-dir", out_dir)->required();
  eval->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*diff) {
      const Toolkit tk(resolve_config(config_path));
      const Ontology a = load_ontology_file(old_path);
      const Ontology b = load_ontology_file(new_path);
      DiffOptions opts;
      opts.weights = tk.cfg.policy.weights;
      opts.rescue = tk.sim.get();
      std::cout << serialize_change_set(diff_versions(a, b, opts));
    } else if (*reg) {
      const Toolkit tk(resolve_config(config_path));
      const fs::path dir = peer_dir(tk.cfg, peer_id);
      if (fs::exists(dir / "agreement.agree.json"))
        throw ValidationError("peer '" + peer_id + "' is already registered");
      const Ontology local = load_ontology_file(local_path);
      const PeerState s = initial_state(peer_id, local, tk.common, *tk.sim, tk.cfg.policy);
      save_state(dir, s);
      std::cout << serialize_agreement(s.agreement);
    } else if (*maint) {
      const Toolkit tk(resolve_config(config_path));
      MaintenancePolicy policy = tk.cfg.policy;
      if (!force.empty()) policy.force = parse_algorithm(force);
      const fs::path dir = peer_dir(tk.cfg, peer_id);
      const PeerState stored = load_state(dir, peer_id);
      const Ontology local = load_ontology_file(local_path);
      const MaintenanceResult r = maintain(stored, local, tk.common, *tk.sim, policy);
      save_state(dir, r.state);
      std::cout << serialize_report(r.report);
    } else if (*sim) {
      const Toolkit tk(resolve_config(config_path));
      Scenario sc = parse_scenario(read_text_file(scenario_path));
      if (seed) sc.seed = *seed;
      auto peers = make_twin_peers(tk.common, tk.taxonomy, tk.cfg.peer_count, tk.cfg.peer_seed);
      SuperPeer sp(tk.common, *tk.sim, tk.cfg.policy);
      for (const auto& p : peers) sp.register_peer(p);
      const Mutator mutator(tk.taxonomy);
      write_text_file(out_path, serialize_sim_log(run_scenario(sp, peers, sc, mutator)));
    } else if (*eval) {
      const Toolkit tk(resolve_config(config_path));
      const ExperimentConfig ec = parse_experiment_config(read_text_file(exp_path));
      const ExperimentResult r = run_experiment(tk.common, tk.taxonomy, *tk.sim, tk.cfg.policy, ec, jobs);
      write_text_file((fs::path(out_dir) / "rows.csv").string(), rows_csv(r.rows));
      write_text_file((fs::path(out_dir) / "aggregate.csv").string(), aggregate_csv(r.aggregates));
    }
  } catch (const ValidationError& e) {
    std::cerr << "accord: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "accord: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
