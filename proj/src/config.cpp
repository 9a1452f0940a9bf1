#include "accord/config.hpp"

#include <filesystem>

#include "accord/error.hpp"
#include "accord/io.hpp"
#include "json_util.hpp"

namespace accord {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base_dir, const std::string& p) {
  const fs::path path(p);
  if (path.is_absolute()) return path.lexically_normal().string();
  return (fs::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

ToolkitConfig default_config() {
  ToolkitConfig c;
  const std::string dir = ACCORD_FIXTURE_DIR;
  c.taxonomy = dir + "/jobs.tax.json";
  c.counts = dir + "/jobs_corpus.counts.json";
  c.common = dir + "/common.onto.json";
  c.state_dir = "accord-state";
  return c;
}

ToolkitConfig parse_config(std::string_view text, const std::string& base_dir) {
  const auto doc = detail::parse_json(text);
  const std::string where = "config";
  detail::allow_keys(doc, {"taxonomy", "counts", "common", "state_dir", "border", "weights", "match", "peers"}, where);
  ToolkitConfig c = default_config();
  for (auto [key, field] : {std::pair{"taxonomy", &c.taxonomy}, std::pair{"counts", &c.counts},
                            std::pair{"common", &c.common}, std::pair{"state_dir", &c.state_dir}})
    if (doc.contains(key)) *field = resolve(base_dir, detail::get_string(doc, key, where));
  if (doc.contains("border")) c.policy.border = detail::get_number(doc, "border", where);
  if (doc.contains("weights")) {
    const auto& j = doc.at("weights");
    const std::string w = where + ".weights";
    detail::allow_keys(j, {"add_class", "delete_class", "rename_class", "add_property", "delete_property",
                           "rename_property"}, w);
    auto& ow = c.policy.weights;
    for (auto [key, field] : {std::pair{"add_class", &ow.add_class}, std::pair{"delete_class", &ow.delete_class},
                              std::pair{"rename_class", &ow.rename_class},
                              std::pair{"add_property", &ow.add_property},
                              std::pair{"delete_property", &ow.delete_property},
                              std::pair{"rename_property", &ow.rename_property}})
      if (j.contains(key)) *field = detail::get_number(j, key, w);
  }
  if (doc.contains("match")) {
    const auto& j = doc.at("match");
    const std::string w = where + ".match";
    detail::allow_keys(j, {"alpha", "beta", "gamma", "tau", "tau_prop"}, w);
    auto& m = c.policy.match;
    for (auto [key, field] : {std::pair{"alpha", &m.alpha}, std::pair{"beta", &m.beta}, std::pair{"gamma", &m.gamma},
                              std::pair{"tau", &m.tau}, std::pair{"tau_prop", &m.tau_prop}})
      if (j.contains(key)) *field = detail::get_number(j, key, w);
  }
  if (doc.contains("peers")) {
    const auto& j = doc.at("peers");
    const std::string w = where + ".peers";
    detail::require_keys(j, {"count", "seed"}, w);
    const long long count = detail::get_integer(j, "count", w);
    if (count < 1) throw ValidationError(w + ": 'count' must be at least 1");
    c.peer_count = static_cast<std::size_t>(count);
    c.peer_seed = static_cast<std::uint64_t>(detail::get_integer(j, "seed", w));
  }
  if (!(c.policy.border > 0.0)) throw ValidationError(where + ": 'border' must be positive");
  c.policy.validate();
  return c;
}

ToolkitConfig load_config_file(const std::string& path) {
  const std::string base = fs::absolute(fs::path(path)).parent_path().string();
  ToolkitConfig c = parse_config(read_text_file(path), base);
  for (const auto* p : {&c.taxonomy, &c.counts, &c.common})
    if (!fs::exists(*p)) throw ValidationError("config: file not found: " + *p);
  return c;
}

}  // namespace accord
