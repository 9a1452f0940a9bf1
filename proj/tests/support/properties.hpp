#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "accord/rng.hpp"

namespace testing_support {

/// One randomized law. `check` returns a description of the first violation, if any.
struct Property {
  std::string name;
  std::function<std::optional<std::string>(accord::Rng&)> check;
};

const std::vector<Property>& properties();

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Runs `cases` independent cases, each with its own derived seed.
PropertyOutcome run_property(const Property& p, std::uint64_t seed, std::size_t cases);

inline constexpr std::size_t kPropertyCases = 1000;

}  // namespace testing_support
