#pragma once

// The acceptance scenario suite: one entry per property-based criterion the
// project is judged against.  The CLI `demo` subcommand runs the suite and
// reports it; timings are kept out of the JSON so reports stay byte-stable.

#include <cstdint>

#include "qcantor/json_io.hpp"

namespace qcantor {

struct ScenarioResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0; // wall clock; not serialised
  Json details;
};

// Scenarios 1..11; deterministic given the seed.
std::vector<ScenarioResult> run_scenario_suite(std::uint64_t seed);

Json scenario_suite_to_json(const std::vector<ScenarioResult>& results);

} // namespace qcantor
