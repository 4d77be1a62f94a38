#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "starkms/report.hpp"
#include "starkms/scenario.hpp"

namespace starkms
{

struct RunOptions
{
    std::optional<std::size_t> truncation;
    std::optional<std::uint64_t> seed;
};

// Runs the selected suites in declared order. Per-check failures (including
// domain errors) are recorded in the report; nothing is thrown for them.
Report run_scenario(Scenario scenario, const RunOptions &opts = {});

std::string utc_timestamp();

} // namespace starkms
