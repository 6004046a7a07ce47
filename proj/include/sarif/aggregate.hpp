/**
 * @file aggregate.hpp
 * @brief Offline aggregation of multiple SARIF logs into one multi-run log.
 *
 * Runs are carried whole and never fused, so per-run ruleId/resources
 * integrity is preserved by construction even when tools collide on rule ids.
 */
#pragma once

#include "sarif/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sarif {

class VersionMismatchError : public Error
{
    using Error::Error;
};

class EmptyInputError : public Error
{
    using Error::Error;
};

struct AggregationReport
{
    SarifLog merged;
    std::size_t source_count = 0;
    std::vector<std::string> conflicts; // informational notes, never fatal
};

/// Concatenates the runs of all input logs in input order.
/// Throws EmptyInputError when `logs` is empty and VersionMismatchError when
/// the inputs disagree on the format version.
[[nodiscard]] AggregationReport aggregate(std::span<const SarifLog> logs);

} // namespace sarif
