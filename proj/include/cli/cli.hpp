/**
 * @file cli.hpp
 * @brief Command-line entry point: convert, validate, aggregate, check.
 *
 * Exit codes: 0 success/valid/no findings; 1 validation errors or findings
 * present; 2 usage or parse errors. Machine output goes to `out`, diagnostics
 * to `err`.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cli
