/**
 * @file writer.hpp
 * @brief Canonical JSON serialization of SarifLog and the inverse parse.
 *
 * write() is a pure function of (log, options): known keys are emitted in the
 * order the format's listings use them, maps in insertion order (or sorted
 * when requested), unknown keys after the known ones in document order. The
 * output is UTF-8, no BOM, with a trailing newline; equal logs produce
 * byte-identical text.
 */
#pragma once

#include "sarif/model.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace sarif {

struct WriteOptions
{
    /// Spaces per indentation level; 0 emits compact single-line JSON.
    int indent_width = 2;
    /// Sort files/logicalLocations/rules maps by key instead of insertion order.
    bool sort_maps = false;
};

/// Malformed JSON input, with the byte offset the tokenizer stopped at.
class JsonSyntaxError : public Error
{
public:
    JsonSyntaxError(std::size_t byte_offset, const std::string& message)
        : Error(message), byte_offset_(byte_offset)
    {}

    [[nodiscard]] std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// Serializes `log` to canonical JSON text.
/// Pre: model_check(log) is empty (guaranteed for parse() output and for
/// converter/aggregator output).
[[nodiscard]] std::string write(const SarifLog& log, const WriteOptions& options = {});

/// Parses JSON text into the model, preserving unknown keys.
/// Throws JsonSyntaxError for malformed JSON and ModelError (with a JSON-path
/// locator) for well-formed JSON that violates a construction invariant.
[[nodiscard]] SarifLog parse(std::string_view bytes);

} // namespace sarif
