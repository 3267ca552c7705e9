#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "drk/cli/model_document.hpp"

namespace drk::cli {

using Json = nlohmann::ordered_json;

enum class Command { K0, Ideal, ConditionM, Coboundary, Verdict, Invariants };

std::string to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);

struct CommandOptions {
  std::optional<std::size_t> k_bound;
  bool brute_force = false;
  long brute_force_bound = 3;
  unsigned threads = 1;  // never echoed, so output does not depend on it
  std::size_t max_enum = kDefaultEnumerationCap;
  bool assume_positivity = false;
  bool assume_ideal_sf = false;
  bool assume_quotient_sf = false;
};

/// Structured results plus the human-readable rendering of the same data.
struct CommandOutput {
  Json results;
  std::string human;
};

CommandOutput run_command(Command command, const ModelDocument& doc, const CommandOptions& options);

/// The full machine-readable result document. Key order is fixed, so equal
/// inputs give byte-identical output.
Json result_document(Command command, const ModelDocument& doc, const CommandOptions& options,
                     const CommandOutput& output);

std::string render_machine(const Json& document);

/// Exact integer as JSON: a number when it fits in 64 bits, else a decimal string.
Json integer_json(const Integer& z);

}  // namespace drk::cli
