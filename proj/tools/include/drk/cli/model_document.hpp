#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drk/errors.hpp"
#include "drk/finiteness.hpp"
#include "drk/models.hpp"

namespace drk::cli {

/// A parsed and validated model file.
///
/// Exactly one of `finite_map` / `two_graph` is set for those model types;
/// `system` is always the derived matrix pair.
struct ModelDocument {
  SystemOrigin model_type = SystemOrigin::Raw;
  std::vector<std::string> labels;
  std::optional<FiniteMapModel> finite_map;
  std::optional<TwoGraphModel> two_graph;
  Rank2MatrixSystem system;
  std::optional<Subset> invariant_subset;
  AssumptionMap assumptions;
  std::string digest;  // SHA-256 of the raw input bytes, lowercase hex
};

/// Located input error: `location` is "line L, column C" for syntax errors
/// or a JSON pointer such as "/t1/3" for validation errors.
class DocumentError : public InputError {
 public:
  DocumentError(std::string location, const std::string& what)
      : InputError(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

ModelDocument parse_model_document(std::string_view text);
ModelDocument load_model_document(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

}  // namespace drk::cli
