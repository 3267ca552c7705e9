#include "drk/cli/model_document.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "drk/errors.hpp"

namespace drk::cli {
namespace {

using nlohmann::json;

// "t1[3]" -> "/t1/3", "a1,a2" -> "/a1,a2"
std::string pointer_of(const std::string& field) {
  std::string out = "/";
  for (char c : field) {
    if (c == '[') {
      out += '/';
    } else if (c != ']') {
      out += c;
    }
  }
  return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw DocumentError(where, what); }

Integer parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                                            : Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    Integer z;
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || z.set_str(s, 10) != 0) fail(where, "expected a decimal integer, got \"" + s + "\"");
    return z;
  }
  fail(where, "expected an integer, got " + std::string(v.type_name()));
}

IntMatrix parse_matrix(const json& doc, const std::string& key, std::optional<std::size_t>& n) {
  const std::string where = "/" + key;
  if (!doc.contains(key)) fail(where, "missing");
  const json& m = doc.at(key);
  if (!m.is_array()) fail(where, "expected an array of rows");
  if (!n) n = m.size();
  if (m.size() != *n) fail(where, "expected " + std::to_string(*n) + " rows, got " + std::to_string(m.size()));
  IntMatrix out(*n, *n);
  for (std::size_t i = 0; i < *n; ++i) {
    const std::string row_where = where + "/" + std::to_string(i);
    if (!m[i].is_array()) fail(row_where, "expected an array");
    if (m[i].size() != *n)
      fail(row_where, "expected " + std::to_string(*n) + " entries, got " + std::to_string(m[i].size()));
    for (std::size_t j = 0; j < *n; ++j) out(i, j) = parse_integer(m[i][j], row_where + "/" + std::to_string(j));
  }
  return out;
}

std::vector<std::size_t> parse_map(const json& doc, const std::string& key, const std::vector<std::string>& labels,
                                   std::optional<std::size_t>& n) {
  const std::string where = "/" + key;
  if (!doc.contains(key)) fail(where, "missing");
  const json& m = doc.at(key);
  if (!m.is_array()) fail(where, "expected an array of point indices or labels");
  if (!n) n = m.size();
  if (m.size() != *n) fail(where, "expected " + std::to_string(*n) + " entries, got " + std::to_string(m.size()));
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const std::string w = where + "/" + std::to_string(x);
    const json& e = m[x];
    if (e.is_number_integer()) {
      const auto k = e.get<std::int64_t>();
      if (k < 0 || static_cast<std::size_t>(k) >= *n)
        fail(w, "point index " + std::to_string(k) + " out of range [0, " + std::to_string(*n) + ")");
      out.push_back(static_cast<std::size_t>(k));
    } else if (e.is_string()) {
      const auto& s = e.get_ref<const std::string&>();
      const auto it = std::find(labels.begin(), labels.end(), s);
      if (it == labels.end()) fail(w, "unknown label \"" + s + "\"");
      out.push_back(static_cast<std::size_t>(it - labels.begin()));
    } else {
      fail(w, "expected a point index or label");
    }
  }
  return out;
}

Assumption parse_assumption(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected \"auto\", \"assume\" or \"deny\"");
  const auto& s = v.get_ref<const std::string&>();
  if (s == "auto") return Assumption::Auto;
  if (s == "assume") return Assumption::Assume;
  if (s == "deny") return Assumption::Deny;
  fail(where, "expected \"auto\", \"assume\" or \"deny\", got \"" + s + "\"");
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

ModelDocument parse_model_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string detail = e.what();
    const auto at = detail.find(": ", detail.find("column"));
    detail = at == std::string::npos ? "syntax error" : detail.substr(at + 2);
    fail("line " + std::to_string(line) + ", column " + std::to_string(col), detail);
  }
  if (!doc.is_object()) fail("/", "expected a JSON object");

  static const std::map<std::string, std::set<std::string>> allowed = {
      {"finite_map", {"model_type", "labels", "t1", "t2", "invariant_subset", "assumptions"}},
      {"two_graph", {"model_type", "labels", "a1", "a2", "invariant_subset", "assumptions"}},
      {"raw_matrices", {"model_type", "labels", "m1", "m2", "invariant_subset", "assumptions"}},
  };
  if (!doc.contains("model_type") || !doc["model_type"].is_string())
    fail("/model_type", "missing; expected \"finite_map\", \"two_graph\" or \"raw_matrices\"");
  const std::string type = doc["model_type"].get<std::string>();
  const auto keys = allowed.find(type);
  if (keys == allowed.end())
    fail("/model_type", "unknown model type \"" + type + "\"; expected finite_map, two_graph or raw_matrices");
  for (const auto& [k, _] : doc.items())
    if (!keys->second.count(k)) fail("/" + k, "unexpected key for model_type " + type);

  std::vector<std::string> labels;
  std::optional<std::size_t> n;
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_array()) fail("/labels", "expected an array of strings");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) fail("/labels/" + std::to_string(i), "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
    n = labels.size();
  }

  std::optional<FiniteMapModel> fm;
  std::optional<TwoGraphModel> tg;
  std::optional<Rank2MatrixSystem> system;
  SystemOrigin origin = SystemOrigin::Raw;
  try {
    if (type == "finite_map") {
      origin = SystemOrigin::FiniteMap;
      // Labels must be known before maps can refer to them.
      if (labels.empty() && doc.contains("t1") && doc["t1"].is_array()) labels = default_labels(doc["t1"].size());
      auto t1 = parse_map(doc, "t1", labels, n);
      auto t2 = parse_map(doc, "t2", labels, n);
      if (labels.empty()) labels = default_labels(*n);
      fm.emplace(labels, std::move(t1), std::move(t2));
      system.emplace(matrix_system(*fm));
    } else if (type == "two_graph") {
      origin = SystemOrigin::TwoGraph;
      auto a1 = parse_matrix(doc, "a1", n);
      auto a2 = parse_matrix(doc, "a2", n);
      if (labels.empty()) labels = default_labels(*n);
      tg.emplace(labels, std::move(a1), std::move(a2));
      system.emplace(matrix_system(*tg));
    } else {
      auto m1 = parse_matrix(doc, "m1", n);
      auto m2 = parse_matrix(doc, "m2", n);
      if (labels.empty()) labels = default_labels(*n);
      system.emplace(std::move(m1), std::move(m2), SystemOrigin::Raw, labels);
    }
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    const std::string prefix = e.field() + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    fail(pointer_of(e.field()), msg);
  }
  if (n && *n == 0) fail("/", "model has no points");

  std::optional<Subset> subset;
  if (doc.contains("invariant_subset")) {
    const json& s = doc["invariant_subset"];
    if (!s.is_array()) fail("/invariant_subset", "expected an array of labels");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = "/invariant_subset/" + std::to_string(i);
      if (!s[i].is_string()) fail(w, "expected a label");
      const auto it = std::find(labels.begin(), labels.end(), s[i].get<std::string>());
      if (it == labels.end()) fail(w, "unknown label \"" + s[i].get<std::string>() + "\"");
      members.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
    subset = Subset::of(labels.size(), members);
    if (auto c = check_invariant(*system, *subset); !c)
      fail("/invariant_subset", "not invariant: " + c.violation->describe(labels));
    if (fm) {
      if (auto c = check_invariant(*fm, *subset); !c)
        fail("/invariant_subset", "not invariant: " + c.violation->describe(labels));
    }
  }

  AssumptionMap assumptions;
  if (doc.contains("assumptions")) {
    const json& a = doc["assumptions"];
    if (!a.is_object()) fail("/assumptions", "expected an object");
    for (const auto& [k, v] : a.items()) {
      const std::string w = "/assumptions/" + k;
      if (k == "P") {
        assumptions.positivity = parse_assumption(v, w);
      } else if (k == "ideal_sf") {
        assumptions.ideal_sf = parse_assumption(v, w);
      } else if (k == "quotient_sf") {
        assumptions.quotient_sf = parse_assumption(v, w);
      } else {
        fail(w, "unknown assumption; expected P, ideal_sf or quotient_sf");
      }
    }
  }

  return ModelDocument{origin,        std::move(labels),    std::move(fm),          std::move(tg), std::move(*system),
                       std::move(subset), assumptions, sha256_hex(text)};
}

ModelDocument load_model_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_document(buf.str());
}

}  // namespace drk::cli
