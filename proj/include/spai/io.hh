#pragma once

// JSON model and language files, and JSON renderings of results.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spai/language.hh"

namespace spai {

using Json = nlohmann::json;

/// Builds a model from state names, edges and labels given by name.
/// Throws ValidationError naming an unknown state.
KripkeModel make_model(std::vector<std::string> states,
                       const std::vector<std::pair<std::string, std::string>>& edges,
                       const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                       std::size_t capacity = kDefaultStateCapacity);

/// {"states": [...], "transitions": [[s, t], ...], "labels": {p: [...]}}.
/// The result has passed validate_model().
KripkeModel model_from_json(const Json& j, std::size_t capacity = kDefaultStateCapacity);
Json model_to_json(const KripkeModel& k);
/// Throws Error when the file cannot be read, ParseError on bad JSON.
KripkeModel load_model(const std::string& path, std::size_t capacity = kDefaultStateCapacity);

/// {"atoms": {p: null | [...]}, "operators": [{"name", "arity", "expr"} |
/// builtin-name, ...], "preset": name | null}.
LanguageSpec language_from_json(const Json& j);
/// A preset name, or else the path of a language file.
LanguageSpec load_language(std::string_view preset_or_path);

/// Reads a JSON document; syntax errors become ParseError.
Json read_json_file(const std::string& path);

Json set_to_json(const StateSpace& space, Mask m);
Json family_to_json(const SetFamily& f);
Json partition_to_json(const Partition& p);
Json preorder_to_json(const Preorder& r);

/// Parses "{1,2},{3}" (optionally wrapped as "{{1,2},{3}}") or JSON
/// [["1","2"],["3"]] partition text.
Partition parse_partition(const SpaceRef& space, std::string_view text);

}  // namespace spai
