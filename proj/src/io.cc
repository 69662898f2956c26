#include "spai/io.hh"

#include <fstream>
#include <sstream>

namespace spai {

namespace {

std::size_t state_index(const StateSpace& space, const std::string& name, const std::string& where) {
  auto idx = space.find(name);
  if (!idx) throw ValidationError("unknown state '" + name + "' in " + where, name);
  return *idx;
}

}  // namespace

KripkeModel make_model(std::vector<std::string> states,
                       const std::vector<std::pair<std::string, std::string>>& edges,
                       const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                       std::size_t capacity) {
  SpaceRef space;
  try {
    space = StateSpace::make(std::move(states), capacity);
  } catch (const CapacityError&) {
    throw;
  } catch (const UsageError& e) {
    throw ValidationError(e.what());
  }
  std::vector<Mask> succ(space->size(), 0);
  for (const auto& [s, t] : edges)
    succ[state_index(*space, s, "transitions")] |= bits::single(state_index(*space, t, "transitions"));
  std::map<std::string, Mask> lab;
  for (const auto& [name, members] : labels) {
    Mask m = 0;
    for (const auto& s : members) m |= bits::single(state_index(*space, s, "label '" + name + "'"));
    lab[name] |= m;
  }
  return {space, std::move(succ), std::move(lab)};
}

KripkeModel model_from_json(const Json& j, std::size_t capacity) {
  try {
    if (!j.is_object()) throw ValidationError("model must be a JSON object");
    std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("transitions")) {
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("each transition must be a pair of state names");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> labels;
    if (j.contains("labels"))
      for (const auto& [name, members] : j.at("labels").items())
        labels.emplace_back(name, members.get<std::vector<std::string>>());
    KripkeModel k = make_model(std::move(states), edges, labels, capacity);
    validate_model(k);
    return k;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed model: ") + e.what());
  }
}

Json model_to_json(const KripkeModel& k) {
  const auto& sp = *k.space();
  Json j;
  j["states"] = sp.names();
  Json edges = Json::array();
  for (std::size_t s = 0; s < k.size(); ++s)
    bits::for_each(k.successors(s), [&](std::size_t t) { edges.push_back({sp.name(s), sp.name(t)}); });
  j["transitions"] = edges;
  Json labels = Json::object();
  for (const auto& [name, m] : k.labels()) labels[name] = set_to_json(sp, m);
  j["labels"] = labels;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

KripkeModel load_model(const std::string& path, std::size_t capacity) {
  return model_from_json(read_json_file(path), capacity);
}

LanguageSpec language_from_json(const Json& j) {
  try {
    LanguageSpec spec;
    spec.name = "custom";
    if (j.contains("preset") && !j.at("preset").is_null()) spec = preset(j.at("preset").get<std::string>());
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
    if (j.contains("atoms")) {
      spec.atoms.clear();
      spec.all_labels = false;
      for (const auto& [name, v] : j.at("atoms").items()) {
        AtomSpec a{name, std::nullopt};
        if (!v.is_null()) a.states = v.get<std::vector<std::string>>();
        spec.atoms.push_back(std::move(a));
      }
    }
    if (j.contains("operators")) {
      for (const auto& o : j.at("operators")) {
        if (o.is_string()) {
          spec.operators.push_back(builtin_operator(o.get<std::string>()));
          continue;
        }
        const auto name = o.at("name").get<std::string>();
        const Formula body = parse_formula(o.at("expr").get<std::string>());
        const std::size_t arity =
            o.contains("arity") ? o.at("arity").get<std::size_t>() : max_placeholder(body);
        spec.operators.push_back(Operator::make(name, arity, body));
      }
    }
    return spec;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed language: ") + e.what());
  }
}

LanguageSpec load_language(std::string_view preset_or_path) {
  for (const auto& n : preset_names())
    if (n == preset_or_path) return preset(n);
  return language_from_json(read_json_file(std::string(preset_or_path)));
}

Json set_to_json(const StateSpace& space, Mask m) {
  Json a = Json::array();
  bits::for_each(m, [&](std::size_t i) { a.push_back(space.name(i)); });
  return a;
}

Json family_to_json(const SetFamily& f) {
  Json a = Json::array();
  for (Mask m : f.masks()) a.push_back(set_to_json(*f.space(), m));
  return a;
}

Json partition_to_json(const Partition& p) {
  Json a = Json::array();
  for (Mask b : p.blocks()) a.push_back(set_to_json(*p.space(), b));
  return a;
}

Json preorder_to_json(const Preorder& r) {
  Json a = Json::array();
  const auto& sp = *r.space();
  for (std::size_t x = 0; x < sp.size(); ++x)
    bits::for_each(r.rows()[x], [&](std::size_t y) { a.push_back({sp.name(x), sp.name(y)}); });
  return a;
}

Partition parse_partition(const SpaceRef& space, std::string_view text) {
  std::vector<Mask> blocks;
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) throw ParseError("empty partition", 0);
  const auto trimmed = text.substr(first);
  if (!trimmed.empty() && trimmed.front() == '[') {
    Json j;
    try {
      j = Json::parse(trimmed);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("partition: ") + e.what(), e.byte);
    }
    for (const auto& b : j) {
      Mask m = 0;
      for (const auto& s : b) m |= bits::single(state_index(*space, s.get<std::string>(), "partition"));
      blocks.push_back(m);
    }
    return {space, std::move(blocks)};
  }
  // {a,b},{c}, optionally inside the outer braces that str() prints
  if (text.size() > 4 && text.substr(0, 2) == "{{" && text.substr(text.size() - 2) == "}}")
    text = text.substr(1, text.size() - 2);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '{') throw ParseError("expected '{' in partition", i);
    ++i;
    Mask m = 0;
    std::string cur;
    for (;; ++i) {
      if (i >= text.size()) throw ParseError("unterminated block in partition", i);
      const char c = text[i];
      if (c == ',' || c == '}') {
        if (!cur.empty()) m |= bits::single(state_index(*space, cur, "partition"));
        cur.clear();
        if (c == '}') break;
      } else if (c != ' ') {
        cur += c;
      }
    }
    ++i;
    blocks.push_back(m);
    skip();
  }
  return {space, std::move(blocks)};
}

}  // namespace spai
