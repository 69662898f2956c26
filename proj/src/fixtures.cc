#include "spai/fixtures.hh"

#include "spai/io.hh"

namespace spai::fixtures {

namespace {

const std::vector<std::pair<std::string, std::string>> kFiveStateEdges = {
    {"1", "2"}, {"1", "3"}, {"2", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}, {"5", "4"}};

}  // namespace

KripkeModel traffic_light() {
  return make_model({"R", "RY", "G", "Y"}, {{"R", "RY"}, {"RY", "G"}, {"G", "Y"}, {"Y", "R"}},
                    {{"stop", {"R", "RY"}}, {"go", {"G", "Y"}}});
}

KripkeModel five_state_pqr() {
  return make_model({"1", "2", "3", "4", "5"}, kFiveStateEdges,
                    {{"p", {"1", "2", "3"}}, {"q", {"3", "5"}}, {"r", {"4"}}});
}

KripkeModel five_state_pq() {
  return make_model({"1", "2", "3", "4", "5"}, kFiveStateEdges,
                    {{"p", {"1", "2", "3", "4"}}, {"q", {"5"}}});
}

KripkeModel three_state_chain() {
  return make_model({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "3"}},
                    {{"p", {"1", "2", "3"}}});
}

KripkeModel by_name(std::string_view name) {
  if (name == "tl") return traffic_light();
  if (name == "kf2") return five_state_pqr();
  if (name == "k5") return five_state_pq();
  if (name == "k3") return three_state_chain();
  throw ResolutionError("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string_view> names() { return {"tl", "kf2", "k5", "k3"}; }

Mask set_of(const StateSpace& space, std::string_view chars) {
  Mask m = 0;
  for (char c : chars) m |= bits::single(space.index_of(std::string(1, c)));
  return m;
}

AbstractDomain domain_of(const SpaceRef& space, std::initializer_list<std::string_view> sets) {
  std::vector<Mask> ms;
  for (auto s : sets) ms.push_back(set_of(*space, s));
  return AbstractDomain::from_moore_family(SetFamily(space, std::move(ms)));
}

AbstractDomain seven_point_domain(const SpaceRef& space) {
  return domain_of(space, {"", "12", "3", "34", "123", "345", "12345"});
}

std::vector<AbstractDomain> four_state_closures() {
  const auto sp = StateSpace::numbered(4);
  return {
      domain_of(sp, {"", "12", "3", "4", "1234"}),
      domain_of(sp, {"", "12", "3", "4", "34", "1234"}),
      domain_of(sp, {"", "12", "3", "4", "34", "123", "124", "1234"}),
      domain_of(sp, {"12", "123", "124", "1234"}),
      domain_of(sp, {"", "12", "123", "124", "1234"}),
  };
}

LanguageSpec pqr_conj_ex() {
  LanguageSpec s;
  s.name = "pqr";
  s.atoms = {{"p", std::nullopt}, {"q", std::nullopt}, {"r", std::nullopt}};
  s.operators = {builtin_operator("and"), builtin_operator("EX")};
  return s;
}

LanguageSpec p_ex() {
  LanguageSpec s;
  s.name = "p-EX";
  s.atoms = {{"p", std::nullopt}};
  s.operators = {builtin_operator("EX")};
  return s;
}

}  // namespace spai::fixtures
