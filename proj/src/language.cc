#include "spai/language.hh"

#include <algorithm>
#include <charconv>
#include <set>

namespace spai {

Operator Operator::make(std::string name, std::size_t arity, Formula body, bool inline_syntax) {
  if (name.empty()) throw UsageError("operator without a name");
  if (max_placeholder(body) > arity)
    throw UsageError("operator '" + name + "' uses #" + std::to_string(max_placeholder(body)) +
                     " but has arity " + std::to_string(arity));
  return {std::move(name), arity, std::move(body), inline_syntax};
}

Formula Operator::apply_syntax(std::vector<Formula> args) const {
  if (args.size() != arity) throw UsageError("wrong number of arguments for '" + name + "'");
  if (inline_syntax) return substitute(body, args);
  if (arity == 0) return fml::atom(name);
  return fml::call(name, std::move(args));
}

namespace {

bool parse_ef_bounds(std::string_view name, std::size_t& lo, std::size_t& hi) {
  if (name.size() < 7 || name.substr(0, 3) != "EF[" || name.back() != ']') return false;
  const auto inner = name.substr(3, name.size() - 4);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos) return false;
  auto num = [](std::string_view s, std::size_t& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  return num(inner.substr(0, comma), lo) && num(inner.substr(comma + 1), hi) && lo <= hi;
}

}  // namespace

Operator builtin_operator(std::string_view name) {
  using fml::placeholder;
  const auto a = placeholder(1);
  if (name == "and") return Operator::make("and", 2, fml::conj(a, placeholder(2)), true);
  if (name == "or") return Operator::make("or", 2, fml::disj(a, placeholder(2)), true);
  if (name == "not") return Operator::make("not", 1, fml::neg(a), true);
  if (name == "EX") return Operator::make("EX", 1, fml::ex(a), true);
  if (name == "AX") return Operator::make("AX", 1, fml::ax(a), true);
  if (name == "post") return Operator::make("post", 1, fml::call("post", {a}), true);
  if (name == "postdual") return Operator::make("postdual", 1, fml::call("postdual", {a}), true);
  const std::pair<const char*, FormulaKind> untils[] = {{"EU", FormulaKind::eu},
                                                        {"AU", FormulaKind::au},
                                                        {"ER", FormulaKind::er},
                                                        {"AR", FormulaKind::ar}};
  for (const auto& [n, kind] : untils)
    if (name == n)
      return Operator::make(n, 2, fml::until(kind, a, placeholder(2)), true);
  std::size_t lo = 0, hi = 0;
  if (parse_ef_bounds(name, lo, hi)) return Operator::make(std::string(name), 1, fml::ef(lo, hi, a), true);
  throw ResolutionError("unknown operator '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"L1", "L2", "L3", "CTL", "semaforo", "exef"};
}

LanguageSpec preset(std::string_view name) {
  auto ops = [](std::initializer_list<const char*> names) {
    std::vector<Operator> out;
    for (const char* n : names) out.push_back(builtin_operator(n));
    return out;
  };
  LanguageSpec s;
  s.name = std::string(name);
  if (name == "L1") {
    s.all_labels = true;
    s.operators = ops({"and", "not", "EX"});
  } else if (name == "L2") {
    s.all_labels = true;
    s.operators = ops({"and", "not", "EU"});
  } else if (name == "L3") {
    s.all_labels = true;
    s.negated_atoms = true;
    s.operators = ops({"and", "or", "AX"});
  } else if (name == "CTL") {
    s.all_labels = true;
    s.operators = ops({"and", "not", "AX", "EX", "AU", "EU", "AR", "ER"});
  } else if (name == "semaforo") {
    s.atoms = {{"stop", std::nullopt}, {"go", std::nullopt}};
    s.operators = {Operator::make("AXX", 1, parse_formula("AX AX #1"))};
  } else if (name == "exef") {
    s.atoms = {{"p", std::nullopt}, {"q", std::nullopt}};
    s.operators = ops({"and", "EF[0,2]"});
  } else {
    throw ResolutionError("unknown language preset '" + std::string(name) + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------

Language::Language(std::string name, SpaceRef space, std::vector<BoundAtom> atoms,
                   std::vector<Operator> operators)
    : name_(std::move(name)),
      space_(std::move(space)),
      atoms_(std::move(atoms)),
      operators_(std::move(operators)) {
  std::set<std::string> seen;
  for (const auto& a : atoms_)
    if (!seen.insert(a.name).second) throw UsageError("duplicate atom '" + a.name + "'");
  seen.clear();
  for (const auto& o : operators_)
    if (!seen.insert(o.name).second) throw UsageError("duplicate operator '" + o.name + "'");
}

const BoundAtom* Language::find_atom(std::string_view name) const {
  for (const auto& a : atoms_)
    if (a.name == name) return &a;
  return nullptr;
}

const Operator* Language::find_operator(std::string_view name) const {
  for (const auto& o : operators_)
    if (o.name == name) return &o;
  return nullptr;
}

Language Language::with_atoms(SpaceRef space, std::vector<BoundAtom> atoms) const {
  return {name_, std::move(space), std::move(atoms), operators_};
}

Language bind(const LanguageSpec& spec, const KripkeModel& k) {
  std::vector<BoundAtom> atoms;
  auto add = [&](const std::string& name, Mask m) {
    for (const auto& a : atoms)
      if (a.name == name) return;
    atoms.push_back({name, fml::atom(name), m});
  };
  for (const auto& a : spec.atoms) {
    if (a.states) {
      Mask m = 0;
      for (const auto& s : *a.states) {
        auto idx = k.space()->find(s);
        if (!idx) throw ResolutionError("atom '" + a.name + "' names unknown state '" + s + "'");
        m |= bits::single(*idx);
      }
      add(a.name, m);
    } else {
      auto it = k.labels().find(a.name);
      if (it == k.labels().end())
        throw ResolutionError("atom '" + a.name + "' has no interpretation in the model");
      add(a.name, it->second);
    }
  }
  if (spec.all_labels)
    for (const auto& [name, m] : k.labels()) add(name, m);
  if (spec.negated_atoms) {
    const auto positive = atoms;
    for (const auto& a : positive)
      atoms.push_back({"!" + a.name, fml::neg(a.syntax), k.space()->full() & ~a.denotation});
  }
  return {spec.name, k.space(), std::move(atoms), spec.operators};
}

// ---------------------------------------------------------------------------

Mask eval_concrete(const Formula& f, const KripkeModel& k, const Language& l,
                   std::span<const Mask> args) {
  auto sub = [&](std::size_t i) { return eval_concrete(f->args[i], k, l, args); };
  const Mask full = k.space()->full();
  switch (f->kind) {
    case FormulaKind::atom: {
      const BoundAtom* a = l.find_atom(f->name);
      if (!a) throw ResolutionError("unknown atom '" + f->name + "'");
      return a->denotation;
    }
    case FormulaKind::placeholder:
      if (f->index > args.size())
        throw UsageError("placeholder #" + std::to_string(f->index) + " is unbound");
      return args[f->index - 1];
    case FormulaKind::negation: return full & ~sub(0);
    case FormulaKind::conjunction: return sub(0) & sub(1);
    case FormulaKind::disjunction: return sub(0) | sub(1);
    case FormulaKind::ex: return pre(k, sub(0));
    case FormulaKind::ax: return pre_dual(k, sub(0));
    case FormulaKind::eu: return eu(k, sub(0), sub(1));
    case FormulaKind::au: return au(k, sub(0), sub(1));
    case FormulaKind::er: return er(k, sub(0), sub(1));
    case FormulaKind::ar: return ar(k, sub(0), sub(1));
    case FormulaKind::ef: return ef_bounded(k, f->lo, f->hi, sub(0));
    case FormulaKind::call: {
      std::vector<Mask> vals;
      for (std::size_t i = 0; i < f->args.size(); ++i) vals.push_back(sub(i));
      if (f->name == "post" || f->name == "postdual") {
        if (vals.size() != 1) throw ResolutionError("'" + f->name + "' takes one argument");
        return f->name == "post" ? post(k, vals[0]) : post_dual(k, vals[0]);
      }
      const Operator* op = l.find_operator(f->name);
      if (!op) throw ResolutionError("unknown operator '" + f->name + "'");
      if (op->arity != vals.size())
        throw ResolutionError("operator '" + f->name + "' expects " + std::to_string(op->arity) +
                              " arguments");
      return apply_operator(*op, k, l, vals);
    }
  }
  throw UsageError("malformed formula");
}

StateSet eval_concrete_set(const Formula& f, const KripkeModel& k, const Language& l) {
  require_same_space(k.space(), l.space(), "evaluation");
  return {k.space(), eval_concrete(f, k, l)};
}

Mask apply_operator(const Operator& op, const KripkeModel& k, const Language& l,
                    std::span<const Mask> args) {
  if (args.size() != op.arity)
    throw UsageError("operator '" + op.name + "' applied to the wrong number of arguments");
  return eval_concrete(op.body, k, l, args);
}

}  // namespace spai
