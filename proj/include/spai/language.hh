#pragma once

// Languages (atoms plus operators) and their concrete semantics.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spai/formula.hh"
#include "spai/kripke.hh"

namespace spai {

/// A named operator given by a transformer expression over "#1".."#arity".
/// Arity 0 is allowed and denotes a constant.
struct Operator {
  std::string name;
  std::size_t arity = 0;
  Formula body;
  /// Witness formulas show the body with the arguments substituted
  /// ("EX p") rather than a call ("AXX(p)").
  bool inline_syntax = false;

  /// Validates that the body only uses placeholders up to the arity.
  static Operator make(std::string name, std::size_t arity, Formula body,
                       bool inline_syntax = false);
  /// Formula applying this operator to `args`.
  Formula apply_syntax(std::vector<Formula> args) const;
};

/// Built-in operators by name: and, or, not, EX, AX, EU, AU, ER, AR,
/// post, postdual, and EF[lo,hi]. Throws ResolutionError otherwise.
Operator builtin_operator(std::string_view name);

struct AtomSpec {
  std::string name;
  /// Explicit denotation; when absent the model label of the same name.
  std::optional<std::vector<std::string>> states;
};

struct LanguageSpec {
  std::string name;
  std::vector<AtomSpec> atoms;
  /// Take every model label as an atom (in addition to `atoms`).
  bool all_labels = false;
  /// Add the negation of every atom as an atom of its own.
  bool negated_atoms = false;
  std::vector<Operator> operators;
};

/// Names accepted by preset(): L1, L2, L3, CTL, semaforo, exef.
std::vector<std::string> preset_names();
/// Throws ResolutionError for unknown names.
LanguageSpec preset(std::string_view name);

struct BoundAtom {
  std::string name;
  Formula syntax;
  Mask denotation = 0;
};

/// A language whose atoms have been interpreted over a model.
class Language {
 public:
  Language(std::string name, SpaceRef space, std::vector<BoundAtom> atoms,
           std::vector<Operator> operators);

  const std::string& name() const { return name_; }
  const SpaceRef& space() const { return space_; }
  const std::vector<BoundAtom>& atoms() const { return atoms_; }
  const std::vector<Operator>& operators() const { return operators_; }
  const BoundAtom* find_atom(std::string_view name) const;
  const Operator* find_operator(std::string_view name) const;

  /// Same operators, atoms replaced.
  Language with_atoms(SpaceRef space, std::vector<BoundAtom> atoms) const;

 private:
  std::string name_;
  SpaceRef space_;
  std::vector<BoundAtom> atoms_;
  std::vector<Operator> operators_;
};

/// Resolves atoms against the model. Throws ResolutionError when an atom
/// has neither an explicit denotation nor a model label, or names an
/// unknown state.
Language bind(const LanguageSpec& spec, const KripkeModel& k);

/// Concrete denotation of `f`. Atoms resolve against `l`; calls resolve
/// against the language's operators (plus the builtins post/postdual);
/// placeholders against `args`.
Mask eval_concrete(const Formula& f, const KripkeModel& k, const Language& l,
                   std::span<const Mask> args = {});
StateSet eval_concrete_set(const Formula& f, const KripkeModel& k, const Language& l);

Mask apply_operator(const Operator& op, const KripkeModel& k, const Language& l,
                    std::span<const Mask> args);

}  // namespace spai
