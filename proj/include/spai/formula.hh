#pragma once

// Formula syntax trees.
//
// The same tree type describes formulas of a language and the transformer
// expressions that define its operators: an operator body is a formula in
// which "#1".."#n" stand for the operator's arguments.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace spai {

enum class FormulaKind {
  atom,
  placeholder,
  negation,
  conjunction,
  disjunction,
  ex,
  ax,
  eu,
  au,
  er,
  ar,
  ef,    // EF[lo,hi]
  call,  // named operator application
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  std::string name;      // atom or call name
  std::size_t index = 0; // placeholder number (1-based)
  std::size_t lo = 0, hi = 0;
  std::vector<Formula> args;
};

namespace fml {

Formula atom(std::string name);
Formula placeholder(std::size_t k);
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula ex(Formula a);
Formula ax(Formula a);
/// kind is one of eu, au, er, ar.
Formula until(FormulaKind kind, Formula a, Formula b);
Formula ef(std::size_t lo, std::size_t hi, Formula a);
Formula call(std::string name, std::vector<Formula> args);

}  // namespace fml

/// Throws ParseError with the byte offset of the offending token.
Formula parse_formula(std::string_view text);

/// Renders with the minimal parentheses needed to parse back.
std::string to_string(const Formula& f);

/// Replaces "#k" by args[k-1]. Throws UsageError for unbound placeholders.
Formula substitute(const Formula& pattern, const std::vector<Formula>& args);

/// Largest placeholder number occurring in `f` (0 when there is none).
std::size_t max_placeholder(const Formula& f);

bool same_formula(const Formula& a, const Formula& b);

}  // namespace spai
