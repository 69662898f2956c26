#pragma once

// Abstract semantics: best correct approximations, completeness and
// strong preservation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spai/language.hh"
#include "spai/lattice.hh"
#include "spai/partition.hh"

namespace spai {

/// μ(f(args)). Throws UsageError when an argument is not closed.
Mask bca_apply(const AbstractDomain& a, const Operator& op, const KripkeModel& k,
               const Language& l, std::span<const Mask> args);

/// Inductive abstract evaluation: atoms are abstracted, every operator
/// (including the built-in connectives) is replaced by its best correct
/// approximation.
Mask eval_abstract(const Formula& f, const AbstractDomain& a, const KripkeModel& k,
                   const Language& l);

enum class CompletenessDirection { forward, backward };

struct CompletenessOptions {
  /// Forward checks and exhaustive backward checks refuse more tuples.
  std::uint64_t tuple_limit = std::uint64_t{1} << 24;
  /// Backward checks are exhaustive up to this many states.
  std::size_t exhaustive_states = 12;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
};

struct CompletenessReport {
  bool complete = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  /// First counterexample, in canonical tuple order.
  std::string op;
  std::vector<Mask> args;
  Mask lhs = 0;  // forward: f(args); backward: μ(f(args))
  Mask rhs = 0;  // forward: μ(f(args)); backward: μ(f(μ(args)))
};

/// Forward: f(closed args) is closed. Backward: μ∘f = μ∘f∘μ.
CompletenessReport completeness_check(CompletenessDirection dir, const AbstractDomain& a,
                                      std::span<const Operator> ops, const KripkeModel& k,
                                      const Language& l,
                                      const CompletenessOptions& options = {});

/// Interpretation of a language on an abstract domain: one closed set per
/// atom and one function on closed sets per operator, parallel to the
/// language's atom and operator lists.
struct AbstractSemanticStructure {
  AbstractDomain domain;
  std::vector<Mask> atoms;
  std::vector<std::function<Mask(std::span<const Mask>)>> operators;
};

/// The structure of best correct approximations. `k` and `l` must outlive
/// the result.
AbstractSemanticStructure bca_structure(const AbstractDomain& a, const KripkeModel& k,
                                        const Language& l);

/// The structure induced by an abstract transition relation on the blocks
/// of `p` (row i = successors of block i): domain adp(p), existential atom
/// labeling, operators evaluated on the block model. `blocks` and `domain`
/// (block_space(p) and adp(p)) may be passed to reuse them across calls.
AbstractSemanticStructure kripke_structure(const Partition& p, std::vector<Mask> block_successors,
                                           const KripkeModel& k, const Language& l,
                                           SpaceRef blocks = nullptr,
                                           const AbstractDomain* domain = nullptr);

/// Abstract denotation of `f` in an abstract structure. Only atoms and calls
/// of the language's operators (or built-in syntax matching an inline
/// operator) are allowed.
Mask eval_in_structure(const Formula& f, const AbstractSemanticStructure& s, const Language& l);

enum class Preservation { strong, weak_only, neither };
std::string to_string(Preservation p);

struct PairedCheckResult {
  Preservation verdict = Preservation::strong;
  /// A formula at which strong preservation fails (absent when strong).
  std::optional<Formula> witness;
  Mask concrete = 0;
  Mask abstract = 0;
  std::size_t pairs = 0;
  /// Every (concrete, abstract) pair reached, in discovery order.
  std::vector<std::pair<Mask, Mask>> semantics;
  std::vector<Formula> formulas;
};

inline constexpr std::size_t kDefaultPairCapacity = std::size_t{1} << 22;

/// Computes the least set of pairs (⟦φ⟧, ⟦φ⟧♯) over all formulas φ of the
/// language and compares the components. With `stop_early` the search ends
/// at the first pair that is not strong (the verdict is then strong or not
/// strong only, and `semantics` is partial).
PairedCheckResult paired_sp_check(const KripkeModel& k, const Language& l,
                                  const AbstractSemanticStructure& s, bool stop_early = false,
                                  std::size_t capacity = kDefaultPairCapacity);

struct FixpointTransferReport {
  bool hypothesis = false;  // forward completeness for f
  bool gfp_equal = false;
  bool lfp_checked = false;  // only when ∅ is closed
  bool lfp_equal = false;
  Mask alpha_gfp = 0, abstract_gfp = 0;
  Mask alpha_lfp = 0, abstract_lfp = 0;
  bool passed() const { return hypothesis && gfp_equal && (!lfp_checked || lfp_equal); }
};

/// Compares α(gfp f) with gfp(f^A) (and the least fixpoints when ∅ is
/// closed) for a unary monotone operator.
FixpointTransferReport gfp_transfer_check(const AbstractDomain& a, const Operator& f,
                                          const KripkeModel& k, const Language& l);

}  // namespace spai
