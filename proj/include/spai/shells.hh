#pragma once

// Forward complete shells, most abstract strongly preserving domains and
// searches for strongly preserving abstract Kripke structures.

#include <cstddef>
#include <span>
#include <vector>

#include "spai/abstraction.hh"

namespace spai {

struct ShellTrace {
  /// Domain after each step, starting with the input. A converged trace
  /// ends with the fixpoint twice.
  std::vector<AbstractDomain> iterations;
  /// Number of sets added by each step.
  std::vector<std::size_t> new_sets;
  bool converged = false;
};

/// Least Moore family containing image(a) that is forward complete for
/// every operator in `ops`. Operators are applied in order of increasing
/// arity.
AbstractDomain forward_complete_shell(const AbstractDomain& a, std::span<const Operator> ops,
                                      const KripkeModel& k, const Language& l,
                                      ShellTrace* trace = nullptr,
                                      std::size_t capacity = kDefaultFamilyCapacity);

/// Denotations of all formulas of the language.
SetFamily semantic_closure(const Language& l, const KripkeModel& k,
                           std::size_t capacity = kDefaultFamilyCapacity);

/// Moore closure of semantic_closure().
AbstractDomain ad_of_language(const Language& l, const KripkeModel& k);

/// pr(ad_of_language()).
Partition coarsest_sp_partition(const Language& l, const KripkeModel& k);

/// Every member of ad_of_language() is closed in `a`.
bool is_sp_domain(const AbstractDomain& a, const Language& l, const KripkeModel& k);

enum class SearchMode { first, all };

/// Relations on blocks with at most this many pairs are searched.
inline constexpr std::size_t kMaxSearchPairs = 25;

/// Each relation is given as successor rows over block indices.
using BlockRelation = std::vector<Mask>;

struct SearchResult {
  std::vector<BlockRelation> strong;
  std::uint64_t candidates = 0;
};

/// Enumerates every relation on the blocks of `p` (total or not) and keeps
/// those whose induced abstract structure is strongly preserving.
SearchResult sp_abstract_kripke_search(const Partition& p, const Language& l,
                                       const KripkeModel& k, SearchMode mode = SearchMode::all);

}  // namespace spai
