#pragma once

// Bisimulation, divergence-blind stuttering equivalence and simulation.
//
// Each relation is computed by naive refinement and each checker runs
// both the definition and the corresponding forward-completeness test,
// raising ConsistencyError when they disagree.

#include <map>
#include <optional>
#include <string>

#include "spai/kripke.hh"
#include "spai/language.hh"
#include "spai/partition.hh"

namespace spai {

Partition bisim_partition(const KripkeModel& k);
bool check_bisimulation(const Partition& p, const KripkeModel& k);

Partition dbs_partition(const KripkeModel& k);
bool check_dbs(const Partition& p, const KripkeModel& k);

/// Greatest simulation with condition ℓ(s′) ⊆ ℓ(s) on related pairs
/// (s, s′).
Preorder largest_simulation(const KripkeModel& k);
bool check_simulation(const Preorder& r, const KripkeModel& k);

/// Simulation equivalence. Computed as the kernel of the greatest
/// simulation of the model whose labeling also carries negated atoms, and
/// cross-checked against pr(S_{∪,pre~}(M({p, ∁p}))).
Partition simeq_partition(const KripkeModel& k);

/// The language of the model's labels with no operators; used to evaluate
/// transformer expressions over the model.
Language label_language(const KripkeModel& k);

/// Every label as a constant operator.
std::vector<Operator> atom_operators(const KripkeModel& k);

/// Shell routes: pr(S_F(M(seed))) for the named operator sets.
Partition shell_bisim_partition(const KripkeModel& k);   // F = {∁, pre}
Partition shell_dbs_partition(const KripkeModel& k);     // F = {∁, EU}
Partition shell_simeq_partition(const KripkeModel& k);   // F = {∪, pre~}, seed {p, ∁p}

enum class EquivalenceKind { bisim, dbs, sim, simeq };
std::optional<EquivalenceKind> parse_equivalence_kind(std::string_view name);
std::string to_string(EquivalenceKind kind);

struct EquivalenceReport {
  EquivalenceKind kind;
  std::optional<Partition> partition;
  std::optional<Preorder> preorder;
  /// Result of every computation route, keyed by route name.
  std::map<std::string, std::string> routes;
  bool consistent = true;
};

EquivalenceReport equivalence_report(EquivalenceKind kind, const KripkeModel& k);

}  // namespace spai
