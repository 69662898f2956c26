#pragma once

// Kripke structures, predecessor/successor transformers and quotients.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spai/lattice.hh"
#include "spai/partition.hh"

namespace spai {

/// A transition system with a labeling. Successor sets are stored row-wise;
/// labels are keyed by atom name.
class KripkeModel {
 public:
  /// Does not check totality; see validate_model().
  KripkeModel(SpaceRef space, std::vector<Mask> successors,
              std::map<std::string, Mask> labels = {});

  const SpaceRef& space() const { return space_; }
  std::size_t size() const { return space_->size(); }
  const std::vector<Mask>& successors() const { return succ_; }
  Mask successors(std::size_t s) const { return succ_.at(s); }
  bool has_edge(std::size_t s, std::size_t t) const { return bits::test(succ_.at(s), t); }
  const std::map<std::string, Mask>& labels() const { return labels_; }
  /// Throws ResolutionError for unknown atoms.
  Mask label(const std::string& atom) const;
  /// Atoms holding at `s`, as an ordered list of names.
  std::vector<std::string> label_of(std::size_t s) const;
  /// States without successors.
  Mask stuck_states() const;
  bool is_total() const { return stuck_states() == 0; }

  bool operator==(const KripkeModel& other) const;

 private:
  SpaceRef space_;
  std::vector<Mask> succ_;
  std::map<std::string, Mask> labels_;
};

/// Throws ValidationError naming the first stuck state or a label that
/// mentions states outside the space.
void validate_model(const KripkeModel& k);

enum class TransformerKind { pre, post, pre_dual, post_dual };

Mask pre(const KripkeModel& k, Mask s);
Mask post(const KripkeModel& k, Mask s);
Mask pre_dual(const KripkeModel& k, Mask s);
Mask post_dual(const KripkeModel& k, Mask s);
Mask transformer(TransformerKind kind, const KripkeModel& k, Mask s);
StateSet transformer(TransformerKind kind, const KripkeModel& k, const StateSet& s);

/// lfp Z. b ∪ (a ∩ pre Z)
Mask eu(const KripkeModel& k, Mask a, Mask b);
/// lfp Z. b ∪ (a ∩ pre~ Z)
Mask au(const KripkeModel& k, Mask a, Mask b);
/// gfp Z. b ∩ (a ∪ pre Z)
Mask er(const KripkeModel& k, Mask a, Mask b);
/// gfp Z. b ∩ (a ∪ pre~ Z)
Mask ar(const KripkeModel& k, Mask a, Mask b);
/// Union of pre^i(s) for lo <= i <= hi.
Mask ef_bounded(const KripkeModel& k, std::size_t lo, std::size_t hi, Mask s);

/// Classes of states carrying the same set of atoms.
Partition label_partition(const KripkeModel& k);

/// The model with an extra atom "!p" holding on the complement of p, for
/// every atom p.
KripkeModel with_negated_labels(const KripkeModel& k);

enum class QuotientKind { exists_exists, forall_exists };

struct Quotient {
  KripkeModel model;  // over a space whose states are the blocks
  Partition partition;
  bool total;
};

/// Block names are the member names joined, e.g. "12" or "R,RY" when some
/// member name is longer than one character. Labels are existential: a
/// block carries p when some member does.
Quotient quotient(QuotientKind kind, const KripkeModel& k, const Partition& p);

/// Space whose states are the blocks of `p`, named as in quotient().
SpaceRef block_space(const Partition& p);

}  // namespace spai
