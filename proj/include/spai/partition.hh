#pragma once

// Partitions and preorders viewed as abstract domains.

#include <cstddef>
#include <string>
#include <vector>

#include "spai/lattice.hh"

namespace spai {

/// Blocks are nonempty, pairwise disjoint and cover the space. Blocks are
/// kept in canonical family order.
class Partition {
 public:
  Partition(SpaceRef space, std::vector<Mask> blocks);

  static Partition discrete(SpaceRef space);
  static Partition single_block(SpaceRef space);
  /// Classes of the equivalence "key(i) == key(j)".
  template <typename Key>
  static Partition from_keys(SpaceRef space, const std::vector<Key>& keys);

  const SpaceRef& space() const { return space_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<Mask>& blocks() const { return blocks_; }
  std::size_t block_index_of(std::size_t state) const { return owner_.at(state); }
  Mask block_of(std::size_t state) const { return blocks_[owner_.at(state)]; }

  /// Union of the blocks meeting `s` (the closure of adp).
  Mask cover(Mask s) const;
  /// Blocks meeting `s`, as a mask over block indices.
  Mask abstract(Mask s) const;
  /// Union of the blocks selected by a mask over block indices.
  Mask concretize(Mask block_set) const;

  /// this ≼ other: every block is contained in some block of `other`.
  bool refines(const Partition& other) const;

  std::string str() const;
  bool operator==(const Partition& other) const;

 private:
  SpaceRef space_;
  std::vector<Mask> blocks_;
  std::vector<std::size_t> owner_;
};

template <typename Key>
Partition Partition::from_keys(SpaceRef space, const std::vector<Key>& keys) {
  std::vector<Mask> blocks;
  std::vector<Key> seen;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::size_t b = 0;
    while (b < seen.size() && !(seen[b] == keys[i])) ++b;
    if (b == seen.size()) {
      seen.push_back(keys[i]);
      blocks.push_back(0);
    }
    blocks[b] |= bits::single(i);
  }
  return Partition(std::move(space), std::move(blocks));
}

/// A reflexive and transitive relation stored as successor rows:
/// row(x) = { y | x R y }.
class Preorder {
 public:
  /// Throws UsageError unless the relation is reflexive and transitive.
  Preorder(SpaceRef space, std::vector<Mask> rows);

  static Preorder identity(SpaceRef space);
  static Preorder total(SpaceRef space);
  /// The equivalence relation of a partition.
  static Preorder of_partition(const Partition& p);

  const SpaceRef& space() const { return space_; }
  const std::vector<Mask>& rows() const { return rows_; }
  bool related(std::size_t x, std::size_t y) const {
    return bits::test(rows_.at(x), y);
  }
  /// pre_R(S) = { x | ∃y ∈ S. x R y }.
  Mask pre(Mask s) const;
  /// Classes of the symmetric kernel.
  Partition kernel() const;

  std::string str() const;
  bool operator==(const Preorder& other) const;

 private:
  SpaceRef space_;
  std::vector<Mask> rows_;
};

/// Reflexive-transitive closure of an arbitrary relation (Warshall).
std::vector<Mask> transitive_closure(std::vector<Mask> rows);

/// Partitions larger than this are refused by adp().
inline constexpr std::size_t kMaxPartitionDomainBlocks = 20;

/// Domain of all unions of blocks.
AbstractDomain adp(const Partition& p);
/// Partition of states with equal singleton closures.
Partition pr(const AbstractDomain& a);
bool is_partitioning(const AbstractDomain& a);

/// Domain of all unions of the sets pre_R({x}); its closure is pre_R.
AbstractDomain add(const Preorder& r);
/// (x, y) related iff closure({x}) ⊆ closure({y}).
Preorder preord_of(const AbstractDomain& a);
bool is_disjunctive(const AbstractDomain& a);

enum class StructuralKind { partitioning, disjunctive };

/// Most abstract partitioning (adp∘pr) or disjunctive (add∘preord_of)
/// refinement of `a`.
AbstractDomain structural_shell(StructuralKind kind, const AbstractDomain& a);

/// All partitions of the numbered space of `n` states (Bell(n) many).
std::vector<Partition> all_partitions(const SpaceRef& space);

}  // namespace spai
