#include "spai/partition.hh"

#include <algorithm>
#include <functional>

namespace spai {

Partition::Partition(SpaceRef space, std::vector<Mask> blocks)
    : space_(std::move(space)) {
  if (!space_) throw UsageError("partition without a state space");
  std::sort(blocks.begin(), blocks.end(), bits::LexLess{});
  Mask covered = 0;
  for (Mask b : blocks) {
    if (b == 0) throw UsageError("partition blocks must be nonempty");
    if (!bits::subset(b, space_->full()))
      throw UsageError("partition block outside the state space");
    if ((covered & b) != 0) throw UsageError("partition blocks overlap");
    covered |= b;
  }
  if (covered != space_->full())
    throw UsageError("partition blocks do not cover the state space");
  blocks_ = std::move(blocks);
  owner_.assign(space_->size(), 0);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    bits::for_each(blocks_[k], [&](std::size_t i) { owner_[i] = k; });
}

Partition Partition::discrete(SpaceRef space) {
  std::vector<Mask> blocks;
  for (std::size_t i = 0; i < space->size(); ++i) blocks.push_back(bits::single(i));
  return {std::move(space), std::move(blocks)};
}

Partition Partition::single_block(SpaceRef space) {
  const Mask f = space->full();
  return {std::move(space), {f}};
}

Mask Partition::cover(Mask s) const {
  Mask out = 0;
  for (Mask b : blocks_)
    if ((b & s) != 0) out |= b;
  return out;
}

Mask Partition::abstract(Mask s) const {
  Mask out = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if ((blocks_[k] & s) != 0) out |= bits::single(k);
  return out;
}

Mask Partition::concretize(Mask block_set) const {
  Mask out = 0;
  bits::for_each(block_set, [&](std::size_t k) { out |= blocks_.at(k); });
  return out;
}

bool Partition::refines(const Partition& other) const {
  require_same_space(space_, other.space_, "partition order");
  return std::all_of(blocks_.begin(), blocks_.end(), [&](Mask b) {
    return std::any_of(other.blocks_.begin(), other.blocks_.end(),
                       [&](Mask c) { return bits::subset(b, c); });
  });
}

std::string Partition::str() const {
  std::string out = "{";
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) out += ',';
    out += format_set(*space_, blocks_[k]);
  }
  return out + "}";
}

bool Partition::operator==(const Partition& other) const {
  return same_space(space_, other.space_) && blocks_ == other.blocks_;
}

// ---------------------------------------------------------------------------

std::vector<Mask> transitive_closure(std::vector<Mask> rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) rows[i] |= bits::single(i);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (bits::test(rows[i], k)) rows[i] |= rows[k];
  return rows;
}

Preorder::Preorder(SpaceRef space, std::vector<Mask> rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
  if (!space_) throw UsageError("preorder without a state space");
  if (rows_.size() != space_->size())
    throw UsageError("preorder matrix does not match the state space");
  for (Mask r : rows_)
    if (!bits::subset(r, space_->full()))
      throw UsageError("preorder relates states outside the space");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (!bits::test(rows_[i], i))
      throw UsageError("relation is not reflexive at state '" + space_->name(i) + "'");
  if (transitive_closure(rows_) != rows_)
    throw UsageError("relation is not transitive");
}

Preorder Preorder::identity(SpaceRef space) {
  std::vector<Mask> rows;
  for (std::size_t i = 0; i < space->size(); ++i) rows.push_back(bits::single(i));
  return {std::move(space), std::move(rows)};
}

Preorder Preorder::total(SpaceRef space) {
  std::vector<Mask> rows(space->size(), space->full());
  return {std::move(space), std::move(rows)};
}

Preorder Preorder::of_partition(const Partition& p) {
  std::vector<Mask> rows;
  for (std::size_t i = 0; i < p.space()->size(); ++i) rows.push_back(p.block_of(i));
  return {p.space(), std::move(rows)};
}

Mask Preorder::pre(Mask s) const {
  Mask out = 0;
  for (std::size_t x = 0; x < rows_.size(); ++x)
    if ((rows_[x] & s) != 0) out |= bits::single(x);
  return out;
}

Partition Preorder::kernel() const {
  std::vector<Mask> cls(rows_.size());
  for (std::size_t x = 0; x < rows_.size(); ++x)
    for (std::size_t y = 0; y < rows_.size(); ++y)
      if (related(x, y) && related(y, x)) cls[x] |= bits::single(y);
  return Partition::from_keys(space_, cls);
}

std::string Preorder::str() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t x = 0; x < rows_.size(); ++x)
    bits::for_each(rows_[x], [&](std::size_t y) {
      if (!first) out += ',';
      out += "(" + space_->name(x) + "," + space_->name(y) + ")";
      first = false;
    });
  return out + "}";
}

bool Preorder::operator==(const Preorder& other) const {
  return same_space(space_, other.space_) && rows_ == other.rows_;
}

// ---------------------------------------------------------------------------

namespace {

/// All unions of subsets of `generators`, including the empty union.
std::vector<Mask> all_unions(const std::vector<Mask>& generators) {
  std::vector<Mask> out{0};
  std::vector<Mask> sorted = generators;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Mask g : sorted) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Mask u = out[i] | g;
      if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
  }
  return out;
}

}  // namespace

AbstractDomain adp(const Partition& p) {
  if (p.size() > kMaxPartitionDomainBlocks)
    throw CapacityError("adp of a partition with " + std::to_string(p.size()) +
                        " blocks exceeds the bound of " +
                        std::to_string(kMaxPartitionDomainBlocks));
  std::vector<Mask> unions;
  unions.reserve(std::size_t{1} << p.size());
  const std::size_t k = p.size();
  for (Mask sel = 0; sel < (Mask{1} << k); ++sel) unions.push_back(p.concretize(sel));
  return AbstractDomain::from_moore_family(SetFamily(p.space(), std::move(unions)));
}

Partition pr(const AbstractDomain& a) {
  std::vector<Mask> keys;
  for (std::size_t i = 0; i < a.space()->size(); ++i)
    keys.push_back(a.closure(bits::single(i)));
  return Partition::from_keys(a.space(), keys);
}

bool is_partitioning(const AbstractDomain& a) {
  const Mask full = a.space()->full();
  for (Mask m : a.image().masks())
    if (!a.contains(full & ~m)) return false;
  return true;
}

AbstractDomain add(const Preorder& r) {
  std::vector<Mask> gens;
  for (std::size_t x = 0; x < r.space()->size(); ++x) gens.push_back(r.pre(bits::single(x)));
  if (gens.size() > kMaxPartitionDomainBlocks) {
    // The number of unions is bounded by 2^|gens|; only refuse when it
    // would actually blow past the family capacity.
    auto unions = all_unions(gens);
    return AbstractDomain::from_moore_family(SetFamily(r.space(), std::move(unions)));
  }
  return AbstractDomain::from_moore_family(SetFamily(r.space(), all_unions(gens)));
}

Preorder preord_of(const AbstractDomain& a) {
  const std::size_t n = a.space()->size();
  std::vector<Mask> closures(n);
  for (std::size_t i = 0; i < n; ++i) closures[i] = a.closure(bits::single(i));
  std::vector<Mask> rows(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (bits::subset(closures[x], closures[y])) rows[x] |= bits::single(y);
  return {a.space(), std::move(rows)};
}

bool is_disjunctive(const AbstractDomain& a) {
  const auto& ms = a.image().masks();
  if (!a.contains(0)) return false;  // the empty union
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (!a.contains(ms[i] | ms[j])) return false;
  return true;
}

AbstractDomain structural_shell(StructuralKind kind, const AbstractDomain& a) {
  switch (kind) {
    case StructuralKind::partitioning: return adp(pr(a));
    case StructuralKind::disjunctive: return add(preord_of(a));
  }
  throw UsageError("unknown structural shell kind");
}

std::vector<Partition> all_partitions(const SpaceRef& space) {
  // Restricted growth strings.
  const std::size_t n = space->size();
  std::vector<Partition> out;
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<Mask> blocks(used, 0);
      for (std::size_t s = 0; s < n; ++s) blocks[label[s]] |= bits::single(s);
      out.emplace_back(space, std::move(blocks));
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace spai
