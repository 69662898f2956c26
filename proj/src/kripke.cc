#include "spai/kripke.hh"

#include <algorithm>

namespace spai {

KripkeModel::KripkeModel(SpaceRef space, std::vector<Mask> successors,
                         std::map<std::string, Mask> labels)
    : space_(std::move(space)), succ_(std::move(successors)), labels_(std::move(labels)) {
  if (!space_) throw UsageError("model without a state space");
  if (succ_.size() != space_->size())
    throw UsageError("transition matrix does not match the state space");
  for (Mask r : succ_)
    if (!bits::subset(r, space_->full()))
      throw UsageError("transition targets outside the state space");
}

Mask KripkeModel::label(const std::string& atom) const {
  auto it = labels_.find(atom);
  if (it == labels_.end()) throw ResolutionError("unknown atom '" + atom + "'");
  return it->second;
}

std::vector<std::string> KripkeModel::label_of(std::size_t s) const {
  std::vector<std::string> out;
  for (const auto& [name, m] : labels_)
    if (bits::test(m, s)) out.push_back(name);
  return out;
}

Mask KripkeModel::stuck_states() const {
  Mask out = 0;
  for (std::size_t s = 0; s < succ_.size(); ++s)
    if (succ_[s] == 0) out |= bits::single(s);
  return out;
}

bool KripkeModel::operator==(const KripkeModel& other) const {
  return same_space(space_, other.space_) && succ_ == other.succ_ && labels_ == other.labels_;
}

void validate_model(const KripkeModel& k) {
  for (const auto& [name, m] : k.labels())
    if (!bits::subset(m, k.space()->full()))
      throw ValidationError("label '" + name + "' mentions states outside the space");
  const Mask stuck = k.stuck_states();
  if (stuck != 0) {
    const auto s = static_cast<std::size_t>(std::countr_zero(stuck));
    throw ValidationError("transition relation is not total: state '" + k.space()->name(s) +
                              "' has no successor",
                          k.space()->name(s));
  }
}

Mask pre(const KripkeModel& k, Mask s) {
  Mask out = 0;
  const auto& succ = k.successors();
  for (std::size_t a = 0; a < succ.size(); ++a)
    if ((succ[a] & s) != 0) out |= bits::single(a);
  return out;
}

Mask post(const KripkeModel& k, Mask s) {
  Mask out = 0;
  bits::for_each(s, [&](std::size_t a) { out |= k.successors(a); });
  return out;
}

Mask pre_dual(const KripkeModel& k, Mask s) {
  const Mask full = k.space()->full();
  return full & ~pre(k, full & ~s);
}

Mask post_dual(const KripkeModel& k, Mask s) {
  const Mask full = k.space()->full();
  return full & ~post(k, full & ~s);
}

Mask transformer(TransformerKind kind, const KripkeModel& k, Mask s) {
  switch (kind) {
    case TransformerKind::pre: return pre(k, s);
    case TransformerKind::post: return post(k, s);
    case TransformerKind::pre_dual: return pre_dual(k, s);
    case TransformerKind::post_dual: return post_dual(k, s);
  }
  throw UsageError("unknown transformer");
}

StateSet transformer(TransformerKind kind, const KripkeModel& k, const StateSet& s) {
  require_same_space(k.space(), s.space(), "transformer");
  return {k.space(), transformer(kind, k, s.mask())};
}

namespace {

template <typename F>
Mask lfp(F f) {
  Mask z = 0;
  for (;;) {
    const Mask next = f(z);
    if (next == z) return z;
    z = next;
  }
}

template <typename F>
Mask gfp(Mask top, F f) {
  Mask z = top;
  for (;;) {
    const Mask next = f(z);
    if (next == z) return z;
    z = next;
  }
}

}  // namespace

Mask eu(const KripkeModel& k, Mask a, Mask b) {
  return lfp([&](Mask z) { return b | (a & pre(k, z)); });
}

Mask au(const KripkeModel& k, Mask a, Mask b) {
  return lfp([&](Mask z) { return b | (a & pre_dual(k, z)); });
}

Mask er(const KripkeModel& k, Mask a, Mask b) {
  return gfp(k.space()->full(), [&](Mask z) { return b & (a | pre(k, z)); });
}

Mask ar(const KripkeModel& k, Mask a, Mask b) {
  return gfp(k.space()->full(), [&](Mask z) { return b & (a | pre_dual(k, z)); });
}

Mask ef_bounded(const KripkeModel& k, std::size_t lo, std::size_t hi, Mask s) {
  if (lo > hi) throw UsageError("EF bounds must satisfy lo <= hi");
  Mask cur = s;
  Mask out = 0;
  for (std::size_t i = 0; i <= hi; ++i) {
    if (i >= lo) out |= cur;
    cur = pre(k, cur);
  }
  return out;
}

Partition label_partition(const KripkeModel& k) {
  std::vector<std::vector<std::string>> keys;
  for (std::size_t s = 0; s < k.size(); ++s) keys.push_back(k.label_of(s));
  return Partition::from_keys(k.space(), keys);
}

KripkeModel with_negated_labels(const KripkeModel& k) {
  auto labels = k.labels();
  for (const auto& [name, m] : k.labels()) labels["!" + name] = k.space()->full() & ~m;
  return {k.space(), k.successors(), std::move(labels)};
}

SpaceRef block_space(const Partition& p) {
  const auto& sp = *p.space();
  bool short_names = true;
  for (const auto& n : sp.names())
    if (n.size() != 1) short_names = false;
  std::vector<std::string> names;
  for (Mask b : p.blocks()) {
    std::string n;
    bits::for_each(b, [&](std::size_t i) {
      if (!short_names && !n.empty()) n += ',';
      n += sp.name(i);
    });
    names.push_back(n);
  }
  return StateSpace::make(std::move(names), kMaxRepresentableStates);
}

Quotient quotient(QuotientKind kind, const KripkeModel& k, const Partition& p) {
  require_same_space(k.space(), p.space(), "quotient");
  const auto& blocks = p.blocks();
  std::vector<Mask> succ(blocks.size(), 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      bool edge = false;
      if (kind == QuotientKind::exists_exists) {
        edge = (pre(k, blocks[j]) & blocks[i]) != 0;
      } else {
        edge = bits::subset(blocks[i], pre(k, blocks[j]));
      }
      if (edge) succ[i] |= bits::single(j);
    }
  }
  std::map<std::string, Mask> labels;
  for (const auto& [name, m] : k.labels()) labels[name] = p.abstract(m);
  KripkeModel model(block_space(p), std::move(succ), std::move(labels));
  const bool total = model.is_total();
  return {std::move(model), p, total};
}

}  // namespace spai
