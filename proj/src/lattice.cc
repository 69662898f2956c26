#include "spai/lattice.hh"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace spai {

// ---------------------------------------------------------------------------
// StateSpace

StateSpace::StateSpace(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

SpaceRef StateSpace::make(std::vector<std::string> names,
                          std::size_t capacity) {
  if (names.empty()) throw UsageError("state space must be nonempty");
  const std::size_t limit = std::min(capacity, kMaxRepresentableStates);
  if (names.size() > limit)
    throw CapacityError("state space of " + std::to_string(names.size()) +
                        " states exceeds capacity " + std::to_string(limit));
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw UsageError("state names must be nonempty");
    if (!seen.insert(n).second)
      throw UsageError("duplicate state name '" + n + "'");
  }
  return SpaceRef(new StateSpace(std::move(names)));
}

SpaceRef StateSpace::numbered(std::size_t n, std::size_t capacity) {
  const std::size_t limit = std::min(capacity, kMaxRepresentableStates);
  if (n > limit)
    throw CapacityError("state space of " + std::to_string(n) +
                        " states exceeds capacity " + std::to_string(limit));
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return SpaceRef(new StateSpace(std::move(names)));
}

std::optional<std::size_t> StateSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StateSpace::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UsageError("unknown state '" + std::string(name) + "'");
}

bool same_space(const SpaceRef& a, const SpaceRef& b) {
  return a == b || (a && b && a->names() == b->names());
}

void require_same_space(const SpaceRef& a, const SpaceRef& b,
                        std::string_view what) {
  if (!same_space(a, b))
    throw UsageError(std::string(what) + ": operands live over different state spaces");
}

// ---------------------------------------------------------------------------
// StateSet

StateSet::StateSet(SpaceRef space, Mask bits)
    : space_(std::move(space)), bits_(bits) {
  if (!space_) throw UsageError("state set without a state space");
  if (!bits::subset(bits_, space_->full()))
    throw UsageError("state set has members outside its state space");
}

StateSet::StateSet(SpaceRef space, std::initializer_list<std::string_view> names)
    : space_(std::move(space)), bits_(0) {
  for (auto n : names) bits_ |= bits::single(space_->index_of(n));
}

StateSet::StateSet(SpaceRef space, std::span<const std::string> names)
    : space_(std::move(space)), bits_(0) {
  for (const auto& n : names) bits_ |= bits::single(space_->index_of(n));
}

StateSet StateSet::all(SpaceRef space) {
  const Mask f = space->full();
  return {std::move(space), f};
}

bool StateSet::contains(std::string_view name) const {
  auto i = space_->find(name);
  return i && contains(*i);
}

bool StateSet::subset_of(const StateSet& other) const {
  require_same_space(space_, other.space_, "subset test");
  return bits::subset(bits_, other.bits_);
}

StateSet StateSet::complement() const {
  return {space_, space_->full() & ~bits_};
}

StateSet StateSet::operator&(const StateSet& other) const {
  require_same_space(space_, other.space_, "intersection");
  return {space_, bits_ & other.bits_};
}

StateSet StateSet::operator|(const StateSet& other) const {
  require_same_space(space_, other.space_, "union");
  return {space_, bits_ | other.bits_};
}

StateSet StateSet::operator-(const StateSet& other) const {
  require_same_space(space_, other.space_, "difference");
  return {space_, bits_ & ~other.bits_};
}

std::vector<std::string> StateSet::names() const {
  std::vector<std::string> out;
  bits::for_each(bits_, [&](std::size_t i) { out.push_back(space_->name(i)); });
  return out;
}

std::string StateSet::str() const { return format_set(*space_, bits_); }

bool StateSet::operator==(const StateSet& other) const {
  return same_space(space_, other.space_) && bits_ == other.bits_;
}

std::string format_set(const StateSpace& space, Mask m) {
  std::string out = "{";
  bool first = true;
  bits::for_each(m, [&](std::size_t i) {
    if (!first) out += ',';
    out += space.name(i);
    first = false;
  });
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// SetFamily

namespace {

std::vector<Mask> canonicalize(std::vector<Mask> members) {
  std::sort(members.begin(), members.end(), bits::LexLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

}  // namespace

SetFamily::SetFamily(SpaceRef space, std::vector<Mask> members)
    : space_(std::move(space)), members_(canonicalize(std::move(members))) {
  if (!space_) throw UsageError("set family without a state space");
  for (Mask m : members_)
    if (!bits::subset(m, space_->full()))
      throw UsageError("family member outside its state space");
}

SetFamily::SetFamily(SpaceRef space, std::span<const StateSet> members)
    : space_(std::move(space)) {
  std::vector<Mask> raw;
  raw.reserve(members.size());
  for (const auto& s : members) {
    require_same_space(space_, s.space(), "set family");
    raw.push_back(s.mask());
  }
  members_ = canonicalize(std::move(raw));
}

std::vector<StateSet> SetFamily::sets() const {
  std::vector<StateSet> out;
  out.reserve(members_.size());
  for (Mask m : members_) out.emplace_back(space_, m);
  return out;
}

bool SetFamily::contains(Mask m) const {
  return std::binary_search(members_.begin(), members_.end(), m,
                            bits::LexLess{});
}

bool SetFamily::contains(const StateSet& s) const {
  return same_space(space_, s.space()) && contains(s.mask());
}

bool SetFamily::subset_of(const SetFamily& other) const {
  require_same_space(space_, other.space_, "family inclusion");
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end(), bits::LexLess{});
}

std::string SetFamily::str() const {
  std::string out;
  for (Mask m : members_) {
    out += format_set(*space_, m);
    out += '\n';
  }
  return out;
}

bool SetFamily::operator==(const SetFamily& other) const {
  return same_space(space_, other.space_) && members_ == other.members_;
}

// ---------------------------------------------------------------------------
// Moore closure and abstract domains

std::vector<Mask> moore_close_masks(const SpaceRef& space,
                                    std::vector<Mask> family,
                                    std::size_t capacity) {
  std::vector<Mask> out;
  std::unordered_set<Mask> seen;
  auto push = [&](Mask m) {
    if (seen.insert(m).second) {
      if (out.size() >= capacity)
        throw CapacityError("Moore closure exceeds family capacity " +
                            std::to_string(capacity));
      out.push_back(m);
    }
  };
  push(space->full());
  for (Mask m : family) push(m);
  // Semi-naive: every pair (i, j) is intersected once, when the later of
  // the two is visited.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) push(out[i] & out[j]);
  return canonicalize(std::move(out));
}

AbstractDomain moore_close(const SetFamily& family, std::size_t capacity) {
  return AbstractDomain(SetFamily(
      family.space(), moore_close_masks(family.space(), family.masks(), capacity)));
}

AbstractDomain AbstractDomain::from_moore_family(SetFamily family) {
  const auto& ms = family.masks();
  if (!family.contains(family.space()->full()))
    throw UsageError("not a Moore family: the universe is missing");
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (!family.contains(ms[i] & ms[j]))
        throw UsageError("not a Moore family: not closed under intersection");
  return AbstractDomain(std::move(family));
}

AbstractDomain AbstractDomain::powerset(SpaceRef space) {
  const std::size_t n = space->size();
  if (n >= 63 || (Mask{1} << n) > kDefaultFamilyCapacity)
    throw CapacityError("powerset of " + std::to_string(n) +
                        " states exceeds family capacity");
  std::vector<Mask> all;
  all.reserve(std::size_t{1} << n);
  for (Mask m = 0; m <= space->full(); ++m) all.push_back(m);
  return AbstractDomain(SetFamily(std::move(space), std::move(all)));
}

AbstractDomain AbstractDomain::top(SpaceRef space) {
  const Mask f = space->full();
  return AbstractDomain(SetFamily(std::move(space), std::vector<Mask>{f}));
}

Mask AbstractDomain::closure(Mask s) const {
  Mask result = space()->full();
  for (Mask m : image_.masks())
    if (bits::subset(s, m)) result &= m;
  return result;
}

StateSet AbstractDomain::closure(const StateSet& s) const {
  require_same_space(space(), s.space(), "closure");
  return {space(), closure(s.mask())};
}

Mask AbstractDomain::gamma(Mask closed) const {
  if (!contains(closed))
    throw UsageError("concretization of a set that is not closed in the domain");
  return closed;
}

StateSet closure_of(const AbstractDomain& a, const StateSet& s) {
  return a.closure(s);
}

bool domain_leq(const AbstractDomain& a, const AbstractDomain& b) {
  require_same_space(a.space(), b.space(), "domain order");
  return b.image().subset_of(a.image());
}

AbstractDomain domain_meet(const AbstractDomain& a, const AbstractDomain& b) {
  require_same_space(a.space(), b.space(), "domain meet");
  std::vector<Mask> both = a.image().masks();
  both.insert(both.end(), b.image().masks().begin(), b.image().masks().end());
  return moore_close(SetFamily(a.space(), std::move(both)));
}

AbstractDomain domain_join(const AbstractDomain& a, const AbstractDomain& b) {
  require_same_space(a.space(), b.space(), "domain join");
  std::vector<Mask> common;
  std::set_intersection(a.image().masks().begin(), a.image().masks().end(),
                        b.image().masks().begin(), b.image().masks().end(),
                        std::back_inserter(common), bits::LexLess{});
  return AbstractDomain::from_moore_family(SetFamily(a.space(), std::move(common)));
}

// ---------------------------------------------------------------------------
// Enumeration

void enumerate_moore_families(
    std::size_t n, const std::function<void(const AbstractDomain&)>& visit) {
  if (n > kMaxEnumerationStates)
    throw CapacityError("Moore family enumeration is limited to " +
                        std::to_string(kMaxEnumerationStates) + " states");
  const SpaceRef space = StateSpace::numbered(n);
  const Mask universe = space->full();

  // Every Moore family is reachable from {Σ} by adding its members one at
  // a time and re-closing, so a search over "add one set" reaches them all.
  auto less = [](const std::vector<Mask>& x, const std::vector<Mask>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        bits::LexLess{});
  };
  std::set<std::vector<Mask>, decltype(less)> seen(less);
  std::vector<std::vector<Mask>> frontier{{universe}};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<Mask>> next;
    for (const auto& fam : frontier) {
      for (Mask s = 0; s <= universe; ++s) {
        if (std::binary_search(fam.begin(), fam.end(), s, bits::LexLess{}))
          continue;
        std::vector<Mask> grown = fam;
        grown.push_back(s);
        auto closed = moore_close_masks(space, std::move(grown));
        if (seen.insert(closed).second) next.push_back(std::move(closed));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& fam : seen)
    visit(AbstractDomain::from_moore_family(SetFamily(space, fam)));
}

std::vector<AbstractDomain> all_moore_families(std::size_t n) {
  std::vector<AbstractDomain> out;
  enumerate_moore_families(n, [&](const AbstractDomain& a) { out.push_back(a); });
  return out;
}

}  // namespace spai
