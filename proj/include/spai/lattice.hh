#pragma once

// Finite powerset lattices, Moore families and abstract domains.
//
// An abstract domain over a state space is represented by its closure
// operator, i.e. by the Moore family of closed sets. Abstract values are
// the closed sets themselves, so concretization is the identity and the
// abstraction of a set is the least closed set containing it.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spai/bits.hh"
#include "spai/error.hh"

namespace spai {

inline constexpr std::size_t kDefaultStateCapacity = 24;

/// Families larger than this are refused with CapacityError.
inline constexpr std::size_t kDefaultFamilyCapacity = std::size_t{1} << 22;

class StateSpace;
using SpaceRef = std::shared_ptr<const StateSpace>;

/// A named finite universe of states with a fixed index order.
class StateSpace {
 public:
  /// Names must be nonempty, unique and at most `capacity` many.
  static SpaceRef make(std::vector<std::string> names,
                       std::size_t capacity = kDefaultStateCapacity);

  /// States named "1".."n". Unlike make(), n = 0 is accepted; the empty
  /// space is only useful for enumerating families over it.
  static SpaceRef numbered(std::size_t n,
                           std::size_t capacity = kDefaultStateCapacity);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UsageError on unknown names.
  std::size_t index_of(std::string_view name) const;
  Mask full() const { return bits::full(size()); }

 private:
  explicit StateSpace(std::vector<std::string> names);

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True when both refer to the same universe (same object or same names).
bool same_space(const SpaceRef& a, const SpaceRef& b);
void require_same_space(const SpaceRef& a, const SpaceRef& b,
                        std::string_view what);

/// A subset of a state space.
class StateSet {
 public:
  StateSet(SpaceRef space, Mask bits);
  StateSet(SpaceRef space, std::initializer_list<std::string_view> names);
  StateSet(SpaceRef space, std::span<const std::string> names);

  static StateSet empty(SpaceRef space) { return {std::move(space), 0}; }
  static StateSet all(SpaceRef space);

  const SpaceRef& space() const { return space_; }
  Mask mask() const { return bits_; }
  std::size_t size() const { return bits::count(bits_); }
  bool is_empty() const { return bits_ == 0; }
  bool contains(std::size_t i) const { return bits::test(bits_, i); }
  bool contains(std::string_view name) const;
  bool subset_of(const StateSet& other) const;

  StateSet complement() const;
  StateSet operator&(const StateSet& other) const;
  StateSet operator|(const StateSet& other) const;
  StateSet operator-(const StateSet& other) const;

  std::vector<std::string> names() const;
  /// Sorted-by-index name list in braces, e.g. "{1,2,3}".
  std::string str() const;

  bool operator==(const StateSet& other) const;

 private:
  SpaceRef space_;
  Mask bits_;
};

/// Renders a mask against a space as "{a,b}".
std::string format_set(const StateSpace& space, Mask m);

/// A duplicate-free family of subsets in canonical (lexicographic) order.
class SetFamily {
 public:
  SetFamily(SpaceRef space, std::vector<Mask> members);
  SetFamily(SpaceRef space, std::span<const StateSet> members);

  const SpaceRef& space() const { return space_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Mask>& masks() const { return members_; }
  std::vector<StateSet> sets() const;
  bool contains(Mask m) const;
  bool contains(const StateSet& s) const;
  /// Every member of this family is a member of `other`.
  bool subset_of(const SetFamily& other) const;

  /// One set per line in canonical order.
  std::string str() const;

  bool operator==(const SetFamily& other) const;

 private:
  SpaceRef space_;
  std::vector<Mask> members_;
};

/// A Moore family of closed sets with its closure operator.
class AbstractDomain {
 public:
  /// Validates that `family` contains the universe and is closed under
  /// pairwise intersection; throws UsageError otherwise.
  static AbstractDomain from_moore_family(SetFamily family);

  /// The full powerset (identical abstraction). Capacity-checked.
  static AbstractDomain powerset(SpaceRef space);
  /// The domain {Σ} whose closure maps everything to the top.
  static AbstractDomain top(SpaceRef space);

  const SpaceRef& space() const { return image_.space(); }
  const SetFamily& image() const { return image_; }
  std::size_t size() const { return image_.size(); }
  bool contains(Mask m) const { return image_.contains(m); }

  /// Least closed set containing `s` (the uco applied to s).
  Mask closure(Mask s) const;
  StateSet closure(const StateSet& s) const;
  /// The abstraction map; identical to closure in this representation.
  Mask alpha(Mask s) const { return closure(s); }
  /// The concretization map; the identity on closed sets.
  Mask gamma(Mask closed) const;

  bool operator==(const AbstractDomain& other) const {
    return image_ == other.image_;
  }

 private:
  explicit AbstractDomain(SetFamily image) : image_(std::move(image)) {}
  friend AbstractDomain moore_close(const SetFamily&, std::size_t);

  SetFamily image_;
};

/// Least Moore family containing `family`: every intersection of members
/// plus the universe.
AbstractDomain moore_close(const SetFamily& family,
                           std::size_t capacity = kDefaultFamilyCapacity);

/// Closure of raw masks; returned in canonical order.
std::vector<Mask> moore_close_masks(const SpaceRef& space,
                                    std::vector<Mask> family,
                                    std::size_t capacity = kDefaultFamilyCapacity);

StateSet closure_of(const AbstractDomain& a, const StateSet& s);

/// `a` is at least as precise as `b`: image(b) ⊆ image(a).
bool domain_leq(const AbstractDomain& a, const AbstractDomain& b);

/// Reduced product: Moore closure of the union of the images.
AbstractDomain domain_meet(const AbstractDomain& a, const AbstractDomain& b);

/// Intersection of the images.
AbstractDomain domain_join(const AbstractDomain& a, const AbstractDomain& b);

inline constexpr std::size_t kMaxEnumerationStates = 4;

/// Visits every Moore family over the numbered space of `n` states exactly
/// once. Throws CapacityError for n > 4.
void enumerate_moore_families(
    std::size_t n, const std::function<void(const AbstractDomain&)>& visit);

/// Collects enumerate_moore_families into a vector.
std::vector<AbstractDomain> all_moore_families(std::size_t n);

}  // namespace spai
