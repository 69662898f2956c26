#pragma once

// Small models and domains used by the examples, the test-suite and
// `spai verify`.

#include <string_view>
#include <vector>

#include "spai/language.hh"

namespace spai::fixtures {

/// Four-phase traffic light: R → RY → G → Y → R, stop = {R,RY}, go = {G,Y}.
KripkeModel traffic_light();
/// States 1..5; 1→2, 1→3, 2→2, 2→3, 3→4, 4→5, 5→4; p = 123, q = 35, r = 4.
KripkeModel five_state_pqr();
/// Same transitions; p = 1234, q = 5.
KripkeModel five_state_pq();
/// 1 → 2 → 3 → 3, p everywhere.
KripkeModel three_state_chain();

/// Throws ResolutionError for unknown names (tl, kf2, k5, k3).
KripkeModel by_name(std::string_view name);
std::vector<std::string_view> names();

/// Seven-element domain {∅, 12, 3, 34, 123, 345, 12345} over five_state_pqr().
AbstractDomain seven_point_domain(const SpaceRef& space);

/// Five closures on {1,2,3,4}, all inducing the partition {12,3,4}.
std::vector<AbstractDomain> four_state_closures();

/// Domain from a list of sets written as strings of one-character state
/// names, e.g. {"", "12", "3"}.
AbstractDomain domain_of(const SpaceRef& space, std::initializer_list<std::string_view> sets);
/// Mask of a string of one-character state names.
Mask set_of(const StateSpace& space, std::string_view chars);

/// Language with atoms p and q, conjunction and EX; p, q, r for ex1.
LanguageSpec pqr_conj_ex();
/// Atoms p with only EX.
LanguageSpec p_ex();

}  // namespace spai::fixtures
