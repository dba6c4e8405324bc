#ifndef HOPI_CONFIG_HPP
#define HOPI_CONFIG_HPP

#include <vector>

#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// A unary hopi context: a term with a distinguished free process variable
// marking the hole.
struct ContextHole {
  Name hole;
  HoPtr body;
};

// Bounds and candidate suppliers governing every state-space search.
struct ExploreConfig {
  int maxTauDepth = 32;     // internal steps folded into a weak arrow
  int maxStates = 20000;    // canonical states per exploration
  int maxPairs = 20000;     // pairs per bisimulation game
  int freshCandidates = 1;  // k in fn(p) + k fresh input candidates
  int maxVisibleDepth = 3;  // visible-trace probing depth

  // Composition family for the bound-output clause of local bisimulation.
  std::vector<PiPtr> rFamily;
  // Probing family for context_probe.
  std::vector<ContextHole> contextFamily;
};

enum class Strength { Strong, Weak };

}  // namespace hopi

#endif
