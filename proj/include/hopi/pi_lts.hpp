#ifndef HOPI_PI_LTS_HPP
#define HOPI_PI_LTS_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hopi/config.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// Early-style transition labels. The subject of a visible action is a
// name constant; the object of a bound output is freshly chosen and never
// clashes with other names of the source term.
struct ActionLabel {
  enum Kind { Tau, Input, FreeOutput, BoundOutput };
  Kind kind = Tau;
  Name subject;
  Name object;

  static ActionLabel tau() { return {}; }
  static ActionLabel input(Name a, Name b) {
    return {Input, std::move(a), std::move(b)};
  }
  static ActionLabel free_output(Name a, Name b) {
    return {FreeOutput, std::move(a), std::move(b)};
  }
  static ActionLabel bound_output(Name a, Name b) {
    return {BoundOutput, std::move(a), std::move(b)};
  }
  bool operator==(const ActionLabel& o) const {
    return kind == o.kind && subject == o.subject && object == o.object;
  }
};

std::string label_str(const ActionLabel& l);

struct PiTransition {
  ActionLabel label;
  PiPtr target;  // alpha-canonical
};

// Input candidate set: fn(p) plus cfg.freshCandidates fresh names plus
// whatever the caller supplies (bisimulation games pass the partner's
// free names so both sides range over the same objects).
NameSet pi_candidates(const PiPtr& p, const ExploreConfig& cfg,
                      const NameSet& extra = {});

// Complete one-step transition set. Input objects range over the
// candidate set; internal communication is computed exactly (including
// scope extrusion and the close rule) and does not depend on candidates.
std::vector<PiTransition> pi_step(const PiPtr& p, const ExploreConfig& cfg,
                                  const NameSet& extraCandidates = {});

// Nil components dropped, parallels flattened, commutativity-sorted
// canonical form: the deduplication key for exploration.
PiPtr pi_state(const PiPtr& p);
std::string pi_state_key(const PiPtr& p);

struct PiWeakSet {
  std::vector<PiPtr> states;  // deduplicated by pi_state_key
  bool truncated = false;
};

// tau-closure (reflexive), bounded by cfg.maxTauDepth / cfg.maxStates.
PiWeakSet pi_tau_closure(const PiPtr& p, const ExploreConfig& cfg);

// p =>^label => q with the hat convention: a weak tau may be empty.
// For bound outputs the requested object name replaces whatever fresh
// name the derivation chose (the caller picks a name fresh for its own
// comparison context).
PiWeakSet pi_weak_step(const PiPtr& p, const ActionLabel& label,
                       const ExploreConfig& cfg,
                       const NameSet& extraCandidates = {});

enum class Divergence { Divergent, Convergent, Unknown };

struct DivergenceResult {
  Divergence verdict = Divergence::Unknown;
  int statesExplored = 0;
};

// Divergent iff a tau-cycle over canonical states is reachable; a state
// cap hit without a cycle reports Unknown, never Convergent.
DivergenceResult pi_is_divergent(const PiPtr& p, const ExploreConfig& cfg);

struct TauGraph {
  std::map<std::string, PiPtr> piNodes;  // key -> representative (pi graphs)
  std::map<std::string, HoPtr> hoNodes;  // key -> representative (ho graphs)
  std::set<std::pair<std::string, std::string>> edges;
  std::string root;
  bool complete = true;
};

TauGraph pi_tau_graph(const PiPtr& p, const ExploreConfig& cfg);

}  // namespace hopi

#endif
