#ifndef HOPI_HO_LTS_HPP
#define HOPI_HO_LTS_HPP

#include <string>
#include <vector>

#include "hopi/config.hpp"
#include "hopi/ho_term.hpp"
#include "hopi/pi_lts.hpp"  // Divergence, TauGraph

namespace hopi {

// tau | a(A) | (c~)a<A>. Extruded names are exactly the restricted names
// carried by the payload (ordered by first occurrence in it) and are
// fresh with respect to everything else in the source term.
struct HoActionLabel {
  enum Kind { Tau, Input, Output };
  Kind kind = Tau;
  Name subject;
  HoPtr payload;
  std::vector<Name> extruded;

  static HoActionLabel tau() { return {}; }
  static HoActionLabel input(Name a, HoPtr A) {
    return {Input, std::move(a), std::move(A), {}};
  }
  static HoActionLabel output(Name a, HoPtr A, std::vector<Name> ext) {
    return {Output, std::move(a), std::move(A), std::move(ext)};
  }
};

std::string label_str(const HoActionLabel& l);
// Canonical comparable form: extruded names are renamed positionally and
// the payload is printed canonically.
std::string label_key(const HoActionLabel& l);

enum class PayloadKind { Plain, ProcessAbstraction, NameAbstraction };

// Kind of the outermost normalized constructor. A mixed parameter vector
// classifies by its first parameter; `mixed` reports that it happened.
PayloadKind classify_payload(const HoPtr& a, bool* mixed = nullptr);

// Finite payload family fed to input transitions.
struct InputSupplier {
  std::vector<HoPtr> payloads;
};

// Default family: the three triggers on a fresh m, the name-feeding
// payloads lam(Z).Z@(b) for b in `candidates`, and 0.
InputSupplier default_supplier(const NameSet& candidates,
                               const NameSet& avoid);

struct HoTransition {
  HoActionLabel label;
  HoPtr target;  // normalized
};

// One-step transitions from the normal form of t. Input payloads range
// over the supplier; communication uses the communicated payload exactly.
// Transitions whose target is ill-kinded (normalization rejects it) are
// pruned.
std::vector<HoTransition> ho_step(const HoPtr& t, const InputSupplier& supply);

HoPtr ho_state(const HoPtr& t);
std::string ho_state_key(const HoPtr& t);

struct HoWeakSet {
  std::vector<HoPtr> states;
  bool truncated = false;
};

HoWeakSet ho_tau_closure(const HoPtr& t, const ExploreConfig& cfg);

// t =>^label=> u; for outputs, derived extruded names are aligned with
// the requested ones positionally and payloads compared up to alpha.
HoWeakSet ho_weak_step(const HoPtr& t, const HoActionLabel& label,
                       const InputSupplier& supply, const ExploreConfig& cfg);

// Weak output transitions at a subject, filtered by payload kind; used by
// the normal-bisimulation output clauses.
struct HoWeakOutput {
  HoPtr payload;
  std::vector<Name> extruded;
  HoPtr target;
};
struct HoWeakOutputs {
  std::vector<HoWeakOutput> outputs;
  bool truncated = false;
};
HoWeakOutputs ho_weak_outputs(const HoPtr& t, const Name& subject,
                              PayloadKind kind, const ExploreConfig& cfg,
                              Strength strength);

DivergenceResult ho_is_divergent(const HoPtr& t, const ExploreConfig& cfg);
TauGraph ho_tau_graph(const HoPtr& t, const ExploreConfig& cfg);

}  // namespace hopi

#endif
