#ifndef HOPI_EQUIV_HPP
#define HOPI_EQUIV_HPP

#include <set>
#include <string>
#include <vector>

#include "hopi/config.hpp"
#include "hopi/ho_lts.hpp"
#include "hopi/pi_lts.hpp"

namespace hopi {

// The three trigger shapes; each has m as its only free name.
enum class TriggerKind { Tr, TrD, Trd };

// Tr = m<0>, TrD = lam(Z).m<Z>, Trd = lam(z).m<lam(Y).Y@(z)>.
HoPtr make_trigger(TriggerKind kind, const Name& m);

// The replicated forwarder stocking a at the fresh channel m:
// !m(Z).a for plain payloads (Z unused), !m(Z).a@(Z) for process
// abstractions, !m(Z).Z@(a) for name abstractions.
HoPtr make_forwarder(PayloadKind kind, const Name& m, const HoPtr& a);

struct WitnessStep {
  std::string side;  // "left" or "right"
  std::string label;
  std::string term;  // state reached on that side
};

struct BoundsHit {
  bool tauDepth = false;
  bool states = false;
  bool pairs = false;
  bool quantifier = false;  // finite rFamily / context family / supplier
  bool any() const { return tauDepth || states || pairs || quantifier; }
  std::string str() const;
};

struct Verdict {
  enum R { Equivalent, Inequivalent, Unknown };
  R result = Unknown;
  std::vector<WitnessStep> witness;
  BoundsHit bounds;
};

// Ground bisimulation (identical labels, received names included). The
// state pair game runs over alpha-canonical, garbage-pruned states with
// shared input candidates; verdicts degrade to Unknown only on bound
// hits, never silently.
Verdict ground_bisim(const PiPtr& p, const PiPtr& q, const ExploreConfig& cfg,
                     Strength strength = Strength::Weak);

// Local bisimulation with the bound-output clause instantiated over
// cfg.rFamily only; the verdict is bounded by that family. Extruded
// names are aligned to a fresh name with display hint "d", so family
// members mentioning d compose as intended.
Verdict local_bisim_bounded(const PiPtr& p, const PiPtr& q,
                            const ExploreConfig& cfg);

// Normal bisimulation: trigger-input clauses, payload-kind-matched output
// clauses composing the replicated forwarders !m.A / !m(Z).A@(Z) /
// !m(Z).Z@(A), and tau. Input probing additionally draws the default
// supplier payloads (name-feeders lam(Z).Z@(b) and 0); abstraction pairs
// are compared by instantiating both sides with the same probe
// arguments.
Verdict normal_bisim(const HoPtr& t1, const HoPtr& t2,
                     const ExploreConfig& cfg,
                     Strength strength = Strength::Weak);

// Finite context probing: refutes by a bounded visible-trace difference
// between C[t1] and C[t2] for some C in the family; otherwise reports
// (family-bounded) equivalence.
Verdict context_probe(const HoPtr& t1, const HoPtr& t2,
                      const std::vector<ContextHole>& contexts,
                      const ExploreConfig& cfg);

HoPtr fill_hole(const ContextHole& c, const HoPtr& t);

// Canned families. Encoded pi contexts probe within the encoding's
// image; trigger contexts exercise received processes by running,
// applying and duplicating them on the given channels.
std::vector<ContextHole> encoded_pi_contexts(const NameSet& alphabet);
std::vector<ContextHole> trigger_contexts(const NameSet& channels);

// Bounded visible-trace sets (canonical label-key sequences). Extruded
// names are renamed to a reserved positional sequence along each path so
// traces of different terms are comparable.
struct TraceSet {
  std::set<std::string> traces;
  bool complete = true;
};
TraceSet pi_traces(const PiPtr& p, const NameSet& universe,
                   const ExploreConfig& cfg);
TraceSet ho_traces(const HoPtr& t, const InputSupplier& supply,
                   const ExploreConfig& cfg);

// Checker-internal state pruning, exposed for tests: drops restrictions
// of names that cannot interact (no free occurrence in the rest of the
// scope) together with the components they guard.
PiPtr pi_gc(const PiPtr& p);
HoPtr ho_gc(const HoPtr& t);

}  // namespace hopi

#endif
