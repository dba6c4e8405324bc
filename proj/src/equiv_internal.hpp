#ifndef HOPI_EQUIV_INTERNAL_HPP
#define HOPI_EQUIV_INTERNAL_HPP

#include <optional>

#include "hopi/equiv.hpp"

namespace hopi {

// Bounded visible-trace comparison used as a refutation shortcut inside
// the bisimulation games: a trace present on one side and provably
// absent (complete search) on the other refutes weak bisimilarity.
struct TraceRefutation {
  std::string side;  // side owning the distinguishing trace
  std::vector<WitnessStep> steps;
  std::string missing;  // trace the other side lacks
};

std::optional<TraceRefutation> ho_trace_refutes(const HoPtr& p, const HoPtr& q,
                                                const InputSupplier& supply,
                                                const ExploreConfig& cfg,
                                                int depth);

std::optional<TraceRefutation> pi_trace_refutes(const PiPtr& p, const PiPtr& q,
                                                const NameSet& universe,
                                                const ExploreConfig& cfg,
                                                int depth);

}  // namespace hopi

#endif
