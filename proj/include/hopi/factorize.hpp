#ifndef HOPI_FACTORIZE_HPP
#define HOPI_FACTORIZE_HPP

#include <utility>
#include <vector>

#include "hopi/config.hpp"
#include "hopi/equiv.hpp"

namespace hopi {

enum class ContextShape { Plain, AbstractionPrefixed };

struct ContextClass {
  ContextShape shape = ContextShape::Plain;
  std::vector<Param> params;  // collected outermost abstraction prefix
  HoPtr stripped;             // non-abstraction core, normalized
};

// Normalizes the context body and strips the maximal outermost
// abstraction prefix. An empty prefix classifies as Plain.
ContextClass classify_context(const ContextHole& e);

// E[A] as substitution: capture-avoiding, per the factorization
// statement where the payload sits outside the context's binders on the
// rewritten side. (Probing contexts use the capturing fill_hole
// instead.)
HoPtr fill_context(const ContextHole& e, const HoPtr& a);

// The trigger-indirected form of E[A]:
//   plain E:      (m)(E[Tr_kind] | !forwarder_kind(m, A))
//   lam(U~).E':   lam(U~).((m)(E'[Tr_kind] | !forwarder_kind(m, A)))
// with the trigger and forwarder selected by A's payload kind.
// Preconditions: m not free in E or A; A closed.
HoPtr factorize(const ContextHole& e, const HoPtr& a, const Name& m);

// Deterministic family of (context, payload) pairs covering all six
// theorem clauses, including the A@(d) example; used by the acceptance
// suite and the repro command.
std::vector<std::pair<ContextHole, HoPtr>> factorization_family();

}  // namespace hopi

#endif
