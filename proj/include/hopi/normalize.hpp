#ifndef HOPI_NORMALIZE_HPP
#define HOPI_NORMALIZE_HPP

#include <optional>

#include "hopi/errors.hpp"
#include "hopi/ho_term.hpp"

namespace hopi {

// Structural-congruence normal form:
//  - every enabled application is beta-reduced, everywhere in the term
//    (including under prefixes); an application whose head is a variable
//    or an unresolved application is left in place,
//  - parallel composition is flattened and nil units are removed,
//  - the result is alpha-canonical.
// Restriction structure is preserved (scope extrusion is an LTS matter).
//
// Throws ArityError when |params| != |args|, KindError when an argument
// kind does not match its parameter or a term that can never become an
// abstraction is applied, and TermError when the reduction budget is
// exhausted (self-applicative terms need not terminate).
HoPtr normalize(const HoPtr& t);

// As above, but returns nullopt instead of throwing. Exploration uses
// this to prune transitions into ill-kinded configurations.
std::optional<HoPtr> try_normalize(const HoPtr& t);

}  // namespace hopi

#endif
