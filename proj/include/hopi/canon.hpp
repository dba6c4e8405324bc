#ifndef HOPI_CANON_HPP
#define HOPI_CANON_HPP

#include <string>

#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// Alpha-canonical form: every binder is renamed to a positional #k
// identifier (preorder assignment, skipping any #j already free in the
// term), so two alpha-equivalent terms yield structurally identical
// representations in O(size). Free names are untouched; the original
// binder spelling is kept as the display hint.
PiPtr canonical(const PiPtr& p);
HoPtr canonical(const HoPtr& t);

// Structural fingerprint of the canonical form. Equality of keys is
// exactly alpha-equivalence.
std::string canon_key(const PiPtr& p);
std::string canon_key(const HoPtr& t);

bool alpha_eq(const PiPtr& a, const PiPtr& b);
bool alpha_eq(const HoPtr& a, const HoPtr& b);

// Canonical form with parallel components additionally sorted (a sound
// coarsening by commutativity, used for state deduplication during
// exploration). Sorting and renaming are iterated to a fixpoint; the
// result is deterministic and identifies all alpha-variants.
PiPtr sorted_canonical(const PiPtr& p);
HoPtr sorted_canonical(const HoPtr& t);

// Raw identifier-faithful print (keys, debugging); not parseable.
std::string raw_print(const PiPtr& p);
std::string raw_print(const HoPtr& t);

}  // namespace hopi

#endif
