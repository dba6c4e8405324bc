#ifndef HOPI_ENCODE_HPP
#define HOPI_ENCODE_HPP

#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// First-order to higher-order translation:
//
//   [[m(x).P]]  = m(Y).Y@(lam(x).[[P]])
//   [[m<n>.Q]]  = m<lam(Z).Z@(n)>.[[Q]]
//   [[!m(x).P]] = ![[m(x).P]]
//
// and homomorphic on nil, parallel composition and restriction. Open
// terms are allowed; name variables pass through unchanged. Y and Z come
// from a variable namespace the source calculus cannot mention, making
// the translation deterministic.
HoPtr encode(const PiPtr& p);

// Executable audit of encoding compositionality: checks at every node
// that the translation equals the operator context filled with the
// translated subterms.
bool check_compositionality(const PiPtr& p);

}  // namespace hopi

#endif
