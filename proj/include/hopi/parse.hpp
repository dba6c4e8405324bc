#ifndef HOPI_PARSE_HPP
#define HOPI_PARSE_HPP

#include <string_view>

#include "hopi/errors.hpp"
#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// Concrete syntax (shared by the CLI; `|` has lowest precedence, prefixes
// bind tighter, parentheses group):
//
//   pi:    0, a(x).P, a<b>.P, (nu c)P, P | Q, !a(x).P
//   hopi:  additionally a(X).T, a<T>.T', !a<T>.T',
//          lam(U1,...,Un).T and T@(K1,...,Kn) with T parenthesized unless
//          it is a variable; parameters/arguments that are lowercase
//          identifiers are names, uppercase ones process variables.
//
// Sugar accepted by both parsers: a trailing ".0" may be dropped; "a.P"
// is an input with an unused binder; "^a.P" is the CCS-style output
// prefix ((nu d)a<d>.P in pi, a<0>.P in hopi); "tau.P" is the usual
// internal-step encoding.
//
// Identifiers: names and name variables [a-z][A-Za-z0-9_]*, process
// variables [A-Z][A-Za-z0-9_]*.

PiPtr parse_pi(std::string_view src);

// requireClosed rejects free process variables (the pi-side has none by
// construction); pass false when parsing contexts with a hole variable.
HoPtr parse_ho(std::string_view src, bool requireClosed = true);

}  // namespace hopi

#endif
