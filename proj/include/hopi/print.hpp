#ifndef HOPI_PRINT_HPP
#define HOPI_PRINT_HPP

#include <string>

#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// Parseable concrete-syntax rendering. Canonical #k binders are shown
// under their display hint (freshened against everything visible in
// scope), so parse(print(t)) is alpha-equivalent to t.
std::string print(const PiPtr& p);
std::string print(const HoPtr& t);

}  // namespace hopi

#endif
