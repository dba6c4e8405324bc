#ifndef HOPI_SUBST_HPP
#define HOPI_SUBST_HPP

#include <map>

#include "hopi/ho_term.hpp"
#include "hopi/pi_term.hpp"

namespace hopi {

// P{n/m}: every free occurrence of m replaced by n, capture-avoiding
// (bound names are renamed away from n as needed).
PiPtr subst_name(const PiPtr& p, const Name& n, const Name& m);
HoPtr subst_name(const HoPtr& t, const Name& n, const Name& m);

// T{A/X}: higher-order substitution of a term for a free process variable.
HoPtr subst_term(const HoPtr& t, const HoPtr& a, const Name& x);

// Simultaneous substitution; domains are disjoint namespaces (names vs
// process variables). Used for beta-reduction of applications.
struct HoSubst {
  std::map<Name, Name> names;
  std::map<Name, HoPtr> procs;
  bool empty() const { return names.empty() && procs.empty(); }
};
HoPtr subst(const HoPtr& t, const HoSubst& s);
PiPtr subst(const PiPtr& p, const std::map<Name, Name>& names);

}  // namespace hopi

#endif
