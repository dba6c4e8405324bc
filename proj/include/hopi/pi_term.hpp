#ifndef HOPI_PI_TERM_HPP
#define HOPI_PI_TERM_HPP

#include <memory>
#include <variant>
#include <vector>

#include "hopi/name.hpp"

namespace hopi {

// First-order pi-calculus terms.
//
//   P ::= 0 | m(x).P | m<n>.P | (nu c)P | P|Q | !m(x).P
//
// Replication exists only in guarded-input form. Parallel composition is
// kept n-ary and flattened at construction; nil components are preserved
// (they matter for printing and for the normalization contract).
// Terms are immutable and shared.

struct PiTerm;
using PiPtr = std::shared_ptr<const PiTerm>;

struct PiNil {};
struct PiInput {
  Name chan;
  Name var;
  PiPtr body;
};
struct PiOutput {
  Name chan;
  Name obj;
  PiPtr body;
};
struct PiRestrict {
  Name name;
  PiPtr body;
};
struct PiPar {
  std::vector<PiPtr> comps;  // size >= 2 after flattening
};
struct PiReplIn {
  Name chan;
  Name var;
  PiPtr body;
};

struct PiTerm {
  std::variant<PiNil, PiInput, PiOutput, PiRestrict, PiPar, PiReplIn> node;

  template <typename T>
  explicit PiTerm(T&& n) : node(std::forward<T>(n)) {}

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

namespace pi {

PiPtr nil();
PiPtr input(Name chan, Name var, PiPtr body);
PiPtr output(Name chan, Name obj, PiPtr body);
PiPtr restrict_(Name n, PiPtr body);
PiPtr par(std::vector<PiPtr> comps);  // flattens nested PiPar
PiPtr repl_in(Name chan, Name var, PiPtr body);

}  // namespace pi

// Free names (constants and variables alike; in a closed term every free
// name is a constant). Bound names never escape.
NameSet free_names(const PiPtr& p);
// Free names classified as variables by their binding position metadata;
// nonempty only for subterms taken out of an enclosing input binder.
NameSet free_name_vars(const PiPtr& p);
// Every identifier occurring anywhere, free or bound.
NameSet all_names(const PiPtr& p);

bool structural_eq(const PiPtr& a, const PiPtr& b);

}  // namespace hopi

#endif
