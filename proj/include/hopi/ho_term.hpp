#ifndef HOPI_HO_TERM_HPP
#define HOPI_HO_TERM_HPP

#include <memory>
#include <variant>
#include <vector>

#include "hopi/name.hpp"

namespace hopi {

// Higher-order calculus with parameterization on names and on processes.
//
//   T ::= 0 | X | u(X).T | u<T'>.T | T|T' | (nu c)T | !u(X).T | !u<T'>.T
//       | lam(U1,...,Un).T | T@(K1,...,Kn)
//
// Abstraction parameters are name variables or process variables; an
// application argument is a name or a term, and its kind must match the
// parameter it instantiates (checked during normalization).

struct HoTerm;
using HoPtr = std::shared_ptr<const HoTerm>;

enum class ParamKind { NameParam, ProcessParam };

struct Param {
  Name id;
  ParamKind kind;
};

using HoArg = std::variant<Name, HoPtr>;

struct HoNil {};
struct HoVar {
  Name var;  // process variable
};
struct HoInput {
  Name chan;
  Name var;
  HoPtr body;
};
struct HoOutput {
  Name chan;
  HoPtr payload;
  HoPtr cont;
};
struct HoRestrict {
  Name name;
  HoPtr body;
};
struct HoPar {
  std::vector<HoPtr> comps;
};
struct HoReplIn {
  Name chan;
  Name var;
  HoPtr body;
};
struct HoReplOut {
  Name chan;
  HoPtr payload;
  HoPtr cont;
};
struct HoAbs {
  std::vector<Param> params;  // pairwise distinct, bound in body
  HoPtr body;
};
struct HoApp {
  HoPtr fun;
  std::vector<HoArg> args;
};

struct HoTerm {
  std::variant<HoNil, HoVar, HoInput, HoOutput, HoRestrict, HoPar, HoReplIn,
               HoReplOut, HoAbs, HoApp>
      node;

  template <typename T>
  explicit HoTerm(T&& n) : node(std::forward<T>(n)) {}

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

namespace ho {

HoPtr nil();
HoPtr var(Name x);
HoPtr input(Name chan, Name var, HoPtr body);
HoPtr output(Name chan, HoPtr payload, HoPtr cont);
HoPtr restrict_(Name n, HoPtr body);
HoPtr par(std::vector<HoPtr> comps);  // flattens nested HoPar
HoPtr repl_in(Name chan, Name var, HoPtr body);
HoPtr repl_out(Name chan, HoPtr payload, HoPtr cont);
HoPtr abs(std::vector<Param> params, HoPtr body);
HoPtr app(HoPtr fun, std::vector<HoArg> args);

}  // namespace ho

NameSet free_names(const HoPtr& t);
NameSet free_name_vars(const HoPtr& t);
// Free process variables.
NameSet free_proc_vars(const HoPtr& t);
// Every name and process-variable identifier occurring anywhere.
NameSet all_names(const HoPtr& t);

bool structural_eq(const HoPtr& a, const HoPtr& b);
bool is_closed(const HoPtr& t);

}  // namespace hopi

#endif
