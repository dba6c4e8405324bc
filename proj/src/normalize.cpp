#include "hopi/normalize.hpp"

#include "hopi/canon.hpp"
#include "hopi/subst.hpp"

namespace hopi {

namespace {

constexpr long kReductionBudget = 20000;

HoPtr norm(const HoPtr& t, long& budget);

HoPtr reduce_app(const HoAbs& f, const std::vector<HoArg>& args,
                 const HoPtr& site, long& budget) {
  if (f.params.size() != args.size())
    throw ArityError("application arity mismatch: " +
                     std::to_string(f.params.size()) + " parameter(s), " +
                     std::to_string(args.size()) + " argument(s) in " +
                     raw_print(site));
  HoSubst s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Param& p = f.params[i];
    if (p.kind == ParamKind::NameParam) {
      const Name* n = std::get_if<Name>(&args[i]);
      if (!n)
        throw KindError("name parameter " + p.id.id +
                        " instantiated with a term in " + raw_print(site));
      s.names.emplace(p.id, *n);
    } else {
      const HoPtr* a = std::get_if<HoPtr>(&args[i]);
      if (!a)
        throw KindError("process parameter " + p.id.id +
                        " instantiated with a name in " + raw_print(site));
      s.procs.emplace(p.id, *a);
    }
  }
  return norm(subst(f.body, s), budget);
}

HoPtr norm(const HoPtr& t, long& budget) {
  if (--budget < 0)
    throw TermError("normalization reduction budget exhausted");
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil> || std::is_same_v<T, HoVar>) {
          return t;
        } else if constexpr (std::is_same_v<T, HoInput>) {
          return ho::input(n.chan, n.var, norm(n.body, budget));
        } else if constexpr (std::is_same_v<T, HoReplIn>) {
          return ho::repl_in(n.chan, n.var, norm(n.body, budget));
        } else if constexpr (std::is_same_v<T, HoOutput>) {
          return ho::output(n.chan, norm(n.payload, budget),
                            norm(n.cont, budget));
        } else if constexpr (std::is_same_v<T, HoReplOut>) {
          return ho::repl_out(n.chan, norm(n.payload, budget),
                              norm(n.cont, budget));
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          return ho::restrict_(n.name, norm(n.body, budget));
        } else if constexpr (std::is_same_v<T, HoPar>) {
          std::vector<HoPtr> comps;
          for (const auto& c : n.comps) {
            HoPtr nc = norm(c, budget);
            if (!nc->as<HoNil>()) comps.push_back(std::move(nc));
          }
          return ho::par(std::move(comps));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          return ho::abs(n.params, norm(n.body, budget));
        } else {  // HoApp
          HoPtr fun = norm(n.fun, budget);
          std::vector<HoArg> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              args.emplace_back(*nm);
            else
              args.emplace_back(norm(std::get<HoPtr>(a), budget));
          }
          if (const auto* f = fun->as<HoAbs>())
            return reduce_app(*f, args, t, budget);
          if (fun->as<HoVar>() || fun->as<HoApp>())
            return ho::app(fun, std::move(args));
          throw KindError("applying a non-abstraction to arguments in " +
                          raw_print(t));
        }
      },
      t->node);
}

}  // namespace

HoPtr normalize(const HoPtr& t) {
  long budget = kReductionBudget;
  return canonical(norm(t, budget));
}

std::optional<HoPtr> try_normalize(const HoPtr& t) {
  try {
    return normalize(t);
  } catch (const TermError&) {
    return std::nullopt;
  }
}

}  // namespace hopi
