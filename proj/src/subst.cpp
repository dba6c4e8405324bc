#include "hopi/subst.hpp"

#include <algorithm>

namespace hopi {

namespace {

NameSet pi_range_names(const std::map<Name, Name>& s) {
  NameSet out;
  for (const auto& [from, to] : s) out.insert(to);
  return out;
}

PiPtr pi_subst(const PiPtr& p, std::map<Name, Name> s);

// Handles a binder occurrence: drops shadowed entries and renames the
// binder when it would capture a name introduced by the substitution.
// Returns the (possibly renamed) binder and the substitution for the body.
Name pi_enter_binder(const Name& b, std::map<Name, Name>& s,
                     const PiPtr& body) {
  s.erase(b);
  if (s.empty()) return b;
  NameSet range = pi_range_names(s);
  if (!range.count(b)) return b;
  NameSet avoid = range;
  add_all(avoid, all_names(body));
  for (const auto& [from, to] : s) avoid.insert(from);
  Name fresh = fresh_name(avoid, b.pretty_base());
  fresh.is_var = b.is_var;
  s.emplace(b, fresh);
  return fresh;
}

PiPtr pi_subst(const PiPtr& p, std::map<Name, Name> s) {
  if (s.empty()) return p;
  auto name_of = [&](const Name& n) {
    auto it = s.find(n);
    return it == s.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> PiPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PiInput>) {
          Name chan = name_of(n.chan);
          auto s2 = s;
          Name var = pi_enter_binder(n.var, s2, n.body);
          return pi::input(chan, var, pi_subst(n.body, std::move(s2)));
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          Name chan = name_of(n.chan);
          auto s2 = s;
          Name var = pi_enter_binder(n.var, s2, n.body);
          return pi::repl_in(chan, var, pi_subst(n.body, std::move(s2)));
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return pi::output(name_of(n.chan), name_of(n.obj),
                            pi_subst(n.body, s));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          auto s2 = s;
          Name b = pi_enter_binder(n.name, s2, n.body);
          return pi::restrict_(b, pi_subst(n.body, std::move(s2)));
        } else {  // PiPar
          std::vector<PiPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(pi_subst(c, s));
          return pi::par(std::move(comps));
        }
      },
      p->node);
}

NameSet ho_range_free_names(const HoSubst& s) {
  NameSet out;
  for (const auto& [from, to] : s.names) out.insert(to);
  for (const auto& [from, to] : s.procs) add_all(out, free_names(to));
  return out;
}

NameSet ho_range_free_pvars(const HoSubst& s) {
  NameSet out;
  for (const auto& [from, to] : s.procs) add_all(out, free_proc_vars(to));
  return out;
}

HoPtr ho_subst(const HoPtr& t, HoSubst s);

Name ho_enter_name_binder(const Name& b, HoSubst& s, const HoPtr& body) {
  s.names.erase(b);
  if (s.empty()) return b;
  if (!ho_range_free_names(s).count(b)) return b;
  NameSet avoid = ho_range_free_names(s);
  add_all(avoid, all_names(body));
  for (const auto& [from, to] : s.names) avoid.insert(from);
  for (const auto& [from, to] : s.procs) avoid.insert(from);
  Name fresh = fresh_name(avoid, b.pretty_base());
  fresh.is_var = b.is_var;
  s.names.emplace(b, fresh);
  return fresh;
}

Name ho_enter_pvar_binder(const Name& b, HoSubst& s, const HoPtr& body) {
  s.procs.erase(b);
  if (s.empty()) return b;
  if (!ho_range_free_pvars(s).count(b)) return b;
  NameSet avoid = ho_range_free_pvars(s);
  add_all(avoid, all_names(body));
  for (const auto& [from, to] : s.procs) avoid.insert(from);
  Name fresh = fresh_name(avoid, b.pretty_base());
  s.procs.emplace(b, ho::var(fresh));
  return fresh;
}

HoPtr ho_subst(const HoPtr& t, HoSubst s) {
  if (s.empty()) return t;
  auto name_of = [&](const Name& n) {
    auto it = s.names.find(n);
    return it == s.names.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
          return t;
        } else if constexpr (std::is_same_v<T, HoVar>) {
          auto it = s.procs.find(n.var);
          return it == s.procs.end() ? t : it->second;
        } else if constexpr (std::is_same_v<T, HoInput>) {
          Name chan = name_of(n.chan);
          auto s2 = s;
          Name var = ho_enter_pvar_binder(n.var, s2, n.body);
          return ho::input(chan, var, ho_subst(n.body, std::move(s2)));
        } else if constexpr (std::is_same_v<T, HoReplIn>) {
          Name chan = name_of(n.chan);
          auto s2 = s;
          Name var = ho_enter_pvar_binder(n.var, s2, n.body);
          return ho::repl_in(chan, var, ho_subst(n.body, std::move(s2)));
        } else if constexpr (std::is_same_v<T, HoOutput>) {
          return ho::output(name_of(n.chan), ho_subst(n.payload, s),
                            ho_subst(n.cont, s));
        } else if constexpr (std::is_same_v<T, HoReplOut>) {
          return ho::repl_out(name_of(n.chan), ho_subst(n.payload, s),
                              ho_subst(n.cont, s));
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          auto s2 = s;
          Name b = ho_enter_name_binder(n.name, s2, n.body);
          return ho::restrict_(b, ho_subst(n.body, std::move(s2)));
        } else if constexpr (std::is_same_v<T, HoPar>) {
          std::vector<HoPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(ho_subst(c, s));
          return ho::par(std::move(comps));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          auto s2 = s;
          std::vector<Param> params;
          params.reserve(n.params.size());
          for (const auto& prm : n.params) {
            if (prm.kind == ParamKind::NameParam)
              params.push_back(
                  {ho_enter_name_binder(prm.id, s2, n.body), prm.kind});
            else
              params.push_back(
                  {ho_enter_pvar_binder(prm.id, s2, n.body), prm.kind});
          }
          return ho::abs(std::move(params), ho_subst(n.body, std::move(s2)));
        } else {  // HoApp
          std::vector<HoArg> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              args.emplace_back(name_of(*nm));
            else
              args.emplace_back(ho_subst(std::get<HoPtr>(a), s));
          }
          return ho::app(ho_subst(n.fun, s), std::move(args));
        }
      },
      t->node);
}

}  // namespace

PiPtr subst_name(const PiPtr& p, const Name& n, const Name& m) {
  if (n == m) return p;
  return pi_subst(p, {{m, n}});
}

PiPtr subst(const PiPtr& p, const std::map<Name, Name>& names) {
  return pi_subst(p, names);
}

HoPtr subst_name(const HoPtr& t, const Name& n, const Name& m) {
  if (n == m) return t;
  HoSubst s;
  s.names.emplace(m, n);
  return ho_subst(t, std::move(s));
}

HoPtr subst_term(const HoPtr& t, const HoPtr& a, const Name& x) {
  HoSubst s;
  s.procs.emplace(x, a);
  return ho_subst(t, std::move(s));
}

HoPtr subst(const HoPtr& t, const HoSubst& s) { return ho_subst(t, s); }

}  // namespace hopi
