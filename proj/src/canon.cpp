#include "hopi/canon.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hopi {

namespace {

struct Renamer {
  std::map<Name, Name> names;
  std::map<Name, Name> pvars;
  NameSet skip;  // #k identifiers free somewhere in the whole term
  unsigned long next = 0;

  Name fresh_canonical(const Name& old) {
    Name n;
    do {
      n = Name("#" + std::to_string(next++), old.pretty_base(), old.is_var);
    } while (skip.count(n));
    return n;
  }
};

PiPtr canon_pi(const PiPtr& p, Renamer& r) {
  auto name_of = [&](const Name& n) {
    auto it = r.names.find(n);
    return it == r.names.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> PiPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PiInput> ||
                             std::is_same_v<T, PiReplIn>) {
          Name chan = name_of(n.chan);
          auto saved = r.names;
          Name var = r.fresh_canonical(n.var);
          r.names[n.var] = var;
          PiPtr body = canon_pi(n.body, r);
          r.names = std::move(saved);
          if constexpr (std::is_same_v<T, PiInput>)
            return pi::input(chan, var, body);
          else
            return pi::repl_in(chan, var, body);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return pi::output(name_of(n.chan), name_of(n.obj),
                            canon_pi(n.body, r));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          auto saved = r.names;
          Name b = r.fresh_canonical(n.name);
          r.names[n.name] = b;
          PiPtr body = canon_pi(n.body, r);
          r.names = std::move(saved);
          return pi::restrict_(b, body);
        } else {  // PiPar
          std::vector<PiPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(canon_pi(c, r));
          return pi::par(std::move(comps));
        }
      },
      p->node);
}

HoPtr canon_ho(const HoPtr& t, Renamer& r) {
  auto name_of = [&](const Name& n) {
    auto it = r.names.find(n);
    return it == r.names.end() ? n : it->second;
  };
  auto pvar_of = [&](const Name& n) {
    auto it = r.pvars.find(n);
    return it == r.pvars.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
          return t;
        } else if constexpr (std::is_same_v<T, HoVar>) {
          return ho::var(pvar_of(n.var));
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          Name chan = name_of(n.chan);
          auto saved = r.pvars;
          Name var = r.fresh_canonical(n.var);
          r.pvars[n.var] = var;
          HoPtr body = canon_ho(n.body, r);
          r.pvars = std::move(saved);
          if constexpr (std::is_same_v<T, HoInput>)
            return ho::input(chan, var, body);
          else
            return ho::repl_in(chan, var, body);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          Name chan = name_of(n.chan);
          HoPtr payload = canon_ho(n.payload, r);
          HoPtr cont = canon_ho(n.cont, r);
          if constexpr (std::is_same_v<T, HoOutput>)
            return ho::output(chan, payload, cont);
          else
            return ho::repl_out(chan, payload, cont);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          auto saved = r.names;
          Name b = r.fresh_canonical(n.name);
          r.names[n.name] = b;
          HoPtr body = canon_ho(n.body, r);
          r.names = std::move(saved);
          return ho::restrict_(b, body);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          std::vector<HoPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(canon_ho(c, r));
          return ho::par(std::move(comps));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          auto savedNames = r.names;
          auto savedVars = r.pvars;
          std::vector<Param> params;
          params.reserve(n.params.size());
          for (const auto& prm : n.params) {
            Name b = r.fresh_canonical(prm.id);
            if (prm.kind == ParamKind::NameParam)
              r.names[prm.id] = b;
            else
              r.pvars[prm.id] = b;
            params.push_back({b, prm.kind});
          }
          HoPtr body = canon_ho(n.body, r);
          r.names = std::move(savedNames);
          r.pvars = std::move(savedVars);
          return ho::abs(std::move(params), body);
        } else {  // HoApp
          HoPtr fun = canon_ho(n.fun, r);
          std::vector<HoArg> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              args.emplace_back(name_of(*nm));
            else
              args.emplace_back(canon_ho(std::get<HoPtr>(a), r));
          }
          return ho::app(fun, std::move(args));
        }
      },
      t->node);
}

NameSet internal_frees(const NameSet& s) {
  NameSet out;
  for (const auto& n : s)
    if (n.internal()) out.insert(n);
  return out;
}

void print_pi(const PiPtr& p, std::ostream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, PiInput>) {
          os << n.chan.id << "(" << n.var.id << ").";
          print_pi(n.body, os);
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          os << "!" << n.chan.id << "(" << n.var.id << ").";
          print_pi(n.body, os);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          os << n.chan.id << "<" << n.obj.id << ">.";
          print_pi(n.body, os);
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          os << "(nu " << n.name.id << ")";
          print_pi(n.body, os);
        } else {
          os << "(";
          bool first = true;
          for (const auto& c : n.comps) {
            if (!first) os << "|";
            first = false;
            print_pi(c, os);
          }
          os << ")";
        }
      },
      p->node);
}

void print_ho(const HoPtr& t, std::ostream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, HoVar>) {
          os << n.var.id;
        } else if constexpr (std::is_same_v<T, HoInput>) {
          os << n.chan.id << "(" << n.var.id << ").";
          print_ho(n.body, os);
        } else if constexpr (std::is_same_v<T, HoReplIn>) {
          os << "!" << n.chan.id << "(" << n.var.id << ").";
          print_ho(n.body, os);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          if constexpr (std::is_same_v<T, HoReplOut>) os << "!";
          os << n.chan.id << "<";
          print_ho(n.payload, os);
          os << ">.";
          print_ho(n.cont, os);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          os << "(nu " << n.name.id << ")";
          print_ho(n.body, os);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          os << "(";
          bool first = true;
          for (const auto& c : n.comps) {
            if (!first) os << "|";
            first = false;
            print_ho(c, os);
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          os << "lam(";
          bool first = true;
          for (const auto& prm : n.params) {
            if (!first) os << ",";
            first = false;
            os << (prm.kind == ParamKind::NameParam ? "n:" : "p:")
               << prm.id.id;
          }
          os << ").";
          print_ho(n.body, os);
        } else {  // HoApp
          os << "[";
          print_ho(n.fun, os);
          os << "]@(";
          bool first = true;
          for (const auto& a : n.args) {
            if (!first) os << ",";
            first = false;
            if (const Name* nm = std::get_if<Name>(&a))
              os << nm->id;
            else
              print_ho(std::get<HoPtr>(a), os);
          }
          os << ")";
        }
      },
      t->node);
}

PiPtr sort_pars(const PiPtr& p) {
  return std::visit(
      [&](const auto& n) -> PiPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PiInput>) {
          return pi::input(n.chan, n.var, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          return pi::repl_in(n.chan, n.var, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return pi::output(n.chan, n.obj, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          return pi::restrict_(n.name, sort_pars(n.body));
        } else {
          std::vector<PiPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(sort_pars(c));
          std::stable_sort(comps.begin(), comps.end(),
                           [](const PiPtr& a, const PiPtr& b) {
                             return raw_print(a) < raw_print(b);
                           });
          return pi::par(std::move(comps));
        }
      },
      p->node);
}

HoPtr sort_pars(const HoPtr& t) {
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil> || std::is_same_v<T, HoVar>) {
          return t;
        } else if constexpr (std::is_same_v<T, HoInput>) {
          return ho::input(n.chan, n.var, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, HoReplIn>) {
          return ho::repl_in(n.chan, n.var, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, HoOutput>) {
          return ho::output(n.chan, sort_pars(n.payload), sort_pars(n.cont));
        } else if constexpr (std::is_same_v<T, HoReplOut>) {
          return ho::repl_out(n.chan, sort_pars(n.payload), sort_pars(n.cont));
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          return ho::restrict_(n.name, sort_pars(n.body));
        } else if constexpr (std::is_same_v<T, HoPar>) {
          std::vector<HoPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(sort_pars(c));
          std::stable_sort(comps.begin(), comps.end(),
                           [](const HoPtr& a, const HoPtr& b) {
                             return raw_print(a) < raw_print(b);
                           });
          return ho::par(std::move(comps));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          return ho::abs(n.params, sort_pars(n.body));
        } else {
          std::vector<HoArg> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              args.emplace_back(*nm);
            else
              args.emplace_back(sort_pars(std::get<HoPtr>(a)));
          }
          return ho::app(sort_pars(n.fun), std::move(args));
        }
      },
      t->node);
}

}  // namespace

PiPtr canonical(const PiPtr& p) {
  Renamer r;
  r.skip = internal_frees(free_names(p));
  return canon_pi(p, r);
}

HoPtr canonical(const HoPtr& t) {
  Renamer r;
  NameSet frees = free_names(t);
  add_all(frees, free_proc_vars(t));
  r.skip = internal_frees(frees);
  return canon_ho(t, r);
}

std::string raw_print(const PiPtr& p) {
  std::ostringstream os;
  print_pi(p, os);
  return os.str();
}

std::string raw_print(const HoPtr& t) {
  std::ostringstream os;
  print_ho(t, os);
  return os.str();
}

std::string canon_key(const PiPtr& p) { return raw_print(canonical(p)); }
std::string canon_key(const HoPtr& t) { return raw_print(canonical(t)); }

bool alpha_eq(const PiPtr& a, const PiPtr& b) {
  return a.get() == b.get() || canon_key(a) == canon_key(b);
}

bool alpha_eq(const HoPtr& a, const HoPtr& b) {
  return a.get() == b.get() || canon_key(a) == canon_key(b);
}

PiPtr sorted_canonical(const PiPtr& p) {
  PiPtr cur = canonical(p);
  for (int i = 0; i < 4; ++i) {
    PiPtr next = canonical(sort_pars(cur));
    if (structural_eq(next, cur)) break;
    cur = next;
  }
  return cur;
}

HoPtr sorted_canonical(const HoPtr& t) {
  HoPtr cur = canonical(t);
  for (int i = 0; i < 4; ++i) {
    HoPtr next = canonical(sort_pars(cur));
    if (structural_eq(next, cur)) break;
    cur = next;
  }
  return cur;
}

}  // namespace hopi
