#include "hopi/print.hpp"

#include <map>
#include <sstream>

namespace hopi {

namespace {

// Display environment: maps internal ids to the chosen display spelling.
struct Display {
  std::map<Name, std::string> names;
  std::map<Name, std::string> pvars;

  std::string name_of(const Name& n) const {
    auto it = names.find(n);
    return it == names.end() ? n.id : it->second;
  }
  std::string pvar_of(const Name& v) const {
    auto it = pvars.find(v);
    return it == pvars.end() ? v.id : it->second;
  }
};

NameSet display_frees_pi(const PiPtr& body, const Display& d,
                         const Name* skip = nullptr) {
  NameSet out;
  for (const Name& n : free_names(body)) {
    if (skip && n == *skip) continue;
    out.insert(Name(d.name_of(n)));
  }
  return out;
}

std::string pick(const NameSet& avoid, const std::string& base, bool upper) {
  Name n = fresh_name(avoid, base.empty() ? (upper ? "X" : "n") : base);
  if (upper && !std::isupper(static_cast<unsigned char>(n.id[0]))) {
    // Hints for process variables keep their case; this is only a guard.
    n.id[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n.id[0])));
  }
  return n.id;
}

void pp(const PiPtr& p, const Display& d, std::ostream& os, bool parenPar);

void pp_body(const PiPtr& body, const Display& d, std::ostream& os) {
  if (body->as<PiNil>()) return;  // trailing .0 omitted
  os << ".";
  pp(body, d, os, true);
}

void pp(const PiPtr& p, const Display& d, std::ostream& os, bool parenPar) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, PiInput> ||
                             std::is_same_v<T, PiReplIn>) {
          if constexpr (std::is_same_v<T, PiReplIn>) os << "!";
          NameSet avoid = display_frees_pi(n.body, d, &n.var);
          avoid.insert(Name(d.name_of(n.chan)));
          Display d2 = d;
          d2.names[n.var] = pick(avoid, n.var.pretty_base(), false);
          os << d.name_of(n.chan) << "(" << d2.names[n.var] << ")";
          pp_body(n.body, d2, os);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          os << d.name_of(n.chan) << "<" << d.name_of(n.obj) << ">";
          pp_body(n.body, d, os);
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          NameSet avoid = display_frees_pi(n.body, d, &n.name);
          Display d2 = d;
          d2.names[n.name] = pick(avoid, n.name.pretty_base(), false);
          os << "(nu " << d2.names[n.name] << ")";
          bool wrap = n.body->template as<PiPar>() != nullptr;
          pp(n.body, d2, os, wrap);
        } else {  // PiPar
          if (parenPar) os << "(";
          bool first = true;
          for (const auto& c : n.comps) {
            if (!first) os << " | ";
            first = false;
            pp(c, d, os, true);
          }
          if (parenPar) os << ")";
        }
      },
      p->node);
}

NameSet display_frees_ho(const HoPtr& body, const Display& d,
                         const Name* skip = nullptr) {
  NameSet out;
  for (const Name& n : free_names(body)) {
    if (skip && n == *skip) continue;
    out.insert(Name(d.name_of(n)));
  }
  return out;
}

NameSet display_pvars_ho(const HoPtr& body, const Display& d,
                         const Name* skip = nullptr) {
  NameSet out;
  for (const Name& v : free_proc_vars(body)) {
    if (skip && v == *skip) continue;
    out.insert(Name(d.pvar_of(v)));
  }
  return out;
}

void hp(const HoPtr& t, const Display& d, std::ostream& os, bool parenPar);

void hp_body(const HoPtr& body, const Display& d, std::ostream& os) {
  if (body->as<HoNil>()) return;
  os << ".";
  hp(body, d, os, true);
}

void hp(const HoPtr& t, const Display& d, std::ostream& os, bool parenPar) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, HoVar>) {
          os << d.pvar_of(n.var);
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          if constexpr (std::is_same_v<T, HoReplIn>) os << "!";
          NameSet avoid = display_pvars_ho(n.body, d, &n.var);
          Display d2 = d;
          d2.pvars[n.var] = pick(avoid, n.var.pretty_base(), true);
          os << d.name_of(n.chan) << "(" << d2.pvars[n.var] << ")";
          hp_body(n.body, d2, os);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          if constexpr (std::is_same_v<T, HoReplOut>) os << "!";
          os << d.name_of(n.chan) << "<";
          hp(n.payload, d, os, false);
          os << ">";
          hp_body(n.cont, d, os);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          NameSet avoid = display_frees_ho(n.body, d, &n.name);
          Display d2 = d;
          d2.names[n.name] = pick(avoid, n.name.pretty_base(), false);
          os << "(nu " << d2.names[n.name] << ")";
          bool wrap = n.body->template as<HoPar>() != nullptr;
          hp(n.body, d2, os, wrap);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          if (parenPar) os << "(";
          bool first = true;
          for (const auto& c : n.comps) {
            if (!first) os << " | ";
            first = false;
            hp(c, d, os, true);
          }
          if (parenPar) os << ")";
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          NameSet avoidN;
          NameSet avoidP;
          {
            NameSet own;
            for (const auto& prm : n.params) own.insert(prm.id);
            for (const Name& f : free_names(n.body))
              if (!own.count(f)) avoidN.insert(Name(d.name_of(f)));
            for (const Name& f : free_proc_vars(n.body))
              if (!own.count(f)) avoidP.insert(Name(d.pvar_of(f)));
          }
          Display d2 = d;
          os << "lam(";
          bool first = true;
          for (const auto& prm : n.params) {
            if (!first) os << ",";
            first = false;
            if (prm.kind == ParamKind::NameParam) {
              std::string s = pick(avoidN, prm.id.pretty_base(), false);
              avoidN.insert(Name(s));
              d2.names[prm.id] = s;
              os << s;
            } else {
              std::string s = pick(avoidP, prm.id.pretty_base(), true);
              avoidP.insert(Name(s));
              d2.pvars[prm.id] = s;
              os << s;
            }
          }
          os << ").";
          hp(n.body, d2, os, true);
        } else {  // HoApp
          if (n.fun->template as<HoVar>()) {
            hp(n.fun, d, os, true);
          } else {
            os << "(";
            hp(n.fun, d, os, false);
            os << ")";
          }
          os << "@(";
          bool first = true;
          for (const auto& a : n.args) {
            if (!first) os << ",";
            first = false;
            if (const Name* nm = std::get_if<Name>(&a))
              os << d.name_of(*nm);
            else
              hp(std::get<HoPtr>(a), d, os, true);
          }
          os << ")";
        }
      },
      t->node);
}

}  // namespace

std::string print(const PiPtr& p) {
  std::ostringstream os;
  pp(p, Display{}, os, false);
  return os.str();
}

std::string print(const HoPtr& t) {
  std::ostringstream os;
  hp(t, Display{}, os, false);
  return os.str();
}

}  // namespace hopi
