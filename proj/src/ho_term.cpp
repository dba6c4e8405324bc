#include "hopi/ho_term.hpp"

namespace hopi {

namespace ho {

HoPtr nil() {
  static const HoPtr n = std::make_shared<HoTerm>(HoNil{});
  return n;
}

HoPtr var(Name x) { return std::make_shared<HoTerm>(HoVar{std::move(x)}); }

HoPtr input(Name chan, Name var, HoPtr body) {
  return std::make_shared<HoTerm>(
      HoInput{std::move(chan), std::move(var), std::move(body)});
}

HoPtr output(Name chan, HoPtr payload, HoPtr cont) {
  return std::make_shared<HoTerm>(
      HoOutput{std::move(chan), std::move(payload), std::move(cont)});
}

HoPtr restrict_(Name n, HoPtr body) {
  n.is_var = false;
  return std::make_shared<HoTerm>(HoRestrict{std::move(n), std::move(body)});
}

HoPtr par(std::vector<HoPtr> comps) {
  std::vector<HoPtr> flat;
  for (auto& c : comps) {
    if (const auto* p = c->as<HoPar>()) {
      flat.insert(flat.end(), p->comps.begin(), p->comps.end());
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return nil();
  if (flat.size() == 1) return flat[0];
  return std::make_shared<HoTerm>(HoPar{std::move(flat)});
}

HoPtr repl_in(Name chan, Name var, HoPtr body) {
  return std::make_shared<HoTerm>(
      HoReplIn{std::move(chan), std::move(var), std::move(body)});
}

HoPtr repl_out(Name chan, HoPtr payload, HoPtr cont) {
  return std::make_shared<HoTerm>(
      HoReplOut{std::move(chan), std::move(payload), std::move(cont)});
}

HoPtr abs(std::vector<Param> params, HoPtr body) {
  for (auto& p : params)
    if (p.kind == ParamKind::NameParam) p.id.is_var = true;
  return std::make_shared<HoTerm>(HoAbs{std::move(params), std::move(body)});
}

HoPtr app(HoPtr fun, std::vector<HoArg> args) {
  return std::make_shared<HoTerm>(HoApp{std::move(fun), std::move(args)});
}

}  // namespace ho

namespace {

// wantKind: 0 = free names, 1 = free process variables, 2 = everything.
template <typename Take>
void walk(const HoPtr& t, NameSet boundNames, NameSet boundVars, int wantKind,
          Take&& take) {
  auto name_occ = [&](const Name& n) {
    if (wantKind == 2 || (wantKind == 0 && !boundNames.count(n))) take(n);
  };
  auto pvar_occ = [&](const Name& v) {
    if (wantKind == 2 || (wantKind == 1 && !boundVars.count(v))) take(v);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
        } else if constexpr (std::is_same_v<T, HoVar>) {
          pvar_occ(n.var);
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          name_occ(n.chan);
          if (wantKind == 2) take(n.var);
          boundVars.insert(n.var);
          walk(n.body, std::move(boundNames), std::move(boundVars), wantKind,
               take);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          name_occ(n.chan);
          walk(n.payload, boundNames, boundVars, wantKind, take);
          walk(n.cont, std::move(boundNames), std::move(boundVars), wantKind,
               take);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          if (wantKind == 2) take(n.name);
          boundNames.insert(n.name);
          walk(n.body, std::move(boundNames), std::move(boundVars), wantKind,
               take);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          for (const auto& c : n.comps)
            walk(c, boundNames, boundVars, wantKind, take);
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          for (const auto& p : n.params) {
            if (wantKind == 2) take(p.id);
            if (p.kind == ParamKind::NameParam)
              boundNames.insert(p.id);
            else
              boundVars.insert(p.id);
          }
          walk(n.body, std::move(boundNames), std::move(boundVars), wantKind,
               take);
        } else if constexpr (std::is_same_v<T, HoApp>) {
          walk(n.fun, boundNames, boundVars, wantKind, take);
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              name_occ(*nm);
            else
              walk(std::get<HoPtr>(a), boundNames, boundVars, wantKind, take);
          }
        }
      },
      t->node);
}

}  // namespace

NameSet free_names(const HoPtr& t) {
  NameSet out;
  walk(t, {}, {}, 0, [&](const Name& n) { out.insert(n); });
  return out;
}

NameSet free_name_vars(const HoPtr& t) {
  NameSet out;
  walk(t, {}, {}, 0, [&](const Name& n) {
    if (n.is_var) out.insert(n);
  });
  return out;
}

NameSet free_proc_vars(const HoPtr& t) {
  NameSet out;
  walk(t, {}, {}, 1, [&](const Name& n) { out.insert(n); });
  return out;
}

NameSet all_names(const HoPtr& t) {
  NameSet out;
  walk(t, {}, {}, 2, [&](const Name& n) { out.insert(n); });
  return out;
}

bool is_closed(const HoPtr& t) {
  return free_proc_vars(t).empty() && free_name_vars(t).empty();
}

bool structural_eq(const HoPtr& a, const HoPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, HoNil>) {
          return true;
        } else if constexpr (std::is_same_v<T, HoVar>) {
          return x.var == y.var;
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          return x.chan == y.chan && x.var == y.var &&
                 structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          return x.chan == y.chan && structural_eq(x.payload, y.payload) &&
                 structural_eq(x.cont, y.cont);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          return x.name == y.name && structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          if (x.comps.size() != y.comps.size()) return false;
          for (std::size_t i = 0; i < x.comps.size(); ++i)
            if (!structural_eq(x.comps[i], y.comps[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          if (x.params.size() != y.params.size()) return false;
          for (std::size_t i = 0; i < x.params.size(); ++i)
            if (x.params[i].id != y.params[i].id ||
                x.params[i].kind != y.params[i].kind)
              return false;
          return structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, HoApp>) {
          if (x.args.size() != y.args.size()) return false;
          if (!structural_eq(x.fun, y.fun)) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            const Name* nx = std::get_if<Name>(&x.args[i]);
            const Name* ny = std::get_if<Name>(&y.args[i]);
            if ((nx == nullptr) != (ny == nullptr)) return false;
            if (nx) {
              if (*nx != *ny) return false;
            } else if (!structural_eq(std::get<HoPtr>(x.args[i]),
                                      std::get<HoPtr>(y.args[i]))) {
              return false;
            }
          }
          return true;
        }
      },
      a->node);
}

}  // namespace hopi
