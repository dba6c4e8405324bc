#include "hopi/pi_term.hpp"

#include <algorithm>

namespace hopi {

namespace pi {

PiPtr nil() {
  static const PiPtr n = std::make_shared<PiTerm>(PiNil{});
  return n;
}

PiPtr input(Name chan, Name var, PiPtr body) {
  var.is_var = true;
  return std::make_shared<PiTerm>(
      PiInput{std::move(chan), std::move(var), std::move(body)});
}

PiPtr output(Name chan, Name obj, PiPtr body) {
  return std::make_shared<PiTerm>(
      PiOutput{std::move(chan), std::move(obj), std::move(body)});
}

PiPtr restrict_(Name n, PiPtr body) {
  n.is_var = false;
  return std::make_shared<PiTerm>(PiRestrict{std::move(n), std::move(body)});
}

PiPtr par(std::vector<PiPtr> comps) {
  std::vector<PiPtr> flat;
  for (auto& c : comps) {
    if (const auto* p = c->as<PiPar>()) {
      flat.insert(flat.end(), p->comps.begin(), p->comps.end());
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return nil();
  if (flat.size() == 1) return flat[0];
  return std::make_shared<PiTerm>(PiPar{std::move(flat)});
}

PiPtr repl_in(Name chan, Name var, PiPtr body) {
  var.is_var = true;
  return std::make_shared<PiTerm>(
      PiReplIn{std::move(chan), std::move(var), std::move(body)});
}

}  // namespace pi

namespace {

template <typename Take>
void walk_names(const PiPtr& p, NameSet bound, bool wantBound, Take&& take) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
        } else if constexpr (std::is_same_v<T, PiInput> ||
                             std::is_same_v<T, PiReplIn>) {
          if (wantBound || !bound.count(n.chan)) take(n.chan);
          if (wantBound) take(n.var);
          bound.insert(n.var);
          walk_names(n.body, std::move(bound), wantBound, take);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          if (wantBound || !bound.count(n.chan)) take(n.chan);
          if (wantBound || !bound.count(n.obj)) take(n.obj);
          walk_names(n.body, std::move(bound), wantBound, take);
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          if (wantBound) take(n.name);
          bound.insert(n.name);
          walk_names(n.body, std::move(bound), wantBound, take);
        } else if constexpr (std::is_same_v<T, PiPar>) {
          for (const auto& c : n.comps) walk_names(c, bound, wantBound, take);
        }
      },
      p->node);
}

}  // namespace

NameSet free_names(const PiPtr& p) {
  NameSet out;
  walk_names(p, {}, false, [&](const Name& n) { out.insert(n); });
  return out;
}

NameSet free_name_vars(const PiPtr& p) {
  NameSet out;
  walk_names(p, {}, false, [&](const Name& n) {
    if (n.is_var) out.insert(n);
  });
  return out;
}

NameSet all_names(const PiPtr& p) {
  NameSet out;
  walk_names(p, {}, true, [&](const Name& n) { out.insert(n); });
  return out;
}

bool structural_eq(const PiPtr& a, const PiPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, PiNil>) {
          return true;
        } else if constexpr (std::is_same_v<T, PiInput> ||
                             std::is_same_v<T, PiReplIn>) {
          return x.chan == y.chan && x.var == y.var &&
                 structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return x.chan == y.chan && x.obj == y.obj &&
                 structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          return x.name == y.name && structural_eq(x.body, y.body);
        } else if constexpr (std::is_same_v<T, PiPar>) {
          if (x.comps.size() != y.comps.size()) return false;
          for (std::size_t i = 0; i < x.comps.size(); ++i)
            if (!structural_eq(x.comps[i], y.comps[i])) return false;
          return true;
        }
      },
      a->node);
}

}  // namespace hopi
