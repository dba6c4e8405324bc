#include "hopi/ho_lts.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "hopi/canon.hpp"
#include "hopi/normalize.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

namespace hopi {

namespace {

void occurrence_order_rec(const HoPtr& t, NameSet& bound,
                          std::vector<Name>& out, NameSet& seen) {
  auto touch = [&](const Name& n) {
    if (bound.count(n) || seen.count(n)) return;
    seen.insert(n);
    out.push_back(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil> || std::is_same_v<T, HoVar>) {
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          touch(n.chan);
          occurrence_order_rec(n.body, bound, out, seen);
        } else if constexpr (std::is_same_v<T, HoOutput> ||
                             std::is_same_v<T, HoReplOut>) {
          touch(n.chan);
          occurrence_order_rec(n.payload, bound, out, seen);
          occurrence_order_rec(n.cont, bound, out, seen);
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          bool added = bound.insert(n.name).second;
          occurrence_order_rec(n.body, bound, out, seen);
          if (added) bound.erase(n.name);
        } else if constexpr (std::is_same_v<T, HoPar>) {
          for (const auto& c : n.comps)
            occurrence_order_rec(c, bound, out, seen);
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          NameSet added;
          for (const auto& p : n.params)
            if (p.kind == ParamKind::NameParam && bound.insert(p.id).second)
              added.insert(p.id);
          occurrence_order_rec(n.body, bound, out, seen);
          for (const auto& a : added) bound.erase(a);
        } else {  // HoApp
          occurrence_order_rec(n.fun, bound, out, seen);
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              touch(*nm);
            else
              occurrence_order_rec(std::get<HoPtr>(a), bound, out, seen);
          }
        }
      },
      t->node);
}

// Free names of t in order of first occurrence.
std::vector<Name> occurrence_order(const HoPtr& t) {
  NameSet bound, seen;
  std::vector<Name> out;
  occurrence_order_rec(t, bound, out, seen);
  return out;
}

std::vector<Name> order_extruded(const HoPtr& payload,
                                 const std::vector<Name>& ext) {
  std::vector<Name> order = occurrence_order(payload);
  std::vector<Name> sorted;
  for (const Name& n : order)
    if (std::find(ext.begin(), ext.end(), n) != ext.end())
      sorted.push_back(n);
  for (const Name& n : ext)
    if (std::find(sorted.begin(), sorted.end(), n) == sorted.end())
      sorted.push_back(n);
  return sorted;
}

struct InputTemplate {
  Name subject;
  Name var;  // fresh process variable placeholder
  HoPtr open;
};

struct RawOutput {
  Name subject;
  HoPtr payload;
  std::vector<Name> extruded;
  HoPtr target;
};

struct Derivation {
  std::vector<std::pair<HoActionLabel, HoPtr>> taus;  // label always tau
  std::vector<RawOutput> outputs;
  std::vector<InputTemplate> inputs;
};

struct Deriver {
  NameSet avoid;

  Derivation derive(const HoPtr& t) {
    Derivation d;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, HoNil> || std::is_same_v<T, HoVar> ||
                        std::is_same_v<T, HoAbs> || std::is_same_v<T, HoApp>) {
            // No rule: nil, variables (open terms), abstraction values and
            // stuck applications have no transitions of their own.
          } else if constexpr (std::is_same_v<T, HoInput>) {
            Name v = fresh_name(avoid, "V");
            d.inputs.push_back({n.chan, v, subst_term(n.body, ho::var(v), n.var)});
          } else if constexpr (std::is_same_v<T, HoReplIn>) {
            Name v = fresh_name(avoid, "V");
            d.inputs.push_back(
                {n.chan, v,
                 ho::par({subst_term(n.body, ho::var(v), n.var), t})});
          } else if constexpr (std::is_same_v<T, HoOutput>) {
            d.outputs.push_back({n.chan, n.payload, {}, n.cont});
          } else if constexpr (std::is_same_v<T, HoReplOut>) {
            d.outputs.push_back(
                {n.chan, n.payload, {}, ho::par({n.cont, t})});
          } else if constexpr (std::is_same_v<T, HoRestrict>) {
            Derivation inner = derive(n.body);
            for (auto& [lbl, tgt] : inner.taus)
              d.taus.emplace_back(lbl, ho::restrict_(n.name, tgt));
            for (auto& o : inner.outputs) {
              if (o.subject == n.name) continue;
              NameSet pf = free_names(o.payload);
              bool inPayload = pf.count(n.name) &&
                               std::find(o.extruded.begin(), o.extruded.end(),
                                         n.name) == o.extruded.end();
              if (inPayload) {
                // Extrusion: the restricted name escapes with the payload
                // under a fresh public identity.
                NameSet av = avoid;
                add_all(av, all_names(o.target));
                add_all(av, all_names(o.payload));
                for (const Name& e : o.extruded) av.insert(e);
                Name e = fresh_name(av, n.name.pretty_base());
                std::vector<Name> ext{e};
                ext.insert(ext.end(), o.extruded.begin(), o.extruded.end());
                d.outputs.push_back({o.subject,
                                     subst_name(o.payload, e, n.name),
                                     std::move(ext),
                                     subst_name(o.target, e, n.name)});
              } else {
                d.outputs.push_back({o.subject, o.payload, o.extruded,
                                     ho::restrict_(n.name, o.target)});
              }
            }
            for (auto& it : inner.inputs) {
              if (it.subject == n.name) continue;
              d.inputs.push_back(
                  {it.subject, it.var, ho::restrict_(n.name, it.open)});
            }
          } else {  // HoPar
            std::vector<Derivation> sub;
            sub.reserve(n.comps.size());
            for (const auto& c : n.comps) sub.push_back(derive(c));
            auto rebuilt = [&](std::size_t i, const HoPtr& x) {
              std::vector<HoPtr> comps = n.comps;
              comps[i] = x;
              return ho::par(std::move(comps));
            };
            auto rebuilt2 = [&](std::size_t i, const HoPtr& xi, std::size_t j,
                                const HoPtr& xj) {
              std::vector<HoPtr> comps = n.comps;
              comps[i] = xi;
              comps[j] = xj;
              return ho::par(std::move(comps));
            };
            for (std::size_t i = 0; i < sub.size(); ++i) {
              for (auto& [lbl, tgt] : sub[i].taus)
                d.taus.emplace_back(lbl, rebuilt(i, tgt));
              for (auto& o : sub[i].outputs)
                d.outputs.push_back(
                    {o.subject, o.payload, o.extruded, rebuilt(i, o.target)});
              for (auto& it : sub[i].inputs)
                d.inputs.push_back({it.subject, it.var, rebuilt(i, it.open)});
            }
            for (std::size_t j = 0; j < sub.size(); ++j) {
              for (auto& o : sub[j].outputs) {
                for (std::size_t i = 0; i < sub.size(); ++i) {
                  if (i == j) continue;
                  for (auto& it : sub[i].inputs) {
                    if (it.subject != o.subject) continue;
                    HoPtr received = subst_term(it.open, o.payload, it.var);
                    HoPtr par = rebuilt2(i, received, j, o.target);
                    HoPtr res = par;
                    for (auto e = o.extruded.rbegin(); e != o.extruded.rend();
                         ++e)
                      res = ho::restrict_(*e, res);
                    d.taus.emplace_back(HoActionLabel::tau(), res);
                  }
                }
              }
            }
          }
        },
        t->node);
    return d;
  }
};

HoPtr trig_plain(const Name& m) {
  return ho::output(m, ho::nil(), ho::nil());
}
HoPtr trig_proc(const Name& m) {
  Name z("Z");
  return ho::abs({{z, ParamKind::ProcessParam}},
                 ho::output(m, ho::var(z), ho::nil()));
}
HoPtr trig_name(const Name& m) {
  Name z("z");
  Name y("Y");
  return ho::abs(
      {{z, ParamKind::NameParam}},
      ho::output(m,
                 ho::abs({{y, ParamKind::ProcessParam}},
                         ho::app(ho::var(y), {HoArg(z)})),
                 ho::nil()));
}

}  // namespace

std::string label_str(const HoActionLabel& l) {
  switch (l.kind) {
    case HoActionLabel::Tau:
      return "tau";
    case HoActionLabel::Input:
      return l.subject.id + "(" + print(l.payload) + ")";
    case HoActionLabel::Output: {
      std::string s;
      if (!l.extruded.empty()) {
        s += "(nu ";
        for (std::size_t i = 0; i < l.extruded.size(); ++i) {
          if (i) s += ",";
          s += l.extruded[i].id;
        }
        s += ")";
      }
      s += l.subject.id + "<" + print(l.payload) + ">";
      return s;
    }
  }
  return "?";
}

std::string label_key(const HoActionLabel& l) {
  switch (l.kind) {
    case HoActionLabel::Tau:
      return "tau";
    case HoActionLabel::Input:
      return "in " + l.subject.id + " " + canon_key(l.payload);
    case HoActionLabel::Output: {
      HoPtr payload = l.payload;
      for (std::size_t i = 0; i < l.extruded.size(); ++i)
        payload = subst_name(payload, Name("#!" + std::to_string(i)),
                             l.extruded[i]);
      return "out " + l.subject.id + " nu" +
             std::to_string(l.extruded.size()) + " " + canon_key(payload);
    }
  }
  return "?";
}

PayloadKind classify_payload(const HoPtr& a, bool* mixed) {
  if (mixed) *mixed = false;
  const auto* f = a->as<HoAbs>();
  if (!f || f->params.empty()) return PayloadKind::Plain;
  ParamKind k0 = f->params.front().kind;
  if (mixed)
    for (const auto& p : f->params)
      if (p.kind != k0) *mixed = true;
  return k0 == ParamKind::NameParam ? PayloadKind::NameAbstraction
                                    : PayloadKind::ProcessAbstraction;
}

InputSupplier default_supplier(const NameSet& candidates,
                               const NameSet& avoid) {
  NameSet av = avoid;
  add_all(av, candidates);
  Name m = fresh_name(av, "m");
  InputSupplier s;
  s.payloads.push_back(trig_plain(m));
  s.payloads.push_back(trig_proc(m));
  s.payloads.push_back(trig_name(m));
  Name z("Z");
  for (const Name& b : candidates)
    s.payloads.push_back(ho::abs({{z, ParamKind::ProcessParam}},
                                 ho::app(ho::var(z), {HoArg(b)})));
  s.payloads.push_back(ho::nil());
  return s;
}

std::vector<HoTransition> ho_step(const HoPtr& t, const InputSupplier& supply) {
  HoPtr t0 = normalize(t);
  Deriver dv;
  dv.avoid = all_names(t0);
  for (const auto& p : supply.payloads) add_all(dv.avoid, all_names(p));
  Derivation d = dv.derive(t0);

  std::vector<HoTransition> out;
  for (auto& [lbl, tgt] : d.taus) {
    auto nt = try_normalize(tgt);
    if (nt) out.push_back({HoActionLabel::tau(), *nt});
  }
  for (auto& o : d.outputs) {
    auto np = try_normalize(o.payload);
    auto nt = try_normalize(o.target);
    if (!np || !nt) continue;
    out.push_back({HoActionLabel::output(o.subject, *np,
                                         order_extruded(*np, o.extruded)),
                   *nt});
  }
  for (auto& it : d.inputs) {
    for (const auto& a : supply.payloads) {
      auto nt = try_normalize(subst_term(it.open, a, it.var));
      if (nt)
        out.push_back({HoActionLabel::input(it.subject, normalize(a)), *nt});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const HoTransition& a, const HoTransition& b) {
              std::string la = label_key(a.label), lb = label_key(b.label);
              if (la != lb) return la < lb;
              return raw_print(a.target) < raw_print(b.target);
            });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const HoTransition& a, const HoTransition& b) {
                          return label_key(a.label) == label_key(b.label) &&
                                 structural_eq(a.target, b.target);
                        }),
            out.end());
  return out;
}

HoPtr ho_state(const HoPtr& t) { return sorted_canonical(normalize(t)); }

std::string ho_state_key(const HoPtr& t) { return raw_print(ho_state(t)); }

HoWeakSet ho_tau_closure(const HoPtr& t, const ExploreConfig& cfg) {
  HoWeakSet out;
  std::map<std::string, HoPtr> seen;
  std::deque<std::pair<HoPtr, int>> frontier;
  HoPtr s0 = ho_state(t);
  seen.emplace(raw_print(s0), s0);
  frontier.emplace_back(s0, 0);
  InputSupplier none;
  while (!frontier.empty()) {
    auto [s, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= cfg.maxTauDepth) {
      out.truncated = true;
      continue;
    }
    for (const auto& tr : ho_step(s, none)) {
      if (tr.label.kind != HoActionLabel::Tau) continue;
      HoPtr u = ho_state(tr.target);
      std::string k = raw_print(u);
      if (seen.count(k)) continue;
      if (static_cast<int>(seen.size()) >= cfg.maxStates) {
        out.truncated = true;
        continue;
      }
      seen.emplace(std::move(k), u);
      frontier.emplace_back(u, depth + 1);
    }
  }
  for (auto& [k, s] : seen) out.states.push_back(s);
  return out;
}

namespace {

// Tries to align a derived output with a requested label; returns the
// aligned target or nullptr.
HoPtr align_output(const HoTransition& tr, const HoActionLabel& want) {
  if (tr.label.kind != HoActionLabel::Output ||
      tr.label.subject != want.subject ||
      tr.label.extruded.size() != want.extruded.size())
    return nullptr;
  HoPtr payload = tr.label.payload;
  HoPtr target = tr.target;
  for (std::size_t i = 0; i < want.extruded.size(); ++i) {
    payload = subst_name(payload, want.extruded[i], tr.label.extruded[i]);
    target = subst_name(target, want.extruded[i], tr.label.extruded[i]);
  }
  if (!alpha_eq(payload, want.payload)) return nullptr;
  return target;
}

}  // namespace

HoWeakSet ho_weak_step(const HoPtr& t, const HoActionLabel& label,
                       const InputSupplier& supply, const ExploreConfig& cfg) {
  HoWeakSet pre = ho_tau_closure(t, cfg);
  if (label.kind == HoActionLabel::Tau) return pre;

  InputSupplier sup = supply;
  if (label.kind == HoActionLabel::Input) sup.payloads.push_back(label.payload);

  HoWeakSet out;
  out.truncated = pre.truncated;
  std::map<std::string, HoPtr> seen;
  for (const HoPtr& s : pre.states) {
    for (const auto& tr : ho_step(s, sup)) {
      HoPtr tgt;
      if (label.kind == HoActionLabel::Input) {
        if (tr.label.kind == HoActionLabel::Input &&
            tr.label.subject == label.subject &&
            alpha_eq(tr.label.payload, label.payload))
          tgt = tr.target;
      } else {
        tgt = align_output(tr, label);
      }
      if (!tgt) continue;
      HoWeakSet post = ho_tau_closure(tgt, cfg);
      out.truncated = out.truncated || post.truncated;
      for (const HoPtr& q : post.states) seen.emplace(raw_print(q), q);
    }
  }
  for (auto& [k, s] : seen) out.states.push_back(s);
  return out;
}

HoWeakOutputs ho_weak_outputs(const HoPtr& t, const Name& subject,
                              PayloadKind kind, const ExploreConfig& cfg,
                              Strength strength) {
  HoWeakOutputs out;
  std::vector<HoPtr> sources;
  if (strength == Strength::Weak) {
    HoWeakSet pre = ho_tau_closure(t, cfg);
    out.truncated = pre.truncated;
    sources = pre.states;
  } else {
    sources.push_back(ho_state(t));
  }
  InputSupplier none;
  for (const HoPtr& s : sources) {
    for (const auto& tr : ho_step(s, none)) {
      if (tr.label.kind != HoActionLabel::Output ||
          tr.label.subject != subject)
        continue;
      if (classify_payload(tr.label.payload) != kind) continue;
      if (strength == Strength::Weak) {
        HoWeakSet post = ho_tau_closure(tr.target, cfg);
        out.truncated = out.truncated || post.truncated;
        for (const HoPtr& q : post.states)
          out.outputs.push_back({tr.label.payload, tr.label.extruded, q});
      } else {
        out.outputs.push_back(
            {tr.label.payload, tr.label.extruded, tr.target});
      }
    }
  }
  return out;
}

DivergenceResult ho_is_divergent(const HoPtr& t, const ExploreConfig& cfg) {
  std::map<std::string, int> color;
  DivergenceResult res;
  bool capped = false;
  InputSupplier none;

  struct Frame {
    HoPtr term;
    std::string key;
    std::vector<HoPtr> succs;
    std::size_t next = 0;
  };
  auto succs_of = [&](const HoPtr& s) {
    std::vector<HoPtr> out;
    for (const auto& tr : ho_step(s, none))
      if (tr.label.kind == HoActionLabel::Tau)
        out.push_back(ho_state(tr.target));
    return out;
  };
  std::vector<Frame> stack;
  HoPtr s0 = ho_state(t);
  stack.push_back({s0, raw_print(s0), succs_of(s0), 0});
  color[stack.back().key] = 1;

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= f.succs.size()) {
      color[f.key] = 2;
      stack.pop_back();
      continue;
    }
    HoPtr nxt = f.succs[f.next++];
    std::string k = raw_print(nxt);
    auto it = color.find(k);
    if (it != color.end()) {
      if (it->second == 1) {
        res.verdict = Divergence::Divergent;
        res.statesExplored = static_cast<int>(color.size());
        return res;
      }
      continue;
    }
    if (static_cast<int>(color.size()) >= cfg.maxStates) {
      capped = true;
      continue;
    }
    color[k] = 1;
    stack.push_back({nxt, k, succs_of(nxt), 0});
  }
  res.statesExplored = static_cast<int>(color.size());
  res.verdict = capped ? Divergence::Unknown : Divergence::Convergent;
  return res;
}

TauGraph ho_tau_graph(const HoPtr& t, const ExploreConfig& cfg) {
  TauGraph g;
  InputSupplier none;
  HoPtr s0 = ho_state(t);
  g.root = raw_print(s0);
  g.hoNodes.emplace(g.root, s0);
  std::deque<HoPtr> frontier{s0};
  while (!frontier.empty()) {
    HoPtr s = frontier.front();
    frontier.pop_front();
    std::string sk = raw_print(s);
    for (const auto& tr : ho_step(s, none)) {
      if (tr.label.kind != HoActionLabel::Tau) continue;
      HoPtr u = ho_state(tr.target);
      std::string uk = raw_print(u);
      g.edges.emplace(sk, uk);
      if (g.hoNodes.count(uk)) continue;
      if (static_cast<int>(g.hoNodes.size()) >= cfg.maxStates) {
        g.complete = false;
        continue;
      }
      g.hoNodes.emplace(uk, u);
      frontier.push_back(u);
    }
  }
  return g;
}

}  // namespace hopi
