#include "hopi/pi_lts.hpp"

#include <algorithm>
#include <deque>

#include "hopi/canon.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

namespace hopi {

std::string label_str(const ActionLabel& l) {
  switch (l.kind) {
    case ActionLabel::Tau:
      return "tau";
    case ActionLabel::Input:
      return l.subject.id + "(" + l.object.id + ")";
    case ActionLabel::FreeOutput:
      return l.subject.id + "<" + l.object.id + ">";
    case ActionLabel::BoundOutput:
      return l.subject.id + "<nu " + l.object.id + ">";
  }
  return "?";
}

namespace {

// Symbolic early-style input: target(b) = open{b/var}. The placeholder
// var is fresh for the whole source term, so wrapping surrounding
// structure around `open` is capture-safe.
struct InputTemplate {
  Name subject;
  Name var;
  PiPtr open;
};

struct Derivation {
  std::vector<std::pair<ActionLabel, PiPtr>> concrete;  // tau + outputs
  std::vector<InputTemplate> inputs;
};

PiPtr materialize(const InputTemplate& t, const Name& obj) {
  return subst_name(t.open, obj, t.var);
}

struct Deriver {
  NameSet avoid;  // all names of the source term plus candidates

  Derivation derive(const PiPtr& p) {
    Derivation d;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PiNil>) {
          } else if constexpr (std::is_same_v<T, PiInput>) {
            Name v = fresh_name(avoid, "v");
            v.is_var = true;
            d.inputs.push_back({n.chan, v, subst_name(n.body, v, n.var)});
          } else if constexpr (std::is_same_v<T, PiReplIn>) {
            Name v = fresh_name(avoid, "v");
            v.is_var = true;
            d.inputs.push_back(
                {n.chan, v, pi::par({subst_name(n.body, v, n.var), p})});
          } else if constexpr (std::is_same_v<T, PiOutput>) {
            d.concrete.emplace_back(
                ActionLabel::free_output(n.chan, n.obj), n.body);
          } else if constexpr (std::is_same_v<T, PiRestrict>) {
            Derivation inner = derive(n.body);
            for (auto& [lbl, tgt] : inner.concrete) {
              if (lbl.kind == ActionLabel::Tau) {
                d.concrete.emplace_back(lbl, pi::restrict_(n.name, tgt));
              } else if (lbl.subject == n.name) {
                continue;  // restricted channel
              } else if (lbl.kind == ActionLabel::FreeOutput &&
                         lbl.object == n.name) {
                // Open rule: extrude under a fresh public name.
                NameSet av = avoid;
                add_all(av, all_names(tgt));
                Name e = fresh_name(av, n.name.pretty_base());
                d.concrete.emplace_back(
                    ActionLabel::bound_output(lbl.subject, e),
                    subst_name(tgt, e, n.name));
              } else if (lbl.object == n.name) {
                continue;  // bound output of this very name cannot happen
              } else {
                d.concrete.emplace_back(lbl, pi::restrict_(n.name, tgt));
              }
            }
            for (auto& t : inner.inputs) {
              if (t.subject == n.name) continue;
              d.inputs.push_back(
                  {t.subject, t.var, pi::restrict_(n.name, t.open)});
            }
          } else {  // PiPar
            std::vector<Derivation> sub;
            sub.reserve(n.comps.size());
            for (const auto& c : n.comps) sub.push_back(derive(c));
            auto rebuilt = [&](std::size_t i, const PiPtr& t) {
              std::vector<PiPtr> comps = n.comps;
              comps[i] = t;
              return pi::par(std::move(comps));
            };
            auto rebuilt2 = [&](std::size_t i, const PiPtr& ti, std::size_t j,
                                const PiPtr& tj) {
              std::vector<PiPtr> comps = n.comps;
              comps[i] = ti;
              comps[j] = tj;
              return pi::par(std::move(comps));
            };
            for (std::size_t i = 0; i < sub.size(); ++i) {
              for (auto& [lbl, tgt] : sub[i].concrete)
                d.concrete.emplace_back(lbl, rebuilt(i, tgt));
              for (auto& t : sub[i].inputs)
                d.inputs.push_back({t.subject, t.var, rebuilt(i, t.open)});
            }
            // Communication, both directions: j outputs, i receives.
            for (std::size_t j = 0; j < sub.size(); ++j) {
              for (auto& [lbl, tgt] : sub[j].concrete) {
                if (lbl.kind != ActionLabel::FreeOutput &&
                    lbl.kind != ActionLabel::BoundOutput)
                  continue;
                for (std::size_t i = 0; i < sub.size(); ++i) {
                  if (i == j) continue;
                  for (auto& t : sub[i].inputs) {
                    if (t.subject != lbl.subject) continue;
                    PiPtr received = materialize(t, lbl.object);
                    PiPtr par = rebuilt2(i, received, j, tgt);
                    PiPtr res = lbl.kind == ActionLabel::FreeOutput
                                    ? par
                                    : pi::restrict_(lbl.object, par);
                    d.concrete.emplace_back(ActionLabel::tau(), res);
                  }
                }
              }
            }
          }
        },
        p->node);
    return d;
  }
};

PiPtr prune_nils(const PiPtr& p) {
  return std::visit(
      [&](const auto& n) -> PiPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PiInput>) {
          return pi::input(n.chan, n.var, prune_nils(n.body));
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          return pi::repl_in(n.chan, n.var, prune_nils(n.body));
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return pi::output(n.chan, n.obj, prune_nils(n.body));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          return pi::restrict_(n.name, prune_nils(n.body));
        } else {
          std::vector<PiPtr> comps;
          for (const auto& c : n.comps) {
            PiPtr pc = prune_nils(c);
            if (!pc->template as<PiNil>()) comps.push_back(std::move(pc));
          }
          return pi::par(std::move(comps));
        }
      },
      p->node);
}

}  // namespace

NameSet pi_candidates(const PiPtr& p, const ExploreConfig& cfg,
                      const NameSet& extra) {
  NameSet c = free_names(p);
  add_all(c, extra);
  NameSet avoid = all_names(p);
  add_all(avoid, extra);
  for (const Name& f :
       fresh_names(avoid, static_cast<std::size_t>(cfg.freshCandidates), "b"))
    c.insert(f);
  return c;
}

std::vector<PiTransition> pi_step(const PiPtr& p, const ExploreConfig& cfg,
                                  const NameSet& extraCandidates) {
  NameSet cand = pi_candidates(p, cfg, extraCandidates);
  Deriver dv;
  dv.avoid = all_names(p);
  add_all(dv.avoid, cand);
  Derivation d = dv.derive(p);

  std::vector<PiTransition> out;
  for (auto& [lbl, tgt] : d.concrete) out.push_back({lbl, canonical(tgt)});
  for (auto& t : d.inputs)
    for (const Name& b : cand)
      out.push_back({ActionLabel::input(t.subject, b),
                     canonical(materialize(t, b))});

  std::sort(out.begin(), out.end(),
            [](const PiTransition& a, const PiTransition& b) {
              std::string la = label_str(a.label), lb = label_str(b.label);
              if (la != lb) return la < lb;
              return raw_print(a.target) < raw_print(b.target);
            });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PiTransition& a, const PiTransition& b) {
                          return a.label == b.label &&
                                 structural_eq(a.target, b.target);
                        }),
            out.end());
  return out;
}

PiPtr pi_state(const PiPtr& p) { return sorted_canonical(prune_nils(p)); }

std::string pi_state_key(const PiPtr& p) { return raw_print(pi_state(p)); }

PiWeakSet pi_tau_closure(const PiPtr& p, const ExploreConfig& cfg) {
  PiWeakSet out;
  std::map<std::string, PiPtr> seen;
  std::deque<std::pair<PiPtr, int>> frontier;
  PiPtr s0 = pi_state(p);
  seen.emplace(raw_print(s0), s0);
  frontier.emplace_back(s0, 0);
  while (!frontier.empty()) {
    auto [s, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= cfg.maxTauDepth) {
      out.truncated = true;
      continue;
    }
    for (const auto& tr : pi_step(s, cfg)) {
      if (tr.label.kind != ActionLabel::Tau) continue;
      PiPtr t = pi_state(tr.target);
      std::string k = raw_print(t);
      if (seen.count(k)) continue;
      if (static_cast<int>(seen.size()) >= cfg.maxStates) {
        out.truncated = true;
        continue;
      }
      seen.emplace(std::move(k), t);
      frontier.emplace_back(t, depth + 1);
    }
  }
  out.states.reserve(seen.size());
  for (auto& [k, s] : seen) out.states.push_back(s);
  return out;
}

PiWeakSet pi_weak_step(const PiPtr& p, const ActionLabel& label,
                       const ExploreConfig& cfg,
                       const NameSet& extraCandidates) {
  PiWeakSet pre = pi_tau_closure(p, cfg);
  if (label.kind == ActionLabel::Tau) return pre;

  NameSet extra = extraCandidates;
  if (label.kind == ActionLabel::Input) extra.insert(label.object);

  PiWeakSet out;
  out.truncated = pre.truncated;
  std::map<std::string, PiPtr> seen;
  for (const PiPtr& s : pre.states) {
    for (const auto& tr : pi_step(s, cfg, extra)) {
      PiPtr tgt;
      if (tr.label == label) {
        tgt = tr.target;
      } else if (label.kind == ActionLabel::BoundOutput &&
                 tr.label.kind == ActionLabel::BoundOutput &&
                 tr.label.subject == label.subject) {
        // Align the freshly chosen extruded name with the requested one.
        tgt = subst_name(tr.target, label.object, tr.label.object);
      } else {
        continue;
      }
      PiWeakSet post = pi_tau_closure(tgt, cfg);
      out.truncated = out.truncated || post.truncated;
      for (const PiPtr& q : post.states) seen.emplace(raw_print(q), q);
    }
  }
  for (auto& [k, s] : seen) out.states.push_back(s);
  return out;
}

DivergenceResult pi_is_divergent(const PiPtr& p, const ExploreConfig& cfg) {
  // Cycle detection over canonical states: iterative DFS with an on-path
  // mark; a reachable tau-cycle means an infinite tau sequence.
  std::map<std::string, int> color;  // 0 unvisited, 1 on path, 2 done
  std::vector<PiPtr> stackTerms;
  DivergenceResult res;
  bool capped = false;

  struct Frame {
    PiPtr term;
    std::string key;
    std::vector<PiPtr> succs;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  PiPtr s0 = pi_state(p);
  stack.push_back({s0, raw_print(s0), {}, 0});
  color[stack.back().key] = 1;

  auto succs_of = [&](const PiPtr& s) {
    std::vector<PiPtr> out;
    for (const auto& tr : pi_step(s, cfg))
      if (tr.label.kind == ActionLabel::Tau) out.push_back(pi_state(tr.target));
    return out;
  };
  stack.back().succs = succs_of(s0);

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= f.succs.size()) {
      color[f.key] = 2;
      stack.pop_back();
      continue;
    }
    PiPtr nxt = f.succs[f.next++];
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

TauGraph pi_tau_graph(const PiPtr& p, const ExploreConfig& cfg) {
  TauGraph g;
  PiPtr s0 = pi_state(p);
  g.root = raw_print(s0);
  g.piNodes.emplace(g.root, s0);
  std::deque<PiPtr> frontier{s0};
  while (!frontier.empty()) {
    PiPtr s = frontier.front();
    frontier.pop_front();
    std::string sk = raw_print(s);
    for (const auto& tr : pi_step(s, cfg)) {
      if (tr.label.kind != ActionLabel::Tau) continue;
      PiPtr t = pi_state(tr.target);
      std::string tk = raw_print(t);
      g.edges.emplace(sk, tk);
      if (g.piNodes.count(tk)) continue;
      if (static_cast<int>(g.piNodes.size()) >= cfg.maxStates) {
        g.complete = false;
        continue;
      }
      g.piNodes.emplace(tk, t);
      frontier.push_back(t);
    }
  }
  return g;
}

}  // namespace hopi
