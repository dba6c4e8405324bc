#include "hopi/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "equiv_internal.hpp"
#include "hopi/canon.hpp"
#include "hopi/normalize.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

namespace hopi {

std::string BoundsHit::str() const {
  std::string s;
  auto add = [&](bool b, const char* n) {
    if (!b) return;
    if (!s.empty()) s += ",";
    s += n;
  };
  add(tauDepth, "tauDepth");
  add(states, "states");
  add(pairs, "pairs");
  add(quantifier, "finiteFamily");
  return s.empty() ? "none" : s;
}

HoPtr make_trigger(TriggerKind kind, const Name& m) {
  Name z("Z");
  Name zl("z");
  Name y("Y");
  switch (kind) {
    case TriggerKind::Tr:
      return ho::output(m, ho::nil(), ho::nil());
    case TriggerKind::TrD:
      return ho::abs({{z, ParamKind::ProcessParam}},
                     ho::output(m, ho::var(z), ho::nil()));
    case TriggerKind::Trd:
      return ho::abs(
          {{zl, ParamKind::NameParam}},
          ho::output(m,
                     ho::abs({{y, ParamKind::ProcessParam}},
                             ho::app(ho::var(y), {HoArg(zl)})),
                     ho::nil()));
  }
  return ho::nil();
}

// ---------------------------------------------------------------------
// Garbage pruning: a restriction whose name cannot be the subject of any
// interaction makes the components it guards permanently inert.

namespace {

bool pi_top_guard(const PiPtr& c, const Name& n, bool& isInput) {
  if (const auto* i = c->as<PiInput>(); i && i->chan == n) {
    isInput = true;
    return true;
  }
  if (const auto* i = c->as<PiReplIn>(); i && i->chan == n) {
    isInput = true;
    return true;
  }
  if (const auto* o = c->as<PiOutput>(); o && o->chan == n) {
    isInput = false;
    return true;
  }
  return false;
}

bool ho_top_guard(const HoPtr& c, const Name& n, bool& isInput) {
  if (const auto* i = c->as<HoInput>(); i && i->chan == n) {
    isInput = true;
    return true;
  }
  if (const auto* i = c->as<HoReplIn>(); i && i->chan == n) {
    isInput = true;
    return true;
  }
  if (const auto* o = c->as<HoOutput>(); o && o->chan == n) {
    isInput = false;
    return true;
  }
  if (const auto* o = c->as<HoReplOut>(); o && o->chan == n) {
    isInput = false;
    return true;
  }
  return false;
}

template <typename Ptr, typename GuardFn, typename ParFn, typename FnFn>
std::vector<Ptr> drop_inert(const Name& restricted, std::vector<Ptr> comps,
                            GuardFn topGuard, ParFn, FnFn freeNamesOf) {
  for (;;) {
    std::vector<std::size_t> ins, outs;
    NameSet restFn;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      bool isInput = false;
      if (topGuard(comps[i], restricted, isInput)) {
        (isInput ? ins : outs).push_back(i);
      } else {
        add_all(restFn, freeNamesOf(comps[i]));
      }
    }
    if (restFn.count(restricted)) return comps;
    const std::vector<std::size_t>* kill = nullptr;
    if (!ins.empty() && outs.empty())
      kill = &ins;
    else if (!outs.empty() && ins.empty())
      kill = &outs;
    if (!kill) return comps;
    std::vector<Ptr> next;
    std::size_t ki = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (ki < kill->size() && (*kill)[ki] == i) {
        ++ki;
        continue;
      }
      next.push_back(comps[i]);
    }
    comps = std::move(next);
  }
}

PiPtr pi_gc_rec(const PiPtr& p) {
  return std::visit(
      [&](const auto& n) -> PiPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, PiInput>) {
          return pi::input(n.chan, n.var, pi_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          return pi::repl_in(n.chan, n.var, pi_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return pi::output(n.chan, n.obj, pi_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          PiPtr body = pi_gc_rec(n.body);
          std::vector<PiPtr> comps;
          if (const auto* par = body->as<PiPar>())
            comps = par->comps;
          else
            comps.push_back(body);
          comps = drop_inert<PiPtr>(
              n.name, std::move(comps),
              [](const PiPtr& c, const Name& nm, bool& in) {
                return pi_top_guard(c, nm, in);
              },
              nullptr, [](const PiPtr& c) { return free_names(c); });
          std::vector<PiPtr> live;
          for (auto& c : comps)
            if (!c->as<PiNil>()) live.push_back(std::move(c));
          PiPtr rebuilt = pi::par(std::move(live));
          if (!free_names(rebuilt).count(n.name)) return rebuilt;
          return pi::restrict_(n.name, rebuilt);
        } else {  // PiPar
          std::vector<PiPtr> comps;
          for (const auto& c : n.comps) {
            PiPtr g = pi_gc_rec(c);
            if (!g->as<PiNil>()) comps.push_back(std::move(g));
          }
          return pi::par(std::move(comps));
        }
      },
      p->node);
}

HoPtr ho_gc_rec(const HoPtr& t) {
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil> || std::is_same_v<T, HoVar>) {
          return t;
        } else if constexpr (std::is_same_v<T, HoInput>) {
          return ho::input(n.chan, n.var, ho_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, HoReplIn>) {
          return ho::repl_in(n.chan, n.var, ho_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, HoOutput>) {
          return ho::output(n.chan, n.payload, ho_gc_rec(n.cont));
        } else if constexpr (std::is_same_v<T, HoReplOut>) {
          return ho::repl_out(n.chan, n.payload, ho_gc_rec(n.cont));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          return ho::abs(n.params, ho_gc_rec(n.body));
        } else if constexpr (std::is_same_v<T, HoApp>) {
          return t;  // stuck application, nothing to prune
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          HoPtr body = ho_gc_rec(n.body);
          std::vector<HoPtr> comps;
          if (const auto* par = body->as<HoPar>())
            comps = par->comps;
          else
            comps.push_back(body);
          comps = drop_inert<HoPtr>(
              n.name, std::move(comps),
              [](const HoPtr& c, const Name& nm, bool& in) {
                return ho_top_guard(c, nm, in);
              },
              nullptr, [](const HoPtr& c) { return free_names(c); });
          std::vector<HoPtr> live;
          for (auto& c : comps)
            if (!c->as<HoNil>()) live.push_back(std::move(c));
          HoPtr rebuilt = ho::par(std::move(live));
          if (!free_names(rebuilt).count(n.name)) return rebuilt;
          return ho::restrict_(n.name, rebuilt);
        } else {  // HoPar
          std::vector<HoPtr> comps;
          for (const auto& c : n.comps) {
            HoPtr g = ho_gc_rec(c);
            if (!g->as<HoNil>()) comps.push_back(std::move(g));
          }
          return ho::par(std::move(comps));
        }
      },
      t->node);
}

}  // namespace

PiPtr pi_gc(const PiPtr& p) {
  PiPtr cur = p;
  for (int i = 0; i < 4; ++i) {
    PiPtr next = pi_gc_rec(cur);
    if (structural_eq(next, cur)) break;
    cur = next;
  }
  return cur;
}

HoPtr ho_gc(const HoPtr& t) {
  HoPtr cur = t;
  for (int i = 0; i < 4; ++i) {
    HoPtr next = ho_gc_rec(cur);
    if (structural_eq(next, cur)) break;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------
// Shared three-valued game plumbing.

namespace {

enum class Tri { False, Maybe, True };

Tri tri_and(Tri a, Tri b) { return std::min(a, b); }

struct GameCore {
  std::set<std::string> notEq;                 // persists across epochs
  std::map<std::string, Tri> memo;             // per epoch
  std::set<std::string> onPath;
  long pairsUsed = 0;
  int depthBudget = 8;  // iterative deepening level
  BoundsHit bounds;

  struct Refut {
    std::string side;
    std::string label;
    std::string attTerm;   // pretty, target of the unmatched move
    std::string attKey;
    std::vector<std::pair<std::string, std::string>> defs;  // key, pretty
    std::vector<WitnessStep> extra;  // realized trace, for trace refutations
  };
  std::map<std::string, Refut> refuted;

  void epoch_reset() {
    memo.clear();
    onPath.clear();
    pairsUsed = 0;
  }

  // Builds the alternating witness by walking refutation records.
  std::vector<WitnessStep> witness(const std::string& rootKey) {
    std::vector<WitnessStep> steps;
    std::set<std::string> seen;
    std::string cur = rootKey;
    while (steps.size() < 64 && refuted.count(cur) && seen.insert(cur).second) {
      const Refut& r = refuted.at(cur);
      steps.push_back({r.side, r.label, r.attTerm});
      for (const auto& e : r.extra) steps.push_back(e);
      if (r.defs.empty()) break;  // the move nobody matches
      const std::string other = r.side == "left" ? "right" : "left";
      // Follow the first refuted defender reply.
      steps.push_back({other, r.label, r.defs.front().second});
      cur = r.defs.front().first;
    }
    return steps;
  }
};

constexpr int kDeepeningSchedule[] = {4, 6, 8, 12, 16, 24};
constexpr int kPrefilterDepth = 3;

std::string pair_key(const std::string& a, const std::string& b) {
  return a <= b ? a + "\x1f" + b : b + "\x1f" + a;
}

// ---------------------------------------------------------------------
// pi game (ground + local).

struct PiGame {
  const ExploreConfig& cfg;
  Strength strength;
  bool localVariant;
  GameCore core;

  Tri check(const PiPtr& pin, const PiPtr& qin, int depth) {
    PiPtr p = pi_state(pi_gc(pin));
    PiPtr q = pi_state(pi_gc(qin));
    std::string kp = raw_print(p), kq = raw_print(q);
    if (kp == kq) return Tri::True;
    std::string key = pair_key(kp, kq);
    if (core.notEq.count(key)) return Tri::False;
    if (auto it = core.memo.find(key); it != core.memo.end()) return it->second;
    if (core.onPath.count(key)) return Tri::True;  // coinductive assumption
    if (++core.pairsUsed > cfg.maxPairs) {
      core.bounds.pairs = true;
      return Tri::Maybe;
    }
    if (depth > core.depthBudget) {
      core.bounds.pairs = true;
      return Tri::Maybe;
    }
    // Cheap sound refutation: a bounded weak-trace difference refutes
    // every bisimilarity checked here.
    {
      NameSet universe = free_names(p);
      add_all(universe, free_names(q));
      NameSet avoid = all_names(p);
      add_all(avoid, all_names(q));
      universe.insert(fresh_name(avoid, "b"));
      if (auto tref = pi_trace_refutes(p, q, universe, cfg, kPrefilterDepth)) {
        core.notEq.insert(key);
        GameCore::Refut ref{tref->side, "note: trace the other side lacks",
                            tref->missing, key, {}, std::move(tref->steps)};
        core.refuted.emplace(key, std::move(ref));
        return Tri::False;
      }
    }
    core.onPath.insert(key);
    Tri out = Tri::True;
    GameCore::Refut ref;

    NameSet extra = free_names(p);
    add_all(extra, free_names(q));

    for (int side = 0; side < 2 && out != Tri::False; ++side) {
      const PiPtr& att = side == 0 ? p : q;
      const PiPtr& dfn = side == 0 ? q : p;
      for (const auto& tr : pi_step(att, cfg, extra)) {
        ActionLabel lbl = tr.label;
        PiPtr attT = tr.target;
        if (lbl.kind == ActionLabel::BoundOutput) {
          NameSet avoid = all_names(p);
          add_all(avoid, all_names(q));
          for (const auto& r : cfg.rFamily) add_all(avoid, all_names(r));
          Name e = fresh_name(avoid, "d");
          attT = subst_name(attT, e, lbl.object);
          lbl = ActionLabel::bound_output(lbl.subject, e);
        }
        // Defender replies.
        std::vector<PiPtr> replies;
        bool truncated = false;
        if (strength == Strength::Weak) {
          PiWeakSet w = pi_weak_step(dfn, lbl, cfg, extra);
          replies = w.states;
          truncated = w.truncated;
          if (truncated) {
            core.bounds.tauDepth = true;
            core.bounds.states = true;
          }
        } else {
          for (const auto& dt : pi_step(dfn, cfg, extra)) {
            if (dt.label == lbl) {
              replies.push_back(dt.target);
            } else if (lbl.kind == ActionLabel::BoundOutput &&
                       dt.label.kind == ActionLabel::BoundOutput &&
                       dt.label.subject == lbl.subject) {
              replies.push_back(
                  subst_name(dt.target, lbl.object, dt.label.object));
            }
          }
        }
        bool matched = false;
        bool sawMaybe = false;
        std::vector<std::pair<std::string, std::string>> defInfo;
        for (const PiPtr& defT : replies) {
          Tri r;
          if (localVariant && lbl.kind == ActionLabel::BoundOutput) {
            r = Tri::True;
            for (const auto& rr : cfg.rFamily) {
              PiPtr lcomp =
                  pi::restrict_(lbl.object, pi::par({attT, rr}));
              PiPtr rcomp =
                  pi::restrict_(lbl.object, pi::par({defT, rr}));
              r = tri_and(r, check(lcomp, rcomp, depth + 1));
              if (r == Tri::False) break;
            }
          } else {
            r = check(attT, defT, depth + 1);
          }
          if (r == Tri::True) {
            matched = true;
            break;
          }
          if (r == Tri::Maybe) sawMaybe = true;
          defInfo.emplace_back(pair_key(pi_state_key(attT), pi_state_key(defT)),
                               print(pi_state(defT)));
        }
        if (matched) continue;
        if (sawMaybe || truncated) {
          out = tri_and(out, Tri::Maybe);
          continue;
        }
        out = Tri::False;
        ref = {side == 0 ? "left" : "right", label_str(lbl),
               print(pi_state(attT)), pi_state_key(attT), std::move(defInfo)};
        break;
      }
    }
    core.onPath.erase(key);
    if (out == Tri::False) {
      core.notEq.insert(key);
      core.refuted.emplace(key, std::move(ref));
    } else {
      core.memo.emplace(key, out);
    }
    return out;
  }
};

Verdict run_pi_game(const PiPtr& p, const PiPtr& q, const ExploreConfig& cfg,
                    Strength strength, bool localVariant) {
  PiGame game{cfg, strength, localVariant, {}};
  Tri res = Tri::Maybe;
  for (int budget : kDeepeningSchedule) {
    game.core.depthBudget = budget;
    for (int epoch = 0; epoch < 64; ++epoch) {
      std::size_t before = game.core.notEq.size();
      game.core.epoch_reset();
      res = game.check(p, q, 0);
      if (game.core.notEq.size() == before) break;
    }
    if (res != Tri::Maybe) break;
  }
  Verdict v;
  v.bounds = game.core.bounds;
  if (localVariant) v.bounds.quantifier = true;
  switch (res) {
    case Tri::True:
      v.result = Verdict::Equivalent;
      break;
    case Tri::False: {
      v.result = Verdict::Inequivalent;
      std::string rootKey =
          pair_key(pi_state_key(pi_gc(p)), pi_state_key(pi_gc(q)));
      v.witness = game.core.witness(rootKey);
      break;
    }
    case Tri::Maybe:
      v.result = Verdict::Unknown;
      break;
  }
  return v;
}

}  // namespace

Verdict ground_bisim(const PiPtr& p, const PiPtr& q, const ExploreConfig& cfg,
                     Strength strength) {
  return run_pi_game(p, q, cfg, strength, false);
}

Verdict local_bisim_bounded(const PiPtr& p, const PiPtr& q,
                            const ExploreConfig& cfg) {
  return run_pi_game(p, q, cfg, Strength::Weak, true);
}

// ---------------------------------------------------------------------
// Normal bisimulation game.

HoPtr make_forwarder(PayloadKind kind, const Name& m, const HoPtr& a) {
  NameSet avoid = all_names(a);
  avoid.insert(m);
  Name z = fresh_name(avoid, "Z");
  switch (kind) {
    case PayloadKind::Plain:
      return ho::repl_in(m, z, a);
    case PayloadKind::ProcessAbstraction:
      return ho::repl_in(m, z, ho::app(a, {HoArg(ho::var(z))}));
    case PayloadKind::NameAbstraction:
      return ho::repl_in(m, z, ho::app(ho::var(z), {HoArg(a)}));
  }
  return a;
}

namespace {

HoPtr fold_restrict(const std::vector<Name>& names, HoPtr body) {
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    body = ho::restrict_(*it, std::move(body));
  return body;
}

struct HoGame {
  const ExploreConfig& cfg;
  Strength strength;
  GameCore core;

  // Probe payloads for a pair: the three triggers (fresh m), the
  // name-feeders over the pair's free names plus one fresh, and 0.
  InputSupplier pair_supplier(const HoPtr& p, const HoPtr& q) {
    NameSet cand = free_names(p);
    add_all(cand, free_names(q));
    NameSet avoid = all_names(p);
    add_all(avoid, all_names(q));
    cand.insert(fresh_name(avoid, "d"));
    return default_supplier(cand, avoid);
  }

  Tri check(const HoPtr& pin, const HoPtr& qin, int depth) {
    auto np = try_normalize(pin);
    auto nq = try_normalize(qin);
    if (!np || !nq)
      return np.has_value() == nq.has_value() ? Tri::True : Tri::False;
    HoPtr p = ho_state(ho_gc(*np));
    HoPtr q = ho_state(ho_gc(*nq));
    std::string kp = raw_print(p), kq = raw_print(q);
    if (kp == kq) return Tri::True;
    std::string key = pair_key(kp, kq);
    if (core.notEq.count(key)) return Tri::False;
    if (auto it = core.memo.find(key); it != core.memo.end()) return it->second;
    if (core.onPath.count(key)) return Tri::True;
    if (++core.pairsUsed > cfg.maxPairs) {
      core.bounds.pairs = true;
      return Tri::Maybe;
    }
    if (depth > core.depthBudget) {
      core.bounds.pairs = true;
      return Tri::Maybe;
    }
    if (!p->as<HoAbs>() && !q->as<HoAbs>()) {
      InputSupplier probes = pair_supplier(p, q);
      if (auto tref = ho_trace_refutes(p, q, probes, cfg, kPrefilterDepth)) {
        core.notEq.insert(key);
        GameCore::Refut ref{tref->side, "note: trace the other side lacks",
                            tref->missing, key, {}, std::move(tref->steps)};
        core.refuted.emplace(key, std::move(ref));
        return Tri::False;
      }
    }
    core.onPath.insert(key);
    Tri out = abstraction_or_moves(p, q, key, depth);
    core.onPath.erase(key);
    if (out == Tri::False) {
      core.notEq.insert(key);
    } else {
      core.memo.emplace(key, out);
    }
    return out;
  }

  Tri abstraction_or_moves(const HoPtr& p, const HoPtr& q,
                           const std::string& key, int depth) {
    const auto* fp = p->as<HoAbs>();
    const auto* fq = q->as<HoAbs>();
    if (fp || fq) {
      if (!fp || !fq || fp->params.size() != fq->params.size()) {
        core.refuted[key] = {"left", "abstraction shape", print(p), "", {}};
        return Tri::False;
      }
      for (std::size_t i = 0; i < fp->params.size(); ++i)
        if (fp->params[i].kind != fq->params[i].kind) {
          core.refuted[key] = {"left", "abstraction shape", print(p), "", {}};
          return Tri::False;
        }
      return instantiated(p, q, *fp, depth);
    }
    return moves(p, q, key, depth);
  }

  // Applies both abstractions to the same probe arguments: every free
  // name of the pair plus a fresh one for name parameters, the triggers
  // and 0 for process parameters.
  Tri instantiated(const HoPtr& p, const HoPtr& q, const HoAbs& shape,
                   int depth) {
    NameSet cand = free_names(p);
    add_all(cand, free_names(q));
    NameSet avoid = all_names(p);
    add_all(avoid, all_names(q));
    Name fresh = fresh_name(avoid, "d");
    avoid.insert(fresh);
    std::vector<Name> nameArgs(cand.begin(), cand.end());
    nameArgs.push_back(fresh);
    if (nameArgs.size() > 4)
      nameArgs.erase(nameArgs.begin(), nameArgs.end() - 4);

    std::vector<std::vector<HoArg>> tuples{{}};
    for (const Param& prm : shape.params) {
      std::vector<HoArg> options;
      if (prm.kind == ParamKind::NameParam) {
        for (const Name& n : nameArgs) options.emplace_back(n);
      } else {
        Name m = fresh_name(avoid, "m");
        options.emplace_back(ho::nil());
        options.emplace_back(make_trigger(TriggerKind::Tr, m));
        options.emplace_back(make_trigger(TriggerKind::TrD, m));
        options.emplace_back(make_trigger(TriggerKind::Trd, m));
      }
      std::vector<std::vector<HoArg>> next;
      for (const auto& t : tuples)
        for (const auto& o : options) {
          auto t2 = t;
          t2.push_back(o);
          next.push_back(std::move(t2));
        }
      tuples = std::move(next);
      if (tuples.size() > 64) {
        tuples.resize(64);
        core.bounds.quantifier = true;
      }
    }
    Tri out = Tri::True;
    for (const auto& args : tuples) {
      out = tri_and(out, check(ho::app(p, args), ho::app(q, args), depth + 1));
      if (out == Tri::False) break;
    }
    return out;
  }

  Tri moves(const HoPtr& p, const HoPtr& q, const std::string& key,
            int depth) {
    Tri out = Tri::True;
    GameCore::Refut ref;
    InputSupplier probes = pair_supplier(p, q);

    for (int side = 0; side < 2 && out != Tri::False; ++side) {
      const HoPtr& att = side == 0 ? p : q;
      const HoPtr& dfn = side == 0 ? q : p;
      for (const auto& tr : ho_step(att, probes)) {
        bool matched = false;
        bool sawMaybe = false;
        bool truncated = false;
        std::vector<std::pair<std::string, std::string>> defInfo;

        if (tr.label.kind == HoActionLabel::Output) {
          // Compose residuals with the kind-matched replicated forwarder.
          PayloadKind kind = classify_payload(tr.label.payload);
          NameSet avoid = all_names(p);
          add_all(avoid, all_names(q));
          Name m = fresh_name(avoid, "m");
          HoPtr left = fold_restrict(
              tr.label.extruded,
              ho::par({tr.target, make_forwarder(kind, m, tr.label.payload)}));
          HoWeakOutputs replies =
              ho_weak_outputs(dfn, tr.label.subject, kind, cfg, strength);
          truncated = replies.truncated;
          if (truncated) {
            core.bounds.tauDepth = true;
            core.bounds.states = true;
          }
          for (const auto& rep : replies.outputs) {
            HoPtr right = fold_restrict(
                rep.extruded,
                ho::par({rep.target, make_forwarder(kind, m, rep.payload)}));
            Tri r = check(left, right, depth + 1);
            if (r == Tri::True) {
              matched = true;
              break;
            }
            if (r == Tri::Maybe) sawMaybe = true;
            defInfo.emplace_back(
                pair_key(ho_state_key(left), ho_state_key(right)),
                print(ho_state(right)));
          }
          if (!matched && !sawMaybe && !truncated) {
            out = Tri::False;
            ref = {side == 0 ? "left" : "right", label_str(tr.label),
                   print(ho_state(left)), "", std::move(defInfo)};
            break;
          }
          if (!matched) out = tri_and(out, Tri::Maybe);
          continue;
        }

        // tau and supplier-driven inputs: defender matches the same label.
        std::vector<HoPtr> replies;
        if (strength == Strength::Weak) {
          HoWeakSet w = ho_weak_step(dfn, tr.label, probes, cfg);
          replies = w.states;
          truncated = w.truncated;
          if (truncated) {
            core.bounds.tauDepth = true;
            core.bounds.states = true;
          }
        } else {
          for (const auto& dt : ho_step(dfn, probes))
            if (label_key(dt.label) == label_key(tr.label))
              replies.push_back(dt.target);
        }
        for (const HoPtr& defT : replies) {
          Tri r = check(tr.target, defT, depth + 1);
          if (r == Tri::True) {
            matched = true;
            break;
          }
          if (r == Tri::Maybe) sawMaybe = true;
          defInfo.emplace_back(
              pair_key(ho_state_key(tr.target), ho_state_key(defT)),
              print(ho_state(defT)));
        }
        if (matched) continue;
        if (sawMaybe || truncated) {
          out = tri_and(out, Tri::Maybe);
          continue;
        }
        out = Tri::False;
        ref = {side == 0 ? "left" : "right", label_str(tr.label),
               print(ho_state(tr.target)), "", std::move(defInfo)};
        break;
      }
    }
    if (out == Tri::False) core.refuted.emplace(key, std::move(ref));
    return out;
  }
};

}  // namespace

Verdict normal_bisim(const HoPtr& t1, const HoPtr& t2,
                     const ExploreConfig& cfg, Strength strength) {
  HoGame game{cfg, strength, {}};
  Tri res = Tri::Maybe;
  for (int budget : kDeepeningSchedule) {
    game.core.depthBudget = budget;
    for (int epoch = 0; epoch < 64; ++epoch) {
      std::size_t before = game.core.notEq.size();
      game.core.epoch_reset();
      res = game.check(t1, t2, 0);
      if (game.core.notEq.size() == before) break;
    }
    if (res != Tri::Maybe) break;
  }
  Verdict v;
  v.bounds = game.core.bounds;
  switch (res) {
    case Tri::True:
      v.result = Verdict::Equivalent;
      break;
    case Tri::False: {
      v.result = Verdict::Inequivalent;
      auto np = try_normalize(t1);
      auto nq = try_normalize(t2);
      if (np && nq) {
        std::string rootKey = pair_key(ho_state_key(ho_gc(*np)),
                                       ho_state_key(ho_gc(*nq)));
        v.witness = game.core.witness(rootKey);
      }
      break;
    }
    case Tri::Maybe:
      v.result = Verdict::Unknown;
      break;
  }
  return v;
}

namespace {

// Capturing graft: composition contexts like (nu a)([.]|T) close over the
// free names of whatever fills the hole, so binders are not renamed.
HoPtr graft(const HoPtr& body, const Name& hole, const HoPtr& t) {
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HoNil>) {
          return body;
        } else if constexpr (std::is_same_v<T, HoVar>) {
          return n.var == hole ? t : body;
        } else if constexpr (std::is_same_v<T, HoInput> ||
                             std::is_same_v<T, HoReplIn>) {
          if (n.var == hole) return body;  // shadowed
          HoPtr b = graft(n.body, hole, t);
          if constexpr (std::is_same_v<T, HoInput>)
            return ho::input(n.chan, n.var, b);
          else
            return ho::repl_in(n.chan, n.var, b);
        } else if constexpr (std::is_same_v<T, HoOutput>) {
          return ho::output(n.chan, graft(n.payload, hole, t),
                            graft(n.cont, hole, t));
        } else if constexpr (std::is_same_v<T, HoReplOut>) {
          return ho::repl_out(n.chan, graft(n.payload, hole, t),
                              graft(n.cont, hole, t));
        } else if constexpr (std::is_same_v<T, HoRestrict>) {
          return ho::restrict_(n.name, graft(n.body, hole, t));
        } else if constexpr (std::is_same_v<T, HoPar>) {
          std::vector<HoPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c2 : n.comps) comps.push_back(graft(c2, hole, t));
          return ho::par(std::move(comps));
        } else if constexpr (std::is_same_v<T, HoAbs>) {
          for (const auto& p : n.params)
            if (p.id == hole) return body;  // shadowed
          return ho::abs(n.params, graft(n.body, hole, t));
        } else {  // HoApp
          std::vector<HoArg> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) {
            if (const Name* nm = std::get_if<Name>(&a))
              args.emplace_back(*nm);
            else
              args.emplace_back(graft(std::get<HoPtr>(a), hole, t));
          }
          return ho::app(graft(n.fun, hole, t), std::move(args));
        }
      },
      body->node);
}

}  // namespace

HoPtr fill_hole(const ContextHole& c, const HoPtr& t) {
  return graft(c.body, c.hole, t);
}

}  // namespace hopi
