#include <algorithm>
#include <map>

#include "equiv_internal.hpp"
#include "hopi/canon.hpp"
#include "hopi/encode.hpp"
#include "hopi/equiv.hpp"
#include "hopi/normalize.hpp"
#include "hopi/parse.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

namespace hopi {

namespace {

// Extruded names are renamed to the reserved sequence #e0, #e1, ... so
// that traces of different terms share a vocabulary.
Name next_extrusion_name(const NameSet& used) {
  for (unsigned long i = 0;; ++i) {
    Name n("#e" + std::to_string(i), "e");
    if (!used.count(n)) return n;
  }
}

bool is_extrusion_name(const Name& n) {
  return n.id.rfind("#e", 0) == 0;
}

struct PiTraceCtx {
  const ExploreConfig& cfg;
  NameSet universe;
  std::map<std::string, std::set<std::string>> memo;
  bool complete = true;
  int budget;
};

std::set<std::string> pi_tr(PiTraceCtx& ctx, const PiPtr& s0, int d) {
  PiPtr s = pi_state(s0);
  std::string key = raw_print(s) + "|" + std::to_string(d);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  std::set<std::string> out{""};
  if (d == 0 || --ctx.budget < 0) {
    if (ctx.budget < 0) ctx.complete = false;
    ctx.memo.emplace(key, out);
    return out;
  }
  PiWeakSet cl = pi_tau_closure(s, ctx.cfg);
  if (cl.truncated) ctx.complete = false;
  for (const PiPtr& u : cl.states) {
    for (const auto& tr : pi_step(u, ctx.cfg, ctx.universe)) {
      if (tr.label.kind == ActionLabel::Tau) continue;
      ActionLabel lbl = tr.label;
      PiPtr tgt = tr.target;
      if (lbl.kind == ActionLabel::Input) {
        // Only shared-universe objects (plus previously extruded names)
        // keep traces of different terms comparable.
        if (!ctx.universe.count(lbl.object) && !is_extrusion_name(lbl.object))
          continue;
      } else if (lbl.kind == ActionLabel::BoundOutput) {
        Name e = next_extrusion_name(all_names(u));
        tgt = subst_name(tgt, e, lbl.object);
        lbl = ActionLabel::bound_output(lbl.subject, e);
      }
      std::string lk = label_str(lbl);
      for (const std::string& sub : pi_tr(ctx, tgt, d - 1))
        out.insert(sub.empty() ? lk : lk + ";" + sub);
    }
  }
  ctx.memo.emplace(key, out);
  return out;
}

struct HoTraceCtx {
  const ExploreConfig& cfg;
  const InputSupplier& supply;
  std::map<std::string, std::set<std::string>> memo;
  bool complete = true;
  int budget;
};

// Renames the label's extruded names (and the target accordingly) to the
// reserved sequence; returns the canonical label key.
std::string canon_ho_label(const HoActionLabel& in, HoPtr& target,
                           const NameSet& used) {
  if (in.kind != HoActionLabel::Output || in.extruded.empty())
    return label_key(in);
  NameSet taken = used;
  HoPtr payload = in.payload;
  std::vector<Name> ext;
  for (const Name& c : in.extruded) {
    Name e = next_extrusion_name(taken);
    taken.insert(e);
    payload = subst_name(payload, e, c);
    target = subst_name(target, e, c);
    ext.push_back(e);
  }
  return label_key(HoActionLabel::output(in.subject, payload, ext));
}

std::set<std::string> ho_tr(HoTraceCtx& ctx, const HoPtr& s0, int d) {
  HoPtr s = ho_state(s0);
  std::string key = raw_print(s) + "|" + std::to_string(d);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  std::set<std::string> out{""};
  if (d == 0 || --ctx.budget < 0) {
    if (ctx.budget < 0) ctx.complete = false;
    ctx.memo.emplace(key, out);
    return out;
  }
  HoWeakSet cl = ho_tau_closure(s, ctx.cfg);
  if (cl.truncated) ctx.complete = false;
  for (const HoPtr& u : cl.states) {
    for (const auto& tr : ho_step(u, ctx.supply)) {
      if (tr.label.kind == HoActionLabel::Tau) continue;
      HoPtr tgt = tr.target;
      std::string lk = canon_ho_label(tr.label, tgt, all_names(u));
      for (const std::string& sub : ho_tr(ctx, tgt, d - 1))
        out.insert(sub.empty() ? lk : lk + ";" + sub);
    }
  }
  ctx.memo.emplace(key, out);
  return out;
}

}  // namespace

namespace {

TraceSet pi_traces_depth(const PiPtr& p, const NameSet& universe,
                         const ExploreConfig& cfg, int depth) {
  PiTraceCtx ctx{cfg, universe, {}, true, cfg.maxStates};
  TraceSet out;
  out.traces = pi_tr(ctx, p, depth);
  out.complete = ctx.complete;
  return out;
}

TraceSet ho_traces_depth(const HoPtr& t, const InputSupplier& supply,
                         const ExploreConfig& cfg, int depth) {
  HoTraceCtx ctx{cfg, supply, {}, true, cfg.maxStates};
  TraceSet out;
  out.traces = ho_tr(ctx, t, depth);
  out.complete = ctx.complete;
  return out;
}

}  // namespace

TraceSet pi_traces(const PiPtr& p, const NameSet& universe,
                   const ExploreConfig& cfg) {
  return pi_traces_depth(p, universe, cfg, cfg.maxVisibleDepth);
}

TraceSet ho_traces(const HoPtr& t, const InputSupplier& supply,
                   const ExploreConfig& cfg) {
  return ho_traces_depth(t, supply, cfg, cfg.maxVisibleDepth);
}

namespace {

std::vector<std::string> split_trace(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(';', pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

// Rebuilds a path realizing the trace (canonical label keys) for the
// witness; depth-first over tau-closures.
bool realize(const HoPtr& state, const std::vector<std::string>& labels,
             std::size_t idx, const InputSupplier& supply,
             const ExploreConfig& cfg, const std::string& side,
             std::vector<WitnessStep>& steps) {
  if (idx == labels.size()) return true;
  HoWeakSet cl = ho_tau_closure(state, cfg);
  for (const HoPtr& u : cl.states) {
    for (const auto& tr : ho_step(u, supply)) {
      if (tr.label.kind == HoActionLabel::Tau) continue;
      HoPtr tgt = tr.target;
      std::string lk = canon_ho_label(tr.label, tgt, all_names(u));
      if (lk != labels[idx]) continue;
      steps.push_back({side, label_str(tr.label), print(ho_state(tgt))});
      if (realize(tgt, labels, idx + 1, supply, cfg, side, steps)) return true;
      steps.pop_back();
    }
  }
  return false;
}

}  // namespace

Verdict context_probe(const HoPtr& t1, const HoPtr& t2,
                      const std::vector<ContextHole>& contexts,
                      const ExploreConfig& cfg) {
  Verdict v;
  v.bounds.quantifier = true;
  for (const ContextHole& c : contexts) {
    auto l = try_normalize(fill_hole(c, t1));
    auto r = try_normalize(fill_hole(c, t2));
    if (l.has_value() != r.has_value()) {
      v.result = Verdict::Inequivalent;
      v.witness.push_back({l ? "right" : "left", "note: ill-kinded fill",
                           print(c.body)});
      return v;
    }
    if (!l) continue;

    NameSet cand = free_names(*l);
    add_all(cand, free_names(*r));
    NameSet avoid = all_names(*l);
    add_all(avoid, all_names(*r));
    InputSupplier sup = default_supplier(cand, avoid);

    TraceSet tl = ho_traces(*l, sup, cfg);
    TraceSet tr = ho_traces(*r, sup, cfg);
    if (!tl.complete || !tr.complete) {
      v.bounds.states = true;
      v.bounds.tauDepth = true;
    }

    auto report = [&](const std::set<std::string>& have,
                      const std::set<std::string>& lack, const HoPtr& owner,
                      const char* side) -> bool {
      std::vector<std::string> diff;
      for (const std::string& s : have)
        if (!s.empty() && !lack.count(s)) diff.push_back(s);
      if (diff.empty()) return false;
      std::sort(diff.begin(), diff.end(),
                [](const std::string& a, const std::string& b) {
                  auto ca = std::count(a.begin(), a.end(), ';');
                  auto cb = std::count(b.begin(), b.end(), ';');
                  if (ca != cb) return ca < cb;
                  return a < b;
                });
      v.result = Verdict::Inequivalent;
      v.witness.push_back(
          {side, "note: distinguishing context", print(c.body)});
      std::vector<WitnessStep> path;
      if (realize(owner, split_trace(diff.front()), 0, sup, cfg, side, path))
        for (auto& s : path) v.witness.push_back(std::move(s));
      v.witness.push_back({side == std::string("left") ? "right" : "left",
                           "note: lacks trace", diff.front()});
      return true;
    };

    // A trace found on one side refutes only if the other side's trace
    // set is complete.
    if (tr.complete && report(tl.traces, tr.traces, *l, "left")) return v;
    if (tl.complete && report(tr.traces, tl.traces, *r, "right")) return v;
  }
  v.result = Verdict::Equivalent;
  return v;
}

namespace {

// Realizes a pi trace for witnesses; mirrors the hopi version.
bool realize_pi(const PiPtr& state, const std::vector<std::string>& labels,
                std::size_t idx, const NameSet& universe,
                const ExploreConfig& cfg, const std::string& side,
                std::vector<WitnessStep>& steps) {
  if (idx == labels.size()) return true;
  PiWeakSet cl = pi_tau_closure(state, cfg);
  for (const PiPtr& u : cl.states) {
    for (const auto& tr : pi_step(u, cfg, universe)) {
      if (tr.label.kind == ActionLabel::Tau) continue;
      ActionLabel lbl = tr.label;
      PiPtr tgt = tr.target;
      if (lbl.kind == ActionLabel::BoundOutput) {
        Name e = next_extrusion_name(all_names(u));
        tgt = subst_name(tgt, e, lbl.object);
        lbl = ActionLabel::bound_output(lbl.subject, e);
      }
      if (label_str(lbl) != labels[idx]) continue;
      steps.push_back({side, label_str(lbl), print(pi_state(tgt))});
      if (realize_pi(tgt, labels, idx + 1, universe, cfg, side, steps))
        return true;
      steps.pop_back();
    }
  }
  return false;
}

template <typename Set>
std::optional<std::string> first_missing(const Set& have, const Set& lack) {
  std::vector<std::string> diff;
  for (const std::string& s : have)
    if (!s.empty() && !lack.count(s)) diff.push_back(s);
  if (diff.empty()) return std::nullopt;
  std::sort(diff.begin(), diff.end(),
            [](const std::string& a, const std::string& b) {
              auto ca = std::count(a.begin(), a.end(), ';');
              auto cb = std::count(b.begin(), b.end(), ';');
              if (ca != cb) return ca < cb;
              return a < b;
            });
  return diff.front();
}

}  // namespace

std::optional<TraceRefutation> ho_trace_refutes(const HoPtr& p, const HoPtr& q,
                                                const InputSupplier& supply,
                                                const ExploreConfig& cfg,
                                                int depth) {
  TraceSet tp = ho_traces_depth(p, supply, cfg, depth);
  TraceSet tq = ho_traces_depth(q, supply, cfg, depth);
  auto go = [&](const TraceSet& have, const TraceSet& lack, const HoPtr& owner,
                const char* side) -> std::optional<TraceRefutation> {
    if (!lack.complete) return std::nullopt;
    auto missing = first_missing(have.traces, lack.traces);
    if (!missing) return std::nullopt;
    TraceRefutation r;
    r.side = side;
    r.missing = *missing;
    realize(owner, split_trace(*missing), 0, supply, cfg, side, r.steps);
    return r;
  };
  if (auto r = go(tp, tq, p, "left")) return r;
  return go(tq, tp, q, "right");
}

std::optional<TraceRefutation> pi_trace_refutes(const PiPtr& p, const PiPtr& q,
                                                const NameSet& universe,
                                                const ExploreConfig& cfg,
                                                int depth) {
  TraceSet tp = pi_traces_depth(p, universe, cfg, depth);
  TraceSet tq = pi_traces_depth(q, universe, cfg, depth);
  auto go = [&](const TraceSet& have, const TraceSet& lack, const PiPtr& owner,
                const char* side) -> std::optional<TraceRefutation> {
    if (!lack.complete) return std::nullopt;
    auto missing = first_missing(have.traces, lack.traces);
    if (!missing) return std::nullopt;
    TraceRefutation r;
    r.side = side;
    r.missing = *missing;
    realize_pi(owner, split_trace(*missing), 0, universe, cfg, side, r.steps);
    return r;
  };
  if (auto r = go(tp, tq, p, "left")) return r;
  return go(tq, tp, q, "right");
}

std::vector<ContextHole> encoded_pi_contexts(const NameSet& alphabet) {
  std::vector<Name> ns(alphabet.begin(), alphabet.end());
  while (ns.size() < 2) ns.push_back(fresh_name(NameSet(ns.begin(), ns.end())));
  Name u = ns[0], w = ns[1];
  Name hole("H");

  std::vector<PiPtr> rs;
  auto add = [&](const char* tpl) {
    std::string s(tpl);
    std::string src;
    for (char ch : s) {
      if (ch == 'U')
        src += u.id;
      else if (ch == 'W')
        src += w.id;
      else
        src += ch;
    }
    rs.push_back(parse_pi(src));
  };
  add("U<W>.0");
  add("U(x).0");
  add("U(x).x<W>.0");
  add("W<U>.0");
  add("W(x).0");

  std::vector<ContextHole> out;
  out.push_back({hole, ho::var(hole)});
  for (const PiPtr& r : rs)
    out.push_back({hole, ho::par({ho::var(hole), encode(r)})});
  out.push_back(
      {hole, ho::restrict_(u, ho::par({ho::var(hole), encode(rs[0])}))});
  out.push_back(
      {hole, ho::restrict_(u, ho::par({ho::var(hole), encode(rs[1])}))});
  return out;
}

std::vector<ContextHole> trigger_contexts(const NameSet& channels) {
  NameSet avoid = channels;
  Name d = fresh_name(avoid, "d");
  avoid.insert(d);
  Name m = fresh_name(avoid, "m");
  Name hole("H");

  std::vector<ContextHole> out;
  out.push_back({hole, parse_ho("H", false)});
  int used = 0;
  for (const Name& a : channels) {
    if (++used > 3) break;
    auto mk = [&](const std::string& tpl) {
      std::string src;
      for (std::size_t i = 0; i < tpl.size(); ++i) {
        if (tpl[i] == '$')
          src += a.id;
        else if (tpl[i] == '%')
          src += d.id;
        else if (tpl[i] == '&')
          src += m.id;
        else
          src += tpl[i];
      }
      out.push_back({hole, parse_ho(src, false)});
    };
    mk("H | $(X).X");
    mk("H | $(X).X@(%)");
    mk("H | $(X).X@(0)");
    mk("H | $(X).(X@(%) | X@(%))");
    mk("H | $<0>.0");
    mk("H | $<lam(Z).Z@(%)>.0");
    mk("(nu $)(H | (nu &)($<lam(Z).&<Z>>.0 | &(X).(X@(%) | X@(%))))");
  }
  return out;
}

}  // namespace hopi
