#include <doctest.h>

#include <functional>

#include "hopi/canon.hpp"
#include "hopi/encode.hpp"
#include "hopi/ho_lts.hpp"
#include "hopi/normalize.hpp"
#include "hopi/parse.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

using namespace hopi;

namespace {

ExploreConfig cfg;
InputSupplier none;

int count_taus(const std::vector<HoTransition>& ts) {
  int k = 0;
  for (const auto& t : ts)
    if (t.label.kind == HoActionLabel::Tau) ++k;
  return k;
}

}  // namespace

TEST_CASE("output axiom") {
  auto ts = ho_step(parse_ho("a<b(X).X>.c<0>.0"), none);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].label.kind == HoActionLabel::Output);
  CHECK(ts[0].label.subject == Name("a"));
  CHECK(ts[0].label.extruded.empty());
  CHECK(alpha_eq(ts[0].label.payload, parse_ho("b(X).X")));
  CHECK(alpha_eq(ts[0].target, parse_ho("c<0>.0")));
}

TEST_CASE("replicated output spawns a copy") {
  auto ts = ho_step(parse_ho("!a<0>.b<0>.0"), none);
  REQUIRE(ts.size() == 1);
  CHECK(alpha_eq(ts[0].target, parse_ho("b<0>.0 | !a<0>.b<0>.0")));
}

TEST_CASE("extrusion carries restricted names of the payload") {
  auto ts = ho_step(parse_ho("(nu d)a<lam(Z).Z@(d)>.0"), none);
  REQUIRE(ts.size() == 1);
  const auto& l = ts[0].label;
  CHECK(l.kind == HoActionLabel::Output);
  REQUIRE(l.extruded.size() == 1);
  CHECK(free_names(l.payload).count(l.extruded[0]));
  CHECK(ts[0].target->as<HoNil>() != nullptr);

  // No extrusion when the payload does not mention the name.
  auto ts2 = ho_step(parse_ho("(nu d)a<0>.d(X).X"), none);
  REQUIRE(ts2.size() == 1);
  CHECK(ts2[0].label.extruded.empty());
  CHECK(ts2[0].target->as<HoRestrict>() != nullptr);
}

TEST_CASE("input consumes supplier payloads and substitutes") {
  InputSupplier sup;
  sup.payloads.push_back(parse_ho("c<0>.0"));
  auto ts = ho_step(parse_ho("a(X).(X | X)"), sup);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].label.kind == HoActionLabel::Input);
  CHECK(alpha_eq(ts[0].target, parse_ho("c<0>.0 | c<0>.0")));

  // Replicated input keeps the server.
  auto ts2 = ho_step(parse_ho("!a(X).X"), sup);
  REQUIRE(ts2.size() == 1);
  CHECK(alpha_eq(ts2[0].target, parse_ho("c<0>.0 | !a(X).X")));
}

TEST_CASE("ill-kinded probes are pruned") {
  // The body applies X to a name, so only name abstractions fit.
  InputSupplier sup;
  sup.payloads.push_back(parse_ho("lam(x).x<0>.0"));   // fits
  sup.payloads.push_back(parse_ho("lam(Z).Z"));        // kind mismatch
  sup.payloads.push_back(parse_ho("b<0>.0"));          // not an abstraction
  auto ts = ho_step(parse_ho("a(X).(X@(d))"), sup);
  REQUIRE(ts.size() == 1);
  CHECK(alpha_eq(ts[0].target, parse_ho("d<0>.0")));
}

TEST_CASE("communication with scope extrusion restricts around the pair") {
  HoPtr t = parse_ho("a(X).(X | b<0>.0) | (nu d)a<d(Y).Y>.d<0>.0");
  auto ts = ho_step(t, none);
  REQUIRE(count_taus(ts) == 1);
  for (const auto& tr : ts) {
    if (tr.label.kind != HoActionLabel::Tau) continue;
    CHECK(alpha_eq(tr.target,
                   parse_ho("(nu d)((d(Y).Y | b<0>.0) | d<0>.0)")));
  }
}

TEST_CASE("section 3.1: encoded P|Q mirrors the two-tau reduction") {
  PiPtr pq = parse_pi("(nu c)(a(x).x<c>.0) | (nu d)(a<d>.d(y).0)");
  HoPtr enc = encode(pq);

  auto ts1 = ho_step(enc, none);
  REQUIRE(count_taus(ts1) == 1);
  HoPtr s1;
  for (const auto& tr : ts1)
    if (tr.label.kind == HoActionLabel::Tau) s1 = tr.target;
  // After one tau the first communication has happened and beta-reduction
  // exposes the re-encoded output on d.
  PiPtr mid = parse_pi("(nu d)((nu c)(d<c>.0) | d(y).0)");
  CHECK(alpha_eq(s1, normalize(encode(mid))));

  auto ts2 = ho_step(s1, none);
  REQUIRE(count_taus(ts2) == 1);
  HoPtr s2;
  for (const auto& tr : ts2)
    if (tr.label.kind == HoActionLabel::Tau) s2 = tr.target;
  CHECK(alpha_eq(s2, normalize(encode(parse_pi("(nu d)(nu c)(0|0)")))));
  CHECK(count_taus(ho_step(s2, none)) == 0);
}

TEST_CASE("payload classification") {
  CHECK(classify_payload(parse_ho("lam(Z).Z@(d)")) ==
        PayloadKind::ProcessAbstraction);
  CHECK(classify_payload(parse_ho("lam(x).x<0>.0")) ==
        PayloadKind::NameAbstraction);
  CHECK(classify_payload(parse_ho("^b.0")) == PayloadKind::Plain);
  bool mixed = false;
  CHECK(classify_payload(parse_ho("lam(x,Z).(Z | x<0>.0)"), &mixed) ==
        PayloadKind::NameAbstraction);
  CHECK(mixed);
}

TEST_CASE("weak arrows: reflexivity and trigger chains") {
  HoPtr t = parse_ho("a<0>.0 | 0");
  auto w = ho_tau_closure(t, cfg);
  REQUIRE(w.states.size() == 1);
  CHECK(alpha_eq(w.states[0], normalize(t)));

  // enc(R1) after receiving lam(Z).m<Z> on a reaches a state emitting on m.
  PiPtr r1 = parse_pi("(nu b)(a.^b | b.^c)");
  HoPtr encR1 = encode(r1);
  HoActionLabel in =
      HoActionLabel::input(Name("a"), parse_ho("lam(Z).m<Z>.0"));
  auto states = ho_weak_step(encR1, in, none, cfg);
  REQUIRE_FALSE(states.states.empty());
  bool emitsOnM = false;
  for (const auto& s : states.states)
    for (const auto& tr : ho_step(s, none))
      if (tr.label.kind == HoActionLabel::Output &&
          tr.label.subject == Name("m"))
        emitsOnM = true;
  CHECK(emitsOnM);
}

TEST_CASE("section 3.3: the distinguishing context doubles the c output") {
  // T = (m)(a<lam(Z).m<Z>> | m(X).(X@(d)|X@(d)))
  const char* tSrc =
      "(nu m)(a<lam(Z).m<Z>>.0 | m(X).(X@(d) | X@(d)))";
  PiPtr r1 = parse_pi("(nu b)(a.^b | b.^c)");
  PiPtr r2 = parse_pi("(nu b)(a.^b | b.^c | b.^c)");

  auto maxChain = [&](const PiPtr& r) {
    HoPtr sys = ho::restrict_(
        Name("a"), ho::par({encode(r), parse_ho(tSrc)}));
    auto cl = ho_tau_closure(sys, cfg);
    REQUIRE_FALSE(cl.truncated);
    int best = 0;
    for (const auto& s : cl.states) {
      for (const auto& tr : ho_step(s, none)) {
        if (tr.label.kind != HoActionLabel::Output ||
            tr.label.subject != Name("c"))
          continue;
        int chain = 1;
        auto post = ho_tau_closure(tr.target, cfg);
        for (const auto& q : post.states)
          for (const auto& tr2 : ho_step(q, none))
            if (tr2.label.kind == HoActionLabel::Output &&
                tr2.label.subject == Name("c"))
              chain = 2;
        best = std::max(best, chain);
      }
    }
    return best;
  };
  CHECK(maxChain(r2) == 2);
  CHECK(maxChain(r1) == 1);
}

TEST_CASE("normalize-then-step coincides with step-then-normalize") {
  const char* samples[] = {
      "(lam(Z).Z)@(a<0>.0) | b(X).X",
      "(nu c)((lam(x).x<0>.0)@(c) | c(X).(X|X))",
  };
  for (const char* s : samples) {
    HoPtr t = parse_ho(s);
    auto t1 = ho_step(t, none);
    auto t2 = ho_step(normalize(t), none);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
      CHECK(label_key(t1[i].label) == label_key(t2[i].label));
      CHECK(alpha_eq(t1[i].target, t2[i].target));
    }
  }
}

TEST_CASE("ho divergence mirrors the pi example") {
  PiPtr p = parse_pi("(nu a)(!a(x).a<x>.0 | a<b>.0)");
  CHECK(ho_is_divergent(encode(p), cfg).verdict == Divergence::Divergent);
  CHECK(ho_is_divergent(parse_ho("a<0>.0"), cfg).verdict ==
        Divergence::Convergent);
}

TEST_CASE("encoding clauses") {
  // Output clause.
  CHECK(alpha_eq(encode(parse_pi("a<b>.0")),
                 parse_ho("a<lam(Z).Z@(b)>.0")));
  // Nil is homomorphic.
  CHECK(encode(parse_pi("0"))->as<HoNil>() != nullptr);
  // Input clause.
  CHECK(alpha_eq(encode(parse_pi("a(x).x<c>.0")),
                 parse_ho("a(Y).Y@(lam(x).x<lam(Z).Z@(c)>.0)")));
  // Replication: [[!m(x).P]] = ![[m(x).P]].
  HoPtr r = encode(parse_pi("!a(x).0"));
  CHECK(r->as<HoReplIn>() != nullptr);
  CHECK(alpha_eq(r, parse_ho("!a(Y).Y@(lam(x).0)")));
  // The displayed form of enc(R1).
  HoPtr encR1 = encode(parse_pi("(nu b)(a.^b | b.^c)"));
  HoPtr expect = parse_ho(
      "(nu b)(a(Y).Y@(lam(x).(nu e)b<lam(Z).Z@(e)>.0)"
      " | b(Y).Y@(lam(x).(nu f)c<lam(Z).Z@(f)>.0))");
  CHECK(alpha_eq(encR1, expect));
}

TEST_CASE("encoding invariants") {
  const char* samples[] = {
      "0",
      "a<b>.0",
      "(nu c)(a(x).x<c>.0) | (nu d)(a<d>.d(y).0)",
      "!a(x).(x<b> | (nu e)e<a>)",
      "(nu b)(a.^b | b.^c | b.^c)",
  };
  for (const char* s : samples) {
    PiPtr p = parse_pi(s);
    HoPtr e = encode(p);
    CHECK(free_names(e) == free_names(p));
    CHECK(free_proc_vars(e).empty());
    CHECK(check_compositionality(p));
    // Substitution commutation: [[P{n/m}]] == [[P]]{n/m} up to normal form.
    Name n("b2"), m("a");
    CHECK(alpha_eq(normalize(subst_name(e, n, m)),
                   normalize(encode(subst_name(p, n, m)))));
  }
}

TEST_CASE("encode images never contain replicated outputs") {
  std::function<bool(const HoPtr&)> noRepl = [&](const HoPtr& t) -> bool {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, HoReplOut>) {
            return false;
          } else if constexpr (std::is_same_v<T, HoNil> ||
                               std::is_same_v<T, HoVar>) {
            return true;
          } else if constexpr (std::is_same_v<T, HoInput> ||
                               std::is_same_v<T, HoReplIn>) {
            return noRepl(n.body);
          } else if constexpr (std::is_same_v<T, HoOutput>) {
            return noRepl(n.payload) && noRepl(n.cont);
          } else if constexpr (std::is_same_v<T, HoRestrict>) {
            return noRepl(n.body);
          } else if constexpr (std::is_same_v<T, HoPar>) {
            for (const auto& c : n.comps)
              if (!noRepl(c)) return false;
            return true;
          } else if constexpr (std::is_same_v<T, HoAbs>) {
            return noRepl(n.body);
          } else if constexpr (std::is_same_v<T, HoApp>) {
            if (!noRepl(n.fun)) return false;
            for (const auto& a : n.args)
              if (const HoPtr* q = std::get_if<HoPtr>(&a))
                if (!noRepl(*q)) return false;
            return true;
          } else {
            return true;
          }
        },
        t->node);
  };
  CHECK(noRepl(encode(parse_pi("!a(x).(x<b> | (nu e)(e<a>.e(y).0))"))));
}
