#include "hopi/factorize.hpp"

#include "hopi/canon.hpp"
#include "hopi/normalize.hpp"
#include "hopi/parse.hpp"
#include "hopi/print.hpp"
#include "hopi/subst.hpp"

namespace hopi {

ContextClass classify_context(const ContextHole& e) {
  ContextClass out;
  HoPtr body = normalize(e.body);
  while (const auto* f = body->as<HoAbs>()) {
    for (const auto& p : f->params) {
      if (p.id == e.hole)
        throw TermError("context prefix binds the hole variable " +
                        e.hole.id);
      out.params.push_back(p);
    }
    body = f->body;
  }
  out.stripped = body;
  out.shape = out.params.empty() ? ContextShape::Plain
                                 : ContextShape::AbstractionPrefixed;
  return out;
}

HoPtr fill_context(const ContextHole& e, const HoPtr& a) {
  return subst_term(e.body, a, e.hole);
}

HoPtr factorize(const ContextHole& e, const HoPtr& a, const Name& m) {
  NameSet fnE = free_names(e.body);
  NameSet fnA = free_names(a);
  if (fnE.count(m) || fnA.count(m))
    throw FreshnessError("trigger name " + m.id +
                         " is not fresh for the context and payload");
  if (!is_closed(a))
    throw TermError("factorization payload must be closed");

  HoPtr na = normalize(a);
  PayloadKind kind = classify_payload(na);
  TriggerKind tk = kind == PayloadKind::Plain ? TriggerKind::Tr
                   : kind == PayloadKind::ProcessAbstraction
                       ? TriggerKind::TrD
                       : TriggerKind::Trd;
  ContextClass cls = classify_context(e);
  HoPtr core = ho::restrict_(
      m, ho::par({subst_term(cls.stripped, make_trigger(tk, m), e.hole),
                  make_forwarder(kind, m, na)}));
  if (cls.shape == ContextShape::Plain) return core;
  return ho::abs(cls.params, core);
}

std::vector<std::pair<ContextHole, HoPtr>> factorization_family() {
  const Name hole("H");
  auto ctx = [&](const char* src) {
    return ContextHole{hole, parse_ho(src, false)};
  };
  auto tm = [](const char* src) { return parse_ho(src); };

  // Contexts that place the hole bare (any payload kind fits); the last
  // one drops the hole entirely, leaving the forwarder as garbage.
  std::vector<ContextHole> bare{
      ctx("H"),
      ctx("H | c<0>.0"),
      ctx("H | c(X).X"),
      ctx("a<H>.0"),
      ctx("(nu c)(H | c<0>.0)"),
      ctx("b(X).(H | X)"),
      ctx("H | H"),
      ctx("c<0>.0"),
  };
  // Contexts applying the hole to a name (name abstractions only).
  std::vector<ContextHole> appName{
      ctx("H@(d)"),
      ctx("H@(d) | c<0>.0"),
      ctx("(nu e)(H@(e) | e(X).c<0>.0)"),
      ctx("b(X).H@(d)"),
  };
  // Contexts applying the hole to a term (process abstractions only).
  std::vector<ContextHole> appProc{
      ctx("H@(0)"),
      ctx("H@(c<0>.0)"),
      ctx("H@(0) | c<0>.0"),
  };
  // Abstraction-prefixed variants (theorem clause 2).
  std::vector<ContextHole> absBare{
      ctx("lam(W).(H | W)"),
      ctx("lam(w).(H | w<0>.0)"),
      ctx("lam(w,W).(H | w<W>.0)"),
  };
  std::vector<ContextHole> absAppName{
      ctx("lam(W).(H@(d) | W)"),
      ctx("lam(w).H@(w)"),
  };
  std::vector<ContextHole> absAppProc{
      ctx("lam(W).(H@(0) | W)"),
      ctx("lam(w).(H@(0) | w<0>.0)"),
  };

  std::vector<HoPtr> plain{
      tm("0"),
      tm("b<0>.0"),
      tm("b(X).X"),
      tm("tau.c<0>.0"),
      tm("(nu e)(e<0>.0 | e(X).b<0>.0)"),
  };
  std::vector<HoPtr> procAbs{
      tm("lam(Z).Z"),
      tm("lam(Z).(Z | Z)"),
      tm("lam(Z).b<Z>.0"),
      tm("lam(Z).0"),
  };
  std::vector<HoPtr> nameAbs{
      tm("lam(x).x<0>.0"),
      tm("lam(x).x<lam(Z).Z@(b)>.0"),  // encoded x<b>, the A@(d) example
      tm("lam(x).b<lam(Z).Z@(x)>.0"),
      tm("lam(x).0"),
      tm("lam(x).(x<0>.0 | x(X).X)"),
  };

  std::vector<std::pair<ContextHole, HoPtr>> family;
  auto cross = [&](const std::vector<ContextHole>& cs,
                   const std::vector<HoPtr>& as) {
    for (const auto& c : cs)
      for (const auto& a : as) family.emplace_back(c, a);
  };
  cross(bare, plain);
  cross(bare, procAbs);
  cross(bare, nameAbs);
  cross(appName, nameAbs);
  cross(appProc, procAbs);
  cross(absBare, plain);
  cross(absBare, procAbs);
  cross(absBare, nameAbs);
  cross(absAppName, nameAbs);
  cross(absAppProc, procAbs);
  return family;
}

}  // namespace hopi
