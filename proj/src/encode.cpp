#include "hopi/encode.hpp"

#include "hopi/canon.hpp"

namespace hopi {

namespace {

const Name kY("Y");
const Name kZ("Z");

HoPtr encode_input_body(const PiInput& n) {
  Name x = n.var;
  x.is_var = true;
  return ho::input(n.chan, kY,
                   ho::app(ho::var(kY),
                           {HoArg(ho::abs({{x, ParamKind::NameParam}},
                                          encode(n.body)))}));
}

}  // namespace

HoPtr encode(const PiPtr& p) {
  return std::visit(
      [&](const auto& n) -> HoPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PiNil>) {
          return ho::nil();
        } else if constexpr (std::is_same_v<T, PiInput>) {
          return encode_input_body(n);
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          Name x = n.var;
          return ho::repl_in(
              n.chan, kY,
              ho::app(ho::var(kY),
                      {HoArg(ho::abs({{x, ParamKind::NameParam}},
                                     encode(n.body)))}));
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          return ho::output(n.chan,
                            ho::abs({{kZ, ParamKind::ProcessParam}},
                                    ho::app(ho::var(kZ), {HoArg(n.obj)})),
                            encode(n.body));
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          return ho::restrict_(n.name, encode(n.body));
        } else {  // PiPar
          std::vector<HoPtr> comps;
          comps.reserve(n.comps.size());
          for (const auto& c : n.comps) comps.push_back(encode(c));
          return ho::par(std::move(comps));
        }
      },
      p->node);
}

bool check_compositionality(const PiPtr& p) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        HoPtr whole = encode(p);
        if constexpr (std::is_same_v<T, PiNil>) {
          return whole->as<HoNil>() != nullptr;
        } else if constexpr (std::is_same_v<T, PiInput>) {
          // C_in[ [[P]] ] = m(Y).Y@(lam(x).[[P]])
          HoPtr expect =
              ho::input(n.chan, kY,
                        ho::app(ho::var(kY),
                                {HoArg(ho::abs({{n.var, ParamKind::NameParam}},
                                               encode(n.body)))}));
          return alpha_eq(whole, expect) && check_compositionality(n.body);
        } else if constexpr (std::is_same_v<T, PiReplIn>) {
          // [[!m(x).P]] = ![[m(x).P]]
          const auto* r = whole->as<HoReplIn>();
          if (!r) return false;
          HoPtr once = encode(pi::input(n.chan, n.var, n.body));
          const auto* i = once->as<HoInput>();
          if (!i) return false;
          bool same = r->chan == i->chan && r->var == i->var &&
                      alpha_eq(r->body, i->body);
          return same && check_compositionality(n.body);
        } else if constexpr (std::is_same_v<T, PiOutput>) {
          HoPtr expect =
              ho::output(n.chan,
                         ho::abs({{kZ, ParamKind::ProcessParam}},
                                 ho::app(ho::var(kZ), {HoArg(n.obj)})),
                         encode(n.body));
          return alpha_eq(whole, expect) && check_compositionality(n.body);
        } else if constexpr (std::is_same_v<T, PiRestrict>) {
          const auto* r = whole->as<HoRestrict>();
          return r && r->name == n.name && alpha_eq(r->body, encode(n.body)) &&
                 check_compositionality(n.body);
        } else {  // PiPar
          const auto* q = whole->as<HoPar>();
          if (!q || q->comps.size() != n.comps.size()) return false;
          for (std::size_t i = 0; i < n.comps.size(); ++i) {
            if (!alpha_eq(q->comps[i], encode(n.comps[i]))) return false;
            if (!check_compositionality(n.comps[i])) return false;
          }
          return true;
        }
      },
      p->node);
}

}  // namespace hopi
