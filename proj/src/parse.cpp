#include "hopi/parse.hpp"

#include <cctype>

namespace hopi {

namespace {

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c));
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  // Peeks an identifier without consuming it; empty if none.
  std::string_view peek_ident() {
    skip_ws();
    if (pos >= src.size() || !ident_start(src[pos])) return {};
    std::size_t end = pos;
    while (end < src.size() && ident_char(src[end])) ++end;
    return src.substr(pos, end - pos);
  }
  std::string ident(const char* what) {
    std::string_view v = peek_ident();
    if (v.empty()) throw ParseError(std::string("expected ") + what, pos);
    pos += v.size();
    return std::string(v);
  }
  std::string lower_ident(const char* what) {
    std::string_view v = peek_ident();
    if (v.empty() || std::isupper(static_cast<unsigned char>(v[0])))
      throw ParseError(std::string("expected ") + what, pos);
    pos += v.size();
    return std::string(v);
  }
};

bool is_upper_ident(std::string_view v) {
  return !v.empty() && std::isupper(static_cast<unsigned char>(v[0]));
}

// ---- pi ----

struct PiParser {
  Lexer lx;

  PiPtr parse() {
    PiPtr p = par();
    if (!lx.done()) throw ParseError("trailing input", lx.pos);
    return p;
  }

  PiPtr par() {
    std::vector<PiPtr> comps{unit()};
    while (lx.eat('|')) comps.push_back(unit());
    return pi::par(std::move(comps));
  }

  PiPtr tail() {
    if (lx.eat('.')) return unit();
    return pi::nil();
  }

  PiPtr unit() {
    char c = lx.peek();
    if (c == '(') {
      std::size_t mark = lx.pos;
      lx.eat('(');
      if (lx.peek_ident() == "nu") {
        lx.ident("nu");
        Name b(lx.lower_ident("restricted name"));
        lx.expect(')');
        return pi::restrict_(b, unit());
      }
      lx.pos = mark;
      lx.eat('(');
      PiPtr p = par();
      lx.expect(')');
      return p;
    }
    if (c == '0') {
      lx.eat('0');
      return pi::nil();
    }
    if (c == '!') {
      lx.eat('!');
      Name chan(lx.lower_ident("channel"));
      lx.expect('(');
      Name var(lx.lower_ident("input variable"));
      lx.expect(')');
      return pi::repl_in(chan, var, tail());
    }
    if (c == '^') {
      lx.eat('^');
      Name chan(lx.lower_ident("channel"));
      PiPtr body = tail();
      NameSet avoid = all_names(body);
      avoid.insert(chan);
      Name d = fresh_name(avoid, "d");
      return pi::restrict_(d, pi::output(chan, d, body));
    }
    std::string_view id = lx.peek_ident();
    if (id.empty()) throw ParseError("expected a process", lx.pos);
    if (is_upper_ident(id))
      throw ParseError("process variables are not pi syntax", lx.pos);
    if (id == "tau") {
      lx.ident("tau");
      PiPtr body = tail();
      NameSet avoid = all_names(body);
      Name t = fresh_name(avoid, "t");
      avoid.insert(t);
      Name x = fresh_name(avoid, "x");
      avoid.insert(x);
      Name e = fresh_name(avoid, "e");
      return pi::restrict_(
          t, pi::par({pi::input(t, x, body),
                      pi::restrict_(e, pi::output(t, e, pi::nil()))}));
    }
    Name chan(lx.ident("channel"));
    if (lx.eat('(')) {
      Name var(lx.lower_ident("input variable"));
      lx.expect(')');
      return pi::input(chan, var, tail());
    }
    if (lx.eat('<')) {
      Name obj(lx.lower_ident("output object"));
      lx.expect('>');
      return pi::output(chan, obj, tail());
    }
    // CCS-style input sugar: a.P / bare a.
    PiPtr body = tail();
    NameSet avoid = all_names(body);
    avoid.insert(chan);
    Name x = fresh_name(avoid, "x");
    return pi::input(chan, x, body);
  }
};

// ---- hopi ----

struct HoParser {
  Lexer lx;

  HoPtr parse() {
    HoPtr t = par();
    if (!lx.done()) throw ParseError("trailing input", lx.pos);
    return t;
  }

  HoPtr par() {
    std::vector<HoPtr> comps{unit()};
    while (lx.eat('|')) comps.push_back(unit());
    return ho::par(std::move(comps));
  }

  HoPtr tail() {
    if (lx.eat('.')) return unit();
    return ho::nil();
  }

  HoPtr apply_suffix(HoPtr t) {
    while (lx.eat('@')) {
      lx.expect('(');
      std::vector<HoArg> args;
      if (!lx.eat(')')) {
        do {
          args.push_back(arg());
        } while (lx.eat(','));
        lx.expect(')');
      }
      t = ho::app(std::move(t), std::move(args));
    }
    return t;
  }

  HoArg arg() {
    std::string_view id = lx.peek_ident();
    if (!id.empty() && !is_upper_ident(id) && id != "lam" && id != "nu" &&
        id != "tau") {
      // A lowercase identifier followed by a delimiter is a name argument;
      // anything else re-parses as a term.
      std::size_t mark = lx.pos;
      std::string n = lx.ident("argument");
      char c = lx.peek();
      if (c == ',' || c == ')') return HoArg(Name(n));
      lx.pos = mark;
    }
    return HoArg(par_arg());
  }

  // A term argument: parse a unit (no '|' at top level inside argument
  // lists; parenthesize to pass a parallel composition).
  HoPtr par_arg() { return unit(); }

  HoPtr unit() {
    char c = lx.peek();
    if (c == '(') {
      std::size_t mark = lx.pos;
      lx.eat('(');
      if (lx.peek_ident() == "nu") {
        lx.ident("nu");
        Name b(lx.lower_ident("restricted name"));
        lx.expect(')');
        return ho::restrict_(b, unit());
      }
      lx.pos = mark;
      lx.eat('(');
      HoPtr t = par();
      lx.expect(')');
      return apply_suffix(t);
    }
    if (c == '0') {
      lx.eat('0');
      return apply_suffix(ho::nil());
    }
    if (c == '!') {
      lx.eat('!');
      Name chan(lx.lower_ident("channel"));
      if (lx.eat('(')) {
        std::string v = lx.ident("input variable");
        if (!is_upper_ident(v))
          throw ParseError("hopi input binds a process variable", lx.pos);
        lx.expect(')');
        return ho::repl_in(chan, Name(v), tail());
      }
      lx.expect('<');
      HoPtr payload = par();
      lx.expect('>');
      return ho::repl_out(chan, payload, tail());
    }
    if (c == '^') {
      lx.eat('^');
      Name chan(lx.lower_ident("channel"));
      return ho::output(chan, ho::nil(), tail());
    }
    std::string_view id = lx.peek_ident();
    if (id.empty()) throw ParseError("expected a process", lx.pos);
    if (id == "lam") {
      lx.ident("lam");
      lx.expect('(');
      std::vector<Param> params;
      NameSet seen;
      do {
        std::string v = lx.ident("parameter");
        Param p{Name(v), is_upper_ident(v) ? ParamKind::ProcessParam
                                           : ParamKind::NameParam};
        if (!seen.insert(p.id).second)
          throw ParseError("duplicate abstraction parameter " + v, lx.pos);
        params.push_back(std::move(p));
      } while (lx.eat(','));
      lx.expect(')');
      lx.expect('.');
      return ho::abs(std::move(params), unit());
    }
    if (is_upper_ident(id)) {
      std::string v = lx.ident("process variable");
      return apply_suffix(ho::var(Name(v)));
    }
    if (id == "tau") {
      lx.ident("tau");
      HoPtr body = tail();
      NameSet avoid = all_names(body);
      Name t = fresh_name(avoid, "t");
      avoid.insert(t);
      Name x = fresh_name(avoid, "X");
      return ho::restrict_(
          t, ho::par({ho::input(t, x, body),
                      ho::output(t, ho::nil(), ho::nil())}));
    }
    Name chan(lx.ident("channel"));
    if (lx.eat('(')) {
      std::string v = lx.ident("input variable");
      if (!is_upper_ident(v))
        throw ParseError("hopi input binds a process variable", lx.pos);
      lx.expect(')');
      return ho::input(chan, Name(v), tail());
    }
    if (lx.eat('<')) {
      HoPtr payload = par();
      lx.expect('>');
      return ho::output(chan, payload, tail());
    }
    // CCS-style input sugar.
    HoPtr body = tail();
    NameSet avoid = all_names(body);
    Name x = fresh_name(avoid, "X");
    return ho::input(chan, x, body);
  }
};

}  // namespace

PiPtr parse_pi(std::string_view src) {
  PiParser p{Lexer{src}};
  return p.parse();
}

HoPtr parse_ho(std::string_view src, bool requireClosed) {
  HoParser p{Lexer{src}};
  HoPtr t = p.parse();
  if (requireClosed) {
    NameSet fv = free_proc_vars(t);
    if (!fv.empty())
      throw ParseError("free process variable " + fv.begin()->id +
                           " in a closed term",
                       0);
  }
  return t;
}

}  // namespace hopi
