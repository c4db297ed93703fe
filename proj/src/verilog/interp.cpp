#include "vforge/verilog/interp.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>

#include "vforge/core/error.hpp"

namespace vforge::verilog {

namespace {

struct Value {
  std::uint64_t bits = 0;
  unsigned width = 1;
  bool unknown = false;
};

std::uint64_t mask(unsigned width) { return width >= 64 ? ~0ull : ((1ull << width) - 1); }

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind;
  std::string text;
  Value value;  // for numbers
};

Value parse_number(const std::string& s) {
  Value v;
  const auto tick = s.find('\'');
  if (tick == std::string::npos) {
    v.bits = std::stoull(s);
    v.width = 32;
    return v;
  }
  v.width = tick == 0 ? 32 : static_cast<unsigned>(std::stoul(s.substr(0, tick)));
  const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(s.at(tick + 1))));
  std::string digits = s.substr(tick + 2);
  if (base == 'x' || base == 'z') {
    v.unknown = true;
    return v;
  }
  int radix = base == 'b' ? 2 : base == 'd' ? 10 : base == 'h' ? 16 : base == 'o' ? 8 : 0;
  if (radix == 0) throw ParseError("unsupported number base in " + s);
  std::string clean;
  for (char c : digits) {
    if (c == '_') continue;
    if (c == 'x' || c == 'X' || c == 'z' || c == 'Z') {
      v.unknown = true;
      return v;
    }
    clean += c;
  }
  if (clean.empty()) throw ParseError("empty number " + s);
  v.bits = std::stoull(clean, nullptr, radix) & mask(v.width);
  return v;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      const auto end = src.find("*/", i + 2);
      if (end == std::string_view::npos) throw ParseError("unterminated comment");
      i = end + 2;
      continue;
    }
    if (c == '`') throw ParseError("compiler directives are not supported");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '\'') {
        ++j;
        if (j < src.size() && (src[j] == 's' || src[j] == 'S')) ++j;
        if (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
        while (j < src.size() && (std::isxdigit(static_cast<unsigned char>(src[j])) ||
                                  src[j] == '_' || src[j] == 'x' || src[j] == 'X' ||
                                  src[j] == 'z' || src[j] == 'Z'))
          ++j;
      }
      const std::string text(src.substr(i, j - i));
      out.push_back({Tok::Number, text, parse_number(text)});
      i = j;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), {}});
      i = j;
      continue;
    }
    static const char* two[] = {"==", "!=", "<=", "&&", "||"};
    bool matched = false;
    for (const char* op : two) {
      if (src.substr(i, 2) == op) {
        out.push_back({Tok::Op, op, {}});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("()[]{},;:?=~!&|^@.#+-").find(c) == std::string_view::npos)
      throw ParseError(std::string("unexpected character '") + c + "'");
    out.push_back({Tok::Op, std::string(1, c), {}});
    ++i;
  }
  out.push_back({Tok::End, "", {}});
  return out;
}

struct Signal {
  Value value;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind { Const, Ref, Index, Unary, Binary, Ternary } kind;
  std::string op;
  Value constant;
  std::string name;
  ExprPtr a, b, c;
};

struct Target {
  std::string name;
  ExprPtr index;  // optional single-bit select
};

struct Assign {
  Target lhs;
  ExprPtr rhs;
};

struct CaseArm {
  ExprPtr label;  // null for default
  Assign body;
};

struct CaseBlock {
  ExprPtr selector;
  std::vector<CaseArm> arms;
};

struct ClockedBlock {
  ExprPtr condition;
  Assign then_branch;
  Assign else_branch;
};

}  // namespace

struct Interpreter::Impl {
  std::string module_name;
  std::vector<Port> ports;
  std::map<std::string, Signal> signals;
  std::map<std::string, Value> params;
  std::vector<Assign> assigns;
  std::vector<CaseBlock> cases;
  std::vector<ClockedBlock> clocked;

  // ---- parsing -----------------------------------------------------------
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  bool at(const std::string& text) const { return toks[pos].kind != Tok::End && toks[pos].text == text; }
  Token take() { return toks[pos++]; }
  void expect(const std::string& text) {
    if (!at(text)) throw ParseError("expected '" + text + "' near '" + peek().text + "'");
    ++pos;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) throw ParseError("expected identifier near '" + peek().text + "'");
    return take().text;
  }

  unsigned parse_range() {
    if (!at("[")) return 1;
    expect("[");
    const auto hi = parse_expr();
    expect(":");
    const auto lo = parse_expr();
    expect("]");
    const auto h = eval(*hi), l = eval(*lo);
    if (l.bits != 0) throw ParseError("only [N:0] ranges are supported");
    return static_cast<unsigned>(h.bits) + 1;
  }

  void declare(const std::string& name, unsigned width) {
    if (signals.count(name)) {
      signals[name].value.width = width;
      return;
    }
    Signal s;
    s.value.width = width;
    s.value.unknown = true;
    signals[name] = s;
  }

  void parse_module() {
    expect("module");
    module_name = ident();
    expect("(");
    while (!at(")")) {
      const auto dir = ident();
      if (dir != "input" && dir != "output") throw ParseError("expected port direction");
      if (at("reg") || at("wire")) take();
      const unsigned w = parse_range();
      const auto name = ident();
      ports.push_back({name, dir == "input" ? PortDir::Input : PortDir::Output, w});
      declare(name, w);
      if (!at(")")) expect(",");
    }
    expect(")");
    expect(";");
    while (!at("endmodule")) {
      if (peek().kind == Tok::End) throw ParseError("missing endmodule");
      parse_item();
    }
    expect("endmodule");
    if (peek().kind != Tok::End) throw ParseError("text after endmodule");
  }

  void parse_item() {
    if (at("parameter") || at("localparam")) {
      take();
      for (;;) {
        const auto name = ident();
        expect("=");
        params[name] = eval(*parse_expr());
        if (at(";")) break;
        expect(",");
      }
      expect(";");
    } else if (at("reg") || at("wire")) {
      take();
      const unsigned w = parse_range();
      for (;;) {
        declare(ident(), w);
        if (at(";")) break;
        expect(",");
      }
      expect(";");
    } else if (at("assign")) {
      take();
      Assign a;
      a.lhs = parse_target();
      expect("=");
      a.rhs = parse_expr();
      expect(";");
      assigns.push_back(std::move(a));
    } else if (at("always_comb")) {
      take();
      expect("begin");
      expect("case");
      expect("(");
      CaseBlock cb;
      cb.selector = parse_expr();
      expect(")");
      while (!at("endcase")) {
        CaseArm arm;
        if (at("default")) take();
        else arm.label = parse_expr();
        expect(":");
        arm.body.lhs = parse_target();
        expect("=");
        arm.body.rhs = parse_expr();
        expect(";");
        cb.arms.push_back(std::move(arm));
      }
      expect("endcase");
      expect("end");
      cases.push_back(std::move(cb));
    } else if (at("always")) {
      take();
      expect("@");
      expect("(");
      while (!at(")")) take();
      expect(")");
      expect("begin");
      ClockedBlock blk;
      expect("if");
      expect("(");
      blk.condition = parse_expr();
      expect(")");
      blk.then_branch = parse_nonblocking();
      expect("else");
      blk.else_branch = parse_nonblocking();
      expect("end");
      clocked.push_back(std::move(blk));
    } else {
      throw ParseError("unsupported construct near '" + peek().text + "'");
    }
  }

  Assign parse_nonblocking() {
    Assign a;
    a.lhs = parse_target();
    expect("<=");
    a.rhs = parse_expr();
    expect(";");
    return a;
  }

  Target parse_target() {
    Target t;
    t.name = ident();
    if (at("[")) {
      take();
      t.index = parse_expr();
      expect("]");
    }
    return t;
  }

  // Precedence climbing, loosest first.
  ExprPtr parse_expr() { return parse_ternary(); }

  ExprPtr parse_ternary() {
    auto cond = parse_binary(0);
    if (!at("?")) return cond;
    take();
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Ternary;
    e->a = std::move(cond);
    e->b = parse_ternary();
    expect(":");
    e->c = parse_ternary();
    return e;
  }

  static int precedence(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    auto lhs = parse_unary();
    for (;;) {
      if (peek().kind != Tok::Op) return lhs;
      const auto op = peek().text;
      const int p = precedence(op);
      if (p < 0 || p < min_prec) return lhs;
      take();
      auto rhs = parse_binary(p + 1);
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Binary;
      e->op = op;
      e->a = std::move(lhs);
      e->b = std::move(rhs);
      lhs = std::move(e);
    }
  }

  ExprPtr parse_unary() {
    if (at("~") || at("!")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Unary;
      e->op = take().text;
      e->a = parse_unary();
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (at("(")) {
      take();
      auto e = parse_expr();
      expect(")");
      return e;
    }
    auto e = std::make_unique<Expr>();
    if (peek().kind == Tok::Number) {
      e->kind = Expr::Kind::Const;
      e->constant = take().value;
      return e;
    }
    e->name = ident();
    e->kind = Expr::Kind::Ref;
    if (at("[")) {
      take();
      auto idx = std::make_unique<Expr>();
      idx->kind = Expr::Kind::Index;
      idx->name = e->name;
      idx->a = parse_expr();
      expect("]");
      return idx;
    }
    return e;
  }

  // ---- evaluation --------------------------------------------------------
  Value lookup(const std::string& name) const {
    if (auto it = params.find(name); it != params.end()) return it->second;
    if (auto it = signals.find(name); it != signals.end()) return it->second.value;
    throw ParseError("undeclared identifier " + name);
  }

  static bool truthy(const Value& v) { return !v.unknown && v.bits != 0; }

  Value eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Const: return e.constant;
      case Expr::Kind::Ref: return lookup(e.name);
      case Expr::Kind::Index: {
        const auto base = lookup(e.name);
        const auto idx = eval(*e.a);
        Value v;
        if (base.unknown || idx.unknown || idx.bits >= base.width) {
          v.unknown = true;
          return v;
        }
        v.bits = (base.bits >> idx.bits) & 1u;
        return v;
      }
      case Expr::Kind::Unary: {
        const auto a = eval(*e.a);
        Value v;
        if (e.op == "~") {
          v.width = a.width;
          v.unknown = a.unknown;
          v.bits = ~a.bits & mask(a.width);
        } else {
          v.unknown = a.unknown;
          v.bits = a.bits == 0 ? 1 : 0;
        }
        return v;
      }
      case Expr::Kind::Binary: {
        const auto a = eval(*e.a);
        const auto b = eval(*e.b);
        Value v;
        if (e.op == "&&" || e.op == "||") {
          // Known dominating operands decide even when the other side is unknown.
          const bool and_op = e.op == "&&";
          if (and_op && ((!a.unknown && a.bits == 0) || (!b.unknown && b.bits == 0))) return v;
          if (!and_op && (truthy(a) || truthy(b))) {
            v.bits = 1;
            return v;
          }
          v.unknown = a.unknown || b.unknown;
          v.bits = and_op ? (truthy(a) && truthy(b)) : 0;
          return v;
        }
        v.unknown = a.unknown || b.unknown;
        if (e.op == "==" || e.op == "!=") {
          const bool eq = a.bits == b.bits;
          v.bits = (e.op == "==") == eq ? 1 : 0;
          return v;
        }
        v.width = std::max(a.width, b.width);
        if (e.op == "&") v.bits = a.bits & b.bits;
        else if (e.op == "|") v.bits = a.bits | b.bits;
        else v.bits = a.bits ^ b.bits;
        // Bitwise AND with a known zero is zero regardless of the other side.
        if (e.op == "&" && v.unknown && v.width == 1 &&
            ((!a.unknown && a.bits == 0) || (!b.unknown && b.bits == 0))) {
          v.unknown = false;
          v.bits = 0;
        }
        if (e.op == "|" && v.unknown && v.width == 1 &&
            ((!a.unknown && a.bits == 1) || (!b.unknown && b.bits == 1))) {
          v.unknown = false;
          v.bits = 1;
        }
        return v;
      }
      case Expr::Kind::Ternary: {
        const auto c = eval(*e.a);
        if (c.unknown) {
          Value v;
          v.unknown = true;
          return v;
        }
        return c.bits ? eval(*e.b) : eval(*e.c);
      }
    }
    return {};
  }

  // Returns true when the stored value changed.
  bool store(const Target& t, const Value& v) {
    auto it = signals.find(t.name);
    if (it == signals.end()) throw ParseError("assignment to undeclared " + t.name);
    auto& cur = it->second.value;
    const Value before = cur;
    if (t.index) {
      const auto idx = eval(*t.index);
      if (idx.unknown || idx.bits >= cur.width) throw ParseError("bad bit select on " + t.name);
      if (cur.unknown) {
        // Bits are tracked jointly; a partial write leaves the rest at 0.
        cur.unknown = false;
        cur.bits = 0;
      }
      if (v.unknown) {
        cur.unknown = true;
      } else {
        cur.bits = (cur.bits & ~(1ull << idx.bits)) | ((v.bits & 1u) << idx.bits);
      }
    } else {
      cur.unknown = v.unknown;
      cur.bits = v.unknown ? 0 : v.bits & mask(cur.width);
    }
    return cur.bits != before.bits || cur.unknown != before.unknown;
  }

  void settle() {
    for (int iter = 0; iter < 64; ++iter) {
      bool changed = false;
      for (const auto& cb : cases) {
        const auto sel = eval(*cb.selector);
        const CaseArm* hit = nullptr;
        for (const auto& arm : cb.arms) {
          if (!arm.label) {
            if (!hit) hit = &arm;
            break;
          }
          const auto label = eval(*arm.label);
          if (!sel.unknown && !label.unknown && sel.bits == label.bits) {
            hit = &arm;
            break;
          }
        }
        if (sel.unknown && !cb.arms.empty()) {
          Value x;
          x.unknown = true;
          changed |= store(cb.arms.front().body.lhs, x);
        } else if (hit) {
          changed |= store(hit->body.lhs, eval(*hit->body.rhs));
        }
      }
      for (const auto& a : assigns) changed |= store(a.lhs, eval(*a.rhs));
      if (!changed) return;
    }
    throw std::runtime_error("combinational logic did not settle");
  }

  void clock() {
    std::vector<std::pair<const Target*, Value>> updates;
    for (const auto& blk : clocked) {
      const auto cond = eval(*blk.condition);
      const Assign& a = truthy(cond) ? blk.then_branch : blk.else_branch;
      auto v = eval(*a.rhs);
      if (cond.unknown) v.unknown = true;
      updates.emplace_back(&a.lhs, v);
    }
    for (auto& [t, v] : updates) store(*t, v);
    settle();
  }
};

Interpreter::Interpreter(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Interpreter::Interpreter(Interpreter&&) noexcept = default;
Interpreter& Interpreter::operator=(Interpreter&&) noexcept = default;
Interpreter::~Interpreter() = default;

Interpreter Interpreter::parse(std::string_view text) {
  auto impl = std::make_unique<Impl>();
  impl->toks = tokenize(text);
  impl->parse_module();
  impl->toks.clear();
  return Interpreter(std::move(impl));
}

const std::string& Interpreter::module_name() const { return impl_->module_name; }
const std::vector<Port>& Interpreter::ports() const { return impl_->ports; }

void Interpreter::set(const std::string& name, std::uint64_t value) {
  auto it = impl_->signals.find(name);
  if (it == impl_->signals.end()) throw std::out_of_range("no signal " + name);
  it->second.value.bits = value & mask(it->second.value.width);
  it->second.value.unknown = false;
}

std::uint64_t Interpreter::get(const std::string& name) const {
  auto it = impl_->signals.find(name);
  if (it == impl_->signals.end()) throw std::out_of_range("no signal " + name);
  return it->second.value.bits;
}

bool Interpreter::unknown(const std::string& name) const {
  auto it = impl_->signals.find(name);
  if (it == impl_->signals.end()) throw std::out_of_range("no signal " + name);
  return it->second.value.unknown;
}

std::uint64_t Interpreter::parameter(const std::string& name) const {
  auto it = impl_->params.find(name);
  if (it == impl_->params.end()) throw std::out_of_range("no parameter " + name);
  return it->second.bits;
}

void Interpreter::settle() { impl_->settle(); }
void Interpreter::clock() { impl_->clock(); }

}  // namespace vforge::verilog
