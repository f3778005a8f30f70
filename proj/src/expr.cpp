#include "asyncat/expr.hpp"

#include "asyncat/errors.hpp"

namespace asyncat {

std::string show_value(const Value& v) {
    switch (v.index()) {
    case 0: return std::to_string(std::get<0>(v));
    case 1: {
        std::string out = "\"";
        for (char c : std::get<1>(v)) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    }
    default: return std::get<2>(v) ? "true" : "false";
    }
}

bool is_true(const Value& v) { return v.index() == 2 && std::get<2>(v); }

const char* op_text(Op op) {
    switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Not: return "!";
    }
    return "?";
}

ExprPtr lit(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Lit;
    e->lit = std::move(v);
    return e;
}

ExprPtr var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr sym(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sym;
    e->name = std::move(name);
    return e;
}

ExprPtr bin(Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Bin;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr not_(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Not;
    e->op = Op::Not;
    e->lhs = std::move(a);
    return e;
}

// Mismatched operand types fall back to int 0 (arithmetic) or false (boolean).
Value apply_op(Op op, const Value& a, const Value& b) {
    bool ints = a.index() == 0 && b.index() == 0;
    bool strs = a.index() == 1 && b.index() == 1;
    bool bools = a.index() == 2 && b.index() == 2;
    switch (op) {
    case Op::Add:
        if (ints) return int_val(std::get<0>(a) + std::get<0>(b));
        if (strs) return str_val(std::get<1>(a) + std::get<1>(b));
        return int_val(0);
    case Op::Sub:
        return ints ? int_val(std::get<0>(a) - std::get<0>(b)) : int_val(0);
    case Op::Mul:
        return ints ? int_val(std::get<0>(a) * std::get<0>(b)) : int_val(0);
    case Op::Eq: return bool_val(a == b);
    case Op::Ne: return bool_val(a != b);
    case Op::Lt: return bool_val((ints || strs) && a < b);
    case Op::Le: return bool_val((ints || strs) && a <= b);
    case Op::Gt: return bool_val((ints || strs) && a > b);
    case Op::Ge: return bool_val((ints || strs) && a >= b);
    case Op::And: return bool_val(bools && std::get<2>(a) && std::get<2>(b));
    case Op::Or: return bool_val(bools && (std::get<2>(a) || std::get<2>(b)));
    case Op::Not: return bool_val(a.index() == 2 && !std::get<2>(a));
    }
    return int_val(0);
}

Value eval(const Expr& e, const EvalEnv& env) {
    switch (e.kind) {
    case Expr::Kind::Lit: return e.lit;
    case Expr::Kind::Var: {
        auto v = env.vars ? env.vars(e.name) : std::nullopt;
        if (!v) throw UnboundLogicVar(e.name);
        return *v;
    }
    case Expr::Kind::Sym: {
        auto v = env.syms ? env.syms(e.name) : std::nullopt;
        if (!v) throw UnboundLogicVar(e.name);
        return *v;
    }
    case Expr::Kind::Not: return apply_op(Op::Not, eval(*e.lhs, env), Value{});
    case Expr::Kind::Bin: {
        Value a = eval(*e.lhs, env);
        Value b = eval(*e.rhs, env);
        return apply_op(e.op, a, b);
    }
    }
    return int_val(0);
}

ExprPtr rewrite(const ExprPtr& e, const Rewriter& f) {
    switch (e->kind) {
    case Expr::Kind::Lit: return e;
    case Expr::Kind::Var:
    case Expr::Kind::Sym: {
        auto r = f(*e);
        return r ? r : e;
    }
    case Expr::Kind::Not: {
        auto a = rewrite(e->lhs, f);
        return a == e->lhs ? e : not_(a);
    }
    case Expr::Kind::Bin: {
        auto a = rewrite(e->lhs, f);
        auto b = rewrite(e->rhs, f);
        return (a == e->lhs && b == e->rhs) ? e : bin(e->op, a, b);
    }
    }
    return e;
}

ExprPtr fold(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Not: {
        auto a = fold(e->lhs);
        if (a->kind == Expr::Kind::Lit) return lit(apply_op(Op::Not, a->lit, Value{}));
        return a == e->lhs ? e : not_(a);
    }
    case Expr::Kind::Bin: {
        auto a = fold(e->lhs);
        auto b = fold(e->rhs);
        if (a->kind == Expr::Kind::Lit && b->kind == Expr::Kind::Lit)
            return lit(apply_op(e->op, a->lit, b->lit));
        return (a == e->lhs && b == e->rhs) ? e : bin(e->op, a, b);
    }
    default: return e;
    }
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Var) out.insert(e.name);
    if (e.lhs) collect_vars(*e.lhs, out);
    if (e.rhs) collect_vars(*e.rhs, out);
}

void collect_syms(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Sym) out.insert(e.name);
    if (e.lhs) collect_syms(*e.lhs, out);
    if (e.rhs) collect_syms(*e.rhs, out);
}

void collect_literals(const Expr& e, std::set<Value>& out) {
    if (e.kind == Expr::Kind::Lit) out.insert(e.lit);
    if (e.lhs) collect_literals(*e.lhs, out);
    if (e.rhs) collect_literals(*e.rhs, out);
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::Lit: return a.lit == b.lit;
    case Expr::Kind::Var:
    case Expr::Kind::Sym: return a.name == b.name;
    case Expr::Kind::Not: return expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Bin:
        return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

int prec(const Expr& e) {
    if (e.kind == Expr::Kind::Not) return 6;
    if (e.kind != Expr::Kind::Bin) return 7;
    switch (e.op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Add:
    case Op::Sub: return 4;
    case Op::Mul: return 5;
    default: return 3;
    }
}

std::string wrap(const Expr& e, int min) {
    std::string s = print_expr(e);
    return prec(e) < min ? "(" + s + ")" : s;
}

}  // namespace

std::string print_expr(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Lit: return show_value(e.lit);
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Sym: return "$" + e.name;
    case Expr::Kind::Not: return "!" + wrap(*e.lhs, 6);
    case Expr::Kind::Bin: {
        int p = prec(e);
        // comparisons are non-associative, so both sides need a tighter operand
        int left = p == 3 ? 4 : p;
        return wrap(*e.lhs, left) + " " + op_text(e.op) + " " + wrap(*e.rhs, p + 1);
    }
    }
    return "?";
}

}  // namespace asyncat
