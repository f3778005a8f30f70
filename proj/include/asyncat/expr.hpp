#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace asyncat {

using Value = std::variant<std::int64_t, std::string, bool>;

inline Value int_val(std::int64_t v) { return Value(std::in_place_index<0>, v); }
inline Value str_val(std::string v) { return Value(std::in_place_index<1>, std::move(v)); }
inline Value bool_val(bool v) { return Value(std::in_place_index<2>, v); }

std::string show_value(const Value& v);
bool is_true(const Value& v);

enum class Op { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not };

const char* op_text(Op op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Var names program variables or logic variables, depending on context.
// Sym is an uninterpreted constant (skolem constant or symbolic value).
struct Expr {
    enum class Kind { Lit, Var, Sym, Bin, Not };
    Kind kind;
    Value lit;
    std::string name;
    Op op = Op::Add;
    ExprPtr lhs, rhs;
};

ExprPtr lit(Value v);
ExprPtr var(std::string name);
ExprPtr sym(std::string name);
ExprPtr bin(Op op, ExprPtr a, ExprPtr b);
ExprPtr not_(ExprPtr a);

using Resolver = std::function<std::optional<Value>(const std::string&)>;

struct EvalEnv {
    Resolver vars;
    Resolver syms;
};

// Total on well-bound inputs; throws UnboundLogicVar for unresolvable names.
Value eval(const Expr& e, const EvalEnv& env);
Value apply_op(Op op, const Value& a, const Value& b);

// Replace Var/Sym leaves; returning nullptr keeps the leaf.
using Rewriter = std::function<ExprPtr(const Expr&)>;
ExprPtr rewrite(const ExprPtr& e, const Rewriter& f);
ExprPtr fold(const ExprPtr& e);

void collect_vars(const Expr& e, std::set<std::string>& out);
void collect_syms(const Expr& e, std::set<std::string>& out);
void collect_literals(const Expr& e, std::set<Value>& out);

bool expr_equal(const Expr& a, const Expr& b);
std::string print_expr(const Expr& e);

}  // namespace asyncat
