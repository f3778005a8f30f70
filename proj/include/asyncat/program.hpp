#pragma once

#include <memory>
#include <string>
#include <vector>

#include "asyncat/expr.hpp"
#include "asyncat/formula.hpp"

namespace asyncat {

struct Stmt;
using SPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { Skip, Assign, SyncCall, AsyncCall, If, Seq, Return, Open, Close, Read, Write };
    Kind kind = Kind::Skip;
    std::string name;  // assigned variable or called procedure
    ExprPtr e;         // assigned value, guard, or file operand
    SPtr a, b;         // If body in a; Seq parts in a, b
};

SPtr s_skip();
SPtr s_assign(std::string x, ExprPtr e);
SPtr s_call(std::string m);
SPtr s_async(std::string m);
SPtr s_if(ExprPtr e, SPtr body);
SPtr s_seq(SPtr a, SPtr b);
SPtr s_return();
SPtr s_file(Stmt::Kind k, ExprPtr f);

// Right-associated sequence of the given statements.
SPtr s_block(const std::vector<SPtr>& stmts);
std::vector<SPtr> flatten(const SPtr& s);

struct ProcDecl {
    std::string name;
    SPtr body;
};

struct Program {
    std::vector<ProcDecl> procedures;
    std::vector<std::string> init_decls;
    SPtr init_body;

    const ProcDecl* find(const std::string& m) const;
};

inline const char* const kInit = "init";

SPtr lookup(const std::string& m, const Program& p);

// Re-checks the structural invariants; throws ValidationError.
void validate_program(const Program& p);

struct Binder {
    std::string x;  // program variable
    std::string y;  // logic variable
};

struct ContractDecl {
    std::string proc;
    FPtr assume;    // θ'_a
    std::vector<Binder> pre_binders;
    ExprPtr q_a;
    FPtr internal;  // θ'_s
    std::vector<Binder> post_binders;
    ExprPtr q_c;
    FPtr cont;      // θ'_c
};

// Checks the binder scoping conditions; throws ScopingError.
void validate_contract(const ContractDecl& c);

}  // namespace asyncat
