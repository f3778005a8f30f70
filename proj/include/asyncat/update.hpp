#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "asyncat/formula.hpp"
#include "asyncat/interp.hpp"
#include "asyncat/program.hpp"

namespace asyncat {

struct UpdateElem {
    // Guard records a branch condition taken during symbolic execution.
    enum class Kind { Assign, Invoc, Start, Ret, Pop, File, Run, Havoc, Guard };
    Kind kind = Kind::Assign;
    std::string name;       // assigned variable, procedure, or havoc symbol
    std::int64_t id = 0;
    bool sync = false;      // Run mode: sy or as
    Tag file_tag = Tag::Open;
    ExprPtr e;              // program expression (value, operand, guard)
    ExprPtr se;             // the same over the symbolic store
    FPtr tf;                // formula standing for this element, when fixed
};

using Update = std::vector<UpdateElem>;

UpdateElem u_assign(std::string x, ExprPtr e);
UpdateElem u_invoc(std::string m, std::int64_t i);
UpdateElem u_start(std::string m, std::int64_t i);
UpdateElem u_ret(std::int64_t i);
UpdateElem u_pop(std::string m, std::int64_t i);
UpdateElem u_file(Tag t, ExprPtr f);
UpdateElem u_run(std::string m, std::int64_t i, bool sync);
UpdateElem u_havoc(std::string name);
UpdateElem u_guard(ExprPtr e);

std::string show_update_elem(const UpdateElem& u, std::int64_t oid = -1);
std::string show_update(const Update& u, std::int64_t oid = -1);

// Suffixes τ' with τ,K(U) evaluating to τ**τ'. Elements compose
// sequentially; run(m,i,·) executes the body of m globally from the
// context call_σ(m,i).
std::vector<Trace> eval_update(const Update& u, const Trace& tau, const Program& p,
                               const Bounds& b = Bounds::from_env());

// {(m,i) | U = U1 {invoc(m,i)} U2 {ret(oId)} U3, no run(m,i,as) in U3}
std::set<Scope> schedule_update(const Update& u, std::int64_t oid);

}  // namespace asyncat
