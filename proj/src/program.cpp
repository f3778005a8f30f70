#include "asyncat/program.hpp"

#include <set>

#include "asyncat/errors.hpp"

namespace asyncat {

namespace {
std::shared_ptr<Stmt> mk(Stmt::Kind k) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    return s;
}
}  // namespace

SPtr s_skip() { return mk(Stmt::Kind::Skip); }

SPtr s_assign(std::string x, ExprPtr e) {
    auto s = mk(Stmt::Kind::Assign);
    s->name = std::move(x);
    s->e = std::move(e);
    return s;
}

SPtr s_call(std::string m) {
    auto s = mk(Stmt::Kind::SyncCall);
    s->name = std::move(m);
    return s;
}

SPtr s_async(std::string m) {
    auto s = mk(Stmt::Kind::AsyncCall);
    s->name = std::move(m);
    return s;
}

SPtr s_if(ExprPtr e, SPtr body) {
    auto s = mk(Stmt::Kind::If);
    s->e = std::move(e);
    s->a = std::move(body);
    return s;
}

SPtr s_seq(SPtr a, SPtr b) {
    auto s = mk(Stmt::Kind::Seq);
    s->a = std::move(a);
    s->b = std::move(b);
    return s;
}

SPtr s_return() { return mk(Stmt::Kind::Return); }

SPtr s_file(Stmt::Kind k, ExprPtr f) {
    auto s = mk(k);
    s->e = std::move(f);
    return s;
}

SPtr s_block(const std::vector<SPtr>& stmts) {
    if (stmts.empty()) return s_skip();
    SPtr out = stmts.back();
    for (std::size_t k = stmts.size() - 1; k-- > 0;) out = s_seq(stmts[k], out);
    return out;
}

std::vector<SPtr> flatten(const SPtr& s) {
    std::vector<SPtr> out;
    SPtr cur = s;
    while (cur && cur->kind == Stmt::Kind::Seq) {
        auto left = flatten(cur->a);
        out.insert(out.end(), left.begin(), left.end());
        cur = cur->b;
    }
    if (cur) out.push_back(cur);
    return out;
}

const ProcDecl* Program::find(const std::string& m) const {
    for (auto& p : procedures)
        if (p.name == m) return &p;
    return nullptr;
}

SPtr lookup(const std::string& m, const Program& p) {
    if (m == kInit) throw ValidationError("init is reserved and has no lookup entry");
    auto d = p.find(m);
    if (!d) throw ValidationError("unknown procedure " + m);
    return d->body;
}

namespace {

void check_stmt(const SPtr& s, const Program& p, const std::set<std::string>& vars, bool last_allowed_return,
                bool is_last) {
    using K = Stmt::Kind;
    auto uses = [&](const ExprPtr& e) {
        std::set<std::string> vs;
        collect_vars(*e, vs);
        for (auto& v : vs)
            if (!vars.count(v)) throw ValidationError("undeclared variable " + v);
    };
    switch (s->kind) {
    case K::Seq: {
        auto parts = flatten(s);
        for (std::size_t k = 0; k < parts.size(); ++k)
            check_stmt(parts[k], p, vars, last_allowed_return, is_last && k + 1 == parts.size());
        return;
    }
    case K::Return:
        if (!(last_allowed_return && is_last)) throw ValidationError("return is only allowed as the final statement");
        return;
    case K::Assign:
        if (!vars.count(s->name)) throw ValidationError("undeclared variable " + s->name);
        uses(s->e);
        return;
    case K::SyncCall:
    case K::AsyncCall:
        if (!p.find(s->name)) throw ValidationError("unresolved call target " + s->name);
        return;
    case K::If:
        uses(s->e);
        check_stmt(s->a, p, vars, false, false);
        return;
    case K::Open:
    case K::Close:
    case K::Read:
    case K::Write:
        if (s->e->kind == Expr::Kind::Var) {
            uses(s->e);
        } else if (!(s->e->kind == Expr::Kind::Lit && s->e->lit.index() == 1)) {
            throw ValidationError("file operand must be a string literal or a variable");
        }
        return;
    case K::Skip: return;
    }
}

}  // namespace

void validate_program(const Program& p) {
    std::set<std::string> names;
    for (auto& d : p.procedures) {
        if (d.name == kInit) throw ValidationError("procedure name init is reserved");
        if (!names.insert(d.name).second) throw ValidationError("duplicate procedure " + d.name);
    }
    std::set<std::string> vars(p.init_decls.begin(), p.init_decls.end());
    for (auto& d : p.procedures) {
        auto parts = flatten(d.body);
        if (parts.empty() || parts.back()->kind != Stmt::Kind::Return)
            throw ValidationError("procedure " + d.name + " does not end with return");
        check_stmt(d.body, p, vars, true, true);
    }
    auto parts = flatten(p.init_body);
    if (parts.empty() || parts.back()->kind != Stmt::Kind::Return)
        throw ValidationError("init body lacks its trailing return");
    check_stmt(p.init_body, p, vars, true, true);
}

void validate_contract(const ContractDecl& c) {
    std::set<std::string> y1, y12;
    for (auto& b : c.pre_binders) {
        if (!y12.insert(b.y).second) throw ScopingError("binders", "logic variable " + b.y + " bound twice");
        y1.insert(b.y);
    }
    for (auto& b : c.post_binders)
        if (!y12.insert(b.y).second) throw ScopingError("binders", "logic variable " + b.y + " bound twice");

    for (auto* f : {&c.assume, &c.internal, &c.cont}) validate_formula(**f);
    validate_formula(*f_pred(c.q_a));
    validate_formula(*f_pred(c.q_c));

    auto within = [](const std::set<std::string>& fv, const std::set<std::string>& allowed) -> std::string {
        for (auto& v : fv)
            if (!allowed.count(v)) return v;
        return "";
    };
    std::set<std::string> fa = free_logic_vars(*c.assume);
    for (auto& v : free_logic_vars(*f_pred(c.q_a))) fa.insert(v);
    if (auto v = within(fa, y1); !v.empty())
        throw ScopingError("pre-trace", "free logic variable " + v + " outside the pre binders");
    std::set<std::string> fs = free_logic_vars(*c.internal);
    if (auto v = within(fs, y1); !v.empty())
        throw ScopingError("internal", "free logic variable " + v + " outside the pre binders");
    std::set<std::string> fc = free_logic_vars(*c.cont);
    for (auto& v : free_logic_vars(*f_pred(c.q_c))) fc.insert(v);
    if (auto v = within(fc, y12); !v.empty())
        throw ScopingError("post-trace", "free logic variable " + v + " outside the binders");
}

}  // namespace asyncat
