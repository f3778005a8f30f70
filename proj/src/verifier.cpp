#include "asyncat/verifier.hpp"

#include <json.hpp>
#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "asyncat/errors.hpp"
#include "asyncat/parse.hpp"

namespace asyncat {

bool ProofNode::accepted() const { return open_leaves().empty(); }

std::vector<const ProofNode*> ProofNode::open_leaves() const {
    std::vector<const ProofNode*> out;
    std::function<void(const ProofNode&)> go = [&](const ProofNode& n) {
        if (n.status == Status::Open) out.push_back(&n);
        for (auto& c : n.premises) go(c);
    };
    go(*this);
    return out;
}

std::size_t ProofNode::size() const {
    std::size_t n = 1;
    for (auto& c : premises) n += c.size();
    return n;
}

std::vector<std::string> ProofNode::spine() const {
    std::vector<std::string> out;
    for (const ProofNode* n = this;; n = &n->premises.back()) {
        out.push_back(n->rule);
        if (n->premises.empty()) break;
    }
    return out;
}

namespace {

void render(const ProofNode& n, int depth, std::ostringstream& out) {
    std::string pad(2 * depth, ' ');
    out << pad << "[" << n.rule << "] " << n.conclusion;
    if (n.status == ProofNode::Status::Closed) out << "  -- closed" << (n.bounded ? " (bounded)" : "");
    if (n.status == ProofNode::Status::Open) out << "  -- OPEN";
    out << "\n";
    for (auto& a : n.antecedent) out << pad << "    + " << a << "\n";
    if (!n.evidence.empty()) out << pad << "    " << n.evidence << "\n";
    for (auto& c : n.premises) render(c, depth + 1, out);
}

nlohmann::json to_json(const ProofNode& n) {
    nlohmann::json j;
    j["rule"] = n.rule;
    j["conclusion"] = n.conclusion;
    if (!n.antecedent.empty()) j["antecedent"] = n.antecedent;
    j["status"] = n.status == ProofNode::Status::Closed ? "closed" : n.status == ProofNode::Status::Open ? "open" : "inner";
    if (!n.evidence.empty()) j["evidence"] = n.evidence;
    if (n.bounded) j["bounded"] = true;
    if (!n.premises.empty()) {
        j["premises"] = nlohmann::json::array();
        for (auto& c : n.premises) j["premises"].push_back(to_json(c));
    }
    return j;
}

}  // namespace

std::string render_proof(const ProofNode& n) {
    std::ostringstream out;
    render(n, 0, out);
    return out.str();
}

std::string proof_json(const ProofNode& n) {
    nlohmann::json j = to_json(n);
    j["accepted"] = n.accepted();
    j["open_leaves"] = n.open_leaves().size();
    return j.dump(2);
}

namespace {

using Store = std::map<std::string, ExprPtr>;
using Subst = std::map<std::string, ExprPtr>;
using St = ProofNode::Status;

ExprPtr on_store(const ExprPtr& e, const Store& s) {
    return fold(rewrite(e, [&](const Expr& x) -> ExprPtr {
        if (x.kind != Expr::Kind::Var) return nullptr;
        auto it = s.find(x.name);
        if (it == s.end()) throw UnboundProgramVar(x.name);
        return it->second;
    }));
}

Subst binder_map(const std::vector<Binder>& bs, const Store& s, Subst base = {}) {
    for (auto& b : bs) {
        auto it = s.find(b.x);
        if (it == s.end()) throw UnboundProgramVar(b.x);
        base[b.y] = it->second;
    }
    return base;
}

// A contract with its binders replaced: ȳ1 by the store before the scope,
// ȳ2 by the store after it.
struct Inst {
    FPtr assume, qa, internal, qc, cont;
};

Inst instantiate(const ContractDecl& c, const Store& before, const Store& after) {
    Subst m1 = binder_map(c.pre_binders, before);
    Subst m12 = binder_map(c.post_binders, after, m1);
    return {subst_vars(c.assume, m1), subst_vars(f_pred(c.q_a), m1), subst_vars(c.internal, m1),
            subst_vars(f_pred(c.q_c), m12), subst_vars(c.cont, m12)};
}

ExprPtr id_lit(std::int64_t i) { return lit(int_val(i)); }

void flatten_chop(const FPtr& f, std::vector<FPtr>& out) {
    if (f->kind == Formula::Kind::Chop) {
        flatten_chop(f->a, out);
        flatten_chop(f->b, out);
    } else {
        out.push_back(f);
    }
}

struct Obligation {
    std::string callee;
    std::int64_t id;
    std::size_t pos;  // index of the run element in U
    FPtr rhs;         // ⟨q_c⟩ ** pop(m,i) ** ⟨q_c⟩ ** θ'_c of the callee
};

struct SymState {
    Update u;
    Store store;
    std::vector<ExprPtr> path;
    std::vector<Obligation> obl;
};

bool satisfiable(const std::vector<ExprPtr>& path) {
    std::set<std::string> syms;
    std::set<Value> lits;
    for (auto& e : path) {
        collect_syms(*e, syms);
        collect_literals(*e, lits);
    }
    auto dom = sample_domain(lits);
    std::vector<std::string> names(syms.begin(), syms.end());
    double total = 1;
    for (std::size_t k = 0; k < names.size(); ++k) total *= static_cast<double>(dom.size());
    if (total > 50000) return true;
    std::vector<std::size_t> digits(names.size(), 0);
    for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = dom[digits[k]];
        EvalEnv env;
        env.syms = [&](const std::string& n) -> std::optional<Value> {
            auto it = v.find(n);
            if (it == v.end()) return std::nullopt;
            return it->second;
        };
        bool all = true;
        for (auto& e : path)
            if (!is_true(eval(*e, env))) {
                all = false;
                break;
            }
        if (all) return true;
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == dom.size()) digits[k++] = 0;
        if (k == digits.size()) return false;
    }
}

class Prover {
public:
    Prover(const Program& p, const std::vector<ContractDecl>& cs, const ContractDecl& c, const VerifyOptions& o)
        : p_(p), cs_(cs), c_(c), o_(o), m_(c.proc), oid_(scope_id(c.proc)) {
        validate_contract(c);
        compute_writes();
    }

    ProofNode run() {
        const bool init = m_ == kInit;
        SymState st;
        for (auto& x : p_.init_decls) st.store[x] = init ? lit(int_val(0)) : sym(x + "@0");
        Store end;
        for (auto& x : p_.init_decls) end[x] = sym(x + "@end");
        self_ = instantiate(c_, st.store, end);
        pre_ = f_chop(self_.assume, self_.qa);
        post_ = f_chop_all({self_.assume, self_.qa, f_ev(pat_start(m_, id_lit(oid_))), self_.qa, self_.internal,
                            self_.qc, f_ev(pat_pop(m_, id_lit(oid_))), self_.qc});
        if (!init) st.u.push_back(u_havoc("V"));
        st.u.push_back(u_start(m_, oid_));

        ProofNode root;
        root.rule = "Contract";
        root.conclusion = "C ⊢ " + m_ + " : contract";
        root.antecedent.push_back("Θ = " + print_formula(*post_));
        root.antecedent.push_back(show_update(st.u, oid_) + " : " + print_formula(*pre_));
        if (init) {
            ProofNode side;
            side.rule = "Side";
            side.conclusion = "⟨σ_d⟩ ∈ θ_pre";
            bool ok = member(singleton(default_state(p_)), pre_);
            side.status = ok ? St::Closed : St::Open;
            side.evidence = ok ? "membership of the initial state" : "initial state violates the pre-trace";
            root.premises.push_back(side);
        }
        SPtr body = init ? p_.init_body : lookup(m_, p_);
        root.premises.push_back(exec(st, flatten(body)));
        return root;
    }

private:
    const Program& p_;
    const std::vector<ContractDecl>& cs_;
    const ContractDecl& c_;
    const VerifyOptions& o_;
    std::string m_;
    std::int64_t oid_;
    Inst self_;
    FPtr pre_, post_;
    std::int64_t next_id_ = 1;
    int next_sym_ = 1;
    std::map<std::string, std::set<std::string>> writes_;
    std::map<std::string, std::vector<ContractDecl>> max_;

    void compute_writes() {
        std::map<std::string, std::set<std::string>> calls;
        std::function<void(const SPtr&, const std::string&)> scan = [&](const SPtr& s, const std::string& m) {
            if (!s) return;
            if (s->kind == Stmt::Kind::Assign) writes_[m].insert(s->name);
            if (s->kind == Stmt::Kind::SyncCall || s->kind == Stmt::Kind::AsyncCall) calls[m].insert(s->name);
            scan(s->a, m);
            scan(s->b, m);
        };
        for (auto& d : p_.procedures) scan(d.body, d.name);
        for (bool changed = true; changed;) {
            changed = false;
            for (auto& [m, cs] : calls)
                for (auto& c : cs)
                    for (auto& x : writes_[c]) changed |= writes_[m].insert(x).second;
        }
    }

    const std::vector<ContractDecl>& maximal(const std::string& m) {
        auto it = max_.find(m);
        if (it != max_.end()) return it->second;
        std::vector<ContractDecl> all;
        for (auto& c : cs_)
            if (c.proc == m) all.push_back(c);
        if (all.empty()) throw ValidationError("no contract for procedure " + m);
        return max_[m] = max_contracts(all);
    }

    std::string show(const SymState& st, const std::vector<SPtr>& k) const {
        std::string s;
        for (auto& x : k) s += (s.empty() ? "" : "; ") + print_stmt(x);
        return "⊢ " + show_update(st.u, oid_) + " " + (s.empty() ? "·" : s) + " :G Θ";
    }

    LocalResult local(const SymState& st, const Update& u, const FPtr& target, bool at_end = false) const {
        LocalQuery q;
        q.program = &p_;
        q.proc = m_;
        q.oid = oid_;
        q.pre = pre_;
        q.u = u;
        q.path = st.path;
        q.target = target;
        if (at_end)
            for (auto& [x, v] : st.store) q.end_values[x + "@end"] = v;
        return discharge_local(q, o_);
    }

    static ProofNode leaf(std::string rule, std::string concl, const LocalResult& r) {
        ProofNode n;
        n.rule = std::move(rule);
        n.conclusion = std::move(concl);
        n.status = r.closed ? St::Closed : St::Open;
        n.evidence = r.evidence;
        n.bounded = r.closed && r.bounded;
        return n;
    }

    ProofNode inclusion_leaf(const std::string& what, const FPtr& lhs, const FPtr& rhs,
                             const std::vector<ExprPtr>& path) const {
        InclusionOptions io;
        io.assumptions = path;
        auto r = included(lhs, rhs, o_.bound, io);
        LocalResult lr;
        lr.closed = r.verdict == Inclusion::IncludedUpToBound;
        lr.bounded = !r.exhaustive;
        if (lr.closed)
            lr.evidence = std::string("inclusion ") + (r.exhaustive ? "exhaustive" : "bounded");
        else if (r.verdict == Inclusion::Counterexample)
            lr.evidence = "counterexample: " + show_trace(*r.counterexample);
        else
            lr.evidence = "inclusion unknown: " + r.note;
        return leaf("Inclusion", what + ": " + print_formula(*lhs) + " ⊆ " + print_formula(*rhs), lr);
    }

    // Φ ** θ ** Ψ: Φ the consumed prefix, θ the segment the callee's internal
    // behavior must fit. Without an explicit split both are ⌐.
    std::pair<FPtr, FPtr> split_for(const std::string& callee) const {
        auto it = o_.split.find(callee);
        if (it == o_.split.end()) return {f_noev(), f_noev()};
        std::vector<FPtr> segs;
        flatten_chop(post_, segs);
        auto [a, b] = it->second;
        if (a > b || b > segs.size() || a == b) throw ValidationError("split out of range for " + callee);
        FPtr phi = a == 0 ? f_noev() : f_chop_all({segs.begin(), segs.begin() + a});
        FPtr theta = f_chop_all({segs.begin() + a, segs.begin() + b});
        return {phi, theta};
    }

    struct Activation {
        ProofNode pre, internal;
        SymState next;
        std::string judgment;
    };

    // Premises (1) and (2) of Call and Schedule, plus the state after run(m,i,·).
    Activation activate(const SymState& st, const std::string& callee, std::int64_t i, bool sync) {
        auto [phi, theta] = split_for(callee);
        const auto& cands = maximal(callee);
        std::optional<Activation> first;
        for (auto& c : cands) {
            Store after = st.store;
            auto wit = writes_.find(callee);
            if (wit != writes_.end())
                for (auto& x : wit->second)
                    if (after.count(x)) after[x] = sym(x + "#" + std::to_string(next_sym_++));
            Inst in = instantiate(c, st.store, after);
            FPtr theta_a = f_chop(in.assume, in.qa);
            FPtr theta_s = f_chop_all({in.qa, in.internal, in.qc});
            Activation a;
            a.pre = leaf("LocalJ", show_update(st.u, oid_) + " : (Φ ∧ θ_a) with θ_a = " + print_formula(*theta_a),
                         local(st, st.u, f_and(phi, theta_a)));
            a.internal = inclusion_leaf("internal", theta_s, theta, st.path);
            std::vector<FPtr> run{in.qa};
            if (sync) run.push_back(f_ev(pat_call(callee, id_lit(i))));
            run.push_back(f_ev(pat_push(callee, id_lit(i))));
            for (auto& f : {in.qa, in.internal, in.qc}) run.push_back(f);
            run.push_back(f_ev(pat_pop(callee, id_lit(i))));
            UpdateElem r = u_run(callee, i, sync);
            r.tf = f_chop_all(run);
            a.next = st;
            a.next.u.push_back(r);
            a.next.store = after;
            a.next.obl.push_back({callee, i, a.next.u.size() - 1,
                                  f_chop_all({in.qc, f_ev(pat_pop(callee, id_lit(i))), in.qc, in.cont})});
            a.judgment = show_update(a.next.u, oid_) + " : (Φ ∧ θ_a) ** θ_s";
            if (a.pre.status == St::Closed && a.internal.status == St::Closed) return a;
            if (!first) first = std::move(a);
        }
        return std::move(*first);
    }

    ProofNode exec(SymState st, std::vector<SPtr> k) {
        if (k.empty()) return after_body(std::move(st));
        SPtr s = k.front();
        std::vector<SPtr> rest(k.begin() + 1, k.end());
        ProofNode n;
        n.conclusion = show(st, k);
        switch (s->kind) {
        case Stmt::Kind::Seq: {
            auto parts = flatten(s);
            parts.insert(parts.end(), rest.begin(), rest.end());
            return exec(std::move(st), parts);
        }
        case Stmt::Kind::Skip:
            n.rule = "Skip";
            break;
        case Stmt::Kind::Assign: {
            n.rule = "Assign";
            auto v = on_store(s->e, st.store);
            UpdateElem a = u_assign(s->name, s->e);
            a.se = v;
            st.u.push_back(a);
            st.store[s->name] = v;
            break;
        }
        case Stmt::Kind::If: {
            n.rule = "Cond";
            auto g = on_store(s->e, st.store);
            auto ng = fold(not_(g));
            SymState yes = st, no = st;
            UpdateElem gy = u_guard(s->e), gn = u_guard(not_(s->e));
            gy.se = g;
            gn.se = ng;
            yes.u.push_back(gy);
            yes.path.push_back(g);
            no.u.push_back(gn);
            no.path.push_back(ng);
            auto branch = [&](SymState b, std::vector<SPtr> ks, const ExprPtr& cond) {
                if (!satisfiable(b.path)) {
                    ProofNode x;
                    x.rule = "Infeasible";
                    x.conclusion = show(b, ks);
                    x.status = St::Closed;
                    x.evidence = "path condition unsatisfiable";
                    return x;
                }
                auto x = exec(std::move(b), std::move(ks));
                x.antecedent.insert(x.antecedent.begin(), "⌐⟨" + print_expr(*cond) + "⟩");
                return x;
            };
            auto then_k = flatten(s->a);
            then_k.insert(then_k.end(), rest.begin(), rest.end());
            n.premises.push_back(branch(std::move(yes), then_k, g));
            n.premises.push_back(branch(std::move(no), rest, ng));
            return n;
        }
        case Stmt::Kind::Return:
            n.rule = "Return";
            st.u.push_back(u_ret(oid_));
            break;
        case Stmt::Kind::AsyncCall:
            n.rule = "AsyncCall";
            st.u.push_back(u_invoc(s->name, fresh()));
            break;
        case Stmt::Kind::Open: {
            n.rule = "Open";
            UpdateElem f = u_file(Tag::Open, s->e);
            f.se = on_store(s->e, st.store);
            st.u.push_back(f);
            break;
        }
        case Stmt::Kind::Close:
        case Stmt::Kind::Read:
        case Stmt::Kind::Write: {
            Tag t = s->kind == Stmt::Kind::Close ? Tag::Close : s->kind == Stmt::Kind::Read ? Tag::Read : Tag::Write;
            n.rule = s->kind == Stmt::Kind::Close ? "Close" : s->kind == Stmt::Kind::Read ? "Read" : "Write";
            auto fv = on_store(s->e, st.store);
            FPtr guard = f_chop_all({f_noev(), f_ev(pat_file(EvKind::Open, fv)), f_noev({pat_file(EvKind::Close, fv)})});
            n.premises.push_back(
                leaf("LocalJ", show_update(st.u, oid_) + " : " + print_formula(*guard), local(st, st.u, guard)));
            UpdateElem f = u_file(t, s->e);
            f.se = fv;
            st.u.push_back(f);
            break;
        }
        case Stmt::Kind::SyncCall: {
            n.rule = "Call";
            auto a = activate(st, s->name, fresh(), true);
            n.premises.push_back(std::move(a.pre));
            n.premises.push_back(std::move(a.internal));
            auto cont = exec(std::move(a.next), rest);
            cont.antecedent.insert(cont.antecedent.begin(), a.judgment);
            n.premises.push_back(std::move(cont));
            return n;
        }
        }
        n.premises.push_back(exec(std::move(st), rest));
        return n;
    }

    std::int64_t fresh() { return 1000 * next_id_++; }

    ProofNode after_body(SymState st) {
        auto sched = schedule_update(st.u, oid_);
        if (sched.empty()) return finish(std::move(st));
        bool many = false;
        // actOrder whenever Max has to choose among several contracts
        for (auto& sc : sched)
            many |= std::count_if(cs_.begin(), cs_.end(), [&](const ContractDecl& c) { return c.proc == sc.name; }) > 1;
        ProofNode n;
        n.conclusion = show(st, {});
        n.rule = many ? "actOrder" : sched.size() == 1 ? "ScheduleD" : "ScheduleN";
        ProofNode side;
        side.rule = "Side";
        std::string ss;
        for (auto& sc : sched) ss += (ss.empty() ? "" : ", ") + show_scope(sc);
        side.conclusion = "schedule(U) = {" + ss + "}";
        side.status = St::Closed;
        n.premises.push_back(side);
        for (auto& sc : sched) {
            auto a = activate(st, sc.name, sc.id, false);
            auto cont = exec(std::move(a.next), {});
            cont.antecedent.insert(cont.antecedent.begin(), a.judgment);
            if (n.rule == "ScheduleD") {
                n.premises.push_back(std::move(a.pre));
                n.premises.push_back(std::move(a.internal));
                n.premises.push_back(std::move(cont));
            } else {
                ProofNode g;
                g.rule = "Choice";
                g.conclusion = "schedule " + show_scope(sc);
                g.premises.push_back(std::move(a.pre));
                g.premises.push_back(std::move(a.internal));
                g.premises.push_back(std::move(cont));
                n.premises.push_back(std::move(g));
            }
        }
        return n;
    }

    ProofNode finish(SymState st) {
        ProofNode n;
        n.rule = "Finish";
        n.conclusion = show(st, {});
        ProofNode side;
        side.rule = "Side";
        side.conclusion = "schedule(U) = ∅";
        side.status = St::Closed;
        n.premises.push_back(side);

        Subst end_vals;
        for (auto& [x, v] : st.store) end_vals[x + "@end"] = v;
        const bool init = m_ == kInit;
        FPtr future = init ? f_true() : subst_syms(self_.cont, end_vals);
        for (auto& ob : st.obl) {
            LocalQuery tail;
            tail.program = &p_;
            tail.proc = m_;
            tail.oid = oid_;
            tail.u.assign(st.u.begin() + static_cast<std::ptrdiff_t>(ob.pos) + 1, st.u.end());
            std::vector<FPtr> lhs;
            std::vector<FPtr> rhs_segs;
            flatten_chop(ob.rhs, rhs_segs);
            lhs.push_back(rhs_segs.front());  // the callee's ⟨q_c⟩
            lhs.push_back(f_ev(pat_pop(ob.callee, id_lit(ob.id))));
            lhs.push_back(translate_update(tail));
            lhs.push_back(f_ev(pat_pop(m_, id_lit(oid_))));
            lhs.push_back(future);
            n.premises.push_back(inclusion_leaf("post-trace of " + ob.callee + "," + std::to_string(ob.id),
                                                f_chop_all(lhs), ob.rhs, st.path));
        }
        if (init)
            n.premises.push_back(inclusion_leaf("post-trace of init", f_true(), subst_syms(self_.cont, end_vals),
                                                st.path));
        Update fin = st.u;
        fin.push_back(u_pop(m_, oid_));
        n.premises.push_back(leaf("LocalJ", show_update(fin, oid_) + " : Θ", local(st, fin, post_, true)));
        return n;
    }
};

}  // namespace

ProofNode verify_contract(const Program& p, const std::vector<ContractDecl>& contracts, const ContractDecl& c,
                          const VerifyOptions& o) {
    if (c.proc != kInit && !p.find(c.proc)) throw ValidationError("unknown procedure " + c.proc);
    Prover pr(p, contracts, c, o);
    return pr.run();
}

std::vector<ProofNode> verify_procedure(const Program& p, const std::vector<ContractDecl>& contracts,
                                        const std::string& m, const VerifyOptions& o) {
    std::vector<ProofNode> out;
    for (auto& c : contracts)
        if (c.proc == m) out.push_back(verify_contract(p, contracts, c, o));
    if (out.empty()) throw ValidationError("no contract for procedure " + m);
    return out;
}

}  // namespace asyncat
