#include <set>
#include <sstream>

#include "asyncat/errors.hpp"
#include "asyncat/interp.hpp"
#include "asyncat/verifier.hpp"

namespace asyncat {

std::int64_t scope_id(const std::string& m) { return m == kInit ? 0 : 1000000; }

namespace {

FPtr start_shape(const std::string& m, std::int64_t i) {
    return f_chop(f_ev(pat_call(m, lit(int_val(i)))), f_ev(pat_push(m, lit(int_val(i)))));
}

// Events the havoc prefix cannot contain: those of the scope itself and
// anything carrying an id the proof allocated later.
std::vector<EvPat> havoc_exclusions(const LocalQuery& q) {
    std::vector<EvPat> ex;
    auto id = [](std::int64_t i) { return lit(int_val(i)); };
    ex.push_back(pat_call(q.proc, id(q.oid)));
    ex.push_back(pat_push(q.proc, id(q.oid)));
    ex.push_back(pat_pop(q.proc, id(q.oid)));
    ex.push_back(pat_ret(id(q.oid)));
    std::set<std::int64_t> ids;
    for (auto& u : q.u)
        if (u.kind == UpdateElem::Kind::Invoc || u.kind == UpdateElem::Kind::Run) ids.insert(u.id);
    for (auto i : ids) {
        ex.push_back(pat_ret(id(i)));
        for (auto& d : q.program->procedures) {
            ex.push_back(pat_invoc(d.name, id(i)));
            ex.push_back(pat_call(d.name, id(i)));
            ex.push_back(pat_push(d.name, id(i)));
            ex.push_back(pat_pop(d.name, id(i)));
        }
    }
    return ex;
}

FPtr elem_formula(const UpdateElem& u) {
    using K = UpdateElem::Kind;
    auto id = lit(int_val(u.id));
    switch (u.kind) {
    case K::Assign: return f_concat(f_true(), f_true());
    case K::Invoc: return f_ev(pat_invoc(u.name, id));
    case K::Start: return start_shape(u.name, u.id);
    case K::Ret: return f_ev(pat_ret(id));
    case K::Pop: return f_ev(pat_pop(u.name, id));
    case K::File: {
        EvKind k = u.file_tag == Tag::Open ? EvKind::Open : u.file_tag == Tag::Close ? EvKind::Close
                 : u.file_tag == Tag::Read ? EvKind::Read : EvKind::Write;
        return f_ev(pat_file(k, u.se ? u.se : u.e));
    }
    case K::Run: return u.tf;
    case K::Guard:
    case K::Havoc: return nullptr;
    }
    return nullptr;
}

std::string show_valuation(const Valuation& v) {
    std::string out;
    for (auto& [k, x] : v) out += (out.empty() ? "" : ", ") + k + "=" + show_value(x);
    return out.empty() ? "" : " under " + out;
}

LocalResult concrete(const LocalQuery& q, const VerifyOptions& o) {
    const Program& p = *q.program;
    const bool init = q.proc == kInit;
    std::set<std::string> syms = formula_syms(*q.target);
    if (q.pre) {
        auto s = formula_syms(*q.pre);
        syms.insert(s.begin(), s.end());
    }
    std::set<Value> lits;
    formula_literals(*q.target, lits);
    if (q.pre) formula_literals(*q.pre, lits);
    for (auto& u : q.u)
        if (u.e) collect_literals(*u.e, lits);
    std::vector<std::string> free;
    for (auto& c : syms)
        if (c.size() < 4 || c.substr(c.size() - 4) != "@end") free.push_back(c);
    if (!init)
        for (auto& x : p.init_decls)
            if (!syms.count(x + "@0")) free.push_back(x + "@0");
    auto dom = sample_domain(lits);
    double total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= static_cast<double>(dom.size());
    if (total > 20000) return {false, false, "concrete check: too many initial valuations"};

    std::vector<std::size_t> digits(free.size(), 0);
    std::size_t checked = 0;
    bool truncated = false;
    for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < free.size(); ++k) v[free[k]] = dom[digits[k]];
        std::vector<Trace> prefixes;
        Update rest;
        if (init) {
            prefixes.push_back(singleton(default_state(p)));
            rest = q.u;
        } else {
            Bindings b;
            for (auto& x : p.init_decls) b[x] = v[x + "@0"];
            State s0(b);
            auto words = sample_words(f_and(q.pre, f_noev(havoc_exclusions(q))), o.havoc_len, v, s0, o.havoc_words);
            truncated = true;
            for (auto& w : words)
                if (!w.empty() && is_state(w.back()) && as_state(w.back()) == s0) prefixes.push_back(w);
            rest.assign(q.u.begin() + 1, q.u.end());
        }
        for (auto& pre : prefixes) {
            for (auto& suf : eval_update(rest, pre, p, o.bounds)) {
                Trace t = chop(pre, suf);
                Valuation v2 = v;
                const State& last = as_state(t.back());
                for (auto& x : p.init_decls)
                    if (auto val = last.get(x)) v2[x + "@end"] = *val;
                ++checked;
                if (!member(t, q.target, {}, v2))
                    return {false, false, "concrete counterexample: " + show_trace(t) + show_valuation(v2)};
            }
        }
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == dom.size()) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    if (checked == 0) return {false, false, "concrete evaluation produced no traces"};
    std::ostringstream ev;
    ev << "concrete evaluation of " << checked << " traces";
    if (truncated) ev << " (havoc prefix up to " << o.havoc_len << " items)";
    return {true, truncated, ev.str()};
}

}  // namespace

FPtr translate_update(const LocalQuery& q) {
    std::vector<FPtr> parts;
    std::size_t k = 0;
    if (!q.u.empty() && q.u[0].kind == UpdateElem::Kind::Havoc) {
        if (q.u.size() < 2 || q.u[1].kind != UpdateElem::Kind::Start)
            throw ValidationError("havoc must be followed by the start of the scope");
        FPtr h = f_and(q.pre, f_noev(havoc_exclusions(q)));
        parts.push_back(f_chop(h, f_ev(pat_start(q.u[1].name, lit(int_val(q.u[1].id))))));
        k = 2;
    }
    for (; k < q.u.size(); ++k)
        if (auto f = elem_formula(q.u[k])) parts.push_back(f);
    if (parts.empty()) return f_true();
    return f_chop_all(parts);
}

LocalResult discharge_local(const LocalQuery& q, const VerifyOptions& o) {
    if (o.mode == Discharge::Concrete) return concrete(q, o);
    FPtr lhs = translate_update(q);
    FPtr rhs = q.end_values.empty() ? q.target : subst_syms(q.target, q.end_values);
    const bool exact_concrete = q.proc == kInit;
    if (contains_obs(*lhs) || contains_obs(*rhs)) {
        auto r = concrete(q, o);
        r.evidence = "formula observes program state; " + r.evidence;
        return r;
    }
    InclusionOptions io;
    io.assumptions = q.path;
    auto r = included(lhs, rhs, o.bound, io);
    if (r.verdict == Inclusion::IncludedUpToBound) {
        std::ostringstream ev;
        ev << "inclusion " << (r.exhaustive ? "exhaustive" : "up to " + std::to_string(o.bound) + " items") << " over "
           << r.valuations << " valuations";
        if (!r.note.empty()) ev << " (" << r.note << ")";
        return {true, !r.exhaustive, ev.str()};
    }
    std::string why = r.verdict == Inclusion::Counterexample
                          ? "counterexample: " + show_trace(*r.counterexample) + show_valuation(r.valuation)
                          : "inclusion unknown: " + r.note;
    if (exact_concrete) {
        // init has no havoc prefix, so the concrete semantics is exact here
        auto c = concrete(q, o);
        if (c.closed) {
            c.evidence = "abstract " + why + "; refuted by " + c.evidence;
            return c;
        }
        return {false, false, why + "; " + c.evidence};
    }
    return {false, false, why};
}

}  // namespace asyncat
