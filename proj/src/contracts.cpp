#include "asyncat/contracts.hpp"

#include <map>
#include <set>

#include "asyncat/errors.hpp"

namespace asyncat {

static bool is_noev_all(const FPtr& f) { return formula_equal(*normalize(f), *f_noev()); }

Classification classify(const ContractDecl& c) {
    Classification k;
    k.context_aware = !is_noev_all(c.assume) || !is_noev_all(c.cont);
    k.state_contract = is_noev_all(c.internal);
    return k;
}

static FPtr wrap_obs(const std::vector<Binder>& bs, FPtr body) {
    for (auto it = bs.rbegin(); it != bs.rend(); ++it) body = f_obs(it->x, it->y, body);
    return body;
}

FPtr adherence_formula(const ContractDecl& c, const std::string& m, std::int64_t i) {
    auto id = lit(int_val(i));
    auto post = f_chop_all({f_pred(c.q_c), f_ev(pat_pop(m, id)), f_pred(c.q_c), c.cont});
    auto inner = f_chop_all({f_pred(c.q_a), f_ev(pat_start(m, id)), f_pred(c.q_a), c.internal,
                             wrap_obs(c.post_binders, post)});
    return f_chop(c.assume, wrap_obs(c.pre_binders, inner));
}

namespace {

struct Marks {
    std::size_t start = 0;  // state before start(m,i)
    std::size_t push = 0;   // index of push(m,i)
    std::optional<std::size_t> pop;
};

std::optional<Marks> locate(const Trace& t, std::int64_t i, const std::string& m) {
    std::optional<Marks> out;
    for (std::size_t k = 1; k + 1 < t.size(); ++k) {
        if (is_state(t[k])) continue;
        auto& e = as_event(t[k]);
        if (e.tag == Tag::Push && e.name == m && e.id == i && !out) {
            Marks mk;
            mk.push = k;
            mk.start = k - 1;
            if (k >= 3 && !is_state(t[k - 2])) {
                auto& c = as_event(t[k - 2]);
                if (c.tag == Tag::Call && c.name == m && c.id == i) mk.start = k - 3;
            }
            out = mk;
        } else if (e.tag == Tag::Pop && e.name == m && e.id == i && out && !out->pop) {
            out->pop = k;
        }
    }
    return out;
}

ObsEnv seed(const std::vector<Binder>& bs, const State& s, ObsEnv o = {}) {
    for (auto& b : bs) o[b.y] = {b.x, s};
    return o;
}

Trace slice(const Trace& t, std::size_t a, std::size_t b) {
    return Trace(t.begin() + static_cast<std::ptrdiff_t>(a), t.begin() + static_cast<std::ptrdiff_t>(b) + 1);
}

}  // namespace

bool adheres_trace(const Trace& t, std::int64_t i, const ContractDecl& c, const std::string& m) {
    auto mk = locate(t, i, m);
    if (!mk) return false;
    return member(t, adherence_formula(c, m, i), seed(c.pre_binders, as_state(t[mk->start])));
}

std::string failing_clause(const Trace& t, std::int64_t i, const ContractDecl& c, const std::string& m) {
    auto mk = locate(t, i, m);
    if (!mk) return "pre-trace";
    const State& s0 = as_state(t[mk->start]);
    ObsEnv o1 = seed(c.pre_binders, s0);
    if (!member(slice(t, 0, mk->start), c.assume, o1)) return "pre-trace";
    if (!member(singleton(s0), f_pred(c.q_a), o1)) return "boundary-pred";
    if (!mk->pop) return "internal";
    std::size_t q = *mk->pop;
    if (!member(slice(t, mk->push + 1, q - 1), c.internal, o1)) return "internal";
    ObsEnv o2 = seed(c.post_binders, as_state(t[q - 1]), o1);
    if (!member(singleton(as_state(t[q - 1])), f_pred(c.q_c), o2)) return "boundary-pred";
    if (!member(slice(t, q + 1, t.size() - 1), c.cont, o2)) return "post-trace";
    return "";
}

std::vector<std::int64_t> id_of(const std::string& m, const Trace& t) {
    std::set<std::int64_t> ids;
    for (auto& it : t) {
        if (is_state(it)) continue;
        auto& e = as_event(it);
        if ((e.tag == Tag::Call || e.tag == Tag::Invoc) && e.name == m) ids.insert(e.id);
    }
    return {ids.begin(), ids.end()};
}

bool AdherenceReport::ok() const {
    for (auto& e : entries)
        if (!e.ok) return false;
    return true;
}

AdherenceReport adheres_procedure_on(const std::vector<Trace>& traces, const std::string& m, const ContractDecl& c) {
    AdherenceReport r;
    r.proc = m;
    for (std::size_t k = 0; k < traces.size(); ++k)
        for (auto i : id_of(m, traces[k])) {
            AdherenceEntry e;
            e.trace = k;
            e.id = i;
            e.ok = adheres_trace(traces[k], i, c, m);
            if (!e.ok) e.clause = failing_clause(traces[k], i, c, m);
            r.entries.push_back(e);
        }
    return r;
}

AdherenceReport adheres_procedure(const Program& p, const std::string& m, const ContractDecl& c, const Bounds& b) {
    return adheres_procedure_on(enumerate_traces(p, b), m, c);
}

ContractDecl weak_variant(const ContractDecl& c) {
    ContractDecl w = c;
    w.cont = f_noev();
    return w;
}

CorrectnessReport program_correct(const Program& p, const std::vector<ContractDecl>& contracts, const Bounds& b) {
    std::set<std::string> have;
    for (auto& c : contracts) {
        if (c.proc != kInit && !p.find(c.proc)) throw ValidationError("contract for unknown procedure " + c.proc);
        have.insert(c.proc);
    }
    if (!have.count(kInit)) throw ValidationError("missing contract for init");
    for (auto& d : p.procedures)
        if (!have.count(d.name)) throw ValidationError("missing contract for " + d.name);
    auto traces = enumerate_traces(p, b);
    CorrectnessReport out;
    for (auto& c : contracts) {
        out.reports.push_back(adheres_procedure_on(traces, c.proc, c));
        out.ok = out.ok && out.reports.back().ok();
    }
    return out;
}

}  // namespace asyncat
