#include "asyncat/update.hpp"

#include "asyncat/errors.hpp"
#include "asyncat/parse.hpp"

namespace asyncat {

UpdateElem u_assign(std::string x, ExprPtr e) {
    UpdateElem u;
    u.kind = UpdateElem::Kind::Assign;
    u.name = std::move(x);
    u.e = std::move(e);
    return u;
}

static UpdateElem named(UpdateElem::Kind k, std::string m, std::int64_t i) {
    UpdateElem u;
    u.kind = k;
    u.name = std::move(m);
    u.id = i;
    return u;
}

UpdateElem u_invoc(std::string m, std::int64_t i) { return named(UpdateElem::Kind::Invoc, std::move(m), i); }
UpdateElem u_start(std::string m, std::int64_t i) { return named(UpdateElem::Kind::Start, std::move(m), i); }
UpdateElem u_ret(std::int64_t i) { return named(UpdateElem::Kind::Ret, "", i); }
UpdateElem u_pop(std::string m, std::int64_t i) { return named(UpdateElem::Kind::Pop, std::move(m), i); }

UpdateElem u_file(Tag t, ExprPtr f) {
    UpdateElem u;
    u.kind = UpdateElem::Kind::File;
    u.file_tag = t;
    u.e = std::move(f);
    return u;
}

UpdateElem u_run(std::string m, std::int64_t i, bool sync) {
    auto u = named(UpdateElem::Kind::Run, std::move(m), i);
    u.sync = sync;
    return u;
}

UpdateElem u_havoc(std::string name) { return named(UpdateElem::Kind::Havoc, std::move(name), 0); }

UpdateElem u_guard(ExprPtr e) {
    UpdateElem u;
    u.kind = UpdateElem::Kind::Guard;
    u.e = std::move(e);
    return u;
}

std::string show_update_elem(const UpdateElem& u, std::int64_t oid) {
    auto id = [&](std::int64_t i) { return i == oid ? std::string("oId") : std::to_string(i); };
    auto shown = [&](const ExprPtr& prog, const ExprPtr& symb) { return print_expr(symb ? *symb : *prog); };
    using K = UpdateElem::Kind;
    switch (u.kind) {
    case K::Assign: return "{" + u.name + " := " + shown(u.e, u.se) + "}";
    case K::Invoc: return "{invoc(" + u.name + "," + id(u.id) + ")}";
    case K::Start: return "{start(" + u.name + "," + id(u.id) + ")}";
    case K::Ret: return "{ret(" + id(u.id) + ")}";
    case K::Pop: return "{pop(" + u.name + "," + id(u.id) + ")}";
    case K::File: return "{" + std::string(tag_name(u.file_tag)) + "(" + shown(u.e, u.se) + ")}";
    case K::Run: return "{run(" + u.name + "," + id(u.id) + "," + (u.sync ? "sy" : "as") + ")}";
    case K::Havoc: return u.name;
    case K::Guard: return "{?" + shown(u.e, u.se) + "}";
    }
    return "?";
}

std::string show_update(const Update& u, std::int64_t oid) {
    std::string out;
    for (auto& e : u) out += show_update_elem(e, oid);
    return out.empty() ? "{}" : out;
}

static Value eval_in(const ExprPtr& e, const State& s) {
    EvalEnv env;
    env.vars = [&](const std::string& x) -> std::optional<Value> {
        auto v = s.get(x);
        if (!v) throw UnboundProgramVar(x);
        return v;
    };
    return eval(*e, env);
}

// Traces of one element from the state σ.
static std::vector<Trace> eval_elem(const UpdateElem& u, const State& s, const Program& p, const Bounds& b) {
    using K = UpdateElem::Kind;
    switch (u.kind) {
    case K::Assign: return {Trace{Item(s), Item(s.set(u.name, eval_in(u.e, s)))}};
    case K::Invoc: return {event_triple(s, ev_invoc(u.name, u.id))};
    case K::Start: return {chop(event_triple(s, ev_call(u.name, u.id)), event_triple(s, ev_push(u.name, u.id)))};
    case K::Ret: return {event_triple(s, ev_ret(u.id))};
    case K::Pop: return {event_triple(s, ev_pop(u.name, u.id))};
    case K::File: return {event_triple(s, ev_file(u.file_tag, eval_in(u.e, s)))};
    case K::Guard:
        if (is_true(eval_in(u.e, s))) return {singleton(s)};
        return {};
    case K::Run: {
        // the call triple makes the Call rule push the scope and load the body
        lookup(u.name, p);
        Trace ctx = event_triple(s, ev_call(u.name, u.id));
        auto bodies = eval_global(nullptr, ctx, p, b);
        if (!u.sync) return bodies;
        std::vector<Trace> out;
        for (auto& t : bodies) out.push_back(chop(ctx, t));
        return out;
    }
    case K::Havoc: throw HavocPresent();
    }
    return {};
}

std::vector<Trace> eval_update(const Update& u, const Trace& tau, const Program& p, const Bounds& b) {
    if (tau.empty() || !is_state(tau.back())) throw MalformedTrace("update context must end in a state");
    std::vector<Trace> cur{singleton(as_state(tau.back()))};
    for (auto& e : u) {
        std::vector<Trace> next;
        for (auto& t : cur)
            for (auto& ext : eval_elem(e, as_state(t.back()), p, b)) {
                next.push_back(chop(t, ext));
                if (next.size() > b.max_traces) throw TooManyTraces("update evaluation exceeded the trace cap");
            }
        cur = std::move(next);
    }
    return cur;
}

std::set<Scope> schedule_update(const Update& u, std::int64_t oid) {
    std::size_t ret = u.size();
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k].kind == UpdateElem::Kind::Ret && u[k].id == oid) {
            ret = k;
            break;
        }
    std::set<Scope> out;
    if (ret == u.size()) return out;
    for (std::size_t k = 0; k < ret; ++k) {
        if (u[k].kind != UpdateElem::Kind::Invoc) continue;
        bool ran = false;
        for (std::size_t j = ret + 1; j < u.size(); ++j)
            if (u[j].kind == UpdateElem::Kind::Run && !u[j].sync && u[j].name == u[k].name && u[j].id == u[k].id)
                ran = true;
        if (!ran) out.insert(Scope{u[k].name, u[k].id});
    }
    return out;
}

}  // namespace asyncat
