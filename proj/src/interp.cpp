#include "asyncat/interp.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "asyncat/errors.hpp"

namespace asyncat {

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::Progress: return "Progress";
    case Rule::Call: return "Call";
    case Rule::Run: return "Run";
    case Rule::Return: return "Return";
    }
    return "?";
}

static Value eval_prog(const Expr& e, const State& s) {
    EvalEnv env;
    env.vars = [&](const std::string& x) -> std::optional<Value> {
        auto v = s.get(x);
        if (!v) throw UnboundProgramVar(x);
        return v;
    };
    return eval(e, env);
}

LocalStep eval_local(const SPtr& s, const State& sigma, std::int64_t id, std::int64_t cid) {
    using K = Stmt::Kind;
    switch (s->kind) {
    case K::Skip: return {singleton(sigma), nullptr};
    case K::Assign: return {Trace{Item(sigma), Item(sigma.set(s->name, eval_prog(*s->e, sigma)))}, nullptr};
    case K::Return: return {event_triple(sigma, ev_ret(cid)), nullptr};
    case K::If:
        if (is_true(eval_prog(*s->e, sigma))) return {singleton(sigma), s->a};
        return {singleton(sigma), nullptr};
    case K::Seq: {
        auto head = eval_local(s->a, sigma, id, cid);
        // ∘; s ⇝ s
        return {std::move(head.trace), head.rest ? s_seq(head.rest, s->b) : s->b};
    }
    case K::SyncCall: return {event_triple(sigma, ev_call(s->name, id + 1)), nullptr};
    case K::AsyncCall: return {event_triple(sigma, ev_invoc(s->name, id + 1)), nullptr};
    case K::Open: return {event_triple(sigma, ev_file(Tag::Open, eval_prog(*s->e, sigma))), nullptr};
    case K::Close: return {event_triple(sigma, ev_file(Tag::Close, eval_prog(*s->e, sigma))), nullptr};
    case K::Read: return {event_triple(sigma, ev_file(Tag::Read, eval_prog(*s->e, sigma))), nullptr};
    case K::Write: return {event_triple(sigma, ev_file(Tag::Write, eval_prog(*s->e, sigma))), nullptr};
    }
    throw MalformedConfiguration("unknown statement kind");
}

namespace {

// Facts about a trace that the rules consult, kept in step with appends.
struct Aux {
    std::vector<std::optional<Scope>> stack;
    std::map<Scope, std::vector<Scope>> kids;
    std::set<Scope> idle;
    std::set<std::int64_t> rets;
    std::set<std::int64_t> ret_open;  // ret seen, no pop since
    std::int64_t max_id = 0;

    void feed(const Event& e) {
        switch (e.tag) {
        case Tag::Call:
        case Tag::Invoc: {
            Scope s{e.name, e.id};
            if (auto c = cur()) kids[*c].push_back(s);
            if (e.tag == Tag::Invoc) idle.insert(s);
            max_id = std::max(max_id, e.id);
            break;
        }
        case Tag::Push:
            idle.erase(Scope{e.name, e.id});
            stack.push_back(Scope{e.name, e.id});
            break;
        case Tag::Pop: {
            ret_open.erase(e.id);
            Scope s{e.name, e.id};
            for (std::size_t k = stack.size(); k-- > 0;)
                if (stack[k] && *stack[k] == s) {
                    stack.resize(k);
                    return;
                }
            stack.assign(1, std::nullopt);
            break;
        }
        case Tag::Ret:
            rets.insert(e.id);
            ret_open.insert(e.id);
            break;
        default: break;
        }
    }

    void feed_trace(const Trace& t, std::size_t from) {
        for (std::size_t k = from; k < t.size(); ++k)
            if (!is_state(t[k])) feed(as_event(t[k]));
    }

    std::optional<Scope> cur() const {
        if (stack.empty()) return std::nullopt;
        return stack.back();
    }

    std::vector<Scope> sched(ScheduleVariant v) const {
        std::vector<Scope> out;
        switch (v) {
        case ScheduleVariant::Tree: {
            auto c = cur();
            if (!c) return out;
            auto it = kids.find(*c);
            if (it == kids.end()) return out;
            for (auto& s : it->second)
                if (idle.count(s)) out.push_back(s);
            break;
        }
        case ScheduleVariant::MinIdle:
            if (!idle.empty())
                out.push_back(*std::min_element(idle.begin(), idle.end(),
                                                [](const Scope& a, const Scope& b) { return a.id < b.id; }));
            break;
        case ScheduleVariant::Full: out.assign(idle.begin(), idle.end()); break;
        }
        std::sort(out.begin(), out.end(), [](const Scope& a, const Scope& b) { return a.id < b.id; });
        return out;
    }
};

struct Node {
    Config cfg;
    Aux aux;
    std::size_t steps = 0;
};

void append(Node& n, const Trace& suffix) {
    std::size_t from = n.cfg.trace.size();
    chop_into(n.cfg.trace, suffix);
    n.aux.feed_trace(n.cfg.trace, from);
}

bool ends_in_call(const Trace& t) {
    return t.size() >= 3 && !is_state(t[t.size() - 2]) && as_event(t[t.size() - 2]).tag == Tag::Call;
}

Cont prepend(const SPtr& body, const Cont& k) { return k ? s_seq(body, k) : body; }

// Applies the unique deterministic rule in place, or returns the Run
// choices (possibly empty when stuck). `rule` reports what was applied.
std::optional<Rule> step_det(Node& n, const Program& p, const StepOptions& o, std::vector<Scope>& runs) {
    runs.clear();
    if (n.cfg.trace.empty()) return std::nullopt;
    auto cur = n.aux.cur();
    const State sigma = as_state(n.cfg.trace.back());
    if (ends_in_call(n.cfg.trace)) {
        const Event e = as_event(n.cfg.trace[n.cfg.trace.size() - 2]);
        append(n, event_triple(sigma, ev_push(e.name, e.id)));
        n.cfg.k = prepend(lookup(e.name, p), n.cfg.k);
        return Rule::Call;
    }
    if (!cur) return std::nullopt;
    if (!n.aux.rets.count(cur->id)) {
        if (!n.cfg.k) return std::nullopt;
        auto r = eval_local(n.cfg.k, sigma, n.aux.max_id, cur->id);
        append(n, r.trace);
        n.cfg.k = r.rest;
        return Rule::Progress;
    }
    if (!n.aux.ret_open.count(cur->id)) throw MalformedConfiguration("current scope " + show_scope(*cur) + " was already popped");
    auto s = n.aux.sched(o.variant);
    if (s.empty()) {
        append(n, event_triple(sigma, ev_pop(cur->name, cur->id)));
        return Rule::Return;
    }
    if (o.no_run_scope && *o.no_run_scope == cur->id) return std::nullopt;
    runs = std::move(s);
    return std::nullopt;
}

void apply_run(Node& n, const Program& p, const Scope& s) {
    const State sigma = as_state(n.cfg.trace.back());
    append(n, event_triple(sigma, ev_push(s.name, s.id)));
    n.cfg.k = prepend(lookup(s.name, p), n.cfg.k);
}

Node make_node(const Config& c) {
    Node n;
    n.cfg = c;
    n.aux.feed_trace(c.trace, 0);
    return n;
}

// Depth-first exploration; `done` is called on every maximal configuration.
template <class F>
void explore(Node root, const Program& p, const StepOptions& o, const Bounds& b, F done) {
    std::vector<Node> todo;
    todo.push_back(std::move(root));
    std::vector<Scope> runs;
    while (!todo.empty()) {
        Node n = std::move(todo.back());
        todo.pop_back();
        for (;;) {
            if (n.steps >= b.max_steps)
                throw BoundExceeded("branch exceeded " + std::to_string(b.max_steps) + " rule applications");
            if (step_det(n, p, o, runs)) {
                ++n.steps;
                continue;
            }
            if (runs.empty()) {
                done(n);
                break;
            }
            ++n.steps;
            for (std::size_t k = runs.size(); k-- > 1;) {
                Node c = n;
                apply_run(c, p, runs[k]);
                todo.push_back(std::move(c));
            }
            apply_run(n, p, runs[0]);
        }
    }
}

}  // namespace

std::vector<Successor> step_global(const Config& cfg, const Program& p, const StepOptions& opts) {
    Node n = make_node(cfg);
    std::vector<Scope> runs;
    std::vector<Successor> out;
    if (auto r = step_det(n, p, opts, runs)) {
        out.push_back({*r, n.cfg});
        return out;
    }
    for (auto& s : runs) {
        Node c = n;
        apply_run(c, p, s);
        out.push_back({Rule::Run, c.cfg});
    }
    return out;
}

Bounds Bounds::from_env() {
    Bounds b;
    if (const char* s = std::getenv("ASYNCAT_MAX_STEPS")) b.max_steps = std::strtoull(s, nullptr, 10);
    if (const char* s = std::getenv("ASYNCAT_MAX_TRACES")) b.max_traces = std::strtoull(s, nullptr, 10);
    return b;
}

State default_state(const Program& p) {
    Bindings b;
    for (auto& x : p.init_decls) b[x] = int_val(0);
    return State(b);
}

Config initial_config(const Program& p) {
    State s = default_state(p);
    Trace t = event_triple(s, ev_call(kInit, 0));
    chop_into(t, event_triple(s, ev_push(kInit, 0)));
    return Config{t, p.init_body};
}

static void note_trace(std::vector<Trace>& out, Trace t, const Bounds& b) {
    if (out.size() >= b.max_traces)
        throw TooManyTraces("more than " + std::to_string(b.max_traces) + " maximal traces");
    out.push_back(std::move(t));
}

std::vector<Trace> enumerate_traces(const Program& p, const Bounds& b, ScheduleVariant v) {
    std::vector<Trace> out;
    StepOptions o;
    o.variant = v;
    explore(make_node(initial_config(p)), p, o, b, [&](Node& n) {
        if (!n.cfg.k && n.aux.sched(v).empty()) note_trace(out, std::move(n.cfg.trace), b);
    });
    std::sort(out.begin(), out.end(), [](const Trace& a, const Trace& c) { return show_trace(a) < show_trace(c); });
    return out;
}

static std::vector<Trace> suffixes(const SPtr& s, const Trace& tau, const Program& p, const Bounds& b,
                                   const StepOptions& o, bool need_empty_schedule) {
    if (tau.empty()) throw MalformedTrace("empty context trace");
    std::vector<Trace> out;
    const std::size_t cut = tau.size() - 1;
    explore(make_node(Config{tau, s}), p, o, b, [&](Node& n) {
        if (n.cfg.k) return;
        if (need_empty_schedule && !n.aux.sched(o.variant).empty()) return;
        note_trace(out, Trace(n.cfg.trace.begin() + static_cast<std::ptrdiff_t>(cut), n.cfg.trace.end()), b);
    });
    return out;
}

std::vector<Trace> eval_global(const SPtr& s, const Trace& tau, const Program& p, const Bounds& b) {
    return suffixes(s, tau, p, b, StepOptions{}, true);
}

std::vector<Trace> eval_local_big(const SPtr& s, const Trace& tau, const Program& p, const Bounds& b) {
    StepOptions o;
    o.no_run_scope = curr_scope(tau).id;
    return suffixes(s, tau, p, b, o, false);
}

FileVerdict check_file_correct(const Trace& t) {
    std::set<Value> open;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (is_state(t[k])) continue;
        auto& e = as_event(t[k]);
        if (!is_file_tag(e.tag)) continue;
        if (e.tag == Tag::Open) {
            open.insert(e.file);
            continue;
        }
        if (!open.count(e.file))
            return FileVerdict{false, k, std::string(tag_name(e.tag)) + " of " + show_value(e.file) + " without an open file"};
        if (e.tag == Tag::Close) open.erase(e.file);
    }
    return {};
}

}  // namespace asyncat
