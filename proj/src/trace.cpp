#include "asyncat/trace.hpp"

#include <algorithm>
#include <cstdio>

#include "asyncat/errors.hpp"

namespace asyncat {

namespace {
const std::shared_ptr<const Bindings>& empty_bindings() {
    static const auto e = std::make_shared<const Bindings>();
    return e;
}
}  // namespace

State::State() : map_(empty_bindings()) {}
State::State(Bindings b) : map_(std::make_shared<const Bindings>(std::move(b))) {}

std::optional<Value> State::get(const std::string& x) const {
    auto it = map_->find(x);
    if (it == map_->end()) return std::nullopt;
    return it->second;
}

State State::set(const std::string& x, Value v) const {
    Bindings b = *map_;
    b[x] = std::move(v);
    return State(std::move(b));
}

const char* tag_name(Tag t) {
    switch (t) {
    case Tag::Call: return "call";
    case Tag::Invoc: return "invoc";
    case Tag::Ret: return "ret";
    case Tag::Push: return "push";
    case Tag::Pop: return "pop";
    case Tag::Open: return "open";
    case Tag::Close: return "close";
    case Tag::Read: return "read";
    case Tag::Write: return "write";
    }
    return "?";
}

std::optional<Tag> tag_from_name(const std::string& s) {
    for (Tag t : {Tag::Call, Tag::Invoc, Tag::Ret, Tag::Push, Tag::Pop, Tag::Open, Tag::Close,
                  Tag::Read, Tag::Write})
        if (s == tag_name(t)) return t;
    return std::nullopt;
}

bool is_file_tag(Tag t) {
    return t == Tag::Open || t == Tag::Close || t == Tag::Read || t == Tag::Write;
}

Event ev_call(std::string m, std::int64_t i) { return Event{Tag::Call, std::move(m), i, int_val(0)}; }
Event ev_invoc(std::string m, std::int64_t i) { return Event{Tag::Invoc, std::move(m), i, int_val(0)}; }
Event ev_ret(std::int64_t i) { return Event{Tag::Ret, "", i, int_val(0)}; }
Event ev_push(std::string m, std::int64_t i) { return Event{Tag::Push, std::move(m), i, int_val(0)}; }
Event ev_pop(std::string m, std::int64_t i) { return Event{Tag::Pop, std::move(m), i, int_val(0)}; }
Event ev_file(Tag t, Value f) { return Event{t, "", 0, std::move(f)}; }

std::string show_event(const Event& e) {
    std::string out = tag_name(e.tag);
    if (is_file_tag(e.tag)) return out + "(" + show_value(e.file) + ")";
    if (e.tag == Tag::Ret) return out + "(" + std::to_string(e.id) + ")";
    return out + "(" + e.name + "," + std::to_string(e.id) + ")";
}

std::string show_scope(const Scope& s) { return "(" + s.name + "," + std::to_string(s.id) + ")"; }

std::string show_trace(const Trace& t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += " ";
        if (is_state(t[k])) {
            out += "<";
            bool first = true;
            for (auto& [x, v] : as_state(t[k]).bindings()) {
                if (!first) out += ",";
                first = false;
                out += x + "=" + show_value(v);
            }
            out += ">";
        } else {
            out += show_event(as_event(t[k]));
        }
    }
    return out;
}

Trace singleton(const State& s) { return Trace{Item(s)}; }

void chop_into(Trace& a, const Trace& b) {
    if (a.empty() || b.empty()) throw ChopMismatch("chop of an empty trace");
    if (!is_state(a.back()) || !is_state(b.front()))
        throw ChopMismatch("chop boundary is not a state");
    if (as_state(a.back()) != as_state(b.front())) throw ChopMismatch("chop boundary states differ");
    a.insert(a.end(), b.begin() + 1, b.end());
}

Trace chop(const Trace& a, const Trace& b) {
    Trace out = a;
    chop_into(out, b);
    return out;
}

Trace event_triple(const State& s, const Event& e) { return Trace{Item(s), Item(e), Item(s)}; }

namespace {

// Scope stack; a nullopt entry poisons everything beneath it (unmatched pop).
struct ScopeStack {
    std::vector<std::optional<Scope>> st;

    bool apply(const Event& e) {
        if (e.tag == Tag::Push) {
            st.push_back(Scope{e.name, e.id});
        } else if (e.tag == Tag::Pop) {
            Scope s{e.name, e.id};
            for (std::size_t k = st.size(); k-- > 0;) {
                if (st[k] && *st[k] == s) {
                    st.resize(k);
                    return true;
                }
            }
            st.assign(1, std::nullopt);
            return false;
        }
        return true;
    }

    std::optional<Scope> top() const {
        if (st.empty()) return std::nullopt;
        return st.back();
    }
};

}  // namespace

std::optional<Scope> try_curr_scope(const Trace& t) {
    ScopeStack s;
    for (auto& it : t)
        if (!is_state(it)) s.apply(as_event(it));
    return s.top();
}

Scope curr_scope(const Trace& t) {
    auto s = try_curr_scope(t);
    if (!s) throw NoScope();
    return *s;
}

std::int64_t max_call_id(const Trace& t) {
    std::int64_t m = 0;
    for (auto& it : t) {
        if (is_state(it)) continue;
        auto& e = as_event(it);
        if (e.tag == Tag::Call || e.tag == Tag::Invoc) m = std::max(m, e.id);
    }
    return m;
}

std::vector<Scope> CallTree::children(const Scope& s) const {
    std::vector<Scope> out;
    for (auto& [p, c] : edges)
        if (p == s) out.push_back(c);
    std::sort(out.begin(), out.end(), [](const Scope& a, const Scope& b) { return a.id < b.id; });
    return out;
}

std::optional<Scope> CallTree::parent(const Scope& s) const {
    for (auto& [p, c] : edges)
        if (c == s) return p;
    return std::nullopt;
}

CallTree call_tree(const Trace& t) {
    CallTree ct;
    ScopeStack st;
    std::set<Scope> seen;
    for (auto& it : t) {
        if (is_state(it)) continue;
        auto& e = as_event(it);
        if (e.tag == Tag::Call || e.tag == Tag::Invoc) {
            Scope s{e.name, e.id};
            if (seen.insert(s).second) ct.vertices.push_back(s);
            if (auto p = st.top()) ct.edges.emplace_back(*p, s);
            if (e.tag == Tag::Invoc) ct.idle.insert(s);
        } else if (e.tag == Tag::Push) {
            ct.idle.erase(Scope{e.name, e.id});
        }
        if (!st.apply(e)) throw MalformedTrace("unmatched pop " + show_event(e));
    }
    return ct;
}

std::set<Scope> schedule(const Trace& t, ScheduleVariant v) {
    CallTree ct = call_tree(t);
    std::set<Scope> out;
    switch (v) {
    case ScheduleVariant::Tree: {
        auto cur = try_curr_scope(t);
        if (!cur) return out;
        for (auto& c : ct.children(*cur))
            if (ct.idle.count(c)) out.insert(c);
        return out;
    }
    case ScheduleVariant::MinIdle: {
        const Scope* best = nullptr;
        for (auto& s : ct.idle)
            if (!best || s.id < best->id) best = &s;
        if (best) out.insert(*best);
        return out;
    }
    case ScheduleVariant::Full: return ct.idle;
    }
    return out;
}

bool well_formed(const Trace& t) {
    if (t.empty() || !is_state(t.front()) || !is_state(t.back())) return false;
    for (std::size_t k = 1; k + 1 < t.size(); ++k) {
        if (is_state(t[k])) continue;
        if (!is_state(t[k - 1]) || !is_state(t[k + 1])) return false;
        if (as_state(t[k - 1]) != as_state(t[k + 1])) return false;
    }
    return true;
}

bool EventPattern::matches(const Event& e) const {
    if (e.tag != tag) return false;
    if (name && *name != e.name) return false;
    if (id && *id != e.id) return false;
    if (file && *file != e.file) return false;
    return true;
}

bool matches_schematic(const Trace& t, const Schematic& p) {
    const std::size_t n = t.size();
    if (n == 0 || p.empty()) return false;
    // reach[k]: the parts consumed so far end exactly at item k (a state)
    std::vector<char> reach(n, 0);
    for (std::size_t part = 0; part < p.size(); ++part) {
        std::vector<char> next(n, 0);
        const auto& sp = p[part];
        for (std::size_t i = 0; i < n; ++i) {
            bool start_ok = part == 0 ? i == 0 : reach[i] != 0;
            if (!start_ok) continue;
            if (sp.segment) {
                // ⌐ segments start at a state when chopped; a leading segment starts at item 0
                for (std::size_t j = i; j < n; ++j) {
                    if (!is_state(t[j])) {
                        bool bad = std::any_of(sp.excluded.begin(), sp.excluded.end(),
                                               [&](const EventPattern& x) { return x.matches(as_event(t[j])); });
                        if (bad) break;
                    }
                    next[j] = 1;
                }
            } else if (i + 2 < n && is_state(t[i]) && !is_state(t[i + 1]) && is_state(t[i + 2]) &&
                       as_state(t[i]) == as_state(t[i + 2]) && sp.event.matches(as_event(t[i + 1]))) {
                next[i + 2] = 1;
            }
        }
        // chop joins only at states
        for (std::size_t j = 0; j < n; ++j)
            if (next[j] && !is_state(t[j]) && part + 1 < p.size()) next[j] = 0;
        reach = std::move(next);
    }
    return reach[n - 1] != 0;
}

std::string digest(const Trace& t) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : show_trace(t)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace asyncat
