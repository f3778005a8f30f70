#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "asyncat/expr.hpp"

namespace asyncat {

using Bindings = std::map<std::string, Value>;

// Copy-on-write state; copies share the binding map.
class State {
public:
    State();
    explicit State(Bindings b);

    const Bindings& bindings() const { return *map_; }
    std::optional<Value> get(const std::string& x) const;
    State set(const std::string& x, Value v) const;

    bool operator==(const State& o) const { return map_ == o.map_ || *map_ == *o.map_; }
    bool operator!=(const State& o) const { return !(*this == o); }
    bool operator<(const State& o) const { return *map_ < *o.map_; }

private:
    std::shared_ptr<const Bindings> map_;
};

enum class Tag { Call, Invoc, Ret, Push, Pop, Open, Close, Read, Write };

const char* tag_name(Tag t);
std::optional<Tag> tag_from_name(const std::string& s);
bool is_file_tag(Tag t);

struct Event {
    Tag tag = Tag::Ret;
    std::string name;     // procedure name for call/invoc/push/pop
    std::int64_t id = 0;  // call id for call/invoc/ret/push/pop
    Value file;           // payload of file events

    auto operator<=>(const Event&) const = default;
    bool operator==(const Event&) const = default;
};

Event ev_call(std::string m, std::int64_t i);
Event ev_invoc(std::string m, std::int64_t i);
Event ev_ret(std::int64_t i);
Event ev_push(std::string m, std::int64_t i);
Event ev_pop(std::string m, std::int64_t i);
Event ev_file(Tag t, Value f);

std::string show_event(const Event& e);

using Item = std::variant<State, Event>;
using Trace = std::vector<Item>;

inline bool is_state(const Item& it) { return it.index() == 0; }
inline const State& as_state(const Item& it) { return std::get<0>(it); }
inline const Event& as_event(const Item& it) { return std::get<1>(it); }

std::string show_trace(const Trace& t);

struct Scope {
    std::string name;
    std::int64_t id = 0;
    auto operator<=>(const Scope&) const = default;
    bool operator==(const Scope&) const = default;
};

std::string show_scope(const Scope& s);

Trace singleton(const State& s);
Trace chop(const Trace& a, const Trace& b);
void chop_into(Trace& a, const Trace& b);
Trace event_triple(const State& s, const Event& e);

Scope curr_scope(const Trace& t);
std::optional<Scope> try_curr_scope(const Trace& t);
std::int64_t max_call_id(const Trace& t);

struct CallTree {
    std::vector<Scope> vertices;  // in order of first occurrence
    std::vector<std::pair<Scope, Scope>> edges;
    std::set<Scope> idle;

    std::vector<Scope> children(const Scope& s) const;
    std::optional<Scope> parent(const Scope& s) const;
};

CallTree call_tree(const Trace& t);

enum class ScheduleVariant { Tree, MinIdle, Full };

std::set<Scope> schedule(const Trace& t, ScheduleVariant v = ScheduleVariant::Tree);

// Verdict of the structural trace invariants.
bool well_formed(const Trace& t);

// Schematic patterns: concrete event triples and event-free segments joined by chop.
struct EventPattern {
    Tag tag;
    std::optional<std::string> name;  // nullopt matches any name
    std::optional<std::int64_t> id;
    std::optional<Value> file;
    bool matches(const Event& e) const;
};

struct SchematicPart {
    bool segment = false;                // true: ⌐[excluded]
    std::vector<EventPattern> excluded;  // for segments
    EventPattern event{Tag::Ret, {}, {}, {}};  // for event triples
};

using Schematic = std::vector<SchematicPart>;

bool matches_schematic(const Trace& t, const Schematic& p);

std::string digest(const Trace& t);

}  // namespace asyncat
