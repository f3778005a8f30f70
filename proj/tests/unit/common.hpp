#pragma once

#include <string>

#include "asyncat/parse.hpp"
#include "asyncat/trace.hpp"

namespace fixture {

inline std::string data(const std::string& name) { return std::string(ASYNCAT_TEST_DATA) + "/" + name; }
inline asyncat::Program files_program() { return asyncat::parse_program(asyncat::read_file(data("files.async"))); }
inline asyncat::Program nested_program() { return asyncat::parse_program(asyncat::read_file(data("nested.async"))); }
inline std::vector<asyncat::ContractDecl> casestudy() {
    return asyncat::parse_contracts(asyncat::read_file(data("casestudy.cat")));
}

inline asyncat::State st(std::initializer_list<std::pair<const std::string, asyncat::Value>> b) {
    return asyncat::State(asyncat::Bindings(b));
}

// Builds s0 e1 s0 e2 s0 ... over one repeated state.
inline asyncat::Trace events(const asyncat::State& s, const std::vector<asyncat::Event>& es) {
    asyncat::Trace t{s};
    for (auto& e : es) {
        t.push_back(e);
        t.push_back(s);
    }
    return t;
}

}  // namespace fixture

#include "asyncat/interp.hpp"

namespace fixture {

inline std::optional<std::size_t> find_event(const asyncat::Trace& t, const asyncat::Event& e) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!asyncat::is_state(t[i]) && asyncat::as_event(t[i]) == e) return i;
    return std::nullopt;
}

// The nested-program prefix ending just after ret(2), taken from a trace in which
// m1 runs before m2.
inline asyncat::Trace m1_first_prefix() {
    using namespace asyncat;
    for (auto& t : enumerate_traces(nested_program())) {
        auto r = find_event(t, ev_ret(2));
        auto m2 = find_event(t, ev_push("m2", 3));
        if (r && m2 && *r < *m2) return Trace(t.begin(), t.begin() + *r + 2);
    }
    return {};
}

}  // namespace fixture
