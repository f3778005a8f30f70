#pragma once

#include <optional>

#include "asyncat/trace.hpp"

namespace oracle {

inline std::optional<std::size_t> position(const asyncat::Trace& t, const asyncat::Event& e) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!asyncat::is_state(t[i]) && asyncat::as_event(t[i]) == e) return i;
    return std::nullopt;
}

// Scheduling bullets for the m/m1/m2/m3/m4 program: m1 and m2 start after m
// returns, m3 and m4 after m1 returns and, when m1 starts first, before m2.
// Returns the number of violated bullets.
inline int nested_violations(const asyncat::Trace& t) {
    using namespace asyncat;
    auto at = [&](const Event& e) { return position(t, e).value_or(t.size()); };
    auto m1 = at(ev_push("m1", 2)), m2 = at(ev_push("m2", 3));
    auto m3 = at(ev_push("m3", 4)), m4 = at(ev_push("m4", 5));
    int bad = 0;
    if (!(m1 > at(ev_ret(1)) && m2 > at(ev_ret(1)))) ++bad;
    if (!(m3 > at(ev_ret(2)) && m4 > at(ev_ret(2)))) ++bad;
    if (m1 < m2 && !(m3 < m2 && m4 < m2)) ++bad;
    // every scope must actually run
    if (std::max({m1, m2, m3, m4}) >= t.size()) ++bad;
    return bad;
}

}  // namespace oracle
