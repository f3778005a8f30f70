#include "doctest.h"

#include "asyncat/errors.hpp"
#include "asyncat/interp.hpp"
#include "common.hpp"

using namespace asyncat;

namespace {
const State s0 = fixture::st({{"x", int_val(0)}});
const State s1 = fixture::st({{"x", int_val(1)}});
}  // namespace

TEST_SUITE("trace-core") {

TEST_CASE("chop") {
    Trace a{s0, ev_file(Tag::Open, str_val("a")), s1};
    Trace b{s1, ev_file(Tag::Close, str_val("a")), s1};
    auto ab = chop(a, b);
    CHECK(ab.size() == 5);
    CHECK(as_state(ab[2]) == s1);
    CHECK(chop(singleton(s0), a) == a);
    CHECK(chop(a, singleton(s1)) == a);
    CHECK_THROWS_AS(chop(a, a), ChopMismatch);
    CHECK_THROWS_AS(chop(Trace{}, a), ChopMismatch);
    Trace c{s1, ev_ret(3), s0};
    CHECK(chop(chop(a, b), c) == chop(a, chop(b, c)));
}

TEST_CASE("event triple") {
    auto t = event_triple(s1, ev_invoc("m", 4));
    REQUIRE(t.size() == 3);
    CHECK(as_state(t[0]) == s1);
    CHECK(as_state(t[2]) == s1);
    CHECK(as_event(t[1]) == ev_invoc("m", 4));
}

TEST_CASE("call tree and schedule of the nested prefix") {
    auto t = fixture::m1_first_prefix();
    REQUIRE(!t.empty());
    CHECK(max_call_id(t) == 5);
    CHECK(curr_scope(t) == Scope{"m1", 2});
    auto ct = call_tree(t);
    CHECK(ct.vertices.size() == 6);
    std::set<std::pair<Scope, Scope>> edges(ct.edges.begin(), ct.edges.end());
    std::set<std::pair<Scope, Scope>> want{{{"init", 0}, {"m", 1}},  {{"m", 1}, {"m1", 2}},
                                           {{"m", 1}, {"m2", 3}},    {{"m1", 2}, {"m3", 4}},
                                           {{"m1", 2}, {"m4", 5}}};
    CHECK(edges == want);
    CHECK(ct.parent(Scope{"m3", 4}) == Scope{"m1", 2});
    CHECK(ct.children(Scope{"m", 1}).size() == 2);
    CHECK(ct.idle.count(Scope{"m2", 3}));
    CHECK(schedule(t) == std::set<Scope>{{"m3", 4}, {"m4", 5}});
    CHECK(schedule(t, ScheduleVariant::Full).size() == 3);
}

TEST_CASE("no scope") {
    CHECK_THROWS_AS(curr_scope(singleton(s0)), NoScope);
    CHECK(!try_curr_scope(singleton(s0)));
    CHECK(max_call_id(singleton(s0)) == 0);
}

TEST_CASE("schedule after the first do returns") {
    auto ts = enumerate_traces(fixture::files_program());
    REQUIRE(ts.size() == 1);
    auto r = fixture::find_event(ts[0], ev_ret(1));
    REQUIRE(r);
    Trace pre(ts[0].begin(), ts[0].begin() + *r + 2);
    CHECK(schedule(pre) == std::set<Scope>{{"closeF", 2}});
    CHECK(well_formed(ts[0]));
    CHECK(schedule(ts[0]).empty());
}

TEST_CASE("schematic patterns") {
    auto t = fixture::events(s0, {ev_file(Tag::Open, str_val("a")), ev_file(Tag::Write, str_val("a"))});
    SchematicPart open_a;
    open_a.event = EventPattern{Tag::Open, {}, {}, str_val("a")};
    SchematicPart no_close;
    no_close.segment = true;
    no_close.excluded = {EventPattern{Tag::Close, {}, {}, {}}};
    SchematicPart no_write = no_close;
    no_write.excluded = {EventPattern{Tag::Write, {}, {}, {}}};
    CHECK(matches_schematic(t, {open_a, no_close}));
    CHECK(!matches_schematic(t, {open_a, no_write}));
    CHECK(matches_schematic(t, {no_close, open_a, no_close}));
    CHECK(!matches_schematic(t, {open_a}));
}

}
