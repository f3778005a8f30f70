#include "doctest.h"

#include "asyncat/contracts.hpp"
#include "asyncat/errors.hpp"
#include "common.hpp"

using namespace asyncat;

namespace {
ContractDecl by_proc(const std::string& m) {
    for (auto& c : fixture::casestudy())
        if (c.proc == m) return c;
    throw Error("no contract " + m);
}

std::vector<ContractDecl> replace(const ContractDecl& c) {
    auto cs = fixture::casestudy();
    for (auto& d : cs)
        if (d.proc == c.proc) d = c;
    return cs;
}

const char* kDoNoClose =
    "contract do { assume: ~[open(f)]; pre: [true] obs(file as f); internal: ~[close(f)];"
    " post: [true]; continue: ~; }";
}  // namespace

TEST_SUITE("contracts") {

TEST_CASE("classification") {
    auto init = classify(by_proc("init"));
    CHECK(!init.context_aware);
    CHECK(init.state_contract);
    auto op = classify(by_proc("operate"));
    CHECK(op.context_aware);
    CHECK(op.proper_trace());
    auto hoare = classify(parse_contract("contract m { assume: ~; pre: [true]; internal: ~; post: [true]; continue: ~; }"));
    CHECK(!hoare.context_aware);
    CHECK(hoare.state_contract);
    // ~[true] counts as ~
    auto padded = classify(parse_contract("contract m { assume: ~ [true]; pre: [true]; internal: ~; post: [true]; continue: [true] ~; }"));
    CHECK(!padded.context_aware);
}

TEST_CASE("adherence formula") {
    auto f = adherence_formula(by_proc("init"), kInit, 0);
    CHECK(!contains_obs(*f));
    auto want = parse_formula("~ ** ([true] ** start(init, 0) ** [true] ** ~ ** ([true] ** pop(init, 0) ** [true] ** ~))");
    CHECK(print_formula(*f) == print_formula(*want));
    auto g = adherence_formula(by_proc("closeF"), "closeF", 2);
    CHECK(contains_obs(*g));
    // only the assumption mentions f outside the observation
    CHECK(free_logic_vars(*g) == std::set<std::string>{"f"});
}

TEST_CASE("trace adherence on the file program") {
    auto ts = enumerate_traces(fixture::files_program());
    REQUIRE(ts.size() == 1);
    CHECK(id_of("do", ts[0]) == std::vector<std::int64_t>{1, 4});
    CHECK(adheres_trace(ts[0], 2, by_proc("closeF"), "closeF"));
    CHECK(adheres_trace(ts[0], 3, by_proc("operate"), "operate"));
    CHECK(adheres_trace(ts[0], 0, by_proc("init"), kInit));
    CHECK(!adheres_trace(ts[0], 2, by_proc("operate"), "operate"));
}

TEST_CASE("operate pre-trace on the first do scope") {
    auto t = enumerate_traces(fixture::files_program()).front();
    auto k = fixture::find_event(t, ev_call("operate", 3));
    REQUIRE(k);
    Trace pre(t.begin(), t.begin() + *k);
    ObsEnv o{{"f", {"file", as_state(pre.back())}}};
    CHECK(member(pre, by_proc("operate").assume, o));
}

TEST_CASE("procedure adherence and correctness") {
    auto p = fixture::files_program();
    auto cs = fixture::casestudy();
    auto cr = program_correct(p, cs);
    CHECK(cr.ok);
    CHECK(cr.reports.size() == 4);
    auto bad = adheres_procedure(p, "do", parse_contract(kDoNoClose));
    CHECK(!bad.ok());
    REQUIRE(!bad.entries.empty());
    CHECK(bad.entries[0].clause == "internal");

    auto strong = parse_contract(
        "contract do { assume: ~[open(f)]; pre: [true] obs(file as f); internal: ~ write(f) ~ close(f) ~;"
        " post: [true]; continue: ~; }");
    CHECK(program_correct(p, replace(strong)).ok);

    auto never = parse_program("a() { return } { skip }");
    auto vac = adheres_procedure(never, "a", parse_contract("contract a { assume: ~; pre: [false]; internal: ~;"
                                                            " post: [true]; continue: ~; }"));
    CHECK(vac.ok());
    CHECK(vac.entries.empty());
}

TEST_CASE("deleting the asynchronous close") {
    auto p = parse_program(read_file(fixture::data("files_noclose.async")));
    auto r = adheres_procedure(p, "operate", by_proc("operate"));
    CHECK(!r.ok());
    REQUIRE(!r.entries.empty());
    CHECK(r.entries[0].clause == "post-trace");
    // the weak variant drops exactly that obligation
    CHECK(adheres_procedure(p, "operate", weak_variant(by_proc("operate"))).ok());
}

TEST_CASE("weak variant") {
    auto w = weak_variant(by_proc("operate"));
    CHECK(print_formula(*w.cont) == print_formula(*f_noev()));
    CHECK(print_formula(*w.internal) == print_formula(*by_proc("operate").internal));
    CHECK(print_contract(weak_variant(w)) == print_contract(w));
    auto p = fixture::files_program();
    for (auto& c : fixture::casestudy()) CHECK(adheres_procedure(p, c.proc, weak_variant(c)).ok());
}

TEST_CASE("missing contracts") {
    auto cs = fixture::casestudy();
    cs.erase(cs.begin() + 2);
    CHECK_THROWS_AS(program_correct(fixture::files_program(), cs), ValidationError);
}

}
