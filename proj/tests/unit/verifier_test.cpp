#include "doctest.h"

#include <functional>

#include "asyncat/errors.hpp"
#include "asyncat/update.hpp"
#include "asyncat/verifier.hpp"
#include "common.hpp"

using namespace asyncat;

namespace {

std::vector<const ProofNode*> nodes(const ProofNode& root, const std::string& rule) {
    std::vector<const ProofNode*> out;
    std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
        if (n.rule == rule) out.push_back(&n);
        for (auto& p : n.premises) walk(p);
    };
    walk(root);
    return out;
}

bool any_open(const ProofNode& n) { return !n.open_leaves().empty(); }

ProofNode prove(const std::string& prog, const std::string& contracts, const std::string& m) {
    auto p = parse_program(prog);
    auto cs = parse_contracts(contracts);
    auto r = verify_procedure(p, cs, m);
    REQUIRE(r.size() >= 1);
    return r.front();
}

std::string trivial(const std::string& m) {
    return "contract " + m + " { assume: ~; pre: [true]; internal: ~; post: [true]; continue: ~; }\n";
}

const State sf = fixture::st({{"file", str_val("file1.txt")}, {"x", int_val(0)}});

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("update evaluation") {
    auto p = fixture::files_program();
    auto a = eval_update({u_assign("x", parse_expr("1"))}, singleton(sf), p);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == Trace{sf, sf.set("x", int_val(1))});
    auto inv = eval_update({u_invoc("m", 1)}, singleton(sf), p);
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == event_triple(sf, ev_invoc("m", 1)));
    auto run = eval_update({u_run("closeF", 2, false)}, singleton(sf), p);
    REQUIRE(run.size() == 1);
    std::size_t last = 0;
    for (auto& e : {ev_push("closeF", 2), ev_file(Tag::Close, str_val("file1.txt")), ev_ret(2), ev_pop("closeF", 2)}) {
        auto k = fixture::find_event(run[0], e);
        REQUIRE_MESSAGE(k, show_event(e));
        CHECK(*k > last);
        last = *k;
    }
    auto sy = eval_update({u_run("closeF", 2, true)}, singleton(sf), p);
    REQUIRE(sy.size() == 1);
    CHECK(as_event(sy[0][1]) == ev_call("closeF", 2));
    CHECK_THROWS_AS(eval_update({u_havoc("V")}, singleton(sf), p), HavocPresent);
}

TEST_CASE("schedule of updates") {
    CHECK(schedule_update({u_invoc("m", 1), u_ret(0)}, 0) == std::set<Scope>{{"m", 1}});
    CHECK(schedule_update({u_invoc("m", 1)}, 0).empty());
    CHECK(schedule_update({u_invoc("m", 1), u_ret(0), u_run("m", 1, false)}, 0).empty());
    CHECK(schedule_update({u_invoc("m", 1), u_ret(0), u_run("m", 2, false)}, 0) == std::set<Scope>{{"m", 1}});
}

TEST_CASE("local judgments") {
    auto p = fixture::files_program();
    auto c = [](const char* text) { return subst_vars(parse_formula(text), {{"f", sym("c")}}); };
    LocalQuery q;
    q.program = &p;
    q.proc = "closeF";
    q.oid = scope_id("closeF");
    q.pre = c("~ open(f) ~[close(f)] ** [true]");
    q.u = {u_havoc("V"), u_start("closeF", q.oid)};
    q.target = c("~ open(f) ~[close(f)]");
    VerifyOptions o;
    o.bound = 16;
    CHECK(discharge_local(q, o).closed);

    LocalQuery r = q;
    r.pre = nullptr;
    r.u = {u_ret(q.oid)};
    r.target = c("~[open(f)]");
    CHECK(discharge_local(r, o).closed);

    r.u = {u_file(Tag::Close, sym("c"))};
    r.target = c("~[close(f)]");
    auto open = discharge_local(r, o);
    CHECK(!open.closed);
    CHECK(open.evidence.find("counterexample") != std::string::npos);
}

TEST_CASE("case study proofs") {
    auto p = fixture::files_program();
    auto cs = fixture::casestudy();
    for (auto* m : {"init", "do", "closeF", "operate"}) {
        auto proofs = verify_procedure(p, cs, m);
        REQUIRE(proofs.size() == 1);
        CHECK_MESSAGE(proofs[0].accepted(), render_proof(proofs[0]));
    }
    auto closef = verify_procedure(p, cs, "closeF")[0];
    CHECK(closef.spine() == std::vector<std::string>{"Contract", "Close", "Return", "Finish", "LocalJ"});
    auto d = verify_procedure(p, cs, "do")[0];
    CHECK(d.spine() == std::vector<std::string>{"Contract", "Open", "AsyncCall", "Call", "Return", "ScheduleD",
                                                "Finish", "LocalJ"});
    CHECK(proof_json(d).find("\"accepted\"") != std::string::npos);
}

TEST_CASE("weakened closeF contract") {
    auto p = fixture::files_program();
    auto weak = parse_contracts(read_file(fixture::data("weak_closeF.cat")));
    auto d = verify_procedure(p, weak, "do")[0];
    CHECK(!d.accepted());
    const ProofNode* n = &d;
    while (!n->premises.empty()) n = &n->premises.back();
    CHECK(n->rule == "LocalJ");
    CHECK(n->status == ProofNode::Status::Open);
    auto fin = nodes(d, "Finish");
    REQUIRE(fin.size() == 1);
    CHECK(any_open(*fin[0]));
    // the weakened contract itself is still provable for closeF
    CHECK(verify_procedure(p, weak, "closeF")[0].accepted());
}

TEST_CASE("straight-line rules") {
    auto n = prove("a() { x = 1; return } { x; skip }", trivial("init") + trivial("a"), "a");
    CHECK(n.accepted());
    CHECK(n.spine() == std::vector<std::string>{"Contract", "Assign", "Return", "Finish", "LocalJ"});
    auto w = prove("a() { write(\"z\"); return } { skip }", trivial("init") + trivial("a"), "a");
    CHECK(!w.accepted());
    auto ws = nodes(w, "Write");
    REQUIRE(ws.size() == 1);
    CHECK(ws[0]->premises.front().status == ProofNode::Status::Open);
    auto c = prove("a() { if (x == 1) { open(\"z\") }; return } { x; skip }", trivial("init") + trivial("a"), "a");
    CHECK(c.accepted());
    CHECK(nodes(c, "Cond").size() == 1);
}

TEST_CASE("call premise fails") {
    auto n = prove("a() { b(); return } b() { skip; return } { skip }",
                   trivial("init") + trivial("a") +
                       "contract b { assume: ~ open(\"k\") ~; pre: [true]; internal: ~; post: [true]; continue: ~; }",
                   "a");
    CHECK(!n.accepted());
    auto calls = nodes(n, "Call");
    REQUIRE(calls.size() == 1);
    CHECK(calls[0]->premises.front().status == ProofNode::Status::Open);
}

TEST_CASE("scheduling rules") {
    auto prog = "a() { !b(); !c(); return } b() { skip; return } c() { skip; return } { skip }";
    auto n = prove(prog, trivial("init") + trivial("a") + trivial("b") + trivial("c"), "a");
    CHECK(n.accepted());
    auto sn = nodes(n, "ScheduleN");
    REQUIRE(!sn.empty());
    CHECK(nodes(*sn[0], "Choice").size() >= 2);

    // b has two contracts; the one with the larger internal language is the top
    auto two = prove("a() { !b(); return } b() { skip; return } { skip }",
                     trivial("init") + trivial("a") + trivial("b") +
                         "contract b { assume: ~; pre: [true]; internal: ~[close(\"k\")]; post: [true]; continue: ~; }",
                     "a");
    CHECK(two.accepted());
    auto act = nodes(two, "actOrder");
    REQUIRE(act.size() == 1);
    CHECK(nodes(*act[0], "Choice").size() == 1);
}

TEST_CASE("finish without invocations") {
    auto n = prove("a() { return } { skip }", trivial("init") + trivial("a"), "a");
    CHECK(n.accepted());
    CHECK(nodes(n, "Finish").size() == 1);
}

TEST_CASE("errors") {
    auto p = fixture::files_program();
    auto cs = fixture::casestudy();
    CHECK_THROWS_AS(verify_procedure(p, {cs[0]}, "do"), ValidationError);
    CHECK_THROWS(verify_contract(p, cs, parse_contract(trivial("nope"))));
}

TEST_CASE("behavioral subtyping") {
    for (auto& c : fixture::casestudy()) CHECK(subtype(c, c).verdict == SubtypeVerdict::Proved);
    auto pre = [](const char* q) {
        return parse_contract(std::string("contract m { assume: ~; pre: [") + q +
                              "] obs(x as y); internal: ~; post: [true]; continue: ~; }");
    };
    CHECK(subtype(pre("y > 1"), pre("y > 0")).verdict == SubtypeVerdict::Proved);
    auto back = subtype(pre("y > 0"), pre("y > 1"));
    CHECK(back.verdict == SubtypeVerdict::Disproved);
    CHECK(back.condition == "L1");
    auto in1 = parse_contract("contract m { assume: ~; pre: [true] obs(file as f); internal: ~[close(f)]; post: [true]; continue: ~; }");
    auto in2 = parse_contract("contract m { assume: ~; pre: [true] obs(file as f); internal: ~; post: [true]; continue: ~; }");
    auto l2 = subtype(in1, in2);
    CHECK(l2.verdict == SubtypeVerdict::Disproved);
    CHECK(l2.condition == "L2");
    CHECK(l2.counterexample);
    CHECK(subtype(in2, in1).verdict == SubtypeVerdict::Proved);
}

TEST_CASE("maximal contracts") {
    auto pre = [](const char* q) {
        return parse_contract(std::string("contract m { assume: ~; pre: [") + q +
                              "] obs(x as y); internal: ~; post: [true]; continue: ~; }");
    };
    auto one = max_contracts({pre("y > 0")});
    CHECK(one.size() == 1);
    auto top = max_contracts({pre("y > 0"), pre("y > 2"), pre("y > 1")});
    REQUIRE(top.size() == 1);
    CHECK(print_contract(top[0]) == print_contract(pre("y > 2")));
    // incomparable: different preconditions that neither implies
    auto inc = max_contracts({pre("y == 1"), pre("y == 2")});
    CHECK(inc.size() == 2);
}

}
