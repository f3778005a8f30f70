#include "doctest.h"

#include "asyncat/errors.hpp"
#include "asyncat/parse.hpp"
#include "common.hpp"

using namespace asyncat;

TEST_SUITE("frontend") {

TEST_CASE("file program parses") {
    auto p = fixture::files_program();
    REQUIRE(p.procedures.size() == 3);
    CHECK(p.procedures[0].name == "do");
    CHECK(p.init_decls == std::vector<std::string>{"file"});
    auto body = flatten(lookup("do", p));
    REQUIRE(body.size() == 4);
    CHECK(body[0]->kind == Stmt::Kind::Open);
    CHECK(body[1]->kind == Stmt::Kind::AsyncCall);
    CHECK(body[2]->kind == Stmt::Kind::SyncCall);
    CHECK(body[3]->kind == Stmt::Kind::Return);
}

TEST_CASE("minimal program") {
    auto p = parse_program("{ skip }");
    CHECK(p.procedures.empty());
    CHECK(p.init_decls.empty());
}

TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse_program("a() { return } a() { return } { skip }"), ValidationError);
    CHECK_THROWS_AS(parse_program("a() { skip } { skip }"), ValidationError);
    CHECK_THROWS_AS(parse_program("{ b() }"), ValidationError);
    CHECK_THROWS_AS(parse_program("{ x = 1 }"), ValidationError);
    CHECK_THROWS_AS(parse_program("a() { return; skip; return } { skip }"), ValidationError);
    CHECK_THROWS_AS(parse_program("{ skip "), SyntaxError);
    auto p = fixture::files_program();
    CHECK_THROWS_AS(lookup("init", p), ValidationError);
    CHECK_THROWS_AS(lookup("nope", p), ValidationError);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_program("{\n  x; x = @ }");
        FAIL("no error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("printing round-trips") {
    for (auto* name : {"files.async", "nested.async"}) {
        auto p = parse_program(read_file(fixture::data(name)));
        auto text = print_program(p);
        CHECK(print_program(parse_program(text)) == text);
    }
    for (auto& c : fixture::casestudy()) {
        auto text = print_contract(c);
        CHECK(print_contract(parse_contract(text)) == text);
    }
}

TEST_CASE("contracts of the case study") {
    auto cs = fixture::casestudy();
    REQUIRE(cs.size() == 4);
    CHECK(cs[0].proc == "init");
    CHECK(cs[1].proc == "do");
    REQUIRE(cs[1].pre_binders.size() == 1);
    CHECK(cs[1].pre_binders[0].x == "file");
    CHECK(cs[1].pre_binders[0].y == "f");
    CHECK(cs[1].post_binders.empty());
}

TEST_CASE("binder scoping") {
    // y is only bound after the call, so it may not occur in the internal part
    CHECK_THROWS_AS(parse_contract("contract m { assume: ~; pre: [true]; internal: ~ close(y) ~;"
                                   " post: [true] obs(file as y); continue: ~; }"),
                    ScopingError);
    CHECK_THROWS_AS(parse_contract("contract m { assume: ~; pre: [true] obs(file as y, x as y);"
                                   " internal: ~; post: [true]; continue: ~; }"),
                    ScopingError);
    CHECK_NOTHROW(parse_contract("contract m { assume: ~; pre: [true]; internal: ~;"
                                 " post: [true] obs(file as y); continue: ~ close(y) ~; }"));
}

TEST_CASE("formula grammar") {
    auto f = parse_formula("~[open(f)] ** close(f) . [true]");
    CHECK(print_formula(*parse_formula(print_formula(*f))) == print_formula(*f));
    // recursion variables may not sit under an observation
    CHECK_THROWS(parse_formula("mu X. obs x as y. X"));
    CHECK_THROWS_AS(parse_formula("[y == z]"), ValidationError);
}

}
