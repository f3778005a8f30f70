#include "gen.hpp"

#include "asyncat/parse.hpp"

#include <map>
#include <set>
#include <sstream>

using namespace asyncat;

namespace gen {

int pick(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
bool coin(Rng& r, double p) { return std::bernoulli_distribution(p)(r); }

namespace {

const char* kFiles[] = {"\"a\"", "\"b\"", "f"};

struct BodyGen {
    Rng& r;
    int self, n;
    const ProgramShape& s;
    std::vector<std::string> opened;

    std::string operand() {
        if (!opened.empty() && coin(r, 0.7)) return opened[pick(r, 0, static_cast<int>(opened.size()) - 1)];
        return kFiles[pick(r, 0, 2)];
    }

    std::string file_op() {
        int k = pick(r, 0, 5);
        if (k <= 1) {
            std::string f = kFiles[pick(r, 0, 2)];
            opened.push_back(f);
            return "open(" + f + ")";
        }
        if (k == 2) {
            std::string f = operand();
            std::erase(opened, f);
            return "close(" + f + ")";
        }
        return std::string(k == 3 ? "read(" : "write(") + operand() + ")";
    }

    std::string simple() {
        int k = pick(r, 0, 9);
        if (k <= 1 && self + 1 < n) {
            int j = pick(r, self + 1, n - 1);
            bool sync = s.sync_calls && coin(r);
            return std::string(sync ? "" : "!") + "p" + std::to_string(j) + "()";
        }
        if (k <= 4 && s.file_ops) return file_op();
        if (k == 5) return "skip";
        if (k == 6) return "f = " + std::string(kFiles[pick(r, 0, 1)]);
        if (k == 7) return "x = x + 1";
        return "x = " + std::to_string(pick(r, 0, 2));
    }

    std::string body(bool init) {
        int len = pick(r, 1, s.max_stmts);
        std::vector<std::string> out;
        for (int k = 0; k < len; ++k) {
            if (coin(r, 0.15)) {
                auto saved = opened;
                std::string inner = simple();
                if (coin(r)) inner += "; " + simple();
                opened = saved;
                out.push_back("if (x == " + std::to_string(pick(r, 0, 2)) + ") { " + inner + " }");
            } else {
                out.push_back(simple());
            }
        }
        if (!init) out.push_back("return");
        std::string b;
        for (auto& x : out) b += (b.empty() ? "" : "; ") + x;
        return b;
    }
};

// What a body does to files, for the guided contracts.
struct FileUse {
    std::set<std::string> needs;   // used before a local open
    std::set<std::string> closes;  // closed here or by any callee
    std::set<std::string> callees;
};

std::string operand_key(const Expr& e) {
    if (e.kind == Expr::Kind::Lit) return show_value(e.lit);
    return "f";
}

void scan(const SPtr& st, FileUse& u, std::set<std::string>& open) {
    if (!st) return;
    switch (st->kind) {
    case Stmt::Kind::Seq:
        scan(st->a, u, open);
        scan(st->b, u, open);
        break;
    case Stmt::Kind::If: {
        auto saved = open;
        scan(st->a, u, open);
        open = saved;
        break;
    }
    case Stmt::Kind::Open: open.insert(operand_key(*st->e)); break;
    case Stmt::Kind::Close:
        u.closes.insert(operand_key(*st->e));
        [[fallthrough]];
    case Stmt::Kind::Read:
    case Stmt::Kind::Write:
        if (!open.count(operand_key(*st->e))) u.needs.insert(operand_key(*st->e));
        if (st->kind == Stmt::Kind::Close) open.erase(operand_key(*st->e));
        break;
    case Stmt::Kind::SyncCall:
    case Stmt::Kind::AsyncCall: u.callees.insert(st->name); break;
    case Stmt::Kind::Assign:
        if (st->name == "f") open.erase("f");
        break;
    default: break;
    }
}

std::map<std::string, FileUse> file_use(const Program& p) {
    std::map<std::string, FileUse> m;
    for (auto& d : p.procedures) {
        std::set<std::string> open;
        scan(d.body, m[d.name], open);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [name, u] : m)
            for (auto& c : u.callees)
                for (auto& f : m[c].closes) changed |= u.closes.insert(f).second;
    }
    return m;
}

std::string random_contract(Rng& r, const std::string& m) {
    bool init = m == kInit;
    bool observed = !init && coin(r, 0.4);
    std::string F = observed ? "g" : (coin(r) ? "\"a\"" : "\"b\"");
    static const char* assume[] = {"~", "~ open(F) ~[close(F)]", "~[open(F)]"};
    static const char* internal[] = {"~", "~[close(F)]", "~ close(F) ~", "~[open(F)]", "~[open(F)] ** ~"};
    static const char* cont[] = {"~", "~[open(F)]"};
    auto fill = [&](std::string t) {
        for (std::size_t at; (at = t.find('F')) != std::string::npos;) t.replace(at, 1, F);
        return t;
    };
    std::string pre = "[true]";
    if (coin(r, 0.3)) pre = "[y >= 0] obs(x as y)";
    if (observed) pre = pre == "[true]" ? "[true] obs(f as g)" : "[y >= 0] obs(x as y, f as g)";
    std::string post = coin(r, 0.3) ? "[z >= 0] obs(x as z)" : "[true]";
    std::ostringstream out;
    out << "contract " << m << " {\n";
    out << "  assume: " << (init ? "~" : fill(assume[pick(r, 0, 2)])) << ";\n";
    out << "  pre: " << pre << ";\n";
    out << "  internal: " << fill(internal[pick(r, 0, 4)]) << ";\n";
    out << "  post: " << post << ";\n";
    out << "  continue: " << (init || observed ? "~" : fill(cont[pick(r, 0, 1)])) << ";\n";
    out << "}\n";
    return out.str();
}

// Pre-trace demands the files the body uses without opening them; the
// internal behavior promises not to close files nothing in the call tree closes.
std::string guided_contract(Rng& r, const std::string& m, const FileUse& u) {
    std::vector<std::string> assume, internal;
    bool observed = false;
    for (auto& f : u.needs) {
        std::string F = f == "f" ? "g" : f;
        observed |= f == "f";
        assume.push_back("~ open(" + F + ") ~[close(" + F + ")]");
    }
    if (!u.closes.count("f"))
        for (std::string f : {"\"a\"", "\"b\""})
            if (!u.closes.count(f)) internal.push_back("~[close(" + f + ")]");
    auto conj = [](const std::vector<std::string>& xs) {
        if (xs.empty()) return std::string("~");
        std::string s;
        for (auto& x : xs) s += (s.empty() ? "" : " /\\ ") + ("(" + x + ")");
        return s;
    };
    std::string pre = observed ? "[true] obs(f as g)" : "[true]";
    if (coin(r, 0.2)) pre = observed ? "[y >= 0] obs(x as y, f as g)" : "[y >= 0] obs(x as y)";
    std::ostringstream out;
    out << "contract " << m << " {\n  assume: " << conj(assume) << ";\n  pre: " << pre << ";\n  internal: "
        << conj(internal) << ";\n  post: " << (coin(r, 0.2) ? "[z >= 0] obs(x as z)" : "[true]")
        << ";\n  continue: ~;\n}\n";
    return out.str();
}

}  // namespace

std::string program_text(Rng& r, const ProgramShape& s) {
    int n = pick(r, 1, s.max_procs);
    std::ostringstream out;
    for (int k = 0; k < n; ++k) out << "p" << k << "() { " << BodyGen{r, k, n, s, {}}.body(false) << " }\n";
    // init may call every procedure
    out << "{ x; f; " << BodyGen{r, -1, n, s, {}}.body(true) << " }\n";
    return out.str();
}

std::string contracts_text(Rng& r, const Program& p) {
    auto use = file_use(p);
    std::string out;
    for (auto& d : p.procedures)
        out += coin(r, 0.75) ? guided_contract(r, d.name, use[d.name]) : random_contract(r, d.name);
    out += coin(r, 0.75) ? "contract init {\n  assume: ~;\n  pre: [true];\n  internal: ~;\n  post: [true];\n  continue: ~;\n}\n"
                         : random_contract(r, kInit);
    return out;
}

SPtr statement(Rng& r, const Program& p, int len, bool sync, bool with_return) {
    std::vector<SPtr> out;
    int n = static_cast<int>(p.procedures.size());
    for (int k = 0; k < len; ++k) {
        int c = pick(r, 0, 7);
        if (c <= 1 && n > 0) {
            auto& m = p.procedures[pick(r, 0, n - 1)].name;
            out.push_back(sync && coin(r) ? s_call(m) : s_async(m));
        } else if (c == 2) {
            out.push_back(s_assign("x", bin(Op::Add, var("x"), lit(int_val(1)))));
        } else if (c == 3) {
            out.push_back(s_file(Stmt::Kind::Open, lit(str_val("a"))));
        } else if (c == 4) {
            out.push_back(s_file(Stmt::Kind::Write, var("f")));
        } else if (c == 5) {
            out.push_back(s_if(bin(Op::Eq, var("x"), lit(int_val(pick(r, 0, 1)))), s_assign("x", lit(int_val(2)))));
        } else {
            out.push_back(s_skip());
        }
    }
    if (with_return) out.push_back(s_return());
    return s_block(out);
}

Update update(Rng& r, const Program& p) {
    Update u;
    int n = static_cast<int>(p.procedures.size());
    std::int64_t next = 100;
    std::vector<std::pair<std::string, std::int64_t>> invoked;
    int len = pick(r, 0, 5);
    for (int k = 0; k < len; ++k) {
        int c = pick(r, 0, 4);
        if (c == 0 && n > 0) {
            auto& m = p.procedures[pick(r, 0, n - 1)].name;
            u.push_back(u_invoc(m, next));
            invoked.push_back({m, next});
            next += 100;
        } else if (c == 1 && n > 0) {
            u.push_back(u_run(p.procedures[pick(r, 0, n - 1)].name, next, true));
            next += 100;
        } else if (c == 2) {
            u.push_back(u_assign("x", lit(int_val(pick(r, 0, 2)))));
        } else if (c == 3) {
            u.push_back(u_file(Tag::Open, lit(str_val("a"))));
        } else {
            u.push_back(u_file(Tag::Write, var("f")));
        }
    }
    u.push_back(u_ret(0));
    std::shuffle(invoked.begin(), invoked.end(), r);
    for (auto& [m, i] : invoked) {
        if (coin(r, 0.6)) u.push_back(u_run(m, i, false));
        if (coin(r, 0.3)) u.push_back(u_assign("x", lit(int_val(pick(r, 0, 2)))));
    }
    return u;
}

namespace {

Event random_event(Rng& r) {
    switch (pick(r, 0, 5)) {
    case 0: return ev_file(Tag::Open, str_val("a"));
    case 1: return ev_file(Tag::Close, str_val("a"));
    case 2: return ev_file(Tag::Write, str_val("b"));
    case 3: return ev_invoc("m", pick(r, 1, 2));
    case 4: return ev_ret(pick(r, 1, 2));
    default: return ev_push("m", pick(r, 1, 2));
    }
}

State random_state(Rng& r) { return State(Bindings{{"x", int_val(pick(r, 0, 2))}}); }

}  // namespace

Trace trace(Rng& r, int max_items) {
    int len = pick(r, 1, max_items);
    Trace t{Item(random_state(r))};
    while (static_cast<int>(t.size()) < len) {
        if (coin(r, 0.3) || static_cast<int>(t.size()) + 2 > len) {
            t.push_back(random_state(r));
        } else {
            State s = as_state(t.back());
            t.push_back(random_event(r));
            t.push_back(s);
        }
    }
    return t;
}

std::vector<EvPat> patterns(Rng& r, int max_n) {
    std::vector<EvPat> out;
    int n = pick(r, 0, max_n);
    for (int k = 0; k < n; ++k) {
        switch (pick(r, 0, 4)) {
        case 0: out.push_back(pat_file(EvKind::Open, lit(str_val("a")))); break;
        case 1: out.push_back(pat_file(EvKind::Close, lit(str_val("a")))); break;
        case 2: out.push_back(pat_file(EvKind::Write, lit(str_val("b")))); break;
        case 3: out.push_back(pat_ret(lit(int_val(pick(r, 1, 2))))); break;
        default: out.push_back(pat_invoc("m", lit(int_val(pick(r, 1, 2))))); break;
        }
    }
    return out;
}

FPtr formula(Rng& r, int depth) {
    if (depth <= 0 || coin(r, 0.25)) {
        switch (pick(r, 0, 5)) {
        case 0: return f_true();
        case 1: return f_noev(patterns(r, 2));
        case 2: {
            auto ps = patterns(r, 1);
            if (ps.empty()) return f_noev();
            return f_ev(ps[0]);
        }
        case 3: return f_item(patterns(r, 1));
        case 4: return f_obs("x", "y", f_pred(bin(Op::Eq, var("y"), lit(int_val(pick(r, 0, 2))))));
        default: return f_pred(lit(bool_val(coin(r, 0.8))));
        }
    }
    FPtr a = formula(r, depth - 1), b = formula(r, depth - 1);
    switch (pick(r, 0, 3)) {
    case 0: return f_and(a, b);
    case 1: return f_or(a, b);
    case 2: return f_concat(a, b);
    default: return f_chop(a, b);
    }
}

}  // namespace gen
