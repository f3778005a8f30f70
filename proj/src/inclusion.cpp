#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "asyncat/errors.hpp"
#include "asyncat/formula.hpp"

namespace asyncat {

std::vector<Value> sample_domain(const std::set<Value>& literals) {
    std::set<Value> out;
    bool any_int = false;
    for (auto& v : literals) {
        if (v.index() == 0) {
            any_int = true;
            auto k = std::get<0>(v);
            out.insert(int_val(k - 1));
            out.insert(int_val(k));
            out.insert(int_val(k + 1));
        } else if (v.index() == 1) {
            out.insert(v);
        }
    }
    if (!any_int) out.insert(int_val(0));
    out.insert(str_val("#fresh"));
    out.insert(bool_val(true));
    out.insert(bool_val(false));
    return {out.begin(), out.end()};
}

namespace {

struct NotRegular : Error {
    using Error::Error;
};

// Letter 0 is the abstract state; the last letter stands for every event
// that no pattern mentions.
struct Alphabet {
    std::vector<Event> events;  // letters 1..events.size()
    int size() const { return static_cast<int>(events.size()) + 2; }
    int other() const { return static_cast<int>(events.size()) + 1; }

    int letter(const Event& e) const {
        for (std::size_t k = 0; k < events.size(); ++k)
            if (events[k] == e) return static_cast<int>(k) + 1;
        return other();
    }
};

struct Ctx {
    const Valuation& val;
    EvalEnv env;

    explicit Ctx(const Valuation& v) : val(v) {
        env.syms = [this](const std::string& c) -> std::optional<Value> {
            auto it = val.find(c);
            if (it == val.end()) return std::nullopt;
            return it->second;
        };
        env.vars = [](const std::string&) -> std::optional<Value> { return std::nullopt; };
    }

    // Concrete events a pattern denotes: for Start, {call, push}.
    std::vector<Event> events_of(const EvPat& p) const {
        if (evkind_is_file(p.kind)) {
            Tag t = p.kind == EvKind::Open ? Tag::Open : p.kind == EvKind::Close ? Tag::Close
                  : p.kind == EvKind::Read ? Tag::Read : Tag::Write;
            return {ev_file(t, eval(*p.file, env))};
        }
        Value id = eval(*p.id, env);
        if (id.index() != 0) return {};
        auto i = std::get<0>(id);
        switch (p.kind) {
        case EvKind::Start: return {ev_call(p.proc, i), ev_push(p.proc, i)};
        case EvKind::Ret: return {ev_ret(i)};
        case EvKind::Pop: return {ev_pop(p.proc, i)};
        case EvKind::Invoc: return {ev_invoc(p.proc, i)};
        case EvKind::Call: return {ev_call(p.proc, i)};
        case EvKind::Push: return {ev_push(p.proc, i)};
        default: return {};
        }
    }
};

void collect_preds(const Formula& f, std::vector<const Expr*>& out) {
    if (f.kind == Formula::Kind::Obs) return;  // bound variables: no fixed truth value
    if (f.kind == Formula::Kind::Pred) out.push_back(f.pred.get());
    if (f.a) collect_preds(*f.a, out);
    if (f.b) collect_preds(*f.b, out);
}

void collect_pats(const Formula& f, std::vector<EvPat>& out) {
    if (f.kind == Formula::Kind::Ev) out.push_back(f.ev);
    if (f.kind == Formula::Kind::NoEv || f.kind == Formula::Kind::Item)
        out.insert(out.end(), f.excl.begin(), f.excl.end());
    if (f.a) collect_pats(*f.a, out);
    if (f.b) collect_pats(*f.b, out);
}

struct Nfa {
    std::vector<std::vector<std::pair<int, int>>> tr;
    std::vector<std::vector<int>> eps, skip;
    std::vector<char> acc;
    std::vector<std::pair<int, std::string>> refs;
    int start = 0;

    int add() {
        tr.emplace_back();
        eps.emplace_back();
        skip.emplace_back();
        acc.push_back(0);
        return static_cast<int>(tr.size()) - 1;
    }
    int size() const { return static_cast<int>(tr.size()); }

    int embed(const Nfa& o) {
        int off = size();
        for (int s = 0; s < o.size(); ++s) {
            add();
            for (auto [a, t] : o.tr[s]) tr[off + s].emplace_back(a, t + off);
            for (int t : o.eps[s]) eps[off + s].push_back(t + off);
            for (int t : o.skip[s]) skip[off + s].push_back(t + off);
            acc[off + s] = o.acc[s];
        }
        for (auto& [s, X] : o.refs) refs.emplace_back(s + off, X);
        return off;
    }
};

using Row = std::vector<std::uint64_t>;

void row_or(Row& a, const Row& b, bool& changed) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        auto v = a[k] | b[k];
        if (v != a[k]) {
            a[k] = v;
            changed = true;
        }
    }
}

template <class F>
void each_bit(const Row& r, F f) {
    for (std::size_t k = 0; k < r.size(); ++k) {
        auto w = r[k];
        while (w) {
            int b = __builtin_ctzll(w);
            f(static_cast<int>(k * 64 + b));
            w &= w - 1;
        }
    }
}

// ε-free equivalent on the same state indices.
Nfa eps_free(const Nfa& n) {
    if (!n.refs.empty()) throw NotRegular("recursion variable outside a tail position");
    int N = n.size();
    std::size_t W = (N + 63) / 64;
    std::vector<Row> cl(N, Row(W, 0));
    for (int p = 0; p < N; ++p) cl[p][p / 64] |= 1ull << (p % 64);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p < N; ++p) {
            Row acc = cl[p];
            each_bit(cl[p], [&](int q) {
                for (int e : n.eps[q]) row_or(acc, cl[e], changed);
                for (int T : n.skip[q])
                    each_bit(cl[T], [&](int r) {
                        for (auto [a, t] : n.tr[r])
                            if (a == 0) row_or(acc, cl[t], changed);
                    });
            });
            cl[p] = std::move(acc);
        }
    }
    Nfa out;
    for (int p = 0; p < N; ++p) out.add();
    out.start = n.start;
    for (int p = 0; p < N; ++p) {
        std::set<std::pair<int, int>> ts;
        each_bit(cl[p], [&](int q) {
            for (auto e : n.tr[q]) ts.insert(e);
            if (n.acc[q]) out.acc[p] = 1;
        });
        out.tr[p].assign(ts.begin(), ts.end());
    }
    return out;
}

struct Builder {
    const Alphabet& al;
    const Ctx& ctx;
    std::set<std::string> recs;

    bool letter_excluded(int a, const std::vector<EvPat>& ex) const {
        if (a == 0 || a == al.other()) return false;
        const Event& e = al.events[a - 1];
        for (auto& p : ex)
            for (auto& c : ctx.events_of(p))
                if (c == e) return true;
        return false;
    }

    Nfa chain(const std::vector<std::vector<int>>& steps) const {
        Nfa n;
        int cur = n.add();
        n.start = cur;
        for (auto& letters : steps) {
            int nx = n.add();
            for (int a : letters) n.tr[cur].emplace_back(a, nx);
            cur = nx;
        }
        n.acc[cur] = 1;
        return n;
    }

    Nfa build(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind) {
        case K::Pred: {
            if (is_true(eval(*f.pred, ctx.env))) return chain({{0}});
            Nfa n;
            n.start = n.add();
            return n;
        }
        case K::Ev: {
            auto evs = ctx.events_of(f.ev);
            if (evs.empty()) {
                Nfa n;
                n.start = n.add();
                return n;
            }
            if (f.ev.kind == EvKind::Start) {
                Nfa full = chain({{0}, {al.letter(evs[0])}, {0}, {al.letter(evs[1])}, {0}});
                Nfa bare = chain({{0}, {al.letter(evs[1])}, {0}});
                return alt(full, bare);
            }
            return chain({{0}, {al.letter(evs[0])}, {0}});
        }
        case K::NoEv:
        case K::Item: {
            Nfa n;
            int s0 = n.add(), s1 = n.add();
            n.start = s0;
            n.acc[s1] = 1;
            for (int a = 0; a < al.size(); ++a) {
                if (letter_excluded(a, f.excl)) continue;
                n.tr[s0].emplace_back(a, s1);
                if (f.kind == K::NoEv) n.tr[s1].emplace_back(a, s1);
            }
            return n;
        }
        case K::Or: return alt(build(*f.a), build(*f.b));
        case K::And: {
            Nfa A = eps_free(build(*f.a));
            Nfa B = eps_free(build(*f.b));
            Nfa n;
            std::map<std::pair<int, int>, int> idx;
            std::deque<std::pair<int, int>> work;
            auto get = [&](int p, int q) {
                auto it = idx.find({p, q});
                if (it != idx.end()) return it->second;
                int s = n.add();
                n.acc[s] = A.acc[p] && B.acc[q];
                idx[{p, q}] = s;
                work.emplace_back(p, q);
                return s;
            };
            n.start = get(A.start, B.start);
            while (!work.empty()) {
                auto [p, q] = work.front();
                work.pop_front();
                int s = idx[{p, q}];
                for (auto [a, t] : A.tr[p])
                    for (auto [b, u] : B.tr[q])
                        if (a == b) {
                            int d = get(t, u);
                            n.tr[s].emplace_back(a, d);
                        }
            }
            return n;
        }
        case K::Concat:
        case K::Chop: {
            Nfa A = eps_free(build(*f.a));
            Nfa B = build(*f.b);
            Nfa n;
            int offA = n.embed(A);
            n.start = A.start + offA;
            for (int s = 0; s < A.size(); ++s) n.acc[s + offA] = 0;
            if (f.kind == K::Concat) {
                int offB = n.embed(B);
                for (int s = 0; s < A.size(); ++s)
                    if (A.acc[s]) n.eps[s + offA].push_back(B.start + offB);
            } else {
                int J = n.add();
                int offB = n.embed(B);
                for (int s = 0; s < A.size(); ++s)
                    for (auto [a, t] : A.tr[s])
                        if (a == 0 && A.acc[t]) n.tr[s + offA].emplace_back(0, J);
                n.skip[J].push_back(B.start + offB);
            }
            return n;
        }
        case K::Mu: {
            bool had = recs.count(f.x) > 0;
            recs.insert(f.x);
            Nfa B = build(*f.a);
            if (!had) recs.erase(f.x);
            Nfa n;
            int E = n.add();
            int off = n.embed(B);
            n.start = E;
            n.eps[E].push_back(B.start + off);
            std::vector<std::pair<int, std::string>> keep;
            for (auto& [s, X] : n.refs) {
                if (X == f.x)
                    n.eps[s].push_back(E);
                else
                    keep.emplace_back(s, X);
            }
            n.refs = std::move(keep);
            return n;
        }
        case K::RecVar: {
            if (!recs.count(f.x)) throw ValidationError("unbound recursion variable " + f.x);
            Nfa n;
            n.start = n.add();
            n.refs.emplace_back(n.start, f.x);
            return n;
        }
        case K::Obs: throw NotRegular("observation quantifier");
        }
        throw NotRegular("unsupported formula");
    }

    Nfa alt(const Nfa& a, const Nfa& b) const {
        Nfa n;
        int s = n.add();
        int oa = n.embed(a), ob = n.embed(b);
        n.start = s;
        n.eps[s].push_back(a.start + oa);
        n.eps[s].push_back(b.start + ob);
        return n;
    }
};

Trace word_to_trace(const std::vector<int>& w, const Alphabet& al) {
    Trace t;
    State s;
    for (int a : w) {
        if (a == 0)
            t.emplace_back(s);
        else if (a == al.other())
            t.emplace_back(ev_file(Tag::Read, str_val("#other#")));
        else
            t.emplace_back(al.events[a - 1]);
    }
    return t;
}

struct Outcome {
    bool counter = false;
    bool exhaustive = false;
    Trace witness;
};

// Breadth-first search over (lhs state, well-formedness phase, rhs subset).
Outcome nfa_inclusion(const Nfa& A, const Nfa& B, const Alphabet& al, int bound) {
    struct Node {
        int q;
        int wf;  // 0 nothing read, 1 last read a state, 2 last read an event
        std::vector<int> set;
        int parent;
        int letter;
    };
    std::vector<Node> nodes;
    std::map<std::tuple<int, int, std::vector<int>>, int> seen;
    std::deque<std::pair<int, int>> work;  // node, depth
    auto push = [&](int q, int wf, std::vector<int> set, int parent, int letter, int depth) {
        auto key = std::make_tuple(q, wf, set);
        if (seen.count(key)) return;
        seen[key] = static_cast<int>(nodes.size());
        nodes.push_back(Node{q, wf, std::move(set), parent, letter});
        work.emplace_back(static_cast<int>(nodes.size()) - 1, depth);
    };
    push(A.start, 0, {B.start}, -1, -1, 0);
    Outcome out;
    bool truncated = false;
    while (!work.empty()) {
        auto [ni, depth] = work.front();
        work.pop_front();
        Node cur = nodes[ni];
        if (A.acc[cur.q] && cur.wf == 1) {
            bool ok = std::any_of(cur.set.begin(), cur.set.end(), [&](int s) { return B.acc[s] != 0; });
            if (!ok) {
                std::vector<int> w;
                for (int k = ni; nodes[k].parent >= 0; k = nodes[k].parent) w.push_back(nodes[k].letter);
                std::reverse(w.begin(), w.end());
                out.counter = true;
                out.witness = word_to_trace(w, al);
                return out;
            }
        }
        if (depth >= bound) {
            truncated = true;
            continue;
        }
        for (auto [a, t] : A.tr[cur.q]) {
            int wf;
            if (a == 0)
                wf = 1;
            else if (cur.wf == 1)
                wf = 2;
            else
                continue;
            std::set<int> ns;
            for (int s : cur.set)
                for (auto [b, u] : B.tr[s])
                    if (b == a) ns.insert(u);
            push(t, wf, std::vector<int>(ns.begin(), ns.end()), ni, a, depth + 1);
        }
    }
    out.exhaustive = !truncated;
    return out;
}

// Explicit enumeration over concrete traces for formulas outside the regular fragment.
struct BruteOutcome {
    bool counter = false;
    bool unknown = false;
    Trace witness;
    int effective_bound = 0;
};

BruteOutcome brute_inclusion(const FPtr& lhs, const FPtr& rhs, const Alphabet& al, const Valuation& val,
                             const std::vector<Value>& dom, int bound) {
    std::set<std::string> obs = observed_program_vars(*lhs);
    for (auto& x : observed_program_vars(*rhs)) obs.insert(x);
    std::vector<State> states{State()};
    for (auto& x : obs) {
        std::vector<State> nx;
        for (auto& s : states)
            for (auto& v : dom) nx.push_back(s.set(x, v));
        states = std::move(nx);
        if (states.size() > 27) return BruteOutcome{false, true, {}, 0};
    }
    std::vector<Event> evs = al.events;
    evs.push_back(ev_file(Tag::Read, str_val("#other#")));
    BruteOutcome out;
    out.effective_bound = std::min(bound, 9);
    std::size_t budget = 400000;
    Trace t;
    std::function<bool()> go = [&]() -> bool {
        if (budget == 0) {
            out.unknown = true;
            return true;
        }
        --budget;
        if (member(t, lhs, {}, val) && !member(t, rhs, {}, val)) {
            out.counter = true;
            out.witness = t;
            return true;
        }
        if (static_cast<int>(t.size()) >= out.effective_bound) return false;
        const State last = as_state(t.back());
        for (auto& s : states) {
            t.emplace_back(s);
            if (go()) return true;
            t.pop_back();
        }
        if (static_cast<int>(t.size()) + 2 <= out.effective_bound) {
            for (auto& e : evs) {
                t.emplace_back(e);
                t.emplace_back(last);
                if (go()) return true;
                t.pop_back();
                t.pop_back();
            }
        }
        return false;
    };
    for (auto& s : states) {
        t = singleton(s);
        if (go()) break;
    }
    return out;
}

}  // namespace

InclusionResult included(const FPtr& lhs0, const FPtr& rhs0, int bound, const InclusionOptions& opts) {
    InclusionResult res;
    // free logic variables are read universally, like symbols
    std::map<std::string, ExprPtr> fv;
    for (auto& y : free_logic_vars(*lhs0)) fv[y] = sym(y);
    for (auto& y : free_logic_vars(*rhs0)) fv[y] = sym(y);
    FPtr lhs = fv.empty() ? lhs0 : subst_vars(lhs0, fv);
    FPtr rhs = fv.empty() ? rhs0 : subst_vars(rhs0, fv);

    std::set<std::string> syms = formula_syms(*lhs);
    for (auto& c : formula_syms(*rhs)) syms.insert(c);
    std::set<Value> lits = opts.literals;
    formula_literals(*lhs, lits);
    formula_literals(*rhs, lits);
    for (auto& a : opts.assumptions) {
        collect_syms(*a, syms);
        collect_literals(*a, lits);
    }
    for (auto& [c, v] : opts.fixed) {
        syms.erase(c);
        lits.insert(v);
    }
    std::vector<Value> dom = sample_domain(lits);
    std::vector<std::string> free(syms.begin(), syms.end());

    double total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= static_cast<double>(dom.size());
    if (total > static_cast<double>(opts.max_valuations)) {
        res.note = "too many symbol valuations";
        return res;
    }

    // Valuations that agree on every pattern and predicate give the same automata.
    std::vector<EvPat> all_pats;
    collect_pats(*lhs, all_pats);
    collect_pats(*rhs, all_pats);
    std::vector<const Expr*> preds;
    collect_preds(*lhs, preds);
    collect_preds(*rhs, preds);
    const bool cacheable = !contains_obs(*lhs) && !contains_obs(*rhs);
    std::set<std::string> done;

    std::vector<std::size_t> digits(free.size(), 0);
    bool any_valuation = false;
    bool all_exhaustive = true;
    bool saw_unknown = false;
    for (;;) {
        Valuation val = opts.fixed;
        for (std::size_t k = 0; k < free.size(); ++k) val[free[k]] = dom[digits[k]];
        Ctx ctx(val);
        bool admitted = true;
        try {
            for (auto& a : opts.assumptions)
                if (!is_true(eval(*a, ctx.env))) admitted = false;
        } catch (const UnboundLogicVar&) {
            admitted = false;
        }
        if (admitted && cacheable) {
            std::string sig;
            try {
                for (auto& p : all_pats)
                    for (auto& e : ctx.events_of(p)) sig += show_event(e) + ";";
                sig += "|";
                for (auto* e : preds) sig += is_true(eval(*e, ctx.env)) ? '1' : '0';
            } catch (const Error&) {
                sig = "!" + std::to_string(res.valuations);
            }
            if (!done.insert(sig).second) {
                any_valuation = true;
                ++res.valuations;
                admitted = false;
            }
        }
        if (admitted) {
            any_valuation = true;
            ++res.valuations;
            Alphabet al;
            std::vector<EvPat> pats;
            collect_pats(*lhs, pats);
            collect_pats(*rhs, pats);
            std::set<Event> evset;
            try {
                for (auto& p : pats)
                    for (auto& e : ctx.events_of(p)) evset.insert(e);
            } catch (const UnboundLogicVar& e) {
                res.note = e.what();
                return res;
            }
            al.events.assign(evset.begin(), evset.end());
            try {
                Builder b1{al, ctx, {}}, b2{al, ctx, {}};
                Nfa A = eps_free(b1.build(*lhs));
                Nfa B = eps_free(b2.build(*rhs));
                Outcome o = nfa_inclusion(A, B, al, bound);
                if (o.counter) {
                    res.verdict = Inclusion::Counterexample;
                    res.counterexample = o.witness;
                    res.valuation = val;
                    return res;
                }
                all_exhaustive = all_exhaustive && o.exhaustive;
            } catch (const NotRegular&) {
                BruteOutcome o = brute_inclusion(lhs, rhs, al, val, dom, bound);
                if (o.counter) {
                    res.verdict = Inclusion::Counterexample;
                    res.counterexample = o.witness;
                    res.valuation = val;
                    return res;
                }
                if (o.unknown) saw_unknown = true;
                all_exhaustive = false;
                res.note = "explicit enumeration up to " + std::to_string(o.effective_bound) + " items";
            } catch (const UnboundLogicVar& e) {
                res.note = e.what();
                return res;
            } catch (const UnboundProgramVar& e) {
                res.note = e.what();
                return res;
            }
        }
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == dom.size()) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    if (saw_unknown) {
        res.verdict = Inclusion::Unknown;
        res.note = "state space too large for explicit enumeration";
        return res;
    }
    res.verdict = Inclusion::IncludedUpToBound;
    res.exhaustive = all_exhaustive;
    if (!any_valuation) res.note = "no valuation satisfies the assumptions";
    return res;
}

std::vector<Trace> sample_words(const FPtr& f, int max_len, const Valuation& val, const State& st,
                                std::size_t cap) {
    Ctx ctx(val);
    Alphabet al;
    std::vector<EvPat> pats;
    collect_pats(*f, pats);
    std::set<Event> evset;
    for (auto& p : pats)
        for (auto& e : ctx.events_of(p)) evset.insert(e);
    al.events.assign(evset.begin(), evset.end());
    Nfa A;
    try {
        Builder b{al, ctx, {}};
        A = eps_free(b.build(*f));
    } catch (const NotRegular&) {
        throw ValidationError("formula is outside the regular fragment");
    }
    std::vector<Trace> out;
    struct Item2 {
        int q, wf;
        std::vector<int> word;
    };
    std::deque<Item2> work{{A.start, 0, {}}};
    std::set<std::vector<int>> emitted;
    while (!work.empty() && out.size() < cap) {
        auto cur = std::move(work.front());
        work.pop_front();
        if (A.acc[cur.q] && cur.wf == 1 && emitted.insert(cur.word).second) {
            Trace t;
            for (int a : cur.word) {
                if (a == 0)
                    t.emplace_back(st);
                else if (a == al.other())
                    t.emplace_back(ev_file(Tag::Read, str_val("#other#")));
                else
                    t.emplace_back(al.events[a - 1]);
            }
            out.push_back(std::move(t));
        }
        if (static_cast<int>(cur.word.size()) >= max_len) continue;
        for (auto [a, to] : A.tr[cur.q]) {
            int wf = a == 0 ? 1 : (cur.wf == 1 ? 2 : -1);
            if (wf < 0) continue;
            auto w = cur.word;
            w.push_back(a);
            work.push_back({to, wf, std::move(w)});
        }
    }
    return out;
}

}  // namespace asyncat
