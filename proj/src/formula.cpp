#include "asyncat/formula.hpp"

#include <functional>

#include "asyncat/errors.hpp"

namespace asyncat {

const char* evkind_name(EvKind k) {
    switch (k) {
    case EvKind::Start: return "start";
    case EvKind::Ret: return "ret";
    case EvKind::Pop: return "pop";
    case EvKind::Invoc: return "invoc";
    case EvKind::Call: return "call";
    case EvKind::Push: return "push";
    case EvKind::Open: return "open";
    case EvKind::Close: return "close";
    case EvKind::Read: return "read";
    case EvKind::Write: return "write";
    }
    return "?";
}

std::optional<EvKind> evkind_from_name(const std::string& s) {
    for (EvKind k : {EvKind::Start, EvKind::Ret, EvKind::Pop, EvKind::Invoc, EvKind::Call, EvKind::Push,
                     EvKind::Open, EvKind::Close, EvKind::Read, EvKind::Write})
        if (s == evkind_name(k)) return k;
    return std::nullopt;
}

bool evkind_has_proc(EvKind k) {
    return k == EvKind::Start || k == EvKind::Pop || k == EvKind::Invoc || k == EvKind::Call ||
           k == EvKind::Push;
}

bool evkind_is_file(EvKind k) {
    return k == EvKind::Open || k == EvKind::Close || k == EvKind::Read || k == EvKind::Write;
}

namespace {

std::shared_ptr<Formula> mk(Formula::Kind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

}  // namespace

FPtr f_pred(ExprPtr p) {
    auto f = mk(Formula::Kind::Pred);
    f->pred = std::move(p);
    return f;
}
FPtr f_true() { return f_pred(lit(bool_val(true))); }
FPtr f_false() { return f_pred(lit(bool_val(false))); }
FPtr f_rec(std::string X) {
    auto f = mk(Formula::Kind::RecVar);
    f->x = std::move(X);
    return f;
}
FPtr f_ev(EvPat e) {
    auto f = mk(Formula::Kind::Ev);
    f->ev = std::move(e);
    return f;
}

static FPtr mk2(Formula::Kind k, FPtr a, FPtr b) {
    auto f = mk(k);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FPtr f_and(FPtr a, FPtr b) { return mk2(Formula::Kind::And, std::move(a), std::move(b)); }
FPtr f_or(FPtr a, FPtr b) { return mk2(Formula::Kind::Or, std::move(a), std::move(b)); }
FPtr f_concat(FPtr a, FPtr b) { return mk2(Formula::Kind::Concat, std::move(a), std::move(b)); }
FPtr f_chop(FPtr a, FPtr b) { return mk2(Formula::Kind::Chop, std::move(a), std::move(b)); }

FPtr f_mu(std::string X, FPtr body) {
    auto f = mk(Formula::Kind::Mu);
    f->x = std::move(X);
    f->a = std::move(body);
    return f;
}

FPtr f_obs(std::string x, std::string y, FPtr body) {
    auto f = mk(Formula::Kind::Obs);
    f->x = std::move(x);
    f->y = std::move(y);
    f->a = std::move(body);
    return f;
}

FPtr f_noev(std::vector<EvPat> excl) {
    auto f = mk(Formula::Kind::NoEv);
    f->excl = std::move(excl);
    return f;
}

FPtr f_item(std::vector<EvPat> excl) {
    auto f = mk(Formula::Kind::Item);
    f->excl = std::move(excl);
    return f;
}

FPtr f_chop_all(const std::vector<FPtr>& parts) {
    if (parts.empty()) return f_noev();
    FPtr out = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) out = f_chop(out, parts[k]);
    return out;
}

EvPat pat_start(std::string m, ExprPtr id) { return EvPat{EvKind::Start, std::move(m), std::move(id), nullptr}; }
EvPat pat_ret(ExprPtr id) { return EvPat{EvKind::Ret, "", std::move(id), nullptr}; }
EvPat pat_pop(std::string m, ExprPtr id) { return EvPat{EvKind::Pop, std::move(m), std::move(id), nullptr}; }
EvPat pat_invoc(std::string m, ExprPtr id) { return EvPat{EvKind::Invoc, std::move(m), std::move(id), nullptr}; }
EvPat pat_call(std::string m, ExprPtr id) { return EvPat{EvKind::Call, std::move(m), std::move(id), nullptr}; }
EvPat pat_push(std::string m, ExprPtr id) { return EvPat{EvKind::Push, std::move(m), std::move(id), nullptr}; }
EvPat pat_file(EvKind k, ExprPtr f) { return EvPat{k, "", nullptr, std::move(f)}; }

// ---------------------------------------------------------------- printing

static std::string print_pat(const EvPat& p) {
    std::string out = evkind_name(p.kind);
    if (evkind_is_file(p.kind)) return out + "(" + print_expr(*p.file) + ")";
    if (evkind_has_proc(p.kind)) return out + "(" + p.proc + ", " + print_expr(*p.id) + ")";
    return out + "(" + print_expr(*p.id) + ")";
}

static std::string print_excl(const char* head, const std::vector<EvPat>& ex) {
    std::string out = head;
    if (ex.empty()) return out;
    out += "[";
    for (std::size_t k = 0; k < ex.size(); ++k) {
        if (k) out += ", ";
        out += print_pat(ex[k]);
    }
    return out + "]";
}

static void print_chain(const Formula& f, Formula::Kind k, const char* op, std::string& out) {
    if (f.a->kind == k)
        print_chain(*f.a, k, op, out);
    else
        out += print_formula(*f.a);
    out += op;
    out += print_formula(*f.b);
}

std::string print_formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::Pred: return "[" + print_expr(*f.pred) + "]";
    case K::RecVar: return f.x;
    case K::Ev: return print_pat(f.ev);
    case K::NoEv: return print_excl("~", f.excl);
    case K::Item: return print_excl("one", f.excl);
    case K::Mu: return "(mu " + f.x + " . " + print_formula(*f.a) + ")";
    case K::Obs: return "(obs " + f.x + " as " + f.y + " . " + print_formula(*f.a) + ")";
    case K::And:
    case K::Or:
    case K::Concat:
    case K::Chop: {
        const char* op = f.kind == K::And ? " /\\ " : f.kind == K::Or ? " \\/ " : f.kind == K::Concat ? " . " : " ** ";
        std::string out = "(";
        print_chain(f, f.kind, op, out);
        return out + ")";
    }
    }
    return "?";
}

static bool opt_expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return expr_equal(*a, *b);
}

static bool pat_equal(const EvPat& a, const EvPat& b) {
    return a.kind == b.kind && a.proc == b.proc && opt_expr_equal(a.id, b.id) && opt_expr_equal(a.file, b.file);
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    using K = Formula::Kind;
    switch (a.kind) {
    case K::Pred: return expr_equal(*a.pred, *b.pred);
    case K::RecVar: return a.x == b.x;
    case K::Ev: return pat_equal(a.ev, b.ev);
    case K::NoEv:
    case K::Item:
        if (a.excl.size() != b.excl.size()) return false;
        for (std::size_t k = 0; k < a.excl.size(); ++k)
            if (!pat_equal(a.excl[k], b.excl[k])) return false;
        return true;
    case K::Mu: return a.x == b.x && formula_equal(*a.a, *b.a);
    case K::Obs: return a.x == b.x && a.y == b.y && formula_equal(*a.a, *b.a);
    default: return formula_equal(*a.a, *b.a) && formula_equal(*a.b, *b.b);
    }
}

// ---------------------------------------------------------------- traversal

static void pat_exprs(const EvPat& p, const std::function<void(const Expr&)>& f) {
    if (p.id) f(*p.id);
    if (p.file) f(*p.file);
}

static void each_expr(const Formula& f, const std::function<void(const Expr&)>& fn) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::Pred: fn(*f.pred); break;
    case K::Ev: pat_exprs(f.ev, fn); break;
    case K::NoEv:
    case K::Item:
        for (auto& p : f.excl) pat_exprs(p, fn);
        break;
    case K::RecVar: break;
    default:
        if (f.a) each_expr(*f.a, fn);
        if (f.b) each_expr(*f.b, fn);
    }
}

static void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    using K = Formula::Kind;
    auto add = [&](const Expr& e) {
        std::set<std::string> vs;
        collect_vars(e, vs);
        for (auto& v : vs)
            if (!bound.count(v)) out.insert(v);
    };
    switch (f.kind) {
    case K::Pred: add(*f.pred); break;
    case K::Ev: pat_exprs(f.ev, add); break;
    case K::NoEv:
    case K::Item:
        for (auto& p : f.excl) pat_exprs(p, add);
        break;
    case K::RecVar: break;
    case K::Obs: {
        bool had = bound.count(f.y) > 0;
        bound.insert(f.y);
        free_vars_rec(*f.a, bound, out);
        if (!had) bound.erase(f.y);
        break;
    }
    default:
        if (f.a) free_vars_rec(*f.a, bound, out);
        if (f.b) free_vars_rec(*f.b, bound, out);
    }
}

std::set<std::string> free_logic_vars(const Formula& f) {
    std::set<std::string> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

std::set<std::string> formula_syms(const Formula& f) {
    std::set<std::string> out;
    each_expr(f, [&](const Expr& e) { collect_syms(e, out); });
    return out;
}

std::set<std::string> observed_program_vars(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (g.kind == Formula::Kind::Obs) out.insert(g.x);
        if (g.a) go(*g.a);
        if (g.b) go(*g.b);
    };
    go(f);
    return out;
}

void formula_literals(const Formula& f, std::set<Value>& out) {
    each_expr(f, [&](const Expr& e) { collect_literals(e, out); });
}

bool contains_obs(const Formula& f) {
    if (f.kind == Formula::Kind::Obs) return true;
    return (f.a && contains_obs(*f.a)) || (f.b && contains_obs(*f.b));
}

static void validate_rec(const Formula& f, std::set<std::string>& recs, bool under_obs) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::RecVar:
        if (under_obs) throw ValidationError("recursion variable " + f.x + " occurs under an observation quantifier");
        if (!recs.count(f.x)) throw ValidationError("unbound recursion variable " + f.x);
        break;
    case K::Pred: {
        std::function<void(const Expr&)> chk = [&](const Expr& e) {
            if (e.kind == Expr::Kind::Bin && (e.op == Op::Eq || e.op == Op::Ne)) {
                std::set<std::string> l, r;
                collect_vars(*e.lhs, l);
                collect_vars(*e.rhs, r);
                if (!l.empty() && !r.empty())
                    throw ValidationError("equality between logic variables is not part of the logic: " + print_expr(e));
            }
            if (e.lhs) chk(*e.lhs);
            if (e.rhs) chk(*e.rhs);
        };
        chk(*f.pred);
        break;
    }
    case K::Mu: {
        bool had = recs.count(f.x) > 0;
        recs.insert(f.x);
        validate_rec(*f.a, recs, under_obs);
        if (!had) recs.erase(f.x);
        break;
    }
    case K::Obs: validate_rec(*f.a, recs, true); break;
    default:
        if (f.a) validate_rec(*f.a, recs, under_obs);
        if (f.b) validate_rec(*f.b, recs, under_obs);
    }
}

void validate_formula(const Formula& f) {
    std::set<std::string> recs;
    validate_rec(f, recs, false);
}

// ---------------------------------------------------------------- substitution

static EvPat map_pat(const EvPat& p, const std::function<ExprPtr(const ExprPtr&)>& g) {
    EvPat q = p;
    if (q.id) q.id = g(q.id);
    if (q.file) q.file = g(q.file);
    return q;
}

// Rewrites expressions; `shadow` lists logic variables bound on the path.
static FPtr map_exprs(const FPtr& f, const std::function<ExprPtr(const ExprPtr&, const std::set<std::string>&)>& g,
                      std::set<std::string>& shadow) {
    using K = Formula::Kind;
    auto h = [&](const ExprPtr& e) { return g(e, shadow); };
    switch (f->kind) {
    case K::Pred: return f_pred(h(f->pred));
    case K::Ev: return f_ev(map_pat(f->ev, h));
    case K::NoEv:
    case K::Item: {
        std::vector<EvPat> ex;
        for (auto& p : f->excl) ex.push_back(map_pat(p, h));
        return f->kind == K::NoEv ? f_noev(ex) : f_item(ex);
    }
    case K::RecVar: return f;
    case K::Mu: return f_mu(f->x, map_exprs(f->a, g, shadow));
    case K::Obs: {
        bool had = shadow.count(f->y) > 0;
        shadow.insert(f->y);
        auto body = map_exprs(f->a, g, shadow);
        if (!had) shadow.erase(f->y);
        return f_obs(f->x, f->y, body);
    }
    default: {
        auto a = map_exprs(f->a, g, shadow);
        auto b = map_exprs(f->b, g, shadow);
        return mk2(f->kind, a, b);
    }
    }
}

FPtr subst_vars(const FPtr& f, const std::map<std::string, ExprPtr>& m) {
    std::set<std::string> shadow;
    return map_exprs(
        f,
        [&](const ExprPtr& e, const std::set<std::string>& sh) {
            return fold(rewrite(e, [&](const Expr& leaf) -> ExprPtr {
                if (leaf.kind != Expr::Kind::Var || sh.count(leaf.name)) return nullptr;
                auto it = m.find(leaf.name);
                return it == m.end() ? nullptr : it->second;
            }));
        },
        shadow);
}

FPtr subst_syms(const FPtr& f, const std::map<std::string, ExprPtr>& m) {
    std::set<std::string> shadow;
    return map_exprs(
        f,
        [&](const ExprPtr& e, const std::set<std::string>&) {
            return fold(rewrite(e, [&](const Expr& leaf) -> ExprPtr {
                if (leaf.kind != Expr::Kind::Sym) return nullptr;
                auto it = m.find(leaf.name);
                return it == m.end() ? nullptr : it->second;
            }));
        },
        shadow);
}

FPtr skolemize(const FPtr& f, const std::vector<std::string>& ys, const std::vector<std::string>& cs) {
    if (ys.size() != cs.size()) throw Error("skolemize: binder and constant lists differ in length");
    auto used = formula_syms(*f);
    std::map<std::string, ExprPtr> m;
    for (std::size_t k = 0; k < ys.size(); ++k) {
        if (used.count(cs[k])) throw Error("skolem constant " + cs[k] + " is not fresh");
        m[ys[k]] = sym(cs[k]);
    }
    return subst_vars(f, m);
}

static bool is_trivial_noev(const Formula& f) { return f.kind == Formula::Kind::NoEv && f.excl.empty(); }

static bool is_true_pred(const Formula& f) {
    return f.kind == Formula::Kind::Pred && f.pred->kind == Expr::Kind::Lit && is_true(f.pred->lit);
}

FPtr normalize(const FPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::Chop: {
        auto a = normalize(f->a);
        auto b = normalize(f->b);
        // ⌐ ** ⟨true⟩ = ⌐ over well-formed traces, and symmetrically
        if (is_trivial_noev(*a) && is_true_pred(*b)) return a;
        if (is_true_pred(*a) && is_trivial_noev(*b)) return b;
        if (is_true_pred(*a) && is_true_pred(*b)) return a;
        if (is_trivial_noev(*a) && is_trivial_noev(*b)) return a;
        return f_chop(a, b);
    }
    case K::And:
    case K::Or:
    case K::Concat: return mk2(f->kind, normalize(f->a), normalize(f->b));
    case K::Mu: return f_mu(f->x, normalize(f->a));
    case K::Obs: return f_obs(f->x, f->y, normalize(f->a));
    default: return f;
    }
}

// ---------------------------------------------------------------- membership

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : n_(n), w_((n + 63) / 64), d_(n * w_, 0) {}
    void set(std::size_t i, std::size_t j) { d_[i * w_ + j / 64] |= (1ull << (j % 64)); }
    bool get(std::size_t i, std::size_t j) const { return (d_[i * w_ + j / 64] >> (j % 64)) & 1ull; }
    void or_row(std::size_t dst, const Bits& src, std::size_t srow) {
        for (std::size_t k = 0; k < w_; ++k) d_[dst * w_ + k] |= src.d_[srow * w_ + k];
    }
    void and_with(const Bits& o) {
        for (std::size_t k = 0; k < d_.size(); ++k) d_[k] &= o.d_[k];
    }
    void or_with(const Bits& o) {
        for (std::size_t k = 0; k < d_.size(); ++k) d_[k] |= o.d_[k];
    }
    void copy_row(std::size_t row, const Bits& src) {
        for (std::size_t k = 0; k < w_; ++k) d_[row * w_ + k] = src.d_[row * w_ + k];
    }
    bool operator==(const Bits& o) const { return d_ == o.d_; }
    std::size_t n() const { return n_; }

private:
    std::size_t n_, w_;
    std::vector<std::uint64_t> d_;
};

struct Evaluator {
    const Trace& t;
    const Valuation& syms;
    std::size_t n;

    EvalEnv env(const ObsEnv& o) const {
        EvalEnv e;
        e.vars = [&o](const std::string& y) -> std::optional<Value> {
            auto it = o.find(y);
            if (it == o.end()) return std::nullopt;
            auto v = it->second.second.get(it->second.first);
            if (!v) throw UnboundProgramVar(it->second.first);
            return v;
        };
        e.syms = [this](const std::string& c) -> std::optional<Value> {
            auto it = syms.find(c);
            if (it == syms.end()) return std::nullopt;
            return it->second;
        };
        return e;
    }

    std::optional<std::int64_t> id_of(const EvPat& p, const ObsEnv& o) const {
        Value v = eval(*p.id, env(o));
        if (v.index() != 0) return std::nullopt;
        return std::get<0>(v);
    }

    // Concrete event an atomic pattern stands for; Start yields the push part.
    bool pat_matches(const EvPat& p, const Event& e, const ObsEnv& o, bool start_call_part) const {
        Tag want;
        switch (p.kind) {
        case EvKind::Start: want = start_call_part ? Tag::Call : Tag::Push; break;
        case EvKind::Ret: want = Tag::Ret; break;
        case EvKind::Pop: want = Tag::Pop; break;
        case EvKind::Invoc: want = Tag::Invoc; break;
        case EvKind::Call: want = Tag::Call; break;
        case EvKind::Push: want = Tag::Push; break;
        case EvKind::Open: want = Tag::Open; break;
        case EvKind::Close: want = Tag::Close; break;
        case EvKind::Read: want = Tag::Read; break;
        default: want = Tag::Write; break;
        }
        if (e.tag != want) return false;
        if (evkind_is_file(p.kind)) return eval(*p.file, env(o)) == e.file;
        if (evkind_has_proc(p.kind) && p.proc != e.name) return false;
        auto id = id_of(p, o);
        return id && *id == e.id;
    }

    bool excluded(const std::vector<EvPat>& ex, const Event& e, const ObsEnv& o) const {
        for (auto& p : ex) {
            if (pat_matches(p, e, o, false)) return true;
            if (p.kind == EvKind::Start && pat_matches(p, e, o, true)) return true;
        }
        return false;
    }

    bool triple_at(std::size_t k, const EvPat& p, const ObsEnv& o, bool call_part) const {
        if (k + 2 >= n || !is_state(t[k]) || is_state(t[k + 1]) || !is_state(t[k + 2])) return false;
        if (as_state(t[k]) != as_state(t[k + 2])) return false;
        return pat_matches(p, as_event(t[k + 1]), o, call_part);
    }

    Bits run(const Formula& f, const ObsEnv& o, std::map<std::string, Bits>& rho) {
        using K = Formula::Kind;
        Bits r(n);
        switch (f.kind) {
        case K::Pred: {
            if (is_true(eval(*f.pred, env(o))))
                for (std::size_t i = 0; i < n; ++i)
                    if (is_state(t[i])) r.set(i, i);
            break;
        }
        case K::RecVar: {
            auto it = rho.find(f.x);
            if (it == rho.end()) throw ValidationError("unbound recursion variable " + f.x);
            return it->second;
        }
        case K::Ev: {
            for (std::size_t k = 0; k < n; ++k) {
                if (f.ev.kind == EvKind::Start) {
                    if (triple_at(k, f.ev, o, false)) r.set(k, k + 2);
                    if (triple_at(k, f.ev, o, true) && triple_at(k + 2, f.ev, o, false)) r.set(k, k + 4);
                } else if (triple_at(k, f.ev, o, false)) {
                    r.set(k, k + 2);
                }
            }
            break;
        }
        case K::NoEv: {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    if (!is_state(t[j]) && excluded(f.excl, as_event(t[j]), o)) break;
                    r.set(i, j);
                }
            break;
        }
        case K::Item: {
            for (std::size_t i = 0; i < n; ++i)
                if (is_state(t[i]) || !excluded(f.excl, as_event(t[i]), o)) r.set(i, i);
            break;
        }
        case K::And: {
            r = run(*f.a, o, rho);
            r.and_with(run(*f.b, o, rho));
            break;
        }
        case K::Or: {
            r = run(*f.a, o, rho);
            r.or_with(run(*f.b, o, rho));
            break;
        }
        case K::Concat:
        case K::Chop: {
            Bits A = run(*f.a, o, rho);
            Bits B = run(*f.b, o, rho);
            bool chop = f.kind == K::Chop;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = i; k < n; ++k) {
                    if (!A.get(i, k)) continue;
                    if (chop) {
                        if (is_state(t[k])) r.or_row(i, B, k);
                    } else if (k + 1 < n) {
                        r.or_row(i, B, k + 1);
                    }
                }
            break;
        }
        case K::Mu: {
            auto saved = rho.find(f.x) != rho.end() ? std::optional<Bits>(rho.at(f.x)) : std::nullopt;
            Bits cur(n);
            for (;;) {
                rho[f.x] = cur;
                Bits nxt = run(*f.a, o, rho);
                if (nxt == cur) break;
                cur = std::move(nxt);
            }
            if (saved)
                rho[f.x] = *saved;
            else
                rho.erase(f.x);
            return cur;
        }
        case K::Obs: {
            std::map<std::optional<Value>, Bits> memo;
            for (std::size_t i = 0; i < n; ++i) {
                if (!is_state(t[i])) continue;
                const State& s = as_state(t[i]);
                auto key = s.get(f.x);
                auto it = memo.find(key);
                if (it == memo.end()) {
                    ObsEnv o2 = o;
                    o2[f.y] = {f.x, s};
                    it = memo.emplace(key, run(*f.a, o2, rho)).first;
                }
                r.copy_row(i, it->second);
            }
            break;
        }
        }
        return r;
    }
};

}  // namespace

std::vector<std::vector<char>> intervals(const Trace& t, const FPtr& f, const ObsEnv& o, const Valuation& syms) {
    Evaluator ev{t, syms, t.size()};
    std::map<std::string, Bits> rho;
    Bits b = ev.run(*f, o, rho);
    std::vector<std::vector<char>> out(t.size(), std::vector<char>(t.size(), 0));
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i; j < t.size(); ++j) out[i][j] = b.get(i, j);
    return out;
}

bool member(const Trace& t, const FPtr& f, const ObsEnv& o, const Valuation& syms) {
    if (t.empty()) return false;
    Evaluator ev{t, syms, t.size()};
    std::map<std::string, Bits> rho;
    return ev.run(*f, o, rho).get(0, t.size() - 1);
}

FPtr noev_mu_encoding(const std::vector<EvPat>& excl) {
    auto N = f_item(excl);
    return f_mu("X", f_or(N, f_concat(N, f_rec("X"))));
}

std::pair<bool, bool> noev_equiv_mu(const std::vector<EvPat>& excl, const Trace& t, const Valuation& syms) {
    return {member(t, f_noev(excl), {}, syms), member(t, noev_mu_encoding(excl), {}, syms)};
}

const char* inclusion_name(Inclusion v) {
    switch (v) {
    case Inclusion::IncludedUpToBound: return "IncludedUpToBound";
    case Inclusion::Counterexample: return "Counterexample";
    case Inclusion::Unknown: return "Unknown";
    }
    return "?";
}

}  // namespace asyncat
