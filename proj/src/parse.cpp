#include "asyncat/parse.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "asyncat/errors.hpp"

namespace asyncat {

namespace {

struct Token {
    enum class Kind { Ident, Int, Str, Sym, Punct, End };
    Kind kind;
    std::string text;
    std::int64_t num = 0;
    int line, col;
    bool spaced;  // preceded by whitespace
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    bool spaced = true;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    static const char* multi[] = {"**", "/\\", "\\/", "==", "!=", "<=", ">=", "&&", "||"};
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            spaced = true;
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n') adv(1);
            spaced = true;
            continue;
        }
        Token t{Token::Kind::Punct, "", 0, line, col, spaced};
        spaced = false;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Token::Kind::Ident;
            t.text = s.substr(i, j - i);
            adv(j - i);
        } else if (c == '$') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '@' ||
                                    s[j] == '#'))
                ++j;
            t.kind = Token::Kind::Sym;
            t.text = s.substr(i + 1, j - i - 1);
            adv(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Token::Kind::Int;
            t.text = s.substr(i, j - i);
            try {
                t.num = std::stoll(t.text);
            } catch (...) {
                throw SyntaxError("integer literal out of range", t.line, t.col);
            }
            adv(j - i);
        } else if (c == '"') {
            std::string v;
            adv(1);
            while (i < s.size() && s[i] != '"') {
                if (s[i] == '\\' && i + 1 < s.size()) adv(1);
                v += s[i];
                adv(1);
            }
            if (i >= s.size()) throw SyntaxError("unterminated string", t.line, t.col);
            adv(1);
            t.kind = Token::Kind::Str;
            t.text = v;
        } else {
            std::string p(1, c);
            for (auto m : multi)
                if (s.compare(i, 2, m) == 0) p = m;
            if (std::string("(){}[];,=<>+-*!~.:").find(c) == std::string::npos && p.size() == 1)
                throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
            t.text = p;
            adv(p.size());
        }
        out.push_back(t);
    }
    out.push_back(Token{Token::Kind::End, "<end>", 0, line, col, true});
    return out;
}

const std::set<std::string> kStmtKeywords = {"skip", "return", "if", "open", "close", "read", "write", "true", "false"};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(const std::string& p) const {
        auto& t = peek();
        return (t.kind == Token::Kind::Punct || t.kind == Token::Kind::Ident) && t.text == p;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg + " near '" + peek().text + "'", peek().line, peek().col); }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    void expect(const std::string& p) {
        if (!at(p)) fail("expected '" + p + "'");
        next();
    }
    bool accept(const std::string& p) {
        if (!at(p)) return false;
        next();
        return true;
    }
    std::string ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected identifier");
        return next().text;
    }

    // ------------------------------------------------------------ expressions
    ExprPtr expr() { return or_expr(); }

    ExprPtr or_expr() {
        auto e = and_expr();
        while (accept("||")) e = bin(Op::Or, e, and_expr());
        return e;
    }
    ExprPtr and_expr() {
        auto e = cmp_expr();
        while (accept("&&")) e = bin(Op::And, e, cmp_expr());
        return e;
    }
    ExprPtr cmp_expr() {
        auto e = add_expr();
        static const std::pair<const char*, Op> ops[] = {{"==", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le},
                                                         {">=", Op::Ge}, {"<", Op::Lt},  {">", Op::Gt}};
        for (auto& [t, op] : ops)
            if (peek().kind == Token::Kind::Punct && peek().text == t) {
                next();
                return bin(op, e, add_expr());
            }
        return e;
    }
    ExprPtr add_expr() {
        auto e = mul_expr();
        for (;;) {
            if (accept("+"))
                e = bin(Op::Add, e, mul_expr());
            else if (accept("-"))
                e = bin(Op::Sub, e, mul_expr());
            else
                return e;
        }
    }
    ExprPtr mul_expr() {
        auto e = unary();
        while (accept("*")) e = bin(Op::Mul, e, unary());
        return e;
    }
    ExprPtr unary() {
        if (accept("!")) return not_(unary());
        if (at("-")) {
            next();
            if (peek().kind == Token::Kind::Int) return lit(int_val(-next().num));
            return bin(Op::Sub, lit(int_val(0)), unary());
        }
        return atom();
    }
    ExprPtr atom() {
        auto& t = peek();
        switch (t.kind) {
        case Token::Kind::Int: return lit(int_val(next().num));
        case Token::Kind::Str: return lit(str_val(next().text));
        case Token::Kind::Sym: return sym(next().text);
        case Token::Kind::Ident:
            if (t.text == "true") {
                next();
                return lit(bool_val(true));
            }
            if (t.text == "false") {
                next();
                return lit(bool_val(false));
            }
            return var(next().text);
        default:
            if (accept("(")) {
                auto e = expr();
                expect(")");
                return e;
            }
            fail("expected expression");
        }
    }

    // ------------------------------------------------------------ programs
    Program program() {
        Program p;
        while (peek().kind == Token::Kind::Ident && peek(1).text == "(") {
            ProcDecl d;
            d.name = ident();
            expect("(");
            expect(")");
            expect("{");
            d.body = stmts();
            expect("}");
            p.procedures.push_back(d);
        }
        expect("{");
        while (peek().kind == Token::Kind::Ident && !kStmtKeywords.count(peek().text) &&
               (peek(1).text == ";" || peek(1).text == ",")) {
            p.init_decls.push_back(ident());
            while (accept(",")) p.init_decls.push_back(ident());
            expect(";");
        }
        SPtr body = at("}") ? s_skip() : stmts();
        expect("}");
        if (!at_end()) fail("trailing input after init block");
        auto parts = flatten(body);
        if (parts.back()->kind != Stmt::Kind::Return) body = s_seq(body, s_return());
        p.init_body = body;
        return p;
    }

    SPtr stmts() {
        std::vector<SPtr> out;
        out.push_back(stmt());
        for (;;) {
            bool braced = prev_braced_;
            if (accept(";")) {
                if (at("}")) break;
                out.push_back(stmt());
            } else if (braced && !at("}")) {
                out.push_back(stmt());
            } else {
                break;
            }
        }
        return s_block(out);
    }

    SPtr stmt() {
        prev_braced_ = false;
        if (accept("skip")) return s_skip();
        if (accept("return")) return s_return();
        if (accept("if")) {
            auto e = expr();
            expect("{");
            auto body = stmts();
            expect("}");
            prev_braced_ = true;
            return s_if(e, body);
        }
        if (accept("!")) {
            auto m = ident();
            expect("(");
            expect(")");
            return s_async(m);
        }
        static const std::pair<const char*, Stmt::Kind> files[] = {
            {"open", Stmt::Kind::Open}, {"close", Stmt::Kind::Close}, {"read", Stmt::Kind::Read}, {"write", Stmt::Kind::Write}};
        for (auto& [kw, k] : files)
            if (at(kw) && peek(1).text == "(") {
                next();
                expect("(");
                auto& t = peek();
                if (!(t.kind == Token::Kind::Str || (t.kind == Token::Kind::Ident && !kStmtKeywords.count(t.text))) ||
                    peek(1).text != ")")
                    throw ValidationError("file operand must be a string literal or a variable at " +
                                          std::to_string(t.line) + ":" + std::to_string(t.col));
                auto f = atom();
                expect(")");
                return s_file(k, f);
            }
        if (peek().kind != Token::Kind::Ident || kStmtKeywords.count(peek().text)) fail("expected statement");
        auto name = ident();
        if (accept("(")) {
            expect(")");
            return s_call(name);
        }
        expect("=");
        return s_assign(name, expr());
    }

    // ------------------------------------------------------------ formulas
    bool starts_unit() const {
        auto& t = peek();
        if (t.kind == Token::Kind::Ident) return true;
        return t.kind == Token::Kind::Punct && (t.text == "[" || t.text == "~" || t.text == "(");
    }

    FPtr formula() {
        auto f = and_f();
        while (accept("\\/")) f = f_or(f, and_f());
        return f;
    }
    FPtr and_f() {
        auto f = seq_f();
        while (accept("/\\")) f = f_and(f, seq_f());
        return f;
    }
    FPtr seq_f() {
        auto f = unit_f();
        for (;;) {
            if (accept("."))
                f = f_concat(f, unit_f());
            else if (accept("**"))
                f = f_chop(f, unit_f());
            else if (starts_unit() && !at("as"))
                f = f_chop(f, unit_f());
            else
                return f;
        }
    }

    EvPat pattern() {
        auto t = peek();
        auto k = t.kind == Token::Kind::Ident ? evkind_from_name(t.text) : std::nullopt;
        if (!k) fail("expected event pattern");
        next();
        expect("(");
        EvPat p;
        p.kind = *k;
        if (evkind_is_file(*k)) {
            p.file = expr();
        } else if (evkind_has_proc(*k)) {
            p.proc = ident();
            expect(",");
            p.id = expr();
        } else {
            p.id = expr();
        }
        expect(")");
        return p;
    }

    std::vector<EvPat> exclusions() {
        std::vector<EvPat> out;
        if (at("[") && !peek().spaced && peek(1).text == "]") {
            next();
            next();
            return out;
        }
        // a bracket glued to ~ holding an event pattern is an exclusion list
        if (at("[") && !peek().spaced && peek(1).kind == Token::Kind::Ident && evkind_from_name(peek(1).text) &&
            peek(2).text == "(") {
            next();
            out.push_back(pattern());
            while (accept(",")) out.push_back(pattern());
            expect("]");
        }
        return out;
    }

    FPtr unit_f() {
        if (accept("[")) {
            auto e = expr();
            expect("]");
            return f_pred(e);
        }
        if (accept("~")) return f_noev(exclusions());
        if (accept("(")) {
            auto f = formula();
            expect(")");
            return f;
        }
        if (peek().kind != Token::Kind::Ident) fail("expected trace formula");
        const std::string w = peek().text;
        if (w == "one") {
            next();
            return f_item(exclusions());
        }
        if (w == "mu") {
            next();
            auto X = ident();
            expect(".");
            return f_mu(X, formula());
        }
        if (w == "obs") {
            next();
            auto x = ident();
            expect("as");
            auto y = ident();
            expect(".");
            return f_obs(x, y, formula());
        }
        if (evkind_from_name(w) && peek(1).text == "(") return f_ev(pattern());
        next();
        return f_rec(w);
    }

    // ------------------------------------------------------------ contracts
    std::vector<Binder> binders() {
        std::vector<Binder> out;
        if (!accept("obs")) return out;
        expect("(");
        if (!at(")")) {
            do {
                Binder b;
                b.x = ident();
                expect("as");
                b.y = ident();
                out.push_back(b);
            } while (accept(","));
        }
        expect(")");
        return out;
    }

    ExprPtr pred() {
        expect("[");
        auto e = expr();
        expect("]");
        return e;
    }

    ContractDecl contract() {
        expect("contract");
        ContractDecl c;
        c.proc = ident();
        c.assume = c.internal = c.cont = f_noev();
        c.q_a = c.q_c = lit(bool_val(true));
        expect("{");
        std::set<std::string> seen;
        while (!at("}")) {
            auto key = ident();
            if (!seen.insert(key).second) fail("section " + key + " given twice");
            expect(":");
            if (key == "assume")
                c.assume = formula();
            else if (key == "internal")
                c.internal = formula();
            else if (key == "continue")
                c.cont = formula();
            else if (key == "pre") {
                c.q_a = pred();
                c.pre_binders = binders();
            } else if (key == "post") {
                c.q_c = pred();
                c.post_binders = binders();
            } else
                fail("unknown contract section " + key);
            expect(";");
        }
        expect("}");
        validate_contract(c);
        return c;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool prev_braced_ = false;
};

}  // namespace

Program parse_program(const std::string& text) {
    Parser p(text);
    Program prog = p.program();
    validate_program(prog);
    return prog;
}

ContractDecl parse_contract(const std::string& text) {
    Parser p(text);
    auto c = p.contract();
    if (!p.at_end()) p.fail("trailing input after contract");
    return c;
}

std::vector<ContractDecl> parse_contracts(const std::string& text) {
    Parser p(text);
    std::vector<ContractDecl> out;
    while (!p.at_end()) out.push_back(p.contract());
    return out;
}

FPtr parse_formula(const std::string& text) {
    Parser p(text);
    auto f = p.formula();
    if (!p.at_end()) p.fail("trailing input after formula");
    validate_formula(*f);
    return f;
}

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    auto e = p.expr();
    if (!p.at_end()) p.fail("trailing input after expression");
    return e;
}

// ---------------------------------------------------------------- printing

static std::string print_list(const std::vector<SPtr>& parts, bool drop_final_return) {
    std::string out;
    std::size_t n = parts.size();
    if (drop_final_return && n > 1 && parts.back()->kind == Stmt::Kind::Return) --n;
    for (std::size_t k = 0; k < n; ++k) {
        if (k) out += "; ";
        out += print_stmt(parts[k]);
    }
    return out;
}

std::string print_stmt(const SPtr& s) {
    using K = Stmt::Kind;
    switch (s->kind) {
    case K::Skip: return "skip";
    case K::Return: return "return";
    case K::Assign: return s->name + " = " + print_expr(*s->e);
    case K::SyncCall: return s->name + "()";
    case K::AsyncCall: return "!" + s->name + "()";
    case K::If: return "if (" + print_expr(*s->e) + ") { " + print_list(flatten(s->a), false) + " }";
    case K::Seq: return print_list(flatten(s), false);
    case K::Open: return "open(" + print_expr(*s->e) + ")";
    case K::Close: return "close(" + print_expr(*s->e) + ")";
    case K::Read: return "read(" + print_expr(*s->e) + ")";
    case K::Write: return "write(" + print_expr(*s->e) + ")";
    }
    return "?";
}

std::string print_program(const Program& p) {
    std::string out;
    for (auto& d : p.procedures) out += d.name + "() { " + print_list(flatten(d.body), false) + " }\n";
    out += "{ ";
    for (auto& x : p.init_decls) out += x + "; ";
    auto parts = flatten(p.init_body);
    if (parts.size() == 1 && parts[0]->kind == Stmt::Kind::Return)
        out += "skip";
    else
        out += print_list(parts, true);
    return out + " }\n";
}

static std::string print_binders(const std::vector<Binder>& bs) {
    if (bs.empty()) return "";
    std::string out = " obs(";
    for (std::size_t k = 0; k < bs.size(); ++k) {
        if (k) out += ", ";
        out += bs[k].x + " as " + bs[k].y;
    }
    return out + ")";
}

std::string print_contract(const ContractDecl& c) {
    std::ostringstream os;
    os << "contract " << c.proc << " {\n"
       << "  assume: " << print_formula(*c.assume) << ";\n"
       << "  pre: [" << print_expr(*c.q_a) << "]" << print_binders(c.pre_binders) << ";\n"
       << "  internal: " << print_formula(*c.internal) << ";\n"
       << "  post: [" << print_expr(*c.q_c) << "]" << print_binders(c.post_binders) << ";\n"
       << "  continue: " << print_formula(*c.cont) << ";\n"
       << "}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace asyncat
