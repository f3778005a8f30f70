#include "asyncat/verifier.hpp"

namespace asyncat {

const char* subtype_verdict_name(SubtypeVerdict v) {
    switch (v) {
    case SubtypeVerdict::Proved: return "proved";
    case SubtypeVerdict::Disproved: return "disproved";
    case SubtypeVerdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// Binders skolemized to x@0 before the scope and x@end after it.
struct Parts {
    FPtr pre, internal, cont;
};

Parts skolem_parts(const ContractDecl& c) {
    std::map<std::string, ExprPtr> m1, m12;
    for (auto& b : c.pre_binders) m1[b.y] = sym(b.x + "@0");
    m12 = m1;
    for (auto& b : c.post_binders) m12[b.y] = sym(b.x + "@end");
    return {f_chop(subst_vars(c.assume, m1), subst_vars(f_pred(c.q_a), m1)),
            f_chop(subst_vars(c.internal, m1), subst_vars(f_pred(c.q_c), m12)), subst_vars(c.cont, m12)};
}

}  // namespace

SubtypeResult subtype(const ContractDecl& c1, const ContractDecl& c2, int bound) {
    Parts a = skolem_parts(c1), b = skolem_parts(c2);
    struct Cond {
        const char* name;
        FPtr lhs, rhs;
    };
    const Cond conds[] = {{"L1", a.pre, b.pre}, {"L2", b.internal, a.internal}, {"L3", a.cont, b.cont}};
    SubtypeResult out;
    bool bounded = false;
    for (auto& c : conds) {
        auto r = included(c.lhs, c.rhs, bound);
        if (r.verdict == Inclusion::Counterexample) {
            out.verdict = SubtypeVerdict::Disproved;
            out.condition = c.name;
            out.counterexample = r.counterexample;
            return out;
        }
        if (r.verdict == Inclusion::Unknown) {
            out.verdict = SubtypeVerdict::Unknown;
            out.condition = c.name;
            out.note = r.note;
            return out;
        }
        bounded |= !r.exhaustive;
    }
    out.verdict = SubtypeVerdict::Proved;
    if (bounded) out.note = "bounded";
    return out;
}

std::vector<ContractDecl> max_contracts(const std::vector<ContractDecl>& n, int bound) {
    const std::size_t k = n.size();
    if (k <= 1) return n;
    std::vector<std::vector<char>> ge(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            ge[i][j] = i == j || subtype(n[i], n[j], bound).verdict == SubtypeVerdict::Proved;
    std::vector<ContractDecl> out;
    for (std::size_t j = 0; j < k; ++j) {
        bool keep = true;
        for (std::size_t i = 0; i < k && keep; ++i) {
            if (i == j || !ge[i][j]) continue;
            // strictly above, or an equivalent contract listed earlier
            if (!ge[j][i] || i < j) keep = false;
        }
        if (keep) out.push_back(n[j]);
    }
    return out;
}

}  // namespace asyncat
