#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "asyncat/expr.hpp"
#include "asyncat/trace.hpp"

namespace asyncat {

// Event shapes usable in formulas. Start covers call**push, or a bare push
// for an asynchronously activated scope.
enum class EvKind { Start, Ret, Pop, Invoc, Call, Push, Open, Close, Read, Write };

const char* evkind_name(EvKind k);
std::optional<EvKind> evkind_from_name(const std::string& s);
bool evkind_has_proc(EvKind k);
bool evkind_is_file(EvKind k);

struct EvPat {
    EvKind kind = EvKind::Ret;
    std::string proc;  // for start/pop/invoc/call/push
    ExprPtr id;        // for everything except file events
    ExprPtr file;      // for file events
};

struct Formula;
using FPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Pred, RecVar, Ev, And, Or, Concat, Chop, Mu, Obs, NoEv, Item };
    Kind kind;
    ExprPtr pred;
    std::string x;  // recursion variable, or observed program variable
    std::string y;  // logic variable bound by Obs
    EvPat ev;
    std::vector<EvPat> excl;
    FPtr a, b;
};

FPtr f_pred(ExprPtr p);
FPtr f_true();
FPtr f_false();
FPtr f_rec(std::string X);
FPtr f_ev(EvPat e);
FPtr f_and(FPtr a, FPtr b);
FPtr f_or(FPtr a, FPtr b);
FPtr f_concat(FPtr a, FPtr b);
FPtr f_chop(FPtr a, FPtr b);
FPtr f_mu(std::string X, FPtr body);
FPtr f_obs(std::string x, std::string y, FPtr body);
FPtr f_noev(std::vector<EvPat> excl = {});
FPtr f_item(std::vector<EvPat> excl = {});
FPtr f_chop_all(const std::vector<FPtr>& parts);

EvPat pat_start(std::string m, ExprPtr id);
EvPat pat_ret(ExprPtr id);
EvPat pat_pop(std::string m, ExprPtr id);
EvPat pat_invoc(std::string m, ExprPtr id);
EvPat pat_call(std::string m, ExprPtr id);
EvPat pat_push(std::string m, ExprPtr id);
EvPat pat_file(EvKind k, ExprPtr f);

std::string print_formula(const Formula& f);
bool formula_equal(const Formula& a, const Formula& b);

// Free logic variables (Var leaves not bound by an enclosing Obs).
std::set<std::string> free_logic_vars(const Formula& f);
std::set<std::string> formula_syms(const Formula& f);
std::set<std::string> observed_program_vars(const Formula& f);
void formula_literals(const Formula& f, std::set<Value>& out);
bool contains_obs(const Formula& f);

// Enforces the grammar restrictions: no recursion variable under Obs, no
// equality between two logic variables, recursion variables bound.
void validate_formula(const Formula& f);

// Substitution of expressions for free logic variables and symbols.
FPtr subst_vars(const FPtr& f, const std::map<std::string, ExprPtr>& m);
FPtr subst_syms(const FPtr& f, const std::map<std::string, ExprPtr>& m);

// Φ[ȳ\c̄]: free occurrences of ys become the symbols cs.
FPtr skolemize(const FPtr& f, const std::vector<std::string>& ys, const std::vector<std::string>& cs);

// Drops ⌐⟨true⟩-style redundancy: ⌐ ** ⟨true⟩ and ⟨true⟩ ** ⌐ become ⌐.
FPtr normalize(const FPtr& f);

using ObsEnv = std::map<std::string, std::pair<std::string, State>>;
using Valuation = std::map<std::string, Value>;

bool member(const Trace& t, const FPtr& f, const ObsEnv& o = {}, const Valuation& syms = {});

// Membership of every interval; entry [i][j] for i <= j.
std::vector<std::vector<char>> intervals(const Trace& t, const FPtr& f, const ObsEnv& o = {},
                                         const Valuation& syms = {});

std::pair<bool, bool> noev_equiv_mu(const std::vector<EvPat>& excl, const Trace& t,
                                    const Valuation& syms = {});
FPtr noev_mu_encoding(const std::vector<EvPat>& excl);

enum class Inclusion { IncludedUpToBound, Counterexample, Unknown };
const char* inclusion_name(Inclusion v);

struct InclusionOptions {
    // Boolean conditions over symbols that restrict the valuations considered.
    std::vector<ExprPtr> assumptions;
    // Values that are fixed rather than sampled.
    Valuation fixed;
    // Extra literals feeding the sample domain.
    std::set<Value> literals;
    std::size_t max_valuations = 50000;
};

struct InclusionResult {
    Inclusion verdict = Inclusion::Unknown;
    std::optional<Trace> counterexample;
    Valuation valuation;   // of the counterexample
    bool exhaustive = false;
    std::size_t valuations = 0;
    std::string note;
};

InclusionResult included(const FPtr& lhs, const FPtr& rhs, int bound,
                         const InclusionOptions& opts = {});

// Traces of ⟦f⟧ with at most max_len items under a valuation, shortest
// first. Every state is `st`; events no pattern mentions become a read of
// "#other#". Throws ValidationError for formulas outside the regular fragment.
std::vector<Trace> sample_words(const FPtr& f, int max_len, const Valuation& val, const State& st,
                                std::size_t cap);

// Sample domain derived from literals: k-1,k,k+1 per integer, strings plus
// one fresh string, both booleans.
std::vector<Value> sample_domain(const std::set<Value>& literals);

}  // namespace asyncat
