#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asyncat/formula.hpp"
#include "asyncat/program.hpp"
#include "asyncat/update.hpp"

namespace asyncat {

enum class Discharge { Abstract, Concrete };

struct VerifyOptions {
    Discharge mode = Discharge::Abstract;
    int bound = 64;      // items explored by bounded inclusion
    int havoc_len = 12;  // items of the havoc prefix in concrete mode
    std::size_t havoc_words = 64;
    Bounds bounds = Bounds::from_env();
    // Explicit Φ ** θ ** Ψ split per callee: θ is the segment [first, second)
    // of the target's top-level chop chain and Φ everything before it.
    std::map<std::string, std::pair<std::size_t, std::size_t>> split;
};

struct ProofNode {
    enum class Status { Inner, Closed, Open };
    std::string rule;
    std::string conclusion;
    std::vector<std::string> antecedent;  // judgments added at this node
    std::vector<ProofNode> premises;
    Status status = Status::Inner;
    std::string evidence;
    bool bounded = false;  // closed by bounded inclusion

    bool accepted() const;
    std::vector<const ProofNode*> open_leaves() const;
    std::size_t size() const;
    // Rule names along the last premise of every node.
    std::vector<std::string> spine() const;
};

std::string render_proof(const ProofNode& n);
std::string proof_json(const ProofNode& n);

// Fixed id of the scope under verification.
std::int64_t scope_id(const std::string& m);

// Γ ⊢ m : C for every contract C of m in the set.
ProofNode verify_contract(const Program& p, const std::vector<ContractDecl>& contracts, const ContractDecl& c,
                          const VerifyOptions& o = {});
std::vector<ProofNode> verify_procedure(const Program& p, const std::vector<ContractDecl>& contracts,
                                        const std::string& m, const VerifyOptions& o = {});

struct LocalResult {
    bool closed = false;
    bool bounded = false;
    std::string evidence;
};

// Local judgment U : Φ under path conditions. U must start with a havoc
// element followed by start(m, oId) (or be the init prefix).
struct LocalQuery {
    const Program* program = nullptr;
    std::string proc;
    std::int64_t oid = 0;
    FPtr pre;  // θ_pre the havoc prefix satisfies
    Update u;
    std::vector<ExprPtr> path;
    FPtr target;
    std::map<std::string, ExprPtr> end_values;  // x@end in abstract mode
};

LocalResult discharge_local(const LocalQuery& q, const VerifyOptions& o);

// T(U): the trace formula an update stands for.
FPtr translate_update(const LocalQuery& q);

// Behavioral subtyping C1 ⪰ C2.
enum class SubtypeVerdict { Proved, Disproved, Unknown };
const char* subtype_verdict_name(SubtypeVerdict v);

struct SubtypeResult {
    SubtypeVerdict verdict = SubtypeVerdict::Unknown;
    std::string condition;  // L1, L2 or L3 when not proved
    std::optional<Trace> counterexample;
    std::string note;
};

SubtypeResult subtype(const ContractDecl& c1, const ContractDecl& c2, int bound = 24);
std::vector<ContractDecl> max_contracts(const std::vector<ContractDecl>& n, int bound = 24);

}  // namespace asyncat
