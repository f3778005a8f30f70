#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asyncat/interp.hpp"
#include "asyncat/program.hpp"

namespace asyncat {

struct Classification {
    bool context_aware = false;
    bool state_contract = false;
    bool proper_trace() const { return !state_contract; }
};

Classification classify(const ContractDecl& c);

// θ'_a ** ℧x̄1 as ȳ1.(⟨q_a⟩ ** start(m,i) ** ⟨q_a⟩ ** θ'_s **
//   ℧x̄2 as ȳ2.(⟨q_c⟩ ** pop(m,i) ** ⟨q_c⟩ ** θ'_c))
FPtr adherence_formula(const ContractDecl& c, const std::string& m, std::int64_t i);

// The free ȳ1 of θ'_a are seeded from the state at which m's scope i starts.
bool adheres_trace(const Trace& t, std::int64_t i, const ContractDecl& c, const std::string& m);

// Which clause fails: "", "pre-trace", "boundary-pred", "internal", "post-trace".
std::string failing_clause(const Trace& t, std::int64_t i, const ContractDecl& c, const std::string& m);

std::vector<std::int64_t> id_of(const std::string& m, const Trace& t);

struct AdherenceEntry {
    std::size_t trace = 0;
    std::int64_t id = 0;
    bool ok = true;
    std::string clause;
};

struct AdherenceReport {
    std::string proc;
    std::vector<AdherenceEntry> entries;
    bool ok() const;
};

AdherenceReport adheres_procedure_on(const std::vector<Trace>& traces, const std::string& m, const ContractDecl& c);
AdherenceReport adheres_procedure(const Program& p, const std::string& m, const ContractDecl& c,
                                  const Bounds& b = Bounds::from_env());

ContractDecl weak_variant(const ContractDecl& c);

struct CorrectnessReport {
    bool ok = true;
    std::vector<AdherenceReport> reports;  // one per contract
};

// Every procedure, init included, needs at least one contract; each
// contract in a procedure's set is checked.
CorrectnessReport program_correct(const Program& p, const std::vector<ContractDecl>& contracts,
                                  const Bounds& b = Bounds::from_env());

}  // namespace asyncat
