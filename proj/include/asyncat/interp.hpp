#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asyncat/program.hpp"
#include "asyncat/trace.hpp"

namespace asyncat {

// A continuation is a statement; nullptr is the empty continuation ∘.
using Cont = SPtr;

struct LocalStep {
    Trace trace;
    Cont rest;
};

// One local evaluation step: id is the most recent call id, cid the
// current scope id.
LocalStep eval_local(const SPtr& s, const State& sigma, std::int64_t id, std::int64_t cid);

struct Config {
    Trace trace;
    Cont k;
};

enum class Rule { Progress, Call, Run, Return };
const char* rule_name(Rule r);

struct StepOptions {
    ScheduleVariant variant = ScheduleVariant::Tree;
    // Run is not applied while the current scope has this id.
    std::optional<std::int64_t> no_run_scope;
};

struct Successor {
    Rule rule;
    Config cfg;
};

std::vector<Successor> step_global(const Config& cfg, const Program& p, const StepOptions& opts = {});

struct Bounds {
    std::size_t max_steps = 10000;   // rule applications per branch
    std::size_t max_traces = 10000;  // maximal traces per enumeration
    // Reads ASYNCAT_MAX_STEPS and ASYNCAT_MAX_TRACES when set.
    static Bounds from_env();
};

// σ_d: every declared variable bound to integer 0.
State default_state(const Program& p);
Config initial_config(const Program& p);

// All maximal traces of the program, in a deterministic order.
std::vector<Trace> enumerate_traces(const Program& p, const Bounds& b = Bounds::from_env(),
                                    ScheduleVariant v = ScheduleVariant::Tree);

// Suffixes τ' with τ,K(s) →* τ**τ',K(∘) and schedule(τ**τ') = ∅.
std::vector<Trace> eval_global(const SPtr& s, const Trace& tau, const Program& p,
                               const Bounds& b = Bounds::from_env());

// Maximal suffixes that never apply Run with the id of currScp(τ).
std::vector<Trace> eval_local_big(const SPtr& s, const Trace& tau, const Program& p,
                                  const Bounds& b = Bounds::from_env());

struct FileVerdict {
    bool ok = true;
    std::optional<std::size_t> position;  // index of the offending event
    std::string reason;
};

FileVerdict check_file_correct(const Trace& t);

}  // namespace asyncat
