// asyncat command line: parse, run, calltree, check-member, adhere, verify,
// subtype, max-contracts.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "asyncat/contracts.hpp"
#include "asyncat/errors.hpp"
#include "asyncat/interp.hpp"
#include "asyncat/json_io.hpp"
#include "asyncat/parse.hpp"
#include "asyncat/verifier.hpp"

using namespace asyncat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUnproved = 2, kError = 3 };

struct Globals {
    std::size_t max_steps = 0, max_traces = 0;
    int bound = 64;
    bool json = false;

    Bounds bounds() const {
        Bounds b = Bounds::from_env();
        if (max_steps) b.max_steps = max_steps;
        if (max_traces) b.max_traces = max_traces;
        return b;
    }
};

Value parse_value(const std::string& s) {
    if (s == "true") return bool_val(true);
    if (s == "false") return bool_val(false);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return str_val(s.substr(1, s.size() - 2));
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return int_val(v);
    } catch (const std::exception&) {
    }
    return str_val(s);
}

json scope_json(const Scope& s) { return {{"name", s.name}, {"id", s.id}}; }

int cmd_parse(const std::string& program, const std::string& contracts, const std::string& formula) {
    if (!program.empty()) std::cout << print_program(parse_program(read_file(program))) << "\n";
    if (!contracts.empty())
        for (auto& c : parse_contracts(read_file(contracts))) std::cout << print_contract(c) << "\n";
    if (!formula.empty()) std::cout << print_formula(*parse_formula(formula)) << "\n";
    return kOk;
}

int cmd_run(const Globals& g, const std::string& program, bool dump) {
    auto p = parse_program(read_file(program));
    auto traces = enumerate_traces(p, g.bounds());
    json out;
    out["count"] = traces.size();
    out["traces"] = json::array();
    bool ok = true;
    for (auto& t : traces) {
        auto v = check_file_correct(t);
        ok &= v.ok;
        json j;
        j["digest"] = digest(t);
        j["file_correct"] = v.ok;
        if (!v.ok) {
            j["position"] = *v.position;
            j["reason"] = v.reason;
        }
        if (dump) j["trace"] = json::parse(trace_to_json(t));
        out["traces"].push_back(j);
    }
    if (g.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << traces.size() << " maximal trace(s)\n";
        for (std::size_t k = 0; k < traces.size(); ++k) {
            auto& j = out["traces"][k];
            std::cout << "#" << k << " " << j["digest"].get<std::string>() << " "
                      << (j["file_correct"].get<bool>() ? "file-correct" : "VIOLATION: " + j["reason"].get<std::string>())
                      << "\n";
            if (dump) std::cout << "  " << show_trace(traces[k]) << "\n";
        }
    }
    return ok ? kOk : kViolation;
}

int cmd_calltree(const Globals& g, const std::string& program, std::size_t index, std::size_t prefix,
                 const std::string& until) {
    auto p = parse_program(read_file(program));
    auto traces = enumerate_traces(p, g.bounds());
    if (index >= traces.size()) throw ValidationError("trace index out of range");
    const Trace& t = traces[index];
    std::size_t len = prefix;
    if (!until.empty()) {
        len = 0;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (!is_state(t[k]) && show_event(as_event(t[k])) == until) {
                len = k + 2;
                break;
            }
        if (len == 0) throw ValidationError("event " + until + " not in trace #" + std::to_string(index));
    }
    if (len == 0 || len > t.size()) throw ValidationError("prefix length must be in 1.." + std::to_string(t.size()));
    Trace pre(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
    if (!is_state(pre.back())) throw ValidationError("prefix must end in a state");
    auto tree = call_tree(pre);
    std::set<Scope> sched;
    if (try_curr_scope(pre)) sched = schedule(pre);
    json out;
    out["vertices"] = json::array();
    for (auto& v : tree.vertices) out["vertices"].push_back(scope_json(v));
    out["edges"] = json::array();
    for (auto& [a, b] : tree.edges) out["edges"].push_back({scope_json(a), scope_json(b)});
    out["idle"] = json::array();
    for (auto& v : tree.idle) out["idle"].push_back(scope_json(v));
    out["schedule"] = json::array();
    for (auto& v : sched) out["schedule"].push_back(scope_json(v));
    if (g.json) {
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "prefix: " << show_trace(pre) << "\nV:";
    for (auto& v : tree.vertices) std::cout << " " << show_scope(v);
    std::cout << "\nE:";
    for (auto& [a, b] : tree.edges) std::cout << " " << show_scope(a) << "->" << show_scope(b);
    std::cout << "\nV_idle:";
    for (auto& v : tree.idle) std::cout << " " << show_scope(v);
    std::cout << "\nschedule:";
    for (auto& v : sched) std::cout << " " << show_scope(v);
    std::cout << "\n";
    return kOk;
}

int cmd_member(const std::string& trace_path, const std::string& formula, const std::vector<std::string>& vals) {
    Trace t = trace_from_json(read_file(trace_path));
    Valuation v;
    for (auto& kv : vals) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValidationError("valuation must be name=value: " + kv);
        v[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
    }
    bool in = member(t, parse_formula(formula), {}, v);
    std::cout << (in ? "member" : "not a member") << "\n";
    return in ? kOk : kViolation;
}

int cmd_adhere(const Globals& g, const std::string& program, const std::string& contracts, const std::string& proc,
               bool weak) {
    auto p = parse_program(read_file(program));
    auto cs = parse_contracts(read_file(contracts));
    if (weak)
        for (auto& c : cs) c = weak_variant(c);
    std::vector<AdherenceReport> reports;
    if (proc.empty()) {
        reports = program_correct(p, cs, g.bounds()).reports;
    } else {
        auto traces = enumerate_traces(p, g.bounds());
        for (auto& c : cs)
            if (c.proc == proc) reports.push_back(adheres_procedure_on(traces, proc, c));
        if (reports.empty()) throw ValidationError("no contract for procedure " + proc);
    }
    bool ok = true;
    json out = json::array();
    for (auto& r : reports) {
        ok &= r.ok();
        json j{{"procedure", r.proc}, {"ok", r.ok()}, {"failures", json::array()}};
        for (auto& e : r.entries)
            if (!e.ok) j["failures"].push_back({{"trace", e.trace}, {"id", e.id}, {"clause", e.clause}});
        j["checked"] = r.entries.size();
        out.push_back(j);
        if (!g.json) {
            std::cout << r.proc << ": " << (r.ok() ? "adheres" : "VIOLATED") << " (" << r.entries.size()
                      << " scope instances)\n";
            for (auto& e : r.entries)
                if (!e.ok) std::cout << "  trace #" << e.trace << " id " << e.id << ": " << e.clause << "\n";
        }
    }
    if (g.json) std::cout << out.dump(2) << "\n";
    return ok ? kOk : kViolation;
}

int cmd_verify(const Globals& g, const std::string& program, const std::string& contracts, const std::string& proc,
               const std::string& discharge, const std::vector<std::string>& splits, bool cross) {
    auto p = parse_program(read_file(program));
    auto cs = parse_contracts(read_file(contracts));
    VerifyOptions o;
    o.bound = g.bound;
    o.bounds = g.bounds();
    if (discharge == "concrete") o.mode = Discharge::Concrete;
    else if (discharge != "abstract") throw ValidationError("discharge must be abstract or concrete");
    for (auto& s : splits) {
        // m=a:b
        auto eq = s.find('='), col = s.find(':');
        if (eq == std::string::npos || col == std::string::npos || col < eq)
            throw ValidationError("split must be proc=first:last");
        o.split[s.substr(0, eq)] = {std::stoul(s.substr(eq + 1, col - eq - 1)), std::stoul(s.substr(col + 1))};
    }
    std::vector<std::string> procs;
    if (!proc.empty()) {
        procs.push_back(proc);
    } else {
        for (auto& d : p.procedures) procs.push_back(d.name);
        procs.push_back(kInit);
    }
    for (auto& c : cs)
        if (c.proc != kInit && !p.find(c.proc)) throw ValidationError("contract for unknown procedure " + c.proc);
    bool all = true;
    std::string first_open;
    json out = json::array();
    for (auto& m : procs) {
        for (auto& n : verify_procedure(p, cs, m, o)) {
            all &= n.accepted();
            if (first_open.empty() && !n.accepted())
                first_open = m + ": [" + n.open_leaves().front()->rule + "] " + n.open_leaves().front()->conclusion;
            if (g.json) {
                out.push_back({{"procedure", m}, {"proof", json::parse(proof_json(n))}});
            } else {
                std::cout << "== " << m << ": " << (n.accepted() ? "accepted" : "NOT accepted") << "\n"
                          << render_proof(n) << "\n";
            }
        }
    }
    json report{{"accepted", all}};
    if (!first_open.empty()) report["first_open"] = first_open;
    if (cross && all && proc.empty()) {
        auto cr = program_correct(p, cs, o.bounds);
        bool files = true;
        for (auto& t : enumerate_traces(p, o.bounds)) files &= check_file_correct(t).ok;
        report["cross_check"] = {{"adherent", cr.ok}, {"file_correct", files}};
        if (!g.json)
            std::cout << "cross-check: oracle " << (cr.ok ? "adherent" : "NOT adherent") << ", traces "
                      << (files ? "file-correct" : "NOT file-correct") << "\n";
        if (!cr.ok || !files) {
            if (g.json) std::cout << json{{"proofs", out}, {"report", report}}.dump(2) << "\n";
            return kViolation;
        }
    }
    if (g.json) std::cout << json{{"proofs", out}, {"report", report}}.dump(2) << "\n";
    else if (!first_open.empty()) std::cout << "first open leaf: " << first_open << "\n";
    return all ? kOk : kUnproved;
}

const ContractDecl& pick(const std::vector<ContractDecl>& cs, std::size_t k) {
    if (k >= cs.size()) throw ValidationError("contract index " + std::to_string(k) + " out of range");
    return cs[k];
}

int cmd_subtype(const Globals& g, const std::string& contracts, std::size_t a, std::size_t b) {
    auto cs = parse_contracts(read_file(contracts));
    auto r = subtype(pick(cs, a), pick(cs, b), g.bound);
    if (g.json) {
        json j{{"verdict", subtype_verdict_name(r.verdict)}};
        if (!r.condition.empty()) j["condition"] = r.condition;
        if (r.counterexample) j["counterexample"] = show_trace(*r.counterexample);
        if (!r.note.empty()) j["note"] = r.note;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << subtype_verdict_name(r.verdict);
        if (!r.condition.empty()) std::cout << " at " << r.condition;
        if (r.counterexample) std::cout << ": " << show_trace(*r.counterexample);
        if (!r.note.empty()) std::cout << " (" << r.note << ")";
        std::cout << "\n";
    }
    return r.verdict == SubtypeVerdict::Proved ? kOk : r.verdict == SubtypeVerdict::Disproved ? kViolation : kUnproved;
}

int cmd_max(const Globals& g, const std::string& contracts, const std::string& proc) {
    auto cs = parse_contracts(read_file(contracts));
    std::vector<ContractDecl> n;
    for (auto& c : cs)
        if (proc.empty() || c.proc == proc) n.push_back(c);
    for (auto& c : max_contracts(n, g.bound)) std::cout << print_contract(c) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asyncat: traces, contracts and proofs for Async programs"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-steps", g.max_steps, "rule applications per branch");
    app.add_option("--max-traces", g.max_traces, "maximal traces per enumeration");
    app.add_option("--bound", g.bound, "items explored by bounded inclusion");
    app.add_flag("--json", g.json, "JSON output");

    std::string program, contracts, formula, proc, trace, until, discharge = "abstract";
    std::vector<std::string> vals, splits;
    std::size_t index = 0, prefix = 0, left = 0, right = 1;
    bool dump = false, weak = false, cross = false;

    auto* parse = app.add_subcommand("parse", "parse and pretty-print");
    parse->add_option("--program", program);
    parse->add_option("--contracts", contracts);
    parse->add_option("--formula", formula);

    auto* run = app.add_subcommand("run", "enumerate maximal traces");
    run->add_option("--program,program", program)->required();
    run->add_flag("--dump", dump, "print full traces");

    auto* ct = app.add_subcommand("calltree", "call tree and schedule of a trace prefix");
    ct->add_option("--program,program", program)->required();
    ct->add_option("--trace", index, "index of the maximal trace");
    ct->add_option("--prefix", prefix, "prefix length in items");
    ct->add_option("--until", until, "cut after this event, e.g. ret(2)");

    auto* mem = app.add_subcommand("check-member", "trace formula membership");
    mem->add_option("--trace", trace, "trace JSON file")->required();
    mem->add_option("--formula", formula)->required();
    mem->add_option("--val", vals, "symbol valuation name=value");

    auto* adh = app.add_subcommand("adhere", "brute-force adherence oracle");
    adh->add_option("--program", program)->required();
    adh->add_option("--contracts", contracts)->required();
    adh->add_option("--procedure", proc);
    adh->add_flag("--weak", weak, "weak adherence");

    auto* ver = app.add_subcommand("verify", "sequent calculus proofs");
    ver->add_option("--program", program)->required();
    ver->add_option("--contracts", contracts)->required();
    ver->add_option("--procedure", proc);
    ver->add_option("--discharge", discharge, "abstract or concrete");
    ver->add_option("--split", splits, "proc=first:last chop segments for the callee's internal behavior");
    ver->add_flag("--cross-check", cross, "run the oracle after acceptance");

    auto* sub = app.add_subcommand("subtype", "C_left more general than C_right");
    sub->add_option("--contracts", contracts)->required();
    sub->add_option("--left", left, "index of the first contract in the file");
    sub->add_option("--right", right, "index of the second contract in the file");

    auto* mx = app.add_subcommand("max-contracts", "maximal contracts");
    mx->add_option("--contracts", contracts)->required();
    mx->add_option("--procedure", proc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }
    try {
        if (*parse) return cmd_parse(program, contracts, formula);
        if (*run) return cmd_run(g, program, dump);
        if (*ct) return cmd_calltree(g, program, index, prefix, until);
        if (*mem) return cmd_member(trace, formula, vals);
        if (*adh) return cmd_adhere(g, program, contracts, proc, weak);
        if (*ver) return cmd_verify(g, program, contracts, proc, discharge, splits, cross);
        if (*sub) return cmd_subtype(g, contracts, left, right);
        if (*mx) return cmd_max(g, contracts, proc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
