#include "relcheck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "relcheck/correctness.hpp"
#include "relcheck/derivation.hpp"

namespace relcheck {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

bool has_ext(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

std::optional<std::pair<Int, Int>> parse_default_range(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto pos = text.find("..");
    auto bad = [&] {
        return InputError("default range must look like lo..hi, got: " + text);
    };
    if (pos == std::string::npos) throw bad();
    try {
        std::size_t used = 0;
        Int lo = std::stoll(text.substr(0, pos), &used);
        if (used != pos) throw bad();
        std::string rest = text.substr(pos + 2);
        Int hi = std::stoll(rest, &used);
        if (used != rest.size()) throw bad();
        return std::make_pair(lo, hi);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw bad();
    }
}

// --- input loading ---------------------------------------------------------

SpacePtr space_from_file(const std::string& path) {
    return parse_space(read_file(path));
}

// Space for commands that take raw program/relation operands: --space wins,
// otherwise the --spec file's space.
SpacePtr context_space(const std::string& space_file, const std::string& spec_file,
                       const char* cmd) {
    if (!space_file.empty()) return space_from_file(space_file);
    if (!spec_file.empty()) {
        if (!has_ext(spec_file, ".spec"))
            throw InputError("--spec expects a .spec file, got: " + spec_file);
        return parse_spec(read_file(spec_file)).space;
    }
    throw InputError(std::string(cmd) + " needs --space (or --spec) to "
                     "interpret its operands");
}

BoundProgram load_bound(const std::string& path, SpacePtr space,
                        const std::string& default_range) {
    if (!has_ext(path, ".prog"))
        throw InputError("expected a .prog file: " + path);
    return bind_program(parse_program(read_file(path)), std::move(space),
                        parse_default_range(default_range));
}

struct Operand {
    Relation rel;
    std::string name;
};

// A judgment operand: a program (denoted) or a relation literal.
Operand load_operand(const std::string& path, const SpacePtr& space,
                     const std::string& default_range) {
    if (has_ext(path, ".rel"))
        return {parse_relation_literal(read_file(path), space), stem_of(path)};
    if (has_ext(path, ".prog")) {
        BoundProgram bp = load_bound(path, space, default_range);
        return {denote(bp), bp.prog.name};
    }
    throw InputError("operand must be a .prog or .rel file: " + path);
}

struct SpecOperand {
    Relation rel;
    SpacePtr space;
    std::string name;
};

// The specification relation for a judgment: a .spec file (materialized over
// its own space) or a .rel literal over an explicitly supplied --space.
SpecOperand load_spec_operand(const std::string& path,
                              const std::string& space_file) {
    SpecOperand op;
    op.name = stem_of(path);
    if (has_ext(path, ".spec")) {
        SpecFile sf = parse_spec(read_file(path));
        if (!space_file.empty()) {
            SpacePtr given = space_from_file(space_file);
            if (!sf.space->same_as(*given))
                throw InputError("--space disagrees with the spec file: " +
                                 given->describe() + " vs " +
                                 sf.space->describe());
        }
        op.space = sf.space;
        op.rel = materialize(sf);
        return op;
    }
    if (has_ext(path, ".rel")) {
        if (space_file.empty())
            throw InputError("a .rel specification needs --space: " + path);
        op.space = space_from_file(space_file);
        op.rel = parse_relation_literal(read_file(path), op.space);
        return op;
    }
    throw InputError("specification must be a .spec or .rel file: " + path);
}

// --- output helpers --------------------------------------------------------

json state_json(const StateSpace& sp, StateIndex s) {
    return json(sp.values_at(s));
}

json pair_json(const StateSpace& sp, const Pair& pr) {
    return json::array({state_json(sp, pr.first), state_json(sp, pr.second)});
}

json rel_json(const Relation& r) {
    json a = json::array();
    r.for_each_pair([&](StateIndex s, StateIndex t) {
        a.push_back(pair_json(*r.space(), {s, t}));
    });
    return a;
}

void emit(std::ostream& out, const json& rec) { out << rec.dump(2) << "\n"; }

const char* bool_str(bool b) { return b ? "true" : "false"; }

void list_states(std::ostream& out, const StateSet& ss, std::size_t cap) {
    std::size_t shown = 0;
    for (StateIndex s : ss.indices()) {
        if (shown == cap) {
            out << "  ... and " << (ss.size() - cap) << " more\n";
            return;
        }
        out << "  " << format_state(*ss.space(), s) << "\n";
        ++shown;
    }
}

void list_pairs(std::ostream& out, const Relation& r, std::size_t cap) {
    std::uint64_t total = r.pair_count();
    std::uint64_t shown = 0;
    r.for_each_pair([&](StateIndex s, StateIndex t) {
        if (shown < cap)
            out << "  " << format_pair(*r.space(), {s, t}) << "\n";
        else if (shown == cap)
            out << "  ... and " << (total - cap) << " more\n";
        ++shown;
    });
}

// Counterexample lines shared by the judgment commands.
void print_evidence(std::ostream& out, const Judgment& j, const StateSpace& sp) {
    if (j.counter_pair)
        out << "disagrees at: " << format_pair(sp, *j.counter_pair) << "\n";
    if (j.counter_state)
        out << "uncovered state: " << format_state(sp, *j.counter_state) << "\n";
}

void evidence_json(json& rec, const Judgment& j, const StateSpace& sp) {
    if (j.counter_pair) rec["disagreement"] = pair_json(sp, *j.counter_pair);
    if (j.counter_state) rec["uncovered_state"] = state_json(sp, *j.counter_state);
}

// --- subcommands -----------------------------------------------------------

struct Opts {
    std::string lhs, rhs, space, spec, program, candidate, baseline;
    std::string region, state, chain, default_range;
    std::string format = "table";
    std::uint64_t fuel = 0;
    std::uint64_t cap = kDefaultExhaustiveCap;
    Int witness_hi = 0;
    bool partial = false, strict = false, nondet = false;
    bool structured() const { return format == "structured"; }
};

int cmd_refines(const Opts& o, std::ostream& out) {
    SpacePtr sp = context_space(o.space, o.spec, "refines");
    Operand lhs = load_operand(o.lhs, sp, o.default_range);
    Operand rhs = load_operand(o.rhs, sp, o.default_range);
    Judgment j = refines(lhs.rel, rhs.rel);
    if (o.structured()) {
        json rec;
        rec["kind"] = kind_name(j.kind);
        rec["lhs"] = lhs.name;
        rec["rhs"] = rhs.name;
        rec["verdict"] = j.verdict;
        evidence_json(rec, j, *sp);
        emit(out, rec);
    } else {
        out << "refines: " << bool_str(j.verdict) << "\n";
        print_evidence(out, j, *sp);
    }
    return j.verdict ? 0 : 1;
}

int cmd_correct(const Opts& o, std::ostream& out) {
    SpecOperand spec = load_spec_operand(o.spec, o.space);
    Operand p = load_operand(o.program, spec.space, o.default_range);
    Judgment j = o.partial ? is_partially_correct(p.rel, spec.rel)
                           : is_correct(p.rel, spec.rel);
    const char* dom_label =
        o.partial ? "spec domain where the program terminates" : "spec domain";
    if (o.structured()) {
        json rec;
        rec["kind"] = kind_name(j.kind);
        rec["program"] = p.name;
        rec["spec"] = spec.name;
        rec["verdict"] = j.verdict;
        rec["competence_count"] = j.cd1->size();
        rec["domain_count"] = j.cd2->size();
        evidence_json(rec, j, *spec.space);
        emit(out, rec);
    } else {
        out << kind_name(j.kind) << ": " << bool_str(j.verdict) << "\n"
            << "program: " << p.name << "\n"
            << "competence domain: " << j.cd1->size() << " states\n"
            << dom_label << ": " << j.cd2->size() << " states\n";
        print_evidence(out, j, *spec.space);
    }
    return j.verdict ? 0 : 1;
}

int cmd_more_correct(const Opts& o, std::ostream& out) {
    SpecOperand spec = load_spec_operand(o.spec, o.space);
    Operand cand = load_operand(o.candidate, spec.space, o.default_range);
    Operand base = load_operand(o.baseline, spec.space, o.default_range);
    Judgment j = o.nondet ? more_correct_nondet(cand.rel, base.rel, spec.rel)
                 : o.strict
                     ? strictly_more_correct_det(cand.rel, base.rel, spec.rel)
                     : more_correct_det(cand.rel, base.rel, spec.rel);
    if (o.structured()) {
        json rec;
        rec["kind"] = kind_name(j.kind);
        rec["candidate"] = cand.name;
        rec["baseline"] = base.name;
        rec["spec"] = spec.name;
        rec["verdict"] = j.verdict;
        rec["baseline_competence"] = j.cd1->size();
        rec["candidate_competence"] = j.cd2->size();
        if (j.clause2_set)
            rec["violations_on_baseline"] = rel_json(*j.clause2_set);
        evidence_json(rec, j, *spec.space);
        emit(out, rec);
    } else {
        out << kind_name(j.kind) << ": " << bool_str(j.verdict) << "\n"
            << "candidate: " << cand.name << " (competence " << j.cd2->size()
            << ")\n"
            << "baseline: " << base.name << " (competence " << j.cd1->size()
            << ")\n";
        if (j.clause2_set) {
            out << "violations on baseline competence: "
                << j.clause2_set->pair_count() << " pairs\n";
            list_pairs(out, *j.clause2_set, 20);
        }
        print_evidence(out, j, *spec.space);
    }
    return j.verdict ? 0 : 1;
}

int cmd_competence(const Opts& o, std::ostream& out) {
    SpecOperand spec = load_spec_operand(o.spec, o.space);
    Operand p = load_operand(o.program, spec.space, o.default_range);
    StateSet cd = competence_domain(p.rel, spec.rel);
    if (o.structured()) {
        json rec;
        rec["kind"] = "competence";
        rec["program"] = p.name;
        rec["spec"] = spec.name;
        rec["count"] = cd.size();
        json states = json::array();
        for (StateIndex s : cd.indices())
            states.push_back(state_json(*spec.space, s));
        rec["states"] = states;
        emit(out, rec);
    } else {
        out << "competence domain: " << cd.size() << " states\n";
        list_states(out, cd, 100);
    }
    return 0;
}

int cmd_reliability(const Opts& o, std::ostream& out) {
    if (!has_ext(o.spec, ".spec"))
        throw InputError("reliability needs a .spec file, got: " + o.spec);
    SpecFile sf = parse_spec(read_file(o.spec));
    BoundProgram bp = load_bound(o.program, sf.space, o.default_range);
    Region region = parse_region(o.region, sf.space);
    ReliabilityReport rep =
        reliability(bp, sf, ReliabilityModel{}, region, o.fuel);
    if (o.structured()) {
        json rec;
        rec["kind"] = "reliability";
        rec["program"] = bp.prog.name;
        rec["spec"] = stem_of(o.spec);
        rec["value"] = rep.value.render4();
        rec["competent"] = rep.competent_count;
        rec["domain"] = rep.domain_count;
        rec["inconclusive"] = rep.inconclusive;
        emit(out, rec);
    } else {
        out << "reliability: " << rep.value.render4() << "\n"
            << "competent: " << rep.competent_count << " of "
            << rep.domain_count << " domain states\n";
        if (rep.inconclusive)
            out << "inconclusive: fuel ran out before a decisive answer\n";
    }
    return rep.inconclusive ? 3 : 0;
}

const char* termination_str(Termination t) {
    switch (t) {
        case Termination::Correct: return "correct";
        case Termination::Threshold: return "threshold";
        case Termination::Neither: return "none";
    }
    return "none";
}

int cmd_verify_chain(const Opts& o, std::ostream& out) {
    DerivationChain chain = load_chain(o.chain);
    ChainReport rep = verify_chain(chain);
    const StateSpace& sp = *chain.spec.space;
    const char* mode = chain.mode == ChainMode::Oracle ? "oracle" : "exhaustive";
    if (o.structured()) {
        json rec;
        rec["kind"] = "verify-chain";
        rec["chain"] = chain.name;
        rec["mode"] = mode;
        rec["verified"] = rep.verified;
        rec["inconclusive"] = rep.inconclusive;
        rec["termination"] = termination_str(rep.termination);
        rec["domain_states"] = rep.domain_count;
        rec["warnings"] = json(rep.warnings);
        json steps = json::array();
        for (const StepReport& st : rep.steps) {
            json s;
            s["name"] = st.name;
            s["verified"] = st.verified;
            s["competence"] = st.competence_count;
            s["reliability"] = st.reliability.value.render4();
            s["correct_on_region"] = st.correct_on_region;
            if (st.violating_state)
                s["uncovered_state"] = state_json(sp, *st.violating_state);
            s["notes"] = json(st.notes);
            steps.push_back(std::move(s));
        }
        rec["steps"] = steps;
        emit(out, rec);
    } else {
        out << "chain " << chain.name << " (" << mode << " mode)\n"
            << "spec domain in region: " << rep.domain_count << " states\n";
        for (const std::string& w : rep.warnings) out << "warning: " << w << "\n";
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            const StepReport& st = rep.steps[i];
            out << "step " << st.name << ": competence " << st.competence_count;
            if (i == 0)
                out << ", base";
            else if (st.verified)
                out << ", verified";
            else {
                out << ", FAILED";
                if (st.violating_state)
                    out << " (uncovered: " << format_state(sp, *st.violating_state)
                        << ")";
            }
            if (st.correct_on_region) out << ", correct on region";
            out << "\n";
            for (const std::string& n : st.notes) out << "  note: " << n << "\n";
        }
        out << "termination: " << termination_str(rep.termination) << "\n"
            << "verdict: "
            << (rep.inconclusive ? "inconclusive"
                                 : rep.verified ? "verified" : "FAILED")
            << "\n";
        std::size_t w = 7;  // "Program"
        for (const StepReport& st : rep.steps) w = std::max(w, st.name.size());
        auto pad = [&](const std::string& s) {
            return s + std::string(w - s.size(), ' ');
        };
        out << "\n" << pad("Program") << "  Reliability\n";
        for (const StepReport& st : rep.steps)
            out << pad(st.name) << "  " << st.reliability.value.render4() << "\n";
    }
    if (rep.inconclusive) return 3;
    return rep.verified ? 0 : 1;
}

int cmd_denote(const Opts& o, std::ostream& out) {
    SpacePtr sp = context_space(o.space, o.spec, "denote");
    BoundProgram bp = load_bound(o.program, sp, o.default_range);
    Relation rel = denote(bp, o.cap);
    if (o.structured()) {
        json rec;
        rec["kind"] = "denote";
        rec["program"] = bp.prog.name;
        rec["space"] = sp->name();
        rec["pair_count"] = rel.pair_count();
        rec["pairs"] = rel_json(rel);
        emit(out, rec);
    } else {
        out << serialize_relation(rel);
    }
    return 0;
}

int cmd_interpret(const Opts& o, std::ostream& out) {
    SpacePtr sp = context_space(o.space, o.spec, "interpret");
    BoundProgram bp = load_bound(o.program, sp, o.default_range);
    StateIndex start = parse_state_tuple(o.state, *sp);
    Outcome res = interpret(bp, start, o.fuel);
    bool diverges = false;
    if (res.kind == Outcome::Kind::FuelExhausted &&
        o.fuel >= sufficient_fuel(bp))
        diverges = true;
    std::string outcome;
    switch (res.kind) {
        case Outcome::Kind::Final: outcome = "final"; break;
        case Outcome::Kind::Aborted: outcome = "aborted"; break;
        case Outcome::Kind::Undefined: outcome = "undefined"; break;
        case Outcome::Kind::FuelExhausted:
            outcome = diverges ? "diverges" : "fuel-exhausted";
            break;
    }
    if (o.structured()) {
        json rec;
        rec["kind"] = "interpret";
        rec["program"] = bp.prog.name;
        rec["start"] = state_json(*sp, start);
        rec["outcome"] = outcome;
        if (res.kind == Outcome::Kind::Final)
            rec["state"] = state_json(*sp, res.state);
        emit(out, rec);
    } else {
        out << "outcome: " << outcome;
        if (res.kind == Outcome::Kind::Final)
            out << " " << format_state(*sp, res.state);
        out << "\n";
        if (outcome == "fuel-exhausted")
            out << "inconclusive: " << sufficient_fuel(bp)
                << " fuel would be decisive\n";
    }
    return outcome == "fuel-exhausted" ? 3 : 0;
}

int cmd_agreement(const Opts& o, std::ostream& out) {
    SpacePtr sp = context_space(o.space, o.spec, "agreement");
    BoundProgram bp = load_bound(o.program, sp, o.default_range);
    AgreementReport rep = agreement_check(bp, o.fuel, o.cap);
    if (o.structured()) {
        json rec;
        rec["kind"] = "agreement";
        rec["program"] = bp.prog.name;
        rec["checked"] = rep.checked;
        json mm = json::array();
        for (StateIndex s : rep.mismatches) mm.push_back(state_json(*sp, s));
        rec["mismatches"] = mm;
        rec["inconclusive_count"] = rep.inconclusive.size();
        rec["ok"] = rep.ok();
        emit(out, rec);
    } else {
        out << "agreement: " << (rep.ok() ? "ok" : "FAILED") << "\n"
            << "states checked: " << rep.checked << "\n"
            << "mismatches: " << rep.mismatches.size() << "\n"
            << "inconclusive: " << rep.inconclusive.size() << "\n";
        for (std::size_t i = 0; i < rep.mismatches.size() && i < 10; ++i)
            out << "  mismatch at " << format_state(*sp, rep.mismatches[i])
                << "\n";
    }
    if (!rep.mismatches.empty()) return 1;
    return rep.inconclusive.empty() ? 0 : 3;
}

int cmd_validate_domain(const Opts& o, std::ostream& out) {
    if (!has_ext(o.spec, ".spec"))
        throw InputError("validate-domain needs a .spec file, got: " + o.spec);
    SpecFile sf = parse_spec(read_file(o.spec));
    StateSet region = o.region.empty() ? StateSet::full(sf.space)
                                       : parse_region(o.region, sf.space).states();
    DomainValidation v = validate_domain_clause(sf, region, o.witness_hi);
    if (o.structured()) {
        json rec;
        rec["kind"] = "validate-domain";
        rec["spec"] = stem_of(o.spec);
        rec["has_clause"] = v.has_clause;
        rec["checked"] = v.checked;
        json viol = json::array();
        for (StateIndex s : v.violations)
            viol.push_back(state_json(*sf.space, s));
        rec["violations"] = viol;
        rec["inconclusive_count"] = v.inconclusive.size();
        rec["ok"] = v.ok();
        emit(out, rec);
    } else {
        if (!v.has_clause) {
            out << "domain clause: none declared\n";
        } else {
            out << "domain clause: " << (v.ok() ? "consistent" : "FAILED")
                << "\n"
                << "states checked: " << v.checked << "\n"
                << "violations: " << v.violations.size() << "\n"
                << "inconclusive: " << v.inconclusive.size() << "\n";
            for (std::size_t i = 0; i < v.violations.size() && i < 10; ++i)
                out << "  clause wrong at " << format_state(*sf.space, v.violations[i])
                    << "\n";
        }
    }
    if (!v.violations.empty()) return 1;
    return v.inconclusive.empty() ? 0 : 3;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"relational correctness judgments over finite state spaces"};
    app.require_subcommand(1);
    Opts o;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format: table|structured")
            ->check(CLI::IsMember({"table", "structured"}));
    };
    auto add_space_flags = [&](CLI::App* sub) {
        sub->add_option("--space", o.space, ".space file for the operands");
        sub->add_option("--default-range", o.default_range,
                        "lo..hi for local declarations without a range");
    };

    CLI::App* c_refines =
        app.add_subcommand("refines", "does --lhs refine --rhs?");
    c_refines->add_option("--lhs", o.lhs, "refining side (.prog or .rel)")
        ->required();
    c_refines->add_option("--rhs", o.rhs, "refined side (.prog or .rel)")
        ->required();
    c_refines->add_option("--spec", o.spec, ".spec file supplying the space");
    add_space_flags(c_refines);
    add_format(c_refines);

    CLI::App* c_correct = app.add_subcommand(
        "correct", "is --program correct with respect to --spec?");
    c_correct->add_option("--program", o.program, "program (.prog or .rel)")
        ->required();
    c_correct->add_option("--spec", o.spec, "specification (.spec or .rel)")
        ->required();
    c_correct->add_flag("--partial", o.partial,
                        "check partial instead of total correctness");
    add_space_flags(c_correct);
    add_format(c_correct);

    CLI::App* c_more = app.add_subcommand(
        "more-correct", "is --candidate at least as correct as --baseline?");
    c_more->add_option("--candidate", o.candidate, "candidate (.prog or .rel)")
        ->required();
    c_more->add_option("--baseline", o.baseline, "baseline (.prog or .rel)")
        ->required();
    c_more->add_option("--spec", o.spec, "specification (.spec or .rel)")
        ->required();
    c_more->add_flag("--strict", o.strict, "require strictly more correct");
    c_more->add_flag("--nondet", o.nondet,
                     "use the two-clause non-deterministic judgment");
    add_space_flags(c_more);
    add_format(c_more);

    CLI::App* c_comp = app.add_subcommand(
        "competence", "competence domain of --program under --spec");
    c_comp->add_option("--program", o.program, "program (.prog or .rel)")
        ->required();
    c_comp->add_option("--spec", o.spec, "specification (.spec or .rel)")
        ->required();
    add_space_flags(c_comp);
    add_format(c_comp);

    CLI::App* c_rel = app.add_subcommand(
        "reliability", "reliability of --program over a region of --spec");
    c_rel->add_option("--program", o.program, "program (.prog)")->required();
    c_rel->add_option("--spec", o.spec, "specification (.spec)")->required();
    c_rel->add_option("--region", o.region,
                      "initial region, e.g. \"n = 1..100, x = 0\"")
        ->required();
    c_rel->add_option("--fuel", o.fuel, "per-loop iteration budget")->required();
    c_rel->add_option("--default-range", o.default_range,
                      "lo..hi for local declarations without a range");
    add_format(c_rel);

    CLI::App* c_chain =
        app.add_subcommand("verify-chain", "verify a derivation chain manifest");
    c_chain->add_option("chain", o.chain, "chain manifest (.chain)")->required();
    add_format(c_chain);

    CLI::App* c_denote = app.add_subcommand(
        "denote", "print the denoted relation of --program");
    c_denote->add_option("--program", o.program, "program (.prog)")->required();
    c_denote->add_option("--spec", o.spec, ".spec file supplying the space");
    c_denote->add_option("--cap", o.cap, "largest state count to enumerate");
    add_space_flags(c_denote);
    add_format(c_denote);

    CLI::App* c_interp = app.add_subcommand(
        "interpret", "run --program from --state with --fuel");
    c_interp->add_option("--program", o.program, "program (.prog)")->required();
    c_interp->add_option("--state", o.state, "start state tuple, e.g. \"(3, 0)\"")
        ->required();
    c_interp->add_option("--fuel", o.fuel, "per-loop iteration budget")
        ->required();
    c_interp->add_option("--spec", o.spec, ".spec file supplying the space");
    add_space_flags(c_interp);
    add_format(c_interp);

    CLI::App* c_agree = app.add_subcommand(
        "agreement", "cross-validate the two semantics of --program");
    c_agree->add_option("--program", o.program, "program (.prog)")->required();
    c_agree->add_option("--fuel", o.fuel, "per-loop iteration budget")
        ->required();
    c_agree->add_option("--cap", o.cap, "largest state count to enumerate");
    c_agree->add_option("--spec", o.spec, ".spec file supplying the space");
    add_space_flags(c_agree);
    add_format(c_agree);

    CLI::App* c_vdom = app.add_subcommand(
        "validate-domain", "check a spec's domain clause by witness search");
    c_vdom->add_option("--spec", o.spec, "specification (.spec)")->required();
    c_vdom->add_option("--region", o.region,
                       "states to check (default: the whole space)");
    c_vdom->add_option("--witness-hi", o.witness_hi,
                       "cap for each searched output variable (0 = full range)");
    add_format(c_vdom);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("relcheck");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_store.size());
    for (std::string& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_refines->parsed()) return cmd_refines(o, out);
        if (c_correct->parsed()) return cmd_correct(o, out);
        if (c_more->parsed()) return cmd_more_correct(o, out);
        if (c_comp->parsed()) return cmd_competence(o, out);
        if (c_rel->parsed()) return cmd_reliability(o, out);
        if (c_chain->parsed()) return cmd_verify_chain(o, out);
        if (c_denote->parsed()) return cmd_denote(o, out);
        if (c_interp->parsed()) return cmd_interpret(o, out);
        if (c_agree->parsed()) return cmd_agreement(o, out);
        if (c_vdom->parsed()) return cmd_validate_domain(o, out);
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace relcheck
