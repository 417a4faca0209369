#include "relcheck/derivation.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace relcheck {

namespace {

constexpr std::uint64_t kU64Max = ~0ull;
constexpr std::uint64_t kSpotSeed = 0x7261746373686b63ull;  // arbitrary, fixed

using u128 = unsigned __int128;

} // namespace

// --- exact rationals --------------------------------------------------------

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    return Ratio{num / g, den / g};
}

std::string Ratio::render4() const {
    // Scale to 1e4 exactly, then round half away from zero.
    u128 scaled = static_cast<u128>(num) * 10000 + den / 2;
    std::uint64_t milli = static_cast<std::uint64_t>(scaled / den);
    std::string frac = std::to_string(milli % 10000);
    frac.insert(0, 4 - frac.size(), '0');
    return std::to_string(milli / 10000) + "." + frac;
}

bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

// --- regions ----------------------------------------------------------------

std::uint64_t Region::size() const {
    u128 total = 1;
    for (const auto& list : values) total *= list.size();
    if (total > kU64Max) throw InputError("region too large to enumerate");
    return static_cast<std::uint64_t>(total);
}

std::vector<Int> Region::at(std::uint64_t ordinal) const {
    std::vector<Int> out(values.size());
    for (std::size_t i = values.size(); i-- > 0;) {
        const auto& list = values[i];
        out[i] = list[ordinal % list.size()];
        ordinal /= list.size();
    }
    return out;
}

void Region::for_each(const std::function<void(const std::vector<Int>&)>& fn) const {
    std::vector<std::size_t> pos(values.size(), 0);
    std::vector<Int> vals(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) vals[i] = values[i][0];
    for (;;) {
        fn(vals);
        std::size_t i = values.size();
        while (i-- > 0) {
            if (++pos[i] < values[i].size()) {
                vals[i] = values[i][pos[i]];
                break;
            }
            pos[i] = 0;
            vals[i] = values[i][0];
        }
        if (i == static_cast<std::size_t>(-1)) return;
    }
}

StateSet Region::states() const {
    std::vector<StateIndex> idx;
    idx.reserve(size());
    for_each([&](const std::vector<Int>& vals) { idx.push_back(space->index_of(vals)); });
    return StateSet(space, std::move(idx));
}

// --- small text helpers -----------------------------------------------------

namespace {

std::string trim(std::string s) {
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    std::size_t b = 0, e = s.size();
    while (b < e && issp(s[b])) ++b;
    while (e > b && issp(s[e - 1])) --e;
    return s.substr(b, e - b);
}

void strip_comment(std::string& line) {
    std::size_t hash = line.find('#');
    std::size_t slashes = line.find("//");
    std::size_t cut = std::min(hash, slashes);
    if (cut != std::string::npos) line.erase(cut);
}

Int parse_int(const std::string& text) {
    std::string t = trim(text);
    Int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw InputError("expected an integer, got '" + t + "'");
    return value;
}

std::uint64_t parse_nat(const std::string& text) {
    Int v = parse_int(text);
    if (v < 0) throw InputError("expected a non-negative integer, got '" + trim(text) + "'");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_top(const std::string& text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Region parse_region(const std::string& text, SpacePtr space) {
    Region region;
    region.space = space;
    region.values.resize(space->var_count());
    std::vector<bool> seen(space->var_count(), false);
    for (const std::string& raw : split_top(text, ',')) {
        std::string clause = trim(raw);
        std::size_t eq = clause.find('=');
        if (eq == std::string::npos)
            throw InputError("region clause '" + clause + "' has no '='");
        std::string name = trim(clause.substr(0, eq));
        std::string rest = trim(clause.substr(eq + 1));
        std::size_t slot = space->slot_of(name);
        if (seen[slot])
            throw InputError("region lists variable '" + name + "' twice");
        seen[slot] = true;
        std::vector<Int>& list = region.values[slot];
        if (!rest.empty() && rest.front() == '[') {
            if (rest.back() != ']')
                throw InputError("unterminated value list for '" + name + "'");
            for (const std::string& item : split_top(rest.substr(1, rest.size() - 2), ','))
                list.push_back(parse_int(item));
        } else if (rest.find("..") != std::string::npos) {
            std::size_t dots = rest.find("..");
            Int lo = parse_int(rest.substr(0, dots));
            Int hi = parse_int(rest.substr(dots + 2));
            if (lo > hi)
                throw InputError("empty region range for '" + name + "'");
            for (Int v = lo; v <= hi; ++v) list.push_back(v);
        } else {
            list.push_back(parse_int(rest));
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (list.empty())
            throw InputError("region gives no values for '" + name + "'");
        for (Int v : list) {
            if (!space->in_range(slot, v))
                throw InputError("region value " + std::to_string(v) +
                                 " out of range for variable '" + name + "'");
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i])
            throw InputError("region misses variable '" + space->vars()[i].name + "'");
    }
    return region;
}

// --- reliability model -------------------------------------------------------

std::uint64_t ReliabilityModel::weight_of(StateIndex s) const {
    if (uniform()) return 1;
    auto it = std::lower_bound(weights.begin(), weights.end(), s,
                               [](const auto& a, StateIndex b) { return a.first < b; });
    return (it != weights.end() && it->first == s) ? it->second : 0;
}

// --- chain manifests ----------------------------------------------------------

namespace {

bool is_abort_only(const Stmt& body) {
    if (body.kind == Stmt::Kind::Abort) return true;
    return body.kind == Stmt::Kind::Seq && body.stmts.size() == 1 &&
           body.stmts[0]->kind == Stmt::Kind::Abort;
}

std::string resolve_path(const std::string& file, const std::string& base_dir) {
    std::filesystem::path p(file);
    if (p.is_absolute() || base_dir.empty()) return file;
    return (std::filesystem::path(base_dir) / p).string();
}

} // namespace

DerivationChain parse_chain(const std::string& text, const std::string& base_dir) {
    DerivationChain chain;
    bool saw_header = false, saw_mode = false, saw_fuel = false;
    std::string spec_file, region_text;
    int region_line = 0;
    std::vector<std::pair<std::string, int>> step_files;
    std::vector<std::pair<std::string, int>> weight_texts;
    auto fail = [](const std::string& msg, int lineno) -> void {
        throw ParseError(msg, lineno, 1);
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_comment(line);
        line = trim(line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line.rfind("chain ", 0) != 0 || line.back() != ':')
                fail("expected 'chain <name>:'", lineno);
            chain.name = trim(line.substr(6, line.size() - 7));
            if (chain.name.empty()) fail("chain with empty name", lineno);
            saw_header = true;
            continue;
        }
        if (line.back() != ';') fail("directive missing ';'", lineno);
        line = trim(line.substr(0, line.size() - 1));
        std::size_t sp = line.find_first_of(" \t");
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
        try {
            if (key == "spec") {
                if (!spec_file.empty()) fail("second 'spec' directive", lineno);
                spec_file = rest;
            } else if (key == "step") {
                step_files.emplace_back(rest, lineno);
            } else if (key == "mode") {
                if (rest == "oracle") chain.mode = ChainMode::Oracle;
                else if (rest == "exhaustive") chain.mode = ChainMode::Exhaustive;
                else fail("mode must be 'oracle' or 'exhaustive'", lineno);
                saw_mode = true;
            } else if (key == "region") {
                region_text = rest;
                region_line = lineno;
            } else if (key == "fuel") {
                chain.fuel = parse_nat(rest);
                saw_fuel = true;
            } else if (key == "threshold") {
                std::size_t slash = rest.find('/');
                if (slash == std::string::npos) fail("threshold must be '<num>/<den>'", lineno);
                chain.threshold = Ratio::of(parse_nat(rest.substr(0, slash)),
                                            parse_nat(rest.substr(slash + 1)));
            } else if (key == "redraws") {
                chain.spot_redraws = parse_nat(rest);
            } else if (key == "weight") {
                weight_texts.emplace_back(rest, lineno);
            } else {
                fail("unknown chain directive '" + key + "'", lineno);
            }
        } catch (const InputError& e) {
            fail(e.what(), lineno);
        }
    }
    if (!saw_header) throw ParseError("empty chain manifest", lineno, 1);
    if (spec_file.empty()) throw ParseError("chain manifest misses 'spec'", lineno, 1);
    if (!saw_mode) throw ParseError("chain manifest misses 'mode'", lineno, 1);
    if (region_text.empty()) throw ParseError("chain manifest misses 'region'", lineno, 1);
    if (step_files.empty()) throw ParseError("chain manifest lists no steps", lineno, 1);
    if (chain.mode == ChainMode::Oracle && (!saw_fuel || chain.fuel == 0))
        throw ParseError("oracle mode needs a positive 'fuel' bound", lineno, 1);

    chain.spec = parse_spec(read_file(resolve_path(spec_file, base_dir)));
    SpacePtr space = chain.spec.space;

    try {
        chain.region = parse_region(region_text, space);
        (void)chain.region.size();
    } catch (const InputError& e) {
        fail(e.what(), region_line);
    }

    for (auto& [tuple_text, weight_line] : weight_texts) {
        try {
            std::size_t eq = tuple_text.rfind('=');
            if (eq == std::string::npos)
                throw InputError("weight directive needs '= <value>'");
            StateIndex s = parse_state_tuple(trim(tuple_text.substr(0, eq)), *space);
            std::uint64_t w = parse_nat(tuple_text.substr(eq + 1));
            for (const auto& entry : chain.model.weights) {
                if (entry.first == s) throw InputError("duplicate weight for a state");
            }
            chain.model.weights.emplace_back(s, w);
        } catch (const InputError& e) {
            fail(e.what(), weight_line);
        }
    }
    std::sort(chain.model.weights.begin(), chain.model.weights.end());

    for (auto& [file, step_line] : step_files) {
        ChainStep step;
        step.file = file;
        std::string path = resolve_path(file, base_dir);
        if (file.size() > 5 && file.rfind(".prog") == file.size() - 5) {
            Program prog = parse_program(read_file(path));
            step.name = prog.name;
            step.program = bind_program(prog, space);
        } else if (file.size() > 4 && file.rfind(".rel") == file.size() - 4) {
            if (chain.mode == ChainMode::Oracle)
                throw InputError("relation step '" + file +
                                 "' needs exhaustive mode (oracle mode interprets programs)");
            step.relation = parse_relation_literal(read_file(path), space);
            step.name = std::filesystem::path(file).stem().string();
        } else {
            fail("step '" + file + "' is neither a .prog nor a .rel file", step_line);
        }
        chain.steps.push_back(std::move(step));
    }

    const ChainStep& first = chain.steps.front();
    bool starts_with_abort = first.program
                                 ? is_abort_only(*first.program->prog.body)
                                 : first.relation->pair_count() == 0;
    if (!starts_with_abort)
        chain.warnings.push_back("step 0 ('" + first.name +
                                 "') is not abort; chains conventionally start there");
    return chain;
}

DerivationChain load_chain(const std::string& path) {
    return parse_chain(read_file(path),
                       std::filesystem::path(path).parent_path().string());
}

// --- oracle competence and reliability ---------------------------------------

OracleCompetence oracle_competence_domain(const BoundProgram& p, const SpecFile& spec,
                                          const Region& region, std::uint64_t fuel) {
    if (!p.space->same_as(*spec.space))
        throw InputError("program space " + p.space->describe() +
                         " does not match the spec's space");
    if (!region.space->same_as(*spec.space))
        throw InputError("region space does not match the spec's space");
    OracleCompetence out;
    std::vector<StateIndex> cd;
    const std::uint64_t decisive = sufficient_fuel(p);
    std::vector<Int> run;
    region.for_each([&](const std::vector<Int>& vals) {
        run = vals;
        Outcome::Kind k = run_values(p, run, fuel);
        if (k == Outcome::Kind::Final) {
            if (holds_values(spec, vals.data(), run.data()))
                cd.push_back(region.space->index_of(vals));
        } else if (k == Outcome::Kind::FuelExhausted) {
            ++out.fuel_exhausted;
            if (fuel < decisive) out.inconclusive = true;
        }
    });
    out.states = StateSet(region.space, std::move(cd));
    return out;
}

namespace {

struct DomainInfo {
    StateSet states;         // dom(R) ∩ region, ascending
    std::uint64_t weight = 0;
};

DomainInfo domain_in_region(const SpecFile& spec, const Region& region,
                            const ReliabilityModel& model) {
    std::vector<StateIndex> idx;
    u128 weight = 0;
    region.for_each([&](const std::vector<Int>& vals) {
        bool in_dom = spec.domain_clause
                          ? domain_holds(spec, vals.data())
                          : domain_by_witness(spec, vals.data(), 0);
        if (!in_dom) return;
        StateIndex s = region.space->index_of(vals);
        idx.push_back(s);
        weight += model.weight_of(s);
    });
    if (idx.empty())
        throw InputError("dom(R) ∩ region is empty; reliability is undefined");
    if (weight == 0)
        throw InputError("reliability model puts zero weight on dom(R) ∩ region");
    if (weight > kU64Max) throw InputError("total weight overflows 64 bits");
    return {StateSet(region.space, std::move(idx)), static_cast<std::uint64_t>(weight)};
}

ReliabilityReport score(const StateSet& competent, const DomainInfo& dom,
                        const ReliabilityModel& model, bool inconclusive) {
    StateSet hit = set_intersect(competent, dom.states);
    u128 num = 0;
    for (StateIndex s : hit.indices()) num += model.weight_of(s);
    if (num > kU64Max) throw InputError("total weight overflows 64 bits");
    ReliabilityReport rep;
    rep.value = Ratio::of(static_cast<std::uint64_t>(num), dom.weight);
    rep.competent_count = hit.size();
    rep.domain_count = dom.states.size();
    rep.competent_weight = static_cast<std::uint64_t>(num);
    rep.domain_weight = dom.weight;
    rep.inconclusive = inconclusive;
    return rep;
}

} // namespace

ReliabilityReport reliability(const BoundProgram& p, const SpecFile& spec,
                              const ReliabilityModel& model, const Region& region,
                              std::uint64_t fuel) {
    DomainInfo dom = domain_in_region(spec, region, model);
    OracleCompetence oc = oracle_competence_domain(p, spec, region, fuel);
    return score(oc.states, dom, model, oc.inconclusive);
}

// --- chain verification --------------------------------------------------------

namespace {

struct StepCompetence {
    StateSet region_cd;              // competent states within the region
    std::optional<StateSet> full_cd; // exhaustive mode: over the whole space
    std::optional<Relation> rel;     // exhaustive mode: the step's relation
    bool inconclusive = false;
};

StepCompetence exhaustive_competence(const ChainStep& step, const SpecFile& spec,
                                     const StateSet& region_states) {
    StepCompetence out;
    Relation rel = step.relation ? *step.relation : denote(*step.program);
    std::vector<StateIndex> cd;
    rel.for_each_pair([&](StateIndex s, StateIndex t) {
        if (holds(spec, s, t)) cd.push_back(s);
    });
    std::sort(cd.begin(), cd.end());
    cd.erase(std::unique(cd.begin(), cd.end()), cd.end());
    out.full_cd = StateSet(rel.space(), std::move(cd));
    out.region_cd = set_intersect(*out.full_cd, region_states);
    out.rel = std::move(rel);
    return out;
}

// Re-run sampled region states with pinned variables randomized; competence
// membership must not depend on them if the region abstraction is sound.
void spot_check(const DerivationChain& chain, const ChainStep& step,
                const StateSet& cd, std::size_t step_index, StepReport& report) {
    const Region& region = chain.region;
    std::vector<std::size_t> pinned;
    for (std::size_t i = 0; i < region.values.size(); ++i)
        if (region.values[i].size() == 1) pinned.push_back(i);
    if (pinned.empty() || chain.spot_redraws == 0) return;

    std::mt19937_64 rng(kSpotSeed + step_index);
    const std::uint64_t region_size = region.size();
    std::uniform_int_distribution<std::uint64_t> pick(0, region_size - 1);
    const std::uint64_t samples = std::min<std::uint64_t>(500, region_size);
    std::uint64_t mismatches = 0;
    for (std::uint64_t redraw = 0; redraw < chain.spot_redraws; ++redraw) {
        for (std::uint64_t i = 0; i < samples; ++i) {
            std::vector<Int> vals = region.at(pick(rng));
            StateIndex original = region.space->index_of(vals);
            for (std::size_t slot : pinned) {
                const VarDecl& v = region.space->vars()[slot];
                vals[slot] = std::uniform_int_distribution<Int>(v.lo, v.hi)(rng);
            }
            std::vector<Int> run = vals;
            Outcome::Kind k = run_values(*step.program, run, chain.fuel);
            bool member = k == Outcome::Kind::Final &&
                          holds_values(chain.spec, vals.data(), run.data());
            if (member != cd.contains(original)) {
                if (++mismatches <= 3)
                    report.notes.push_back(
                        "spot check: competence of " +
                        format_state(*region.space, original) +
                        " changes when pinned variables are redrawn");
            }
        }
    }
    if (mismatches > 3)
        report.notes.push_back("spot check: " + std::to_string(mismatches) +
                               " redraw mismatches in total");
}

} // namespace

ChainReport verify_chain(const DerivationChain& chain) {
    const SpecFile& spec = chain.spec;
    ChainReport report;
    report.warnings = chain.warnings;

    DomainInfo dom = domain_in_region(spec, chain.region, chain.model);
    report.domain_count = dom.states.size();
    StateSet region_states = chain.region.states();

    std::vector<StepCompetence> cds;
    cds.reserve(chain.steps.size());
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const ChainStep& step = chain.steps[i];
        if (chain.mode == ChainMode::Oracle) {
            OracleCompetence oc =
                oracle_competence_domain(*step.program, spec, chain.region, chain.fuel);
            cds.push_back({std::move(oc.states), std::nullopt, std::nullopt,
                           oc.inconclusive});
        } else {
            cds.push_back(exhaustive_competence(step, spec, region_states));
        }
    }

    report.verified = true;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        StepReport sr;
        sr.index = i;
        sr.name = chain.steps[i].name;
        sr.competence_count = cds[i].region_cd.size();
        sr.reliability = score(cds[i].region_cd, dom, chain.model, cds[i].inconclusive);
        sr.correct_on_region = subset_of(dom.states, cds[i].region_cd);

        if (i == 0) {
            sr.verified = true;
        } else if (chain.mode == ChainMode::Oracle) {
            // Programs are interpreted one outcome per state, so inclusion of
            // competence domains is the whole judgment.
            sr.verified = subset_of(cds[i - 1].region_cd, cds[i].region_cd);
            if (!sr.verified) {
                StateSet missing = set_difference(cds[i - 1].region_cd, cds[i].region_cd);
                sr.violating_state = missing.indices().front();
            }
        } else {
            const StateSet& prev_cd = *cds[i - 1].full_cd;
            sr.verified = subset_of(prev_cd, *cds[i].full_cd);
            if (!sr.verified) {
                StateSet missing = set_difference(prev_cd, *cds[i].full_cd);
                sr.violating_state = missing.indices().front();
            } else {
                // Second clause: on the previous step's competence domain, any
                // spec-violating output must already have been possible.
                std::optional<StateIndex> bad;
                cds[i].rel->for_each_pair([&](StateIndex s, StateIndex t) {
                    if (!prev_cd.contains(s) || holds(spec, s, t)) return;
                    if (!cds[i - 1].rel->contains(s, t) && (!bad || s < *bad)) bad = s;
                });
                if (bad) {
                    sr.verified = false;
                    sr.violating_state = bad;
                }
            }
        }
        if (!sr.verified) report.verified = false;
        if (cds[i].inconclusive) report.inconclusive = true;
        if (chain.mode == ChainMode::Oracle)
            spot_check(chain, chain.steps[i], cds[i].region_cd, i, sr);
        report.steps.push_back(std::move(sr));
    }

    const StepReport& last = report.steps.back();
    if (last.correct_on_region)
        report.termination = Termination::Correct;
    else if (chain.threshold && *chain.threshold <= last.reliability.value)
        report.termination = Termination::Threshold;
    else
        report.termination = Termination::Neither;
    return report;
}

} // namespace relcheck
