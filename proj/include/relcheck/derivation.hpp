#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relcheck/proglang.hpp"
#include "relcheck/speclang.hpp"

namespace relcheck {

// Exact non-negative rational, always reduced.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    static Ratio of(std::uint64_t num, std::uint64_t den);
    // Four decimal places, rounded half away from zero: 996/7500 -> "0.1328".
    std::string render4() const;
    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Ratio& a, const Ratio& b);
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

// Sub-grid of a space: one sorted, deduplicated value list per variable.
// Singleton lists pin a variable; longer lists enumerate it. Enumeration
// follows state-index order (first declared variable most significant).
struct Region {
    SpacePtr space;
    std::vector<std::vector<Int>> values;  // one list per space variable

    std::uint64_t size() const;
    std::vector<Int> at(std::uint64_t ordinal) const;
    void for_each(const std::function<void(const std::vector<Int>&)>& fn) const;
    StateSet states() const;  // ascending indices
};

// "n = 1..10000, x = 0, y = [0, 2], r = 0" — every space variable once.
Region parse_region(const std::string& text, SpacePtr space);

// Distribution over initial states: uniform unless explicit weights are
// given. States without an explicit weight count zero in weighted mode.
struct ReliabilityModel {
    std::vector<std::pair<StateIndex, std::uint64_t>> weights;  // sorted
    bool uniform() const { return weights.empty(); }
    std::uint64_t weight_of(StateIndex s) const;
};

enum class ChainMode { Exhaustive, Oracle };

struct ChainStep {
    std::string name;  // program header name, or relation file stem
    std::string file;
    std::optional<BoundProgram> program;
    std::optional<Relation> relation;  // exhaustive mode only
};

struct DerivationChain {
    std::string name;
    SpecFile spec;
    std::vector<ChainStep> steps;
    ChainMode mode = ChainMode::Exhaustive;
    Region region;
    std::uint64_t fuel = 0;  // required in oracle mode
    std::optional<Ratio> threshold;
    ReliabilityModel model;
    std::uint64_t spot_redraws = 5;  // oracle pinned-variable re-drawings
    std::vector<std::string> warnings;
};

// Manifest format (one directive per line, ';'-terminated, # or // comments):
//   chain <name>:
//     spec <path>;
//     mode oracle | exhaustive;
//     region <per-variable lists>;
//     fuel <n>;                 (oracle mode)
//     step <path.prog|path.rel>;  (repeated, in order)
//     threshold <num>/<den>;    (optional)
//     weight (<v1>,...,<vk>) = <w>;  (optional, repeatable)
//     redraws <n>;              (optional, default 5)
// Relative paths resolve against the manifest's directory.
DerivationChain parse_chain(const std::string& text, const std::string& base_dir);
DerivationChain load_chain(const std::string& path);

// Initial region states whose single interpreted run terminates in a state
// the spec accepts. Running out of fuel below the decisive bound marks the
// whole result inconclusive; at or above it, exhaustion counts as divergence.
struct OracleCompetence {
    StateSet states;
    std::uint64_t fuel_exhausted = 0;
    bool inconclusive = false;
};
OracleCompetence oracle_competence_domain(const BoundProgram& p, const SpecFile& spec,
                                          const Region& region, std::uint64_t fuel);

struct ReliabilityReport {
    Ratio value;
    std::uint64_t competent_count = 0;   // |competence ∩ dom(R) ∩ region|
    std::uint64_t domain_count = 0;      // |dom(R) ∩ region|
    std::uint64_t competent_weight = 0;  // same sets under the model's weights
    std::uint64_t domain_weight = 0;
    bool inconclusive = false;
};
ReliabilityReport reliability(const BoundProgram& p, const SpecFile& spec,
                              const ReliabilityModel& model, const Region& region,
                              std::uint64_t fuel);

struct StepReport {
    std::size_t index = 0;
    std::string name;
    bool verified = false;  // at least as correct as the previous step
    std::uint64_t competence_count = 0;  // |competence ∩ region|
    ReliabilityReport reliability;
    bool correct_on_region = false;  // competence covers dom(R) ∩ region
    std::optional<StateIndex> violating_state;
    std::vector<std::string> notes;  // spot-check findings and the like
};

enum class Termination { Correct, Threshold, Neither };

struct ChainReport {
    std::vector<StepReport> steps;
    bool verified = false;
    bool inconclusive = false;
    Termination termination = Termination::Neither;
    std::uint64_t domain_count = 0;  // |dom(R) ∩ region|
    std::vector<std::string> warnings;
};

// Checks each adjacent pair for relative correctness, estimates per-step
// reliability, and classifies how the chain ends. Verification stops scoring
// later steps as verified once a step fails, but still reports them.
ChainReport verify_chain(const DerivationChain& chain);

} // namespace relcheck
