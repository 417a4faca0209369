#pragma once

// Deterministic random generators for the property suites. Every suite seeds
// its own mt19937, so failures reproduce by case index.

#include <random>
#include <vector>

#include "relcheck/relcore.hpp"

namespace relcheck::testgen {

inline SpacePtr tiny_space(std::mt19937& rng, int max_states = 4) {
    std::uniform_int_distribution<int> d(1, max_states);
    int k = d(rng);
    return StateSpace::make("t" + std::to_string(k), {{"v", 0, k - 1}});
}

inline Relation random_relation(std::mt19937& rng, const SpacePtr& sp,
                                double density) {
    std::bernoulli_distribution bit(density);
    RelationBuilder b(sp);
    const StateIndex n = sp->size();
    for (StateIndex s = 0; s < n; ++s)
        for (StateIndex t = 0; t < n; ++t)
            if (bit(rng)) b.add(s, t);
    return b.finish();
}

// One output per state with probability `total`, none otherwise.
inline Relation random_deterministic(std::mt19937& rng, const SpacePtr& sp,
                                     double total) {
    std::bernoulli_distribution has(total);
    std::uniform_int_distribution<StateIndex> pick(0, sp->size() - 1);
    RelationBuilder b(sp);
    for (StateIndex s = 0; s < sp->size(); ++s)
        if (has(rng)) b.add(s, pick(rng));
    return b.finish();
}

inline StateSet random_subset(std::mt19937& rng, const SpacePtr& sp,
                              double density) {
    std::bernoulli_distribution bit(density);
    std::vector<StateIndex> idx;
    for (StateIndex s = 0; s < sp->size(); ++s)
        if (bit(rng)) idx.push_back(s);
    return StateSet(sp, std::move(idx));
}

// Deterministic refinement of a deterministic p: agrees with p on dom(p)
// (a deterministic row has no slack to shed), optionally serves new states.
inline Relation det_refining_extension(std::mt19937& rng, const SpacePtr& sp,
                                       const Relation& p) {
    std::vector<bool> served(sp->size(), false);
    RelationBuilder b(sp);
    p.for_each_pair([&](StateIndex s, StateIndex t) {
        b.add(s, t);
        served[s] = true;
    });
    std::bernoulli_distribution grow(0.4);
    std::uniform_int_distribution<StateIndex> pick(0, sp->size() - 1);
    for (StateIndex s = 0; s < sp->size(); ++s)
        if (!served[s] && grow(rng)) b.add(s, pick(rng));
    return b.finish();
}

// The mask's bits laid out row-major over |S| x |S|; enumerating all masks
// enumerates every relation on the space.
inline Relation relation_from_mask(const SpacePtr& sp, std::uint64_t mask) {
    const StateIndex n = sp->size();
    RelationBuilder b(sp);
    for (StateIndex s = 0; s < n; ++s)
        for (StateIndex t = 0; t < n; ++t)
            if ((mask >> (s * n + t)) & 1) b.add(s, t);
    return b.finish();
}

// Deterministic, total on dom(r), with every pair drawn from r: absolutely
// correct with respect to r by construction.
inline Relation correct_choice(std::mt19937& rng, const SpacePtr& sp,
                               const Relation& r) {
    std::vector<std::vector<StateIndex>> rows(sp->size());
    r.for_each_pair([&](StateIndex s, StateIndex t) { rows[s].push_back(t); });
    RelationBuilder b(sp);
    for (StateIndex s = 0; s < sp->size(); ++s) {
        if (rows[s].empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, rows[s].size() - 1);
        b.add(s, rows[s][pick(rng)]);
    }
    return b.finish();
}

} // namespace relcheck::testgen
