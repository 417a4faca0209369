#include "relcheck/relcore.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "relcheck/lexer.hpp"

namespace relcheck {

namespace {

// Materializing full sets / identities on a sparse space is linear in |S|;
// past this it is no longer a sensible thing to ask for.
constexpr std::uint64_t kEnumerationLimit = 1ull << 26;

std::uint64_t tail_mask(std::uint64_t nbits) {
    std::uint64_t rem = nbits % 64;
    return rem == 0 ? ~0ull : (1ull << rem) - 1;
}

} // namespace

// --- StateSpace -------------------------------------------------------------

SpacePtr StateSpace::make(std::string name, std::vector<VarDecl> vars,
                          std::uint64_t dense_budget_bits) {
    auto sp = std::make_shared<StateSpace>();
    sp->name_ = std::move(name);
    sp->vars_ = std::move(vars);
    sp->dense_budget_bits_ = dense_budget_bits;
    if (sp->vars_.empty())
        throw InputError("state space needs at least one variable");
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < sp->vars_.size(); ++i) {
        const VarDecl& v = sp->vars_[i];
        if (v.name.empty())
            throw InputError("state space variable with empty name");
        for (std::size_t j = 0; j < i; ++j)
            if (sp->vars_[j].name == v.name)
                throw InputError("duplicate variable '" + v.name + "' in state space");
        if (v.lo > v.hi)
            throw InputError("variable '" + v.name + "': empty range " +
                             std::to_string(v.lo) + ".." + std::to_string(v.hi));
        std::uint64_t r = static_cast<std::uint64_t>(v.hi - v.lo) + 1;
        sp->radix_.push_back(r);
        total *= r;
        if (total > ~0ull)
            throw InputError("state space too large for 64-bit indexing");
    }
    sp->size_ = static_cast<std::uint64_t>(total);
    sp->stride_.assign(sp->vars_.size(), 1);
    for (std::size_t i = sp->vars_.size(); i-- > 1;)
        sp->stride_[i - 1] = sp->stride_[i] * sp->radix_[i];
    unsigned __int128 sq = static_cast<unsigned __int128>(sp->size_) * sp->size_;
    sp->dense_capable_ = sq <= dense_budget_bits;
    return sp;
}

int StateSpace::slot_of(const std::string& var) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == var) return static_cast<int>(i);
    return -1;
}

StateIndex StateSpace::index_of(const std::vector<Int>& values) const {
    if (values.size() != vars_.size())
        throw InputError("state has " + std::to_string(values.size()) +
                         " values, space " + describe() + " has " +
                         std::to_string(vars_.size()) + " variables");
    StateIndex idx = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!in_range(i, values[i]))
            throw InputError("value " + std::to_string(values[i]) +
                             " out of range for variable '" + vars_[i].name + "' (" +
                             std::to_string(vars_[i].lo) + ".." +
                             std::to_string(vars_[i].hi) + ")");
        idx += static_cast<std::uint64_t>(values[i] - vars_[i].lo) * stride_[i];
    }
    return idx;
}

std::vector<Int> StateSpace::values_at(StateIndex idx) const {
    std::vector<Int> values(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        values[i] = vars_[i].lo + static_cast<Int>((idx / stride_[i]) % radix_[i]);
    }
    return values;
}

bool StateSpace::same_as(const StateSpace& other) const {
    if (this == &other) return true;
    if (name_ != other.name_ || vars_.size() != other.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name != other.vars_[i].name || vars_[i].lo != other.vars_[i].lo ||
            vars_[i].hi != other.vars_[i].hi)
            return false;
    }
    return true;
}

SpacePtr StateSpace::extend(const std::vector<VarDecl>& locals) const {
    std::vector<VarDecl> all = vars_;
    all.insert(all.end(), locals.begin(), locals.end());
    return make(name_, std::move(all), dense_budget_bits_);
}

std::string StateSpace::describe() const {
    std::string out = name_.empty() ? "(unnamed)" : name_;
    out += " (";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) out += ", ";
        out += vars_[i].name + ":" + std::to_string(vars_[i].lo) + ".." +
               std::to_string(vars_[i].hi);
    }
    out += ")";
    return out;
}

void ensure_same_space(const SpacePtr& a, const SpacePtr& b, const char* op) {
    if (!a || !b)
        throw InputError(std::string(op) + ": relation without a space");
    if (a.get() == b.get()) return;
    if (!a->same_as(*b))
        throw InputError(std::string(op) + ": operands live on different spaces: " +
                         a->describe() + " vs " + b->describe());
}

// --- StateSet ---------------------------------------------------------------

StateSet::StateSet(SpacePtr space, std::vector<StateIndex> sorted_unique)
    : space_(std::move(space)), idx_(std::move(sorted_unique)) {
    if (!space_) throw InputError("state set without a space");
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        if (idx_[i] >= space_->size())
            throw InputError("state index out of bounds for " + space_->describe());
        if (i && idx_[i - 1] >= idx_[i])
            throw InputError("state set indices not sorted/unique");
    }
}

StateSet StateSet::full(SpacePtr space) {
    if (space->size() > kEnumerationLimit)
        throw CapacityError("cannot enumerate all states of " + space->describe());
    std::vector<StateIndex> all(space->size());
    for (StateIndex i = 0; i < all.size(); ++i) all[i] = i;
    return StateSet(std::move(space), std::move(all));
}

bool StateSet::contains(StateIndex s) const {
    return std::binary_search(idx_.begin(), idx_.end(), s);
}

StateSet set_union(const StateSet& a, const StateSet& b) {
    ensure_same_space(a.space(), b.space(), "set_union");
    std::vector<StateIndex> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(),
                   b.indices().end(), std::back_inserter(out));
    return StateSet(a.space(), std::move(out));
}

StateSet set_intersect(const StateSet& a, const StateSet& b) {
    ensure_same_space(a.space(), b.space(), "set_intersect");
    std::vector<StateIndex> out;
    std::set_intersection(a.indices().begin(), a.indices().end(), b.indices().begin(),
                          b.indices().end(), std::back_inserter(out));
    return StateSet(a.space(), std::move(out));
}

StateSet set_difference(const StateSet& a, const StateSet& b) {
    ensure_same_space(a.space(), b.space(), "set_difference");
    std::vector<StateIndex> out;
    std::set_difference(a.indices().begin(), a.indices().end(), b.indices().begin(),
                        b.indices().end(), std::back_inserter(out));
    return StateSet(a.space(), std::move(out));
}

StateSet set_complement(const StateSet& a) {
    const SpacePtr& sp = a.space();
    if (sp->size() > kEnumerationLimit)
        throw CapacityError("cannot complement a state set on " + sp->describe());
    std::vector<StateIndex> out;
    out.reserve(sp->size() - a.size());
    auto it = a.indices().begin();
    for (StateIndex i = 0; i < sp->size(); ++i) {
        if (it != a.indices().end() && *it == i) { ++it; continue; }
        out.push_back(i);
    }
    return StateSet(sp, std::move(out));
}

bool subset_of(const StateSet& a, const StateSet& b) {
    ensure_same_space(a.space(), b.space(), "subset_of");
    return std::includes(b.indices().begin(), b.indices().end(), a.indices().begin(),
                         a.indices().end());
}

bool operator==(const StateSet& a, const StateSet& b) {
    ensure_same_space(a.space(), b.space(), "state set comparison");
    return a.indices() == b.indices();
}

// --- Relation ---------------------------------------------------------------

Relation::Relation(SpacePtr space) : space_(std::move(space)) {
    dense_ = space_->dense_capable();
    if (dense_) {
        wpr_ = (space_->size() + 63) / 64;
        bits_.assign(space_->size() * wpr_, 0);
    }
}

Relation Relation::empty(SpacePtr space) { return Relation(std::move(space)); }

Relation Relation::identity(SpacePtr space) {
    Relation r(std::move(space));
    std::uint64_t n = r.space_->size();
    if (r.dense_) {
        for (StateIndex i = 0; i < n; ++i)
            r.bits_[i * r.wpr_ + i / 64] |= 1ull << (i % 64);
    } else {
        if (n > kEnumerationLimit)
            throw CapacityError("identity relation on " + r.space_->describe() +
                                " is too large to materialize");
        r.pairs_.reserve(n);
        for (StateIndex i = 0; i < n; ++i) r.pairs_.emplace_back(i, i);
    }
    return r;
}

Relation Relation::universal(SpacePtr space) {
    Relation r(std::move(space));
    if (!r.dense_)
        throw CapacityError("universal relation on " + r.space_->describe() +
                            " exceeds the dense budget");
    std::uint64_t n = r.space_->size(), mask = tail_mask(n);
    for (StateIndex i = 0; i < n; ++i) {
        for (std::uint64_t w = 0; w < r.wpr_; ++w)
            r.bits_[i * r.wpr_ + w] = (w + 1 == r.wpr_) ? mask : ~0ull;
    }
    return r;
}

Relation Relation::from_pairs(SpacePtr space, std::vector<Pair> pairs) {
    RelationBuilder b(std::move(space));
    for (const Pair& p : pairs) b.add(p.first, p.second);
    return b.finish();
}

std::uint64_t Relation::pair_count() const {
    if (!dense_) return pairs_.size();
    std::uint64_t n = 0;
    for (std::uint64_t w : bits_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

bool Relation::contains(StateIndex s, StateIndex t) const {
    if (dense_) return (bits_[s * wpr_ + t / 64] >> (t % 64)) & 1;
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{s, t});
}

std::optional<Pair> Relation::first_pair() const {
    if (!dense_) return pairs_.empty() ? std::nullopt : std::optional<Pair>(pairs_.front());
    std::uint64_t n = space_->size();
    for (StateIndex s = 0; s < n; ++s) {
        for (std::uint64_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = bits_[s * wpr_ + w];
            if (word) return Pair{s, w * 64 + std::countr_zero(word)};
        }
    }
    return std::nullopt;
}

void Relation::for_each_pair(const std::function<void(StateIndex, StateIndex)>& fn) const {
    if (!dense_) {
        for (const Pair& p : pairs_) fn(p.first, p.second);
        return;
    }
    std::uint64_t n = space_->size();
    for (StateIndex s = 0; s < n; ++s) {
        for (std::uint64_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = bits_[s * wpr_ + w];
            while (word) {
                int b = std::countr_zero(word);
                fn(s, w * 64 + b);
                word &= word - 1;
            }
        }
    }
}

std::vector<Pair> Relation::pairs() const {
    std::vector<Pair> out;
    out.reserve(pair_count());
    for_each_pair([&](StateIndex s, StateIndex t) { out.emplace_back(s, t); });
    return out;
}

bool operator==(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "relation comparison");
    return a.dense_ ? a.bits_ == b.bits_ : a.pairs_ == b.pairs_;
}

RelationBuilder::RelationBuilder(SpacePtr space) : rel_(std::move(space)) {}

void RelationBuilder::add(StateIndex s, StateIndex t) {
    std::uint64_t n = rel_.space_->size();
    if (s >= n || t >= n)
        throw InputError("pair index out of bounds for " + rel_.space_->describe());
    if (rel_.dense_)
        rel_.bits_[s * rel_.wpr_ + t / 64] |= 1ull << (t % 64);
    else
        rel_.pairs_.emplace_back(s, t);
}

Relation RelationBuilder::finish() {
    if (!rel_.dense_) {
        std::sort(rel_.pairs_.begin(), rel_.pairs_.end());
        rel_.pairs_.erase(std::unique(rel_.pairs_.begin(), rel_.pairs_.end()),
                          rel_.pairs_.end());
    }
    return std::move(rel_);
}

// --- set operations ----------------------------------------------------------

Relation union_of(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "union");
    Relation out(a.space_);
    if (a.dense_) {
        for (std::size_t i = 0; i < a.bits_.size(); ++i) out.bits_[i] = a.bits_[i] | b.bits_[i];
    } else {
        out.pairs_.reserve(a.pairs_.size() + b.pairs_.size());
        std::set_union(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(), b.pairs_.end(),
                       std::back_inserter(out.pairs_));
    }
    return out;
}

Relation intersect(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "intersect");
    Relation out(a.space_);
    if (a.dense_) {
        for (std::size_t i = 0; i < a.bits_.size(); ++i) out.bits_[i] = a.bits_[i] & b.bits_[i];
    } else {
        std::set_intersection(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(),
                              b.pairs_.end(), std::back_inserter(out.pairs_));
    }
    return out;
}

Relation difference(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "difference");
    Relation out(a.space_);
    if (a.dense_) {
        for (std::size_t i = 0; i < a.bits_.size(); ++i) out.bits_[i] = a.bits_[i] & ~b.bits_[i];
    } else {
        std::set_difference(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(), b.pairs_.end(),
                            std::back_inserter(out.pairs_));
    }
    return out;
}

Relation complement(const Relation& a) {
    if (!a.dense_)
        throw CapacityError("complement on " + a.space_->describe() +
                            " exceeds the dense budget; rewrite with difference");
    Relation out(a.space_);
    std::uint64_t n = a.space_->size(), mask = tail_mask(n);
    for (StateIndex s = 0; s < n; ++s) {
        for (std::uint64_t w = 0; w < a.wpr_; ++w) {
            std::uint64_t inv = ~a.bits_[s * a.wpr_ + w];
            out.bits_[s * a.wpr_ + w] = (w + 1 == a.wpr_) ? (inv & mask) : inv;
        }
    }
    return out;
}

// --- relational operators -----------------------------------------------------

Relation compose(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "compose");
    Relation out(a.space_);
    if (a.dense_) {
        std::uint64_t n = a.space_->size(), wpr = a.wpr_;
        for (StateIndex s = 0; s < n; ++s) {
            std::uint64_t* dst = &out.bits_[s * wpr];
            for (std::uint64_t w = 0; w < wpr; ++w) {
                std::uint64_t word = a.bits_[s * wpr + w];
                while (word) {
                    StateIndex m = w * 64 + std::countr_zero(word);
                    word &= word - 1;
                    const std::uint64_t* src = &b.bits_[m * wpr];
                    for (std::uint64_t k = 0; k < wpr; ++k) dst[k] |= src[k];
                }
            }
        }
        return out;
    }
    auto cmp_first = [](const Pair& p, StateIndex m) { return p.first < m; };
    std::vector<Pair> result;
    StateIndex cached_m = 0;
    std::vector<Pair>::const_iterator lo = b.pairs_.end(), hi = b.pairs_.end();
    bool have_cache = false;
    for (const Pair& p : a.pairs_) {
        if (!have_cache || p.second != cached_m) {
            cached_m = p.second;
            lo = std::lower_bound(b.pairs_.begin(), b.pairs_.end(), cached_m, cmp_first);
            hi = lo;
            while (hi != b.pairs_.end() && hi->first == cached_m) ++hi;
            have_cache = true;
        }
        for (auto it = lo; it != hi; ++it) result.emplace_back(p.first, it->second);
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    out.pairs_ = std::move(result);
    return out;
}

Relation converse(const Relation& a) {
    Relation out(a.space_);
    if (a.dense_) {
        a.for_each_pair([&](StateIndex s, StateIndex t) {
            out.bits_[t * out.wpr_ + s / 64] |= 1ull << (s % 64);
        });
    } else {
        out.pairs_.reserve(a.pairs_.size());
        for (const Pair& p : a.pairs_) out.pairs_.emplace_back(p.second, p.first);
        std::sort(out.pairs_.begin(), out.pairs_.end());
    }
    return out;
}

Relation rt_closure(const Relation& a) {
    if (a.dense_) {
        std::uint64_t n = a.space_->size(), wpr = a.wpr_;
        Relation out = a;
        for (StateIndex i = 0; i < n; ++i) out.bits_[i * wpr + i / 64] |= 1ull << (i % 64);
        for (StateIndex k = 0; k < n; ++k) {
            const std::uint64_t* rowk = &out.bits_[k * wpr];
            for (StateIndex i = 0; i < n; ++i) {
                if ((out.bits_[i * wpr + k / 64] >> (k % 64)) & 1) {
                    std::uint64_t* rowi = &out.bits_[i * wpr];
                    for (std::uint64_t w = 0; w < wpr; ++w) rowi[w] |= rowk[w];
                }
            }
        }
        return out;
    }
    // Accumulate I, a, a^2, ... until no new pairs appear. Each round composes
    // the most recent additions with a, so the work tracks the new pairs only.
    Relation result = union_of(Relation::identity(a.space_), a);
    Relation frontier = a;
    while (true) {
        Relation next = compose(frontier, a);
        Relation fresh = difference(next, result);
        if (fresh.empty_rel()) break;
        result = union_of(result, fresh);
        frontier = std::move(fresh);
    }
    return result;
}

StateSet domain(const Relation& a) {
    std::vector<StateIndex> idx;
    if (a.dense_) {
        std::uint64_t n = a.space_->size();
        for (StateIndex s = 0; s < n; ++s) {
            for (std::uint64_t w = 0; w < a.wpr_; ++w) {
                if (a.bits_[s * a.wpr_ + w]) { idx.push_back(s); break; }
            }
        }
    } else {
        for (const Pair& p : a.pairs_) {
            if (idx.empty() || idx.back() != p.first) idx.push_back(p.first);
        }
    }
    return StateSet(a.space_, std::move(idx));
}

StateSet range_of(const Relation& a) { return domain(converse(a)); }

bool is_deterministic(const Relation& a) {
    if (a.dense_) {
        std::uint64_t n = a.space_->size();
        for (StateIndex s = 0; s < n; ++s) {
            int count = 0;
            for (std::uint64_t w = 0; w < a.wpr_ && count < 2; ++w)
                count += std::popcount(a.bits_[s * a.wpr_ + w]);
            if (count > 1) return false;
        }
        return true;
    }
    for (std::size_t i = 1; i < a.pairs_.size(); ++i)
        if (a.pairs_[i].first == a.pairs_[i - 1].first) return false;
    return true;
}

bool subset_of(const Relation& a, const Relation& b) {
    ensure_same_space(a.space_, b.space_, "subset_of");
    if (a.dense_) {
        for (std::size_t i = 0; i < a.bits_.size(); ++i)
            if (a.bits_[i] & ~b.bits_[i]) return false;
        return true;
    }
    return std::includes(b.pairs_.begin(), b.pairs_.end(), a.pairs_.begin(), a.pairs_.end());
}

Relation restrict_domain(const Relation& a, const StateSet& rows) {
    ensure_same_space(a.space_, rows.space(), "restrict_domain");
    Relation out(a.space_);
    if (a.dense_) {
        for (StateIndex s : rows.indices())
            std::copy_n(&a.bits_[s * a.wpr_], a.wpr_, &out.bits_[s * a.wpr_]);
    } else {
        auto it = rows.indices().begin();
        for (const Pair& p : a.pairs_) {
            while (it != rows.indices().end() && *it < p.first) ++it;
            if (it != rows.indices().end() && *it == p.first) out.pairs_.push_back(p);
        }
    }
    return out;
}

Relation restrict_range(const Relation& a, const StateSet& cols) {
    ensure_same_space(a.space_, cols.space(), "restrict_range");
    Relation out(a.space_);
    if (a.dense_) {
        std::vector<std::uint64_t> mask(a.wpr_, 0);
        for (StateIndex t : cols.indices()) mask[t / 64] |= 1ull << (t % 64);
        std::uint64_t n = a.space_->size();
        for (StateIndex s = 0; s < n; ++s)
            for (std::uint64_t w = 0; w < a.wpr_; ++w)
                out.bits_[s * a.wpr_ + w] = a.bits_[s * a.wpr_ + w] & mask[w];
    } else {
        for (const Pair& p : a.pairs_)
            if (cols.contains(p.second)) out.pairs_.push_back(p);
    }
    return out;
}

Relation vector_of(const StateSet& a) {
    const SpacePtr& sp = a.space();
    if (!sp->dense_capable())
        throw CapacityError("vector A x S on " + sp->describe() +
                            " exceeds the dense budget; use restrict_domain");
    Relation l = Relation::universal(sp);
    return restrict_domain(l, a);
}

Relation monotype(const StateSet& a) {
    RelationBuilder b(a.space());
    for (StateIndex s : a.indices()) b.add(s, s);
    return b.finish();
}

bool advance_values(const StateSpace& space, std::vector<Int>& values) {
    for (std::size_t i = values.size(); i-- > 0;) {
        if (values[i] < space.vars()[i].hi) {
            ++values[i];
            return true;
        }
        values[i] = space.vars()[i].lo;
    }
    return false;
}

// --- text formats -------------------------------------------------------------

namespace {

Int parse_int_value(TokenStream& ts) {
    bool neg = ts.accept(Tok::Minus);
    const Token& t = ts.expect(Tok::Int, "an integer");
    return neg ? -t.value : t.value;
}

std::vector<Int> parse_tuple(TokenStream& ts, const StateSpace& space) {
    ts.expect(Tok::LParen, "'('");
    std::vector<Int> values;
    if (!ts.at(Tok::RParen)) {
        values.push_back(parse_int_value(ts));
        while (ts.accept(Tok::Comma)) values.push_back(parse_int_value(ts));
    }
    const Token& close = ts.peek();
    ts.expect(Tok::RParen, "')'");
    if (values.size() != space.var_count())
        throw ParseError("tuple has " + std::to_string(values.size()) +
                             " values, space " + space.describe() + " has " +
                             std::to_string(space.var_count()),
                         close.line, close.col);
    return values;
}

} // namespace

SpacePtr parse_space(const std::string& text, std::uint64_t dense_budget_bits) {
    TokenStream ts(lex(text));
    ts.expect_ident("space");
    std::string name = ts.expect(Tok::Ident, "a space name").text;
    std::vector<VarDecl> vars;
    while (!ts.at(Tok::End)) {
        ts.expect_ident("var");
        VarDecl v;
        v.name = ts.expect(Tok::Ident, "a variable name").text;
        ts.expect(Tok::Colon, "':'");
        v.lo = parse_int_value(ts);
        ts.expect(Tok::DotDot, "'..'");
        v.hi = parse_int_value(ts);
        vars.push_back(std::move(v));
    }
    if (vars.empty()) ts.fail("space file declares no variables");
    return StateSpace::make(std::move(name), std::move(vars), dense_budget_bits);
}

std::string serialize_space(const StateSpace& space) {
    std::ostringstream out;
    out << "space " << (space.name().empty() ? "_" : space.name()) << "\n";
    for (const VarDecl& v : space.vars())
        out << "var " << v.name << " : " << v.lo << ".." << v.hi << "\n";
    return out.str();
}

Relation parse_relation_literal(const std::string& text, SpacePtr space) {
    TokenStream ts(lex(text));
    ts.expect_ident("space");
    std::string header = ts.expect(Tok::Ident, "a space name").text;
    if (header != "_" && !space->name().empty() && header != space->name())
        throw InputError("relation literal is declared on space '" + header +
                         "' but was loaded against " + space->describe());
    RelationBuilder b(space);
    while (!ts.at(Tok::End)) {
        std::vector<Int> from = parse_tuple(ts, *space);
        ts.expect(Tok::Arrow, "'->'");
        std::vector<Int> to = parse_tuple(ts, *space);
        b.add(space->index_of(from), space->index_of(to));
    }
    return b.finish();
}

std::string format_state(const StateSpace& space, StateIndex idx) {
    std::vector<Int> values = space.values_at(idx);
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out + ")";
}

std::string format_pair(const StateSpace& space, const Pair& p) {
    return format_state(space, p.first) + " -> " + format_state(space, p.second);
}

std::string serialize_relation(const Relation& rel) {
    const StateSpace& sp = *rel.space();
    std::ostringstream out;
    out << "space " << (sp.name().empty() ? "_" : sp.name()) << "\n";
    rel.for_each_pair([&](StateIndex s, StateIndex t) {
        out << format_pair(sp, {s, t}) << "\n";
    });
    return out.str();
}

StateIndex parse_state_tuple(const std::string& text, const StateSpace& space) {
    TokenStream ts(lex(text));
    std::vector<Int> values = parse_tuple(ts, space);
    if (!ts.at(Tok::End)) ts.fail("trailing input after state tuple");
    return space.index_of(values);
}

} // namespace relcheck
