#include "relcheck/proglang.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <set>

namespace relcheck {

namespace {

StmtPtr mk_stmt(Stmt s) { return std::make_shared<const Stmt>(std::move(s)); }
ExprPtr mk_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
BoolPtr mk_bool(BoolExpr b) { return std::make_shared<const BoolExpr>(std::move(b)); }

// --- parsing ---------------------------------------------------------------

// Names resolve at bind time; while parsing, every name is provisionally valid.
struct DeferScope final : VarScope {
    int resolve(const std::string&) const override {
        return std::numeric_limits<int>::max();
    }
};

bool at_decl_keyword(const TokenStream& ts) {
    return ts.at_ident("nat") || ts.at_ident("int");
}

StmtPtr parse_stmt(TokenStream& ts, const DeferScope& scope);

StmtPtr parse_braced_body(TokenStream& ts, const DeferScope& scope) {
    const Token open = ts.peek();
    ts.expect(Tok::LBrace, "'{'");

    std::vector<VarDecl> locals;
    while (at_decl_keyword(ts)) {
        bool is_nat = ts.at_ident("nat");
        const Token kw = ts.next();
        std::string name = ts.expect(Tok::Ident, "a variable name").text;
        Int lo = 0, hi = -1;  // hi < lo: range omitted
        if (ts.accept(Tok::Colon)) {
            bool neg = ts.accept(Tok::Minus);
            lo = ts.expect(Tok::Int, "an integer").value * (neg ? -1 : 1);
            ts.expect(Tok::DotDot, "'..'");
            neg = ts.accept(Tok::Minus);
            hi = ts.expect(Tok::Int, "an integer").value * (neg ? -1 : 1);
            if (hi < lo)
                throw ParseError("empty range " + std::to_string(lo) + ".." +
                                     std::to_string(hi) + " for '" + name + "'",
                                 kw.line, kw.col);
            if (is_nat && lo < 0)
                throw ParseError("nat '" + name + "' cannot range below 0", kw.line,
                                 kw.col);
        }
        ts.expect(Tok::Semi, "';'");
        locals.push_back({std::move(name), lo, hi});
    }

    std::vector<StmtPtr> stmts;
    while (!ts.at(Tok::RBrace)) {
        if (ts.at(Tok::End)) ts.fail("unterminated block");
        stmts.push_back(parse_stmt(ts, scope));
    }
    ts.next();

    Stmt seq;
    seq.kind = Stmt::Kind::Seq;
    seq.stmts = std::move(stmts);
    seq.line = open.line;
    seq.col = open.col;
    if (locals.empty()) return mk_stmt(std::move(seq));

    Stmt block;
    block.kind = Stmt::Kind::Block;
    block.locals = std::move(locals);
    block.body = mk_stmt(std::move(seq));
    block.line = open.line;
    block.col = open.col;
    return mk_stmt(std::move(block));
}

StmtPtr parse_stmt(TokenStream& ts, const DeferScope& scope) {
    const Token t = ts.peek();
    if (ts.at(Tok::LBrace)) return parse_braced_body(ts, scope);
    if (ts.accept_ident("abort")) {
        ts.expect(Tok::Semi, "';'");
        Stmt s;
        s.kind = Stmt::Kind::Abort;
        s.line = t.line;
        s.col = t.col;
        return mk_stmt(std::move(s));
    }
    if (ts.accept_ident("skip")) {
        ts.expect(Tok::Semi, "';'");
        Stmt s;
        s.kind = Stmt::Kind::Skip;
        s.line = t.line;
        s.col = t.col;
        return mk_stmt(std::move(s));
    }
    if (ts.accept_ident("if") || ts.accept_ident("while")) {
        Stmt s;
        s.kind = t.text == "while" ? Stmt::Kind::While : Stmt::Kind::If;
        ts.expect(Tok::LParen, "'('");
        s.cond = parse_bool(ts, scope, /*primed_ok=*/false);
        ts.expect(Tok::RParen, "')'");
        s.body = parse_braced_body(ts, scope);
        if (s.kind == Stmt::Kind::If && ts.accept_ident("else")) {
            s.kind = Stmt::Kind::IfElse;
            s.els = parse_braced_body(ts, scope);
        }
        s.line = t.line;
        s.col = t.col;
        return mk_stmt(std::move(s));
    }
    if (at_decl_keyword(ts))
        ts.fail("declarations must come first in a block");
    if (ts.at(Tok::PrimedIdent)) ts.fail("cannot assign to a primed variable");
    if (ts.at(Tok::Ident)) {
        Stmt s;
        s.kind = Stmt::Kind::Assign;
        s.var = ts.next().text;
        ts.expect(Tok::Assign, "'='");
        s.rhs = parse_expr(ts, scope, /*primed_ok=*/false);
        ts.expect(Tok::Semi, "';'");
        s.line = t.line;
        s.col = t.col;
        return mk_stmt(std::move(s));
    }
    ts.fail("expected a statement");
}

} // namespace

Program parse_program(const std::string& text) {
    TokenStream ts(lex(text));
    DeferScope scope;
    Program p;
    ts.expect_ident("program");
    p.name = ts.expect(Tok::Ident, "a program name").text;
    ts.expect_ident("over");
    p.space_name = ts.expect(Tok::Ident, "a space name").text;
    p.body = parse_braced_body(ts, scope);
    if (!ts.at(Tok::End)) ts.fail("trailing input after program body");
    return p;
}

// --- binding -----------------------------------------------------------------

namespace {

// 2^64 stands in for "at least 2^64"; one fixed point keeps repeated
// multiplication from wrapping 128 bits no matter how many blocks nest.
constexpr unsigned __int128 kSaturated = (unsigned __int128)1 << 64;

unsigned __int128 mul_sat(unsigned __int128 a, std::uint64_t b) {
    if (a >= kSaturated) return kSaturated;
    a *= b;
    return a >= kSaturated ? kSaturated : a;
}

struct BindCtx {
    std::vector<VarDecl> scope;  // space variables, then enclosing blocks' locals
    std::optional<std::pair<Int, Int>> default_range;
    unsigned __int128 max_extension = 0;

    int find(const std::string& name) const {
        for (std::size_t i = 0; i < scope.size(); ++i)
            if (scope[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

ExprPtr bind_expr(const ExprPtr& e, const BindCtx& ctx) {
    Expr out = *e;
    if (out.kind == Expr::Kind::Var) {
        out.slot = ctx.find(out.name);
        if (out.slot < 0)
            throw InputError("undeclared variable '" + out.name + "' at line " +
                             std::to_string(out.line));
        return mk_expr(std::move(out));
    }
    if (out.a) out.a = bind_expr(out.a, ctx);
    if (out.b) out.b = bind_expr(out.b, ctx);
    return mk_expr(std::move(out));
}

BoolPtr bind_bool(const BoolPtr& b, const BindCtx& ctx) {
    BoolExpr out = *b;
    if (out.ea) out.ea = bind_expr(out.ea, ctx);
    if (out.eb) out.eb = bind_expr(out.eb, ctx);
    if (out.ba) out.ba = bind_bool(out.ba, ctx);
    if (out.bb) out.bb = bind_bool(out.bb, ctx);
    return mk_bool(std::move(out));
}

StmtPtr bind_stmt(const StmtPtr& st, BindCtx& ctx, unsigned __int128 cur_size) {
    Stmt out = *st;
    switch (out.kind) {
        case Stmt::Kind::Abort:
        case Stmt::Kind::Skip: break;
        case Stmt::Kind::Assign: {
            out.slot = ctx.find(out.var);
            if (out.slot < 0)
                throw InputError("undeclared variable '" + out.var + "' at line " +
                                 std::to_string(out.line));
            out.lo = ctx.scope[out.slot].lo;
            out.hi = ctx.scope[out.slot].hi;
            out.rhs = bind_expr(out.rhs, ctx);
            break;
        }
        case Stmt::Kind::Seq:
            for (StmtPtr& s : out.stmts) s = bind_stmt(s, ctx, cur_size);
            break;
        case Stmt::Kind::If:
        case Stmt::Kind::While:
            out.cond = bind_bool(out.cond, ctx);
            out.body = bind_stmt(out.body, ctx, cur_size);
            break;
        case Stmt::Kind::IfElse:
            out.cond = bind_bool(out.cond, ctx);
            out.body = bind_stmt(out.body, ctx, cur_size);
            out.els = bind_stmt(out.els, ctx, cur_size);
            break;
        case Stmt::Kind::Block: {
            for (VarDecl& v : out.locals) {
                if (v.hi < v.lo) {
                    if (!ctx.default_range)
                        throw InputError("local '" + v.name + "' at line " +
                                         std::to_string(out.line) +
                                         " has no range and no default range was given");
                    v.lo = ctx.default_range->first;
                    v.hi = ctx.default_range->second;
                }
                if (ctx.find(v.name) >= 0)
                    throw InputError("local '" + v.name + "' at line " +
                                     std::to_string(out.line) +
                                     " shadows a variable already in scope");
                ctx.scope.push_back(v);
                cur_size = mul_sat(cur_size,
                                   static_cast<std::uint64_t>(v.hi - v.lo) + 1);
            }
            ctx.max_extension = std::max(ctx.max_extension, cur_size);
            out.body = bind_stmt(out.body, ctx, cur_size);
            ctx.scope.resize(ctx.scope.size() - out.locals.size());
            break;
        }
    }
    return mk_stmt(std::move(out));
}

// --- read-before-assignment warnings ----------------------------------------

void expr_reads(const Expr& e, std::vector<int>& slots) {
    if (e.kind == Expr::Kind::Var) {
        slots.push_back(e.slot);
        return;
    }
    if (e.a) expr_reads(*e.a, slots);
    if (e.b) expr_reads(*e.b, slots);
}

void bool_reads(const BoolExpr& b, std::vector<int>& slots) {
    if (b.ea) expr_reads(*b.ea, slots);
    if (b.eb) expr_reads(*b.eb, slots);
    if (b.ba) bool_reads(*b.ba, slots);
    if (b.bb) bool_reads(*b.bb, slots);
}

struct FlowCtx {
    std::vector<VarDecl> scope;  // mirrors bind-time slot numbering
    std::set<int> locals;        // slots owned by some enclosing block
    std::set<int> flagged;
    std::vector<std::string>* warnings = nullptr;

    void check(const std::vector<int>& reads, const std::set<int>& assigned, int line) {
        for (int s : reads) {
            if (locals.count(s) && !assigned.count(s) && !flagged.count(s)) {
                flagged.insert(s);
                warnings->push_back("local '" + scope[s].name +
                                    "' may be read before it is assigned (line " +
                                    std::to_string(line) + ")");
            }
        }
    }
};

// Returns the set of slots assigned on every path through `st`. Branch bodies
// are analyzed for reads but only definitely-assigned slots flow onward.
std::set<int> flow(const Stmt& st, std::set<int> assigned, FlowCtx& ctx) {
    switch (st.kind) {
        case Stmt::Kind::Abort:
        case Stmt::Kind::Skip: return assigned;
        case Stmt::Kind::Assign: {
            std::vector<int> reads;
            expr_reads(*st.rhs, reads);
            ctx.check(reads, assigned, st.line);
            assigned.insert(st.slot);
            return assigned;
        }
        case Stmt::Kind::Seq:
            for (const StmtPtr& s : st.stmts) assigned = flow(*s, std::move(assigned), ctx);
            return assigned;
        case Stmt::Kind::If: {
            std::vector<int> reads;
            bool_reads(*st.cond, reads);
            ctx.check(reads, assigned, st.line);
            flow(*st.body, assigned, ctx);
            return assigned;
        }
        case Stmt::Kind::IfElse: {
            std::vector<int> reads;
            bool_reads(*st.cond, reads);
            ctx.check(reads, assigned, st.line);
            std::set<int> a = flow(*st.body, assigned, ctx);
            std::set<int> b = flow(*st.els, assigned, ctx);
            std::set<int> both;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(both, both.begin()));
            return both;
        }
        case Stmt::Kind::While: {
            std::vector<int> reads;
            bool_reads(*st.cond, reads);
            ctx.check(reads, assigned, st.line);
            flow(*st.body, assigned, ctx);
            return assigned;
        }
        case Stmt::Kind::Block: {
            int first = static_cast<int>(ctx.scope.size());
            for (const VarDecl& v : st.locals) {
                ctx.locals.insert(static_cast<int>(ctx.scope.size()));
                ctx.scope.push_back(v);
            }
            std::set<int> after = flow(*st.body, std::move(assigned), ctx);
            for (int i = first; i < first + static_cast<int>(st.locals.size()); ++i) {
                ctx.locals.erase(i);
                after.erase(i);
            }
            ctx.scope.resize(static_cast<std::size_t>(first));
            return after;
        }
    }
    return assigned;
}

} // namespace

BoundProgram bind_program(const Program& p, SpacePtr space,
                          std::optional<std::pair<Int, Int>> default_range) {
    if (!space) throw InputError("bind_program: no space given");
    if (!p.space_name.empty() && !space->name().empty() && p.space_name != space->name())
        throw InputError("program '" + p.name + "' is declared over space '" +
                         p.space_name + "' but was bound against " + space->describe());
    BindCtx ctx;
    ctx.scope = space->vars();
    ctx.default_range = default_range;
    ctx.max_extension = space->size();

    BoundProgram out;
    out.prog.name = p.name;
    out.prog.space_name = p.space_name;
    out.prog.body = bind_stmt(p.body, ctx, space->size());
    out.space = std::move(space);
    out.max_extension = ctx.max_extension >= kSaturated
                            ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(ctx.max_extension);

    FlowCtx fctx;
    fctx.scope = out.space->vars();
    fctx.warnings = &out.warnings;
    flow(*out.prog.body, {}, fctx);
    return out;
}

// --- denotational semantics --------------------------------------------------

namespace {

StateSet cond_states(const BoolExpr& cond, const SpacePtr& space) {
    std::vector<StateIndex> idx;
    std::vector<Int> vals;
    vals.reserve(space->var_count());
    for (const VarDecl& v : space->vars()) vals.push_back(v.lo);
    StateIndex s = 0;
    do {
        if (eval_bool(cond, vals.data(), nullptr)) idx.push_back(s);
        ++s;
    } while (advance_values(*space, vals));
    return StateSet(space, std::move(idx));
}

Relation denote_stmt(const Stmt& st, const SpacePtr& space, std::uint64_t cap) {
    switch (st.kind) {
        case Stmt::Kind::Abort: return Relation::empty(space);
        case Stmt::Kind::Skip: return Relation::identity(space);
        case Stmt::Kind::Assign: {
            RelationBuilder b(space);
            std::vector<Int> vals;
            vals.reserve(space->var_count());
            for (const VarDecl& v : space->vars()) vals.push_back(v.lo);
            StateIndex s = 0;
            do {
                auto v = eval_expr(*st.rhs, vals.data(), nullptr);
                if (v && *v >= st.lo && *v <= st.hi) {
                    Int old = vals[st.slot];
                    vals[st.slot] = *v;
                    b.add(s, space->index_of(vals));
                    vals[st.slot] = old;
                }
                ++s;
            } while (advance_values(*space, vals));
            return b.finish();
        }
        case Stmt::Kind::Seq: {
            if (st.stmts.empty()) return Relation::identity(space);
            Relation r = denote_stmt(*st.stmts.front(), space, cap);
            for (std::size_t i = 1; i < st.stmts.size(); ++i)
                r = compose(r, denote_stmt(*st.stmts[i], space, cap));
            return r;
        }
        case Stmt::Kind::If: {
            StateSet t = cond_states(*st.cond, space);
            return union_of(restrict_domain(denote_stmt(*st.body, space, cap), t),
                            monotype(set_complement(t)));
        }
        case Stmt::Kind::IfElse: {
            StateSet t = cond_states(*st.cond, space);
            return union_of(restrict_domain(denote_stmt(*st.body, space, cap), t),
                            restrict_domain(denote_stmt(*st.els, space, cap),
                                            set_complement(t)));
        }
        case Stmt::Kind::While: {
            StateSet t = cond_states(*st.cond, space);
            Relation body = restrict_domain(denote_stmt(*st.body, space, cap), t);
            return restrict_range(rt_closure(body), set_complement(t));
        }
        case Stmt::Kind::Block: {
            unsigned __int128 ext_size = space->size();
            for (const VarDecl& v : st.locals) {
                ext_size *= static_cast<std::uint64_t>(v.hi - v.lo) + 1;
                if (ext_size > cap)
                    throw CapacityError(
                        "block at line " + std::to_string(st.line) + " extends " +
                        space->describe() + " beyond the cap of " +
                        std::to_string(cap) + " states");
            }
            SpacePtr ext = space->extend(st.locals);
            Relation inner = denote_stmt(*st.body, ext, cap);
            // Locals are the fastest-moving digits, so dropping them from a
            // state index is one division.
            std::uint64_t factor = ext->size() / space->size();
            RelationBuilder b(space);
            inner.for_each_pair(
                [&](StateIndex s, StateIndex t) { b.add(s / factor, t / factor); });
            return b.finish();
        }
    }
    throw Error("unreachable statement kind");
}

} // namespace

Relation denote(const BoundProgram& p, std::uint64_t cap) {
    if (p.space->size() > cap)
        throw CapacityError("space " + p.space->describe() +
                            " exceeds the cap of " + std::to_string(cap) + " states");
    return denote_stmt(*p.prog.body, p.space, cap);
}

// --- interpreter ---------------------------------------------------------------

namespace {

enum class RunStatus { Ok, Aborted, Undefined, Fuel };

RunStatus exec(const Stmt& st, std::vector<Int>& vals, std::uint64_t fuel) {
    switch (st.kind) {
        case Stmt::Kind::Abort: return RunStatus::Aborted;
        case Stmt::Kind::Skip: return RunStatus::Ok;
        case Stmt::Kind::Assign: {
            auto v = eval_expr(*st.rhs, vals.data(), nullptr);
            if (!v || *v < st.lo || *v > st.hi) return RunStatus::Undefined;
            vals[st.slot] = *v;
            return RunStatus::Ok;
        }
        case Stmt::Kind::Seq:
            for (const StmtPtr& s : st.stmts) {
                RunStatus r = exec(*s, vals, fuel);
                if (r != RunStatus::Ok) return r;
            }
            return RunStatus::Ok;
        case Stmt::Kind::If:
            if (eval_bool(*st.cond, vals.data(), nullptr))
                return exec(*st.body, vals, fuel);
            return RunStatus::Ok;
        case Stmt::Kind::IfElse:
            return exec(eval_bool(*st.cond, vals.data(), nullptr) ? *st.body : *st.els,
                        vals, fuel);
        case Stmt::Kind::While:
            for (std::uint64_t i = 0;; ++i) {
                if (!eval_bool(*st.cond, vals.data(), nullptr)) return RunStatus::Ok;
                if (i == fuel) return RunStatus::Fuel;
                RunStatus r = exec(*st.body, vals, fuel);
                if (r != RunStatus::Ok) return r;
            }
        case Stmt::Kind::Block: {
            std::size_t base = vals.size();
            for (const VarDecl& v : st.locals) vals.push_back(v.lo);
            RunStatus r = exec(*st.body, vals, fuel);
            vals.resize(base);
            return r;
        }
    }
    throw Error("unreachable statement kind");
}

} // namespace

Outcome::Kind run_values(const BoundProgram& p, std::vector<Int>& values,
                         std::uint64_t fuel) {
    switch (exec(*p.prog.body, values, fuel)) {
        case RunStatus::Ok: return Outcome::Kind::Final;
        case RunStatus::Aborted: return Outcome::Kind::Aborted;
        case RunStatus::Undefined: return Outcome::Kind::Undefined;
        case RunStatus::Fuel: return Outcome::Kind::FuelExhausted;
    }
    throw Error("unreachable run status");
}

Outcome interpret(const BoundProgram& p, StateIndex s, std::uint64_t fuel) {
    std::vector<Int> vals = p.space->values_at(s);
    Outcome out{run_values(p, vals, fuel), 0};
    if (out.kind == Outcome::Kind::Final) out.state = p.space->index_of(vals);
    return out;
}

std::uint64_t sufficient_fuel(const BoundProgram& p) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    return p.max_extension == kMax ? kMax : p.max_extension + 1;
}

AgreementReport agreement_check(const BoundProgram& p, std::uint64_t fuel,
                                std::uint64_t cap) {
    Relation d = denote(p, cap);
    StateSet dom = domain(d);
    const std::uint64_t bound = sufficient_fuel(p);
    AgreementReport report;
    for (StateIndex s = 0; s < p.space->size(); ++s) {
        std::vector<Int> vals = p.space->values_at(s);
        Outcome::Kind k = run_values(p, vals, fuel);
        ++report.checked;
        bool ok = false;
        switch (k) {
            case Outcome::Kind::Final:
                ok = d.contains(s, p.space->index_of(vals));
                break;
            case Outcome::Kind::Aborted:
            case Outcome::Kind::Undefined:
                ok = !dom.contains(s);
                break;
            case Outcome::Kind::FuelExhausted:
                if (fuel < bound) {
                    report.inconclusive.push_back(s);
                    continue;
                }
                ok = !dom.contains(s);
                break;
        }
        if (!ok) report.mismatches.push_back(s);
    }
    // A Final check only proves its pair is present. The interpreter follows
    // one path, so the denotation must not hold extra pairs either; any
    // surplus shows up as a source with two successors.
    if (!is_deterministic(d)) {
        StateIndex prev = 0;
        bool have_prev = false, found = false;
        d.for_each_pair([&](StateIndex s, StateIndex) {
            if (found) return;
            if (have_prev && s == prev) {
                report.mismatches.push_back(s);
                found = true;
            }
            prev = s;
            have_prev = true;
        });
    }
    return report;
}

} // namespace relcheck
