#include "relcheck/speclang.hpp"

#include <algorithm>
#include <limits>

namespace relcheck {

// --- checked arithmetic -------------------------------------------------------

namespace {

constexpr Int kIntMin = std::numeric_limits<Int>::min();

std::optional<Int> checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
    return r;
}
std::optional<Int> checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
    return r;
}
std::optional<Int> checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

// Euclidean division: remainder always in [0, |b|).
std::optional<Int> checked_div(Int a, Int b) {
    if (b == 0 || (a == kIntMin && b == -1)) return std::nullopt;
    Int q = a / b, r = a % b;
    if (r < 0) q += (b > 0 ? -1 : 1);
    return q;
}
std::optional<Int> checked_mod(Int a, Int b) {
    if (b == 0) return std::nullopt;
    if (b == -1) return 0;  // a/-1 may overflow but the remainder is exact
    Int r = a % b;
    if (r < 0) r += (b > 0 ? b : -b);
    return r;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

} // namespace

std::optional<Int> checked_ceil_sqrt(Int n) {
    if (n < 0) return std::nullopt;
    std::uint64_t s = isqrt_u64(static_cast<std::uint64_t>(n));
    if (s * s == static_cast<std::uint64_t>(n)) return static_cast<Int>(s);
    return static_cast<Int>(s + 1);
}

bool is_perfect_square(Int n) {
    if (n < 0) return false;
    std::uint64_t s = isqrt_u64(static_cast<std::uint64_t>(n));
    return s * s == static_cast<std::uint64_t>(n);
}

// --- evaluation ----------------------------------------------------------------

std::optional<Int> eval_expr(const Expr& e, const Int* pre, const Int* post) {
    switch (e.kind) {
        case Expr::Kind::Lit: return e.lit;
        case Expr::Kind::Var: return (e.primed ? post : pre)[e.slot];
        case Expr::Kind::Neg: {
            auto v = eval_expr(*e.a, pre, post);
            if (!v) return std::nullopt;
            return checked_sub(0, *v);
        }
        case Expr::Kind::CeilSqrt: {
            auto v = eval_expr(*e.a, pre, post);
            if (!v) return std::nullopt;
            return checked_ceil_sqrt(*v);
        }
        default: break;
    }
    auto l = eval_expr(*e.a, pre, post);
    if (!l) return std::nullopt;
    auto r = eval_expr(*e.b, pre, post);
    if (!r) return std::nullopt;
    switch (e.kind) {
        case Expr::Kind::Add: return checked_add(*l, *r);
        case Expr::Kind::Sub: return checked_sub(*l, *r);
        case Expr::Kind::Mul: return checked_mul(*l, *r);
        case Expr::Kind::Div: return checked_div(*l, *r);
        case Expr::Kind::Mod: return checked_mod(*l, *r);
        default: throw Error("unreachable expression kind");
    }
}

bool eval_bool(const BoolExpr& b, const Int* pre, const Int* post) {
    switch (b.kind) {
        case BoolExpr::Kind::Lit: return b.lit;
        case BoolExpr::Kind::And:
            return eval_bool(*b.ba, pre, post) && eval_bool(*b.bb, pre, post);
        case BoolExpr::Kind::Or:
            return eval_bool(*b.ba, pre, post) || eval_bool(*b.bb, pre, post);
        case BoolExpr::Kind::Not: return !eval_bool(*b.ba, pre, post);
        case BoolExpr::Kind::PerfectSquare: {
            auto v = eval_expr(*b.ea, pre, post);
            return v && is_perfect_square(*v);
        }
        case BoolExpr::Kind::Cmp: {
            auto l = eval_expr(*b.ea, pre, post);
            if (!l) return false;
            auto r = eval_expr(*b.eb, pre, post);
            if (!r) return false;
            switch (b.op) {
                case BoolExpr::CmpOp::Eq: return *l == *r;
                case BoolExpr::CmpOp::Ne: return *l != *r;
                case BoolExpr::CmpOp::Lt: return *l < *r;
                case BoolExpr::CmpOp::Le: return *l <= *r;
                case BoolExpr::CmpOp::Gt: return *l > *r;
                case BoolExpr::CmpOp::Ge: return *l >= *r;
            }
        }
    }
    throw Error("unreachable boolean kind");
}

// --- parsing --------------------------------------------------------------------

namespace {

ExprPtr mk_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
BoolPtr mk_bool(BoolExpr b) { return std::make_shared<const BoolExpr>(std::move(b)); }

ExprPtr mk_binary(Expr::Kind k, ExprPtr a, ExprPtr b, const Token& at) {
    Expr e;
    e.kind = k;
    e.a = std::move(a);
    e.b = std::move(b);
    e.line = at.line;
    e.col = at.col;
    return mk_expr(std::move(e));
}

ExprPtr parse_add(TokenStream& ts, const VarScope& scope, bool primed_ok);

ExprPtr parse_factor(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    const Token& t = ts.peek();
    if (ts.accept(Tok::Minus)) {
        Expr e;
        e.kind = Expr::Kind::Neg;
        e.a = parse_factor(ts, scope, primed_ok);
        e.line = t.line;
        e.col = t.col;
        return mk_expr(std::move(e));
    }
    if (ts.at(Tok::Int)) {
        Expr e;
        e.kind = Expr::Kind::Lit;
        e.lit = ts.next().value;
        e.line = t.line;
        e.col = t.col;
        return mk_expr(std::move(e));
    }
    if (ts.accept(Tok::LParen)) {
        ExprPtr inner = parse_add(ts, scope, primed_ok);
        ts.expect(Tok::RParen, "')'");
        return inner;
    }
    if (ts.at_ident("ceil_sqrt") && ts.peek(1).kind == Tok::LParen) {
        ts.next();
        ts.next();
        Expr e;
        e.kind = Expr::Kind::CeilSqrt;
        e.a = parse_add(ts, scope, primed_ok);
        ts.expect(Tok::RParen, "')'");
        e.line = t.line;
        e.col = t.col;
        return mk_expr(std::move(e));
    }
    if (ts.at(Tok::Ident) || ts.at(Tok::PrimedIdent)) {
        Token v = ts.next();
        Expr e;
        e.kind = Expr::Kind::Var;
        e.name = v.text;
        e.primed = v.kind == Tok::PrimedIdent;
        if (e.primed && !primed_ok)
            throw ParseError("primed variable '" + v.text + "'' not allowed here", v.line,
                             v.col);
        e.slot = scope.resolve(e.name);
        if (e.slot < 0)
            throw ParseError("undeclared variable '" + v.text + "'", v.line, v.col);
        e.line = v.line;
        e.col = v.col;
        return mk_expr(std::move(e));
    }
    ts.fail("expected an expression");
}

ExprPtr parse_term(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    ExprPtr l = parse_factor(ts, scope, primed_ok);
    while (true) {
        const Token& t = ts.peek();
        Expr::Kind k;
        if (ts.at(Tok::Star)) k = Expr::Kind::Mul;
        else if (ts.at(Tok::Slash)) k = Expr::Kind::Div;
        else if (ts.at(Tok::Percent)) k = Expr::Kind::Mod;
        else break;
        ts.next();
        l = mk_binary(k, std::move(l), parse_factor(ts, scope, primed_ok), t);
    }
    return l;
}

ExprPtr parse_add(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    ExprPtr l = parse_term(ts, scope, primed_ok);
    while (ts.at(Tok::Plus) || ts.at(Tok::Minus)) {
        Token t = ts.next();
        Expr::Kind k = t.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
        l = mk_binary(k, std::move(l), parse_term(ts, scope, primed_ok), t);
    }
    return l;
}

bool at_cmp_op(const TokenStream& ts) {
    switch (ts.peek().kind) {
        case Tok::Eq:
        case Tok::Ne:
        case Tok::Lt:
        case Tok::Le:
        case Tok::Gt:
        case Tok::Ge: return true;
        default: return false;
    }
}

BoolPtr parse_or(TokenStream& ts, const VarScope& scope, bool primed_ok);

BoolPtr parse_bool_atom(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    const Token& t = ts.peek();
    if (ts.accept_ident("true") || ts.at_ident("false")) {
        BoolExpr b;
        b.kind = BoolExpr::Kind::Lit;
        b.lit = t.text == "true";
        if (!b.lit) ts.next();
        b.line = t.line;
        b.col = t.col;
        return mk_bool(std::move(b));
    }
    if (ts.at_ident("perfect_square") && ts.peek(1).kind == Tok::LParen) {
        ts.next();
        ts.next();
        BoolExpr b;
        b.kind = BoolExpr::Kind::PerfectSquare;
        b.ea = parse_add(ts, scope, primed_ok);
        ts.expect(Tok::RParen, "')'");
        b.line = t.line;
        b.col = t.col;
        return mk_bool(std::move(b));
    }
    if (ts.at(Tok::LParen)) {
        // '(' may open a boolean or an arithmetic subexpression; try the
        // boolean reading and fall back when it fails or is followed by a
        // comparison operator (then it was the left operand of a comparison).
        std::size_t m = ts.mark();
        try {
            ts.next();
            BoolPtr inner = parse_or(ts, scope, primed_ok);
            ts.expect(Tok::RParen, "')'");
            if (!at_cmp_op(ts)) return inner;
        } catch (const ParseError&) {
        }
        ts.rewind(m);
    }
    BoolExpr b;
    b.kind = BoolExpr::Kind::Cmp;
    b.ea = parse_add(ts, scope, primed_ok);
    const Token& op = ts.peek();
    if (!at_cmp_op(ts)) ts.fail("expected a comparison operator");
    ts.next();
    switch (op.kind) {
        case Tok::Eq: b.op = BoolExpr::CmpOp::Eq; break;
        case Tok::Ne: b.op = BoolExpr::CmpOp::Ne; break;
        case Tok::Lt: b.op = BoolExpr::CmpOp::Lt; break;
        case Tok::Le: b.op = BoolExpr::CmpOp::Le; break;
        case Tok::Gt: b.op = BoolExpr::CmpOp::Gt; break;
        default: b.op = BoolExpr::CmpOp::Ge; break;
    }
    b.eb = parse_add(ts, scope, primed_ok);
    b.line = op.line;
    b.col = op.col;
    return mk_bool(std::move(b));
}

BoolPtr parse_not(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    if (ts.at(Tok::Not)) {
        Token t = ts.next();
        BoolExpr b;
        b.kind = BoolExpr::Kind::Not;
        b.ba = parse_not(ts, scope, primed_ok);
        b.line = t.line;
        b.col = t.col;
        return mk_bool(std::move(b));
    }
    return parse_bool_atom(ts, scope, primed_ok);
}

BoolPtr parse_and(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    BoolPtr l = parse_not(ts, scope, primed_ok);
    while (ts.at(Tok::AndAnd)) {
        Token t = ts.next();
        BoolExpr b;
        b.kind = BoolExpr::Kind::And;
        b.ba = std::move(l);
        b.bb = parse_not(ts, scope, primed_ok);
        b.line = t.line;
        b.col = t.col;
        l = mk_bool(std::move(b));
    }
    return l;
}

BoolPtr parse_or(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    BoolPtr l = parse_and(ts, scope, primed_ok);
    while (ts.at(Tok::OrOr)) {
        Token t = ts.next();
        BoolExpr b;
        b.kind = BoolExpr::Kind::Or;
        b.ba = std::move(l);
        b.bb = parse_and(ts, scope, primed_ok);
        b.line = t.line;
        b.col = t.col;
        l = mk_bool(std::move(b));
    }
    return l;
}

} // namespace

ExprPtr parse_expr(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    return parse_add(ts, scope, primed_ok);
}

BoolPtr parse_bool(TokenStream& ts, const VarScope& scope, bool primed_ok) {
    return parse_or(ts, scope, primed_ok);
}

// --- printing -------------------------------------------------------------------

namespace {

// Precedence levels: additive 1, multiplicative 2, unary 3, atoms 4.
int expr_prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Mod: return 2;
        case Expr::Kind::Neg: return 3;
        default: return 4;
    }
}

void print_expr(const Expr& e, int parent_prec, std::string& out) {
    int prec = expr_prec(e);
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (e.kind) {
        case Expr::Kind::Lit: out += std::to_string(e.lit); break;
        case Expr::Kind::Var:
            out += e.name;
            if (e.primed) out += "'";
            break;
        case Expr::Kind::Neg:
            out += "-";
            print_expr(*e.a, 4, out);
            break;
        case Expr::Kind::CeilSqrt:
            out += "ceil_sqrt(";
            print_expr(*e.a, 0, out);
            out += ")";
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
        case Expr::Kind::Mod: {
            const char* op = e.kind == Expr::Kind::Add   ? " + "
                             : e.kind == Expr::Kind::Sub ? " - "
                             : e.kind == Expr::Kind::Mul ? " * "
                             : e.kind == Expr::Kind::Div ? " / "
                                                         : " % ";
            print_expr(*e.a, prec, out);
            out += op;
            // -, /, % do not associate: parenthesize an equal-precedence rhs.
            print_expr(*e.b, e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Mul
                                 ? prec
                                 : prec + 1,
                       out);
            break;
        }
    }
    if (parens) out += ")";
}

// Boolean precedence: or 1, and 2, not 3, atoms 4.
int bool_prec(const BoolExpr& b) {
    switch (b.kind) {
        case BoolExpr::Kind::Or: return 1;
        case BoolExpr::Kind::And: return 2;
        case BoolExpr::Kind::Not: return 3;
        default: return 4;
    }
}

void print_bool(const BoolExpr& b, int parent_prec, std::string& out) {
    int prec = bool_prec(b);
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (b.kind) {
        case BoolExpr::Kind::Lit: out += b.lit ? "true" : "false"; break;
        case BoolExpr::Kind::PerfectSquare:
            out += "perfect_square(";
            print_expr(*b.ea, 0, out);
            out += ")";
            break;
        case BoolExpr::Kind::Cmp: {
            const char* op = nullptr;
            switch (b.op) {
                case BoolExpr::CmpOp::Eq: op = " == "; break;
                case BoolExpr::CmpOp::Ne: op = " != "; break;
                case BoolExpr::CmpOp::Lt: op = " < "; break;
                case BoolExpr::CmpOp::Le: op = " <= "; break;
                case BoolExpr::CmpOp::Gt: op = " > "; break;
                case BoolExpr::CmpOp::Ge: op = " >= "; break;
            }
            print_expr(*b.ea, 1, out);
            out += op;
            print_expr(*b.eb, 1, out);
            break;
        }
        case BoolExpr::Kind::Not:
            out += "!";
            if (bool_prec(*b.ba) == 4 && b.ba->kind != BoolExpr::Kind::Cmp) {
                print_bool(*b.ba, 3, out);
            } else {
                out += "(";
                print_bool(*b.ba, 0, out);
                out += ")";
            }
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            print_bool(*b.ba, prec, out);
            out += b.kind == BoolExpr::Kind::And ? " && " : " || ";
            print_bool(*b.bb, prec + 1, out);
            break;
    }
    if (parens) out += ")";
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, 0, out);
    return out;
}

std::string to_string(const BoolExpr& b) {
    std::string out;
    print_bool(b, 0, out);
    return out;
}

bool ast_equal(const Expr& x, const Expr& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Expr::Kind::Lit: return x.lit == y.lit;
        case Expr::Kind::Var:
            return x.name == y.name && x.primed == y.primed && x.slot == y.slot;
        case Expr::Kind::Neg:
        case Expr::Kind::CeilSqrt: return ast_equal(*x.a, *y.a);
        default: return ast_equal(*x.a, *y.a) && ast_equal(*x.b, *y.b);
    }
}

bool ast_equal(const BoolExpr& x, const BoolExpr& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case BoolExpr::Kind::Lit: return x.lit == y.lit;
        case BoolExpr::Kind::PerfectSquare: return ast_equal(*x.ea, *y.ea);
        case BoolExpr::Kind::Cmp:
            return x.op == y.op && ast_equal(*x.ea, *y.ea) && ast_equal(*x.eb, *y.eb);
        case BoolExpr::Kind::Not: return ast_equal(*x.ba, *y.ba);
        default: return ast_equal(*x.ba, *y.ba) && ast_equal(*x.bb, *y.bb);
    }
}

namespace {

void collect_expr_vars(const Expr& e, std::vector<std::string>& unprimed,
                       std::vector<std::string>& primed) {
    switch (e.kind) {
        case Expr::Kind::Var: {
            auto& bucket = e.primed ? primed : unprimed;
            if (std::find(bucket.begin(), bucket.end(), e.name) == bucket.end())
                bucket.push_back(e.name);
            break;
        }
        case Expr::Kind::Lit: break;
        case Expr::Kind::Neg:
        case Expr::Kind::CeilSqrt: collect_expr_vars(*e.a, unprimed, primed); break;
        default:
            collect_expr_vars(*e.a, unprimed, primed);
            collect_expr_vars(*e.b, unprimed, primed);
    }
}

} // namespace

void collect_vars(const BoolExpr& b, std::vector<std::string>& unprimed,
                  std::vector<std::string>& primed) {
    switch (b.kind) {
        case BoolExpr::Kind::Lit: break;
        case BoolExpr::Kind::PerfectSquare: collect_expr_vars(*b.ea, unprimed, primed); break;
        case BoolExpr::Kind::Cmp:
            collect_expr_vars(*b.ea, unprimed, primed);
            collect_expr_vars(*b.eb, unprimed, primed);
            break;
        case BoolExpr::Kind::Not: collect_vars(*b.ba, unprimed, primed); break;
        default:
            collect_vars(*b.ba, unprimed, primed);
            collect_vars(*b.bb, unprimed, primed);
    }
}

// --- spec files -------------------------------------------------------------------

SpecFile parse_spec(const std::string& text, std::uint64_t dense_budget_bits) {
    TokenStream ts(lex(text));
    ts.expect_ident("space");
    std::string name;
    if (ts.at(Tok::Ident)) name = ts.next().text;
    ts.expect(Tok::Colon, "':'");
    std::vector<VarDecl> vars;
    while (ts.at_ident("var")) {
        ts.next();
        VarDecl v;
        v.name = ts.expect(Tok::Ident, "a variable name").text;
        ts.expect(Tok::Colon, "':'");
        bool neg = ts.accept(Tok::Minus);
        v.lo = ts.expect(Tok::Int, "an integer").value * (neg ? -1 : 1);
        ts.expect(Tok::DotDot, "'..'");
        neg = ts.accept(Tok::Minus);
        v.hi = ts.expect(Tok::Int, "an integer").value * (neg ? -1 : 1);
        ts.expect(Tok::Semi, "';'");
        vars.push_back(std::move(v));
    }
    if (vars.empty()) ts.fail("spec file declares no variables");

    SpecFile spec;
    spec.space = StateSpace::make(std::move(name), std::move(vars), dense_budget_bits);
    SpaceScope scope(*spec.space);

    ts.expect_ident("spec");
    ts.expect(Tok::Colon, "':'");
    spec.relation = parse_bool(ts, scope, /*primed_ok=*/true);
    ts.expect(Tok::Semi, "';'");

    if (ts.at_ident("domain")) {
        ts.next();
        ts.expect(Tok::Colon, "':'");
        spec.domain_clause = parse_bool(ts, scope, /*primed_ok=*/false);
        ts.expect(Tok::Semi, "';'");
    }
    if (!ts.at(Tok::End)) ts.fail("trailing input after spec file");

    collect_vars(*spec.relation, spec.unprimed_vars, spec.primed_vars);
    return spec;
}

bool holds_values(const SpecFile& spec, const Int* pre, const Int* post) {
    return eval_bool(*spec.relation, pre, post);
}

bool holds(const SpecFile& spec, StateIndex s, StateIndex s2) {
    std::vector<Int> pre = spec.space->values_at(s);
    std::vector<Int> post = spec.space->values_at(s2);
    return holds_values(spec, pre.data(), post.data());
}

bool domain_holds(const SpecFile& spec, const Int* pre) {
    if (!spec.domain_clause) throw InputError("spec has no domain clause");
    return eval_bool(*spec.domain_clause, pre, nullptr);
}

bool domain_holds(const SpecFile& spec, StateIndex s) {
    std::vector<Int> pre = spec.space->values_at(s);
    return domain_holds(spec, pre.data());
}

Relation materialize(const SpecFile& spec, std::uint64_t cap) {
    const SpacePtr& sp = spec.space;
    if (sp->size() > cap)
        throw CapacityError("cannot materialize a spec over " + sp->describe() + ": " +
                            std::to_string(sp->size()) + " states exceed the cap of " +
                            std::to_string(cap));
    RelationBuilder b(sp);
    std::vector<Int> pre, post;
    pre.reserve(sp->var_count());
    for (const VarDecl& v : sp->vars()) pre.push_back(v.lo);
    StateIndex s = 0;
    do {
        post.assign(pre.size(), 0);
        for (std::size_t i = 0; i < post.size(); ++i) post[i] = sp->vars()[i].lo;
        StateIndex t = 0;
        do {
            if (holds_values(spec, pre.data(), post.data())) b.add(s, t);
            ++t;
        } while (advance_values(*sp, post));
        ++s;
    } while (advance_values(*sp, pre));
    return b.finish();
}

Relation materialize_rows(const SpecFile& spec, const StateSet& rows) {
    ensure_same_space(spec.space, rows.space(), "materialize_rows");
    const SpacePtr& sp = spec.space;
    RelationBuilder b(sp);
    std::vector<Int> post;
    for (StateIndex s : rows.indices()) {
        std::vector<Int> pre = sp->values_at(s);
        post.assign(sp->var_count(), 0);
        for (std::size_t i = 0; i < post.size(); ++i) post[i] = sp->vars()[i].lo;
        StateIndex t = 0;
        do {
            if (holds_values(spec, pre.data(), post.data())) b.add(s, t);
            ++t;
        } while (advance_values(*sp, post));
    }
    return b.finish();
}

// --- domain clause validation -------------------------------------------------------

namespace {

struct WitnessVar {
    int slot;
    Int lo, hi;
    bool clipped;
};

// The primed variables the relation mentions, with the effective search range.
std::vector<WitnessVar> witness_vars(const SpecFile& spec, Int witness_hi) {
    std::vector<WitnessVar> out;
    for (const std::string& name : spec.primed_vars) {
        int slot = spec.space->slot_of(name);
        const VarDecl& v = spec.space->vars()[slot];
        WitnessVar w{slot, v.lo, v.hi, false};
        if (witness_hi > 0 && witness_hi < v.hi) {
            w.hi = witness_hi;
            w.clipped = true;
        }
        out.push_back(w);
    }
    return out;
}

} // namespace

bool domain_by_witness(const SpecFile& spec, const Int* pre, Int witness_hi,
                       bool* clipped) {
    if (clipped) *clipped = false;
    std::vector<WitnessVar> wv = witness_vars(spec, witness_hi);
    std::vector<Int> post(spec.space->var_count());
    for (std::size_t i = 0; i < post.size(); ++i) post[i] = pre[i];
    for (const WitnessVar& w : wv) post[w.slot] = w.lo;
    while (true) {
        if (holds_values(spec, pre, post.data())) return true;
        // Odometer over the mentioned primed variables only; the rest cannot
        // influence the predicate.
        std::size_t i = wv.size();
        while (i-- > 0) {
            if (post[wv[i].slot] < wv[i].hi) {
                ++post[wv[i].slot];
                break;
            }
            post[wv[i].slot] = wv[i].lo;
            if (i == 0) {
                if (clipped)
                    for (const WitnessVar& w : wv)
                        if (w.clipped) *clipped = true;
                return false;
            }
        }
        if (wv.empty()) {
            return false;  // no primed variables: single candidate, already tested
        }
    }
}

DomainValidation validate_domain_clause(const SpecFile& spec, const StateSet& region,
                                        Int witness_hi) {
    ensure_same_space(spec.space, region.space(), "validate_domain_clause");
    DomainValidation report;
    if (!spec.domain_clause) return report;
    report.has_clause = true;
    for (StateIndex s : region.indices()) {
        std::vector<Int> pre = spec.space->values_at(s);
        bool claim = eval_bool(*spec.domain_clause, pre.data(), nullptr);
        bool clipped = false;
        bool found = domain_by_witness(spec, pre.data(), witness_hi, &clipped);
        ++report.checked;
        if (claim && !found) {
            (clipped ? report.inconclusive : report.violations).push_back(s);
        } else if (!claim && found) {
            report.violations.push_back(s);
        }
    }
    return report;
}

} // namespace relcheck
