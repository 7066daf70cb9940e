#include "ckm/freealg.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace ckm {

std::string to_string(Family f) {
    switch (f) {
        case Family::E: return "E";
        case Family::F: return "F";
        case Family::K: return "K";
        case Family::Kinv: return "Kinv";
        case Family::H: return "H";
    }
    return "?";
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += "(" + w[i].str() + ")";
    }
    return s;
}

bool word_term_less(const Word& a, const Word& b) {
    int ca = ef_count(a), cb = ef_count(b);
    if (ca != cb) return ca < cb;
    auto ef_seq = [](const Word& w) {
        Word s;
        for (const Gen& g : w)
            if (g.fam == Family::E || g.fam == Family::F) s.push_back(g);
        return s;
    };
    Word sa = ef_seq(a), sb = ef_seq(b);
    if (sa != sb) return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

GridCtx::GridCtx(Grid grid) : grid_(std::move(grid)), cells_(grid_.cells()) {}

std::vector<Interval> GridCtx::cells_of(const Interval& iv) const {
    std::map<Rational, const Interval*> by_start;
    for (const auto& c : cells_) by_start[c.a()] = &c;
    std::vector<Interval> out;
    if (iv.is_full()) {
        for (const auto& c : cells_) out.push_back(c);
        return out;
    }
    Rational start = iv.a();
    const Rational stop = iv.space() == SpaceKind::Line ? iv.b() : frac_mod1(iv.b());
    while (true) {
        auto it = by_start.find(iv.space() == SpaceKind::Line ? start : frac_mod1(start));
        if (it == by_start.end())
            throw ResourceLimit("interval " + iv.str() + " does not decompose into grid cells");
        out.push_back(*it->second);
        start = it->second->b();
        if ((iv.space() == SpaceKind::Line ? start : frac_mod1(start)) == stop) break;
        if (out.size() > cells_.size())
            throw ResourceLimit("cell walk failed to terminate for " + iv.str());
    }
    return out;
}

Word GridCtx::k_word(const Interval& iv, int exponent) const {
    Word w;
    if (exponent == 0) return w;
    Family fam = exponent > 0 ? Family::K : Family::Kinv;
    int count = exponent > 0 ? exponent : -exponent;
    for (const auto& c : cells_of(iv))
        for (int i = 0; i < count; ++i) w.push_back({fam, c});
    std::sort(w.begin(), w.end());
    return w;
}

NcR GridCtx::K(const Interval& iv, int exponent) const {
    return NcR::from_word(k_word(iv, exponent), RatFunc::one());
}

NcR GridCtx::H(const Interval& iv) const {
    NcR x;
    for (const auto& c : cells_of(iv)) x += NcR::from_gen({Family::H, c}, RatFunc::one());
    return x;
}

void RewriteSystem::add(Rule r) {
    auto key = std::make_pair(r.g1, r.g2);
    assert(!index_.count(key));
    index_[key] = list_.size();
    list_.push_back(std::move(r));
}

const Rule* RewriteSystem::find(const Gen& a, const Gen& b) const {
    auto it = index_.find({a, b});
    return it == index_.end() ? nullptr : &list_[it->second];
}

namespace {

RatFunc q_pow_half(const Rational& e) {
    Rational two_e = e * 2;
    assert(denominator(two_e) == 1);
    return RatFunc(Laurent::v_pow(static_cast<long>(numerator(two_e))));
}

RatFunc q_int_pow(long e) { return RatFunc(Laurent::q_pow(e)); }

Rational theta_minus_mut(const Interval& a, const Interval& b, const CoeffMutation& mut) {
    Rational t = *coeff_theta_minus(a, b);
    return mut.flip_theta_minus ? -t : t;
}

Rational beta_prime_mut(const Interval& a, const Interval& b, const CoeffMutation& mut) {
    Rational bp = *coeff_beta_prime(a, b);
    return mut.flip_beta_prime ? -bp : bp;
}

long sigma_mut(const Interval& a, const Interval& b, const CoeffMutation& mut) {
    long s = coeff_sigma(a, b);
    return mut.shift_sigma ? s + 1 : s;
}

} // namespace

// Right side of the quantum Serre relation
//   X_a X_b - q^sigma X_b X_a = sgn * beta' q^{theta_sgn} X_{a+b}
//                               + beta' (q-q^{-1}) X_{union} X_{intersection}
// for the E (sgn=+1) or F (sgn=-1) family, with undefined-interval terms
// dropped.
NcR qserre_rhs(const GridCtx& ctx, const Interval& a, const Interval& b, Family fam,
               const CoeffMutation& mut) {
    NcR rhs;
    auto mk = [&](const Interval& iv) { return fam == Family::E ? ctx.E(iv) : ctx.F(iv); };
    auto bp = coeff_beta_prime(a, b);
    if (auto s = sum(a, b)) {
        Rational theta = fam == Family::E ? *coeff_theta_plus(a, b) : theta_minus_mut(a, b, mut);
        Rational bpv = beta_prime_mut(a, b, mut);
        RatFunc c = q_pow_half(theta).scaled(bpv);
        if (fam == Family::F) c = -c;
        if (!c.is_zero()) rhs += mk(*s).scaled(c);
    }
    auto u = strict_union(a, b);
    auto i = strict_intersection(a, b);
    if (u && i && bp) {
        Rational bpv = mut.flip_beta_prime ? -*bp : *bp;
        RatFunc c = RatFunc(Laurent::q_minus_qinv()).scaled(bpv);
        if (!c.is_zero()) rhs += (mk(*u) * mk(*i)).scaled(c);
    }
    return rhs;
}

// Right side D(a,b) of [E_a, F_b] = D, already in F-Cartan-E normal shape.
NcR qdouble_rhs(const GridCtx& ctx, const Interval& a, const Interval& b,
                const CoeffMutation& mut) {
    (void)mut;
    NcR d;
    if (a == b) {
        RatFunc inv(Laurent::one(), Laurent::q_minus_qinv());
        d += ctx.K(a, 1).scaled(inv);
        d -= ctx.K(a, -1).scaled(inv);
    }
    long ac = coeff_alpha(a, b);
    if (ac != 0) {
        if (auto diff = difference(a, b)) {  // + alpha_c q^{gamma+} E_{a-b} K_b^{alpha_c}
            Rational gp = *coeff_gamma_plus(a, b);
            long swap = -ac * euler_form(b, *diff);
            RatFunc c = q_pow_half(gp) * q_int_pow(swap);
            d += (ctx.K(b, static_cast<int>(ac)) * ctx.E(*diff)).scaled(c.scaled(Rational(ac)));
        }
        if (auto diff = difference(b, a)) {  // - alpha_c q^{gamma-} K_a^{alpha_c} F_{b-a}
            Rational gm = *coeff_gamma_minus(a, b);
            long swap = -ac * euler_form(a, *diff);
            RatFunc c = q_pow_half(gm) * q_int_pow(swap);
            d -= (ctx.F(*diff) * ctx.K(a, static_cast<int>(ac))).scaled(c.scaled(Rational(ac)));
        }
    }
    auto u = strict_union(a, b);
    auto i = strict_intersection(a, b);
    if (u && i) {
        auto g1 = difference(*u, b);  // E leg
        auto g2 = difference(*u, a);  // F leg
        auto bp_ba = coeff_beta_prime(b, a);
        auto bp_ab = coeff_beta_prime(a, b);
        if (g1 && g2 && bp_ba && *bp_ba != 0) {
            long r = static_cast<long>(numerator(*bp_ab));
            long swap = -r * (euler_form(*i, *g1) + euler_form(*i, *g2));
            RatFunc c = q_pow_half(*bp_ba) * q_int_pow(swap) * RatFunc(Laurent::q_minus_qinv());
            c = c.scaled(*bp_ba);
            d += (ctx.F(*g2) * ctx.K(*i, static_cast<int>(r)) * ctx.E(*g1)).scaled(c);
        }
    }
    return d;
}

RewriteSystem build_rules(const GridCtx& ctx, const CoeffMutation& mut) {
    RewriteSystem rs;
    const auto& ivs = ctx.grid().intervals;
    const auto& cells = ctx.cells();

    // E-E and F-F straightening: one rule per unordered pair, rewriting the
    // term-order-larger two-letter word.
    for (Family fam : {Family::E, Family::F}) {
        for (const auto& x : ivs)
            for (const auto& y : ivs) {
                if (!(y < x)) continue;  // x is the larger letter
                Gen gx{fam, x}, gy{fam, y};
                NcR rhs;
                if (serre_pair(x, y)) {
                    // X_x X_y = q^{sigma(x,y)} X_y X_x + RHS(x,y)
                    long s = sigma_mut(x, y, mut);
                    rhs = NcR::from_word({gy, gx}, q_int_pow(s)) + qserre_rhs(ctx, x, y, fam, mut);
                } else {
                    // x is the full circle: use the (y,x) relation and solve
                    long s = sigma_mut(y, x, mut);
                    RatFunc qs = q_int_pow(-s);
                    rhs = NcR::from_word({gy, gx}, qs) - qserre_rhs(ctx, y, x, fam, mut).scaled(qs);
                }
                rs.add({gx, gy, std::move(rhs), "serre" + std::string(fam == Family::E ? "+" : "-") +
                                                    "(" + x.str() + "," + y.str() + ")"});
            }
    }

    // E-F double relations, all ordered pairs.
    for (const auto& a : ivs)
        for (const auto& b : ivs) {
            Gen ge{Family::E, a}, gf{Family::F, b};
            NcR rhs = NcR::from_word({gf, ge}, RatFunc::one()) + qdouble_rhs(ctx, a, b, mut);
            rs.add({ge, gf, std::move(rhs), "double(" + a.str() + "," + b.str() + ")"});
        }

    // Cartan commutation past E and F.
    for (const auto& a : ivs)
        for (const auto& c : cells) {
            long e = euler_form(c, a);
            Gen ge{Family::E, a}, gf{Family::F, a};
            Gen k{Family::K, c}, ki{Family::Kinv, c}, h{Family::H, c};
            rs.add({ge, k, NcR::from_word({k, ge}, q_int_pow(-e)), "EK"});
            rs.add({ge, ki, NcR::from_word({ki, ge}, q_int_pow(e)), "EKinv"});
            rs.add({ge, h,
                    NcR::from_word({h, ge}, RatFunc::one()) +
                        NcR::from_gen(ge, RatFunc(Rational(-e))),
                    "EH"});
            rs.add({k, gf, NcR::from_word({gf, k}, q_int_pow(-e)), "KF"});
            rs.add({ki, gf, NcR::from_word({gf, ki}, q_int_pow(e)), "KinvF"});
            rs.add({h, gf,
                    NcR::from_word({gf, h}, RatFunc::one()) +
                        NcR::from_gen(gf, RatFunc(Rational(-e))),
                    "HF"});
        }

    // Cartan block: cancellation and sorting.
    for (const auto& c : cells) {
        Gen k{Family::K, c}, ki{Family::Kinv, c};
        rs.add({k, ki, ctx.one(), "Kcancel"});
        rs.add({ki, k, ctx.one(), "Kcancel"});
    }
    std::vector<Gen> cartan;
    for (const auto& c : cells)
        for (Family f : {Family::Kinv, Family::K, Family::H}) cartan.push_back({f, c});
    for (const auto& g1 : cartan)
        for (const auto& g2 : cartan) {
            if (!(g2 < g1)) continue;
            if (g1.idx == g2.idx && ((g1.fam == Family::K && g2.fam == Family::Kinv) ||
                                     (g1.fam == Family::Kinv && g2.fam == Family::K)))
                continue;  // cancellation already added
            rs.add({g1, g2, NcR::from_word({g2, g1}, RatFunc::one()), "sort"});
        }
    return rs;
}

ReduceResult reduce(const NcR& x, const RewriteSystem& rs, long step_budget,
                    ReduceStrategy strategy) {
    std::map<Word, RatFunc> pending(x.terms().begin(), x.terms().end());
    NcR done;
    long steps = 0;
    while (!pending.empty()) {
        auto it = pending.begin();
        Word w = it->first;
        RatFunc c = it->second;
        pending.erase(it);
        if (c.is_zero()) continue;
        const Rule* rule = nullptr;
        size_t pos = 0;
        if (strategy == ReduceStrategy::LeftmostInnermost) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if ((rule = rs.find(w[i], w[i + 1]))) {
                    pos = i;
                    break;
                }
        } else {
            for (size_t i = w.size(); i >= 2; --i)
                if ((rule = rs.find(w[i - 2], w[i - 1]))) {
                    pos = i - 2;
                    break;
                }
        }
        if (!rule) {
            done.add_term(w, c);
            continue;
        }
        if (++steps > step_budget) {
            ReduceResult r;
            r.value = done;
            r.value.add_term(w, c);
            for (const auto& [pw, pc] : pending) r.value.add_term(pw, pc);
            r.steps = steps;
            r.completed = false;
            return r;
        }
        for (const auto& [rw, rc] : rule->rhs.terms()) {
            Word nw;
            nw.reserve(w.size() - 2 + rw.size());
            nw.insert(nw.end(), w.begin(), w.begin() + pos);
            nw.insert(nw.end(), rw.begin(), rw.end());
            nw.insert(nw.end(), w.begin() + pos + 2, w.end());
            RatFunc nc = c * rc;
            if (nc.is_zero()) continue;
            auto [pit, inserted] = pending.try_emplace(std::move(nw), nc);
            if (!inserted) {
                pit->second += nc;
                if (pit->second.is_zero()) pending.erase(pit);
            }
        }
    }
    return {std::move(done), steps, true};
}

NcR normal_form(const NcR& x, const RewriteSystem& rs, long step_budget, ReduceStrategy strategy) {
    ReduceResult r = reduce(x, rs, step_budget, strategy);
    if (!r.completed)
        throw BudgetExhausted("rewriting budget exhausted after " + std::to_string(r.steps) +
                              " steps; partial result: " + r.value.str());
    return r.value;
}

TensorR reduce_legs(const TensorR& t, const RewriteSystem& rs, long step_budget) {
    TensorR out;
    for (const auto& [k, c] : t.terms()) {
        NcR left = normal_form(NcR::from_word(k.first, RatFunc::one()), rs, step_budget);
        NcR right = normal_form(NcR::from_word(k.second, RatFunc::one()), rs, step_budget);
        for (const auto& [wl, cl] : left.terms())
            for (const auto& [wr, cr] : right.terms()) out.add_term({wl, wr}, c * cl * cr);
    }
    return out;
}

Tensor3R reduce_legs(const Tensor3R& t, const RewriteSystem& rs, long step_budget) {
    Tensor3R out;
    for (const auto& [k, c] : t.terms()) {
        NcR a = normal_form(NcR::from_word(std::get<0>(k), RatFunc::one()), rs, step_budget);
        NcR b = normal_form(NcR::from_word(std::get<1>(k), RatFunc::one()), rs, step_budget);
        NcR d = normal_form(NcR::from_word(std::get<2>(k), RatFunc::one()), rs, step_budget);
        for (const auto& [wa, ca] : a.terms())
            for (const auto& [wb, cb] : b.terms())
                for (const auto& [wd, cd] : d.terms())
                    out.add_term({wa, wb, wd}, c * ca * cb * cd);
    }
    return out;
}

std::vector<OverlapCase> overlap_report(const RewriteSystem& rs, int max_degree, long step_budget) {
    std::vector<OverlapCase> out;
    if (max_degree < 3) return out;
    for (const Rule& r1 : rs.rules())
        for (const Rule& r2 : rs.rules()) {
            if (!(r1.g2 == r2.g1)) continue;
            Word sup = {r1.g1, r1.g2, r2.g2};
            NcR left = r1.rhs * NcR::from_gen(r2.g2, RatFunc::one());
            NcR right = NcR::from_gen(r1.g1, RatFunc::one()) * r2.rhs;
            NcR nl = normal_form(left, rs, step_budget);
            NcR nr = normal_form(right, rs, step_budget);
            if (nl != nr) out.push_back({sup, r1.name, r2.name, nl, nr});
        }
    return out;
}

NcR apply_hom(const std::map<Gen, NcR>& assignment, const NcR& x) {
    NcR out;
    for (const auto& [w, c] : x.terms()) {
        NcR prod(c);
        for (const Gen& g : w) {
            auto it = assignment.find(g);
            if (it == assignment.end()) throw UnboundGenerator("no image for " + g.str());
            prod = prod * it->second;
        }
        out += prod;
    }
    return out;
}

namespace {

struct SexprParser {
    const std::string& s;
    const GridCtx& ctx;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of element expression");
        return s[pos];
    }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos));
        ++pos;
    }
    std::string token() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && !isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) throw ParseError("empty token at offset " + std::to_string(pos));
        return s.substr(start, pos - start);
    }
    std::string interval_token() {
        skip_ws();
        size_t start = pos;
        if (s.compare(pos, 6, "circle") == 0 && (pos + 6 >= s.size() || s[pos + 6] == ')' ||
                                                 isspace(static_cast<unsigned char>(s[pos + 6])))) {
            pos += 6;
            return "circle";
        }
        if (s.compare(pos, 5, "circ(") == 0) pos += 5;
        else if (s[pos] == '(') ++pos;
        else throw ParseError("expected interval literal at offset " + std::to_string(pos));
        while (pos < s.size() && s[pos] != ']') ++pos;
        if (pos >= s.size()) throw ParseError("unterminated interval literal");
        ++pos;
        return s.substr(start, pos - start);
    }

    NcR parse_scalar_atom(const std::string& tok) {
        long exp = 1;
        std::string base = tok;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            exp = std::stol(tok.substr(caret + 1));
        }
        if (base == "q") return NcR(RatFunc::q_pow(exp));
        if (base == "v") return NcR(RatFunc::v_pow(exp));
        if (caret != std::string::npos) throw ParseError("bad scalar token: " + tok);
        return NcR(RatFunc(parse_rational(tok)));
    }

    NcR parse_expr() {
        skip_ws();
        if (peek() != '(') return parse_scalar_atom(token());
        // look ahead: generator form or operator form
        size_t mark = pos;
        ++pos;
        skip_ws();
        std::string head = token();
        if (head == "E" || head == "F" || head == "K" || head == "Kinv" || head == "H") {
            Interval iv = parse_interval(interval_token());
            expect(')');
            if (head == "E") return ctx.E(iv);
            if (head == "F") return ctx.F(iv);
            if (head == "K") return ctx.K(iv, 1);
            if (head == "Kinv") return ctx.K(iv, -1);
            return ctx.H(iv);
        }
        if (head == "+" || head == "*" || head == "-" || head == "/") {
            std::vector<NcR> args;
            while (peek() != ')') args.push_back(parse_expr());
            ++pos;  // consume ')'
            if (args.empty()) throw ParseError("operator with no arguments");
            NcR acc = args[0];
            if (head == "-" && args.size() == 1) return -acc;
            for (size_t i = 1; i < args.size(); ++i) {
                if (head == "+") acc += args[i];
                else if (head == "-") acc -= args[i];
                else if (head == "*") acc = acc * args[i];
                else {
                    // scalar division
                    if (args[i].terms().size() != 1 || !args[i].terms().begin()->first.empty())
                        throw ParseError("division by a non-scalar element");
                    acc = acc.scaled(args[i].terms().begin()->second.inverse());
                }
            }
            return acc;
        }
        pos = mark;
        throw ParseError("unknown operator: " + head);
    }
};

} // namespace

NcR parse_element(const std::string& text, const GridCtx& ctx) {
    SexprParser p{text, ctx};
    NcR x = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input in element expression");
    return x;
}

std::string render_element(const NcR& x) {
    if (x.is_zero()) return "0";
    auto render_scalar = [](const RatFunc& c) {
        std::ostringstream os;
        auto render_laurent = [&os](const Laurent& l) {
            if (l.coeffs().size() == 1) {
                auto [e, v] = *l.coeffs().begin();
                if (e == 0) {
                    os << to_string(v);
                } else {
                    std::string pw = (e % 2 == 0) ? "q^" + std::to_string(e / 2) : "v^" + std::to_string(e);
                    if (v == 1) os << pw;
                    else os << "(* " << to_string(v) << " " << pw << ")";
                }
                return;
            }
            os << "(+";
            for (const auto& [e, v] : l.coeffs()) {
                os << " ";
                if (e == 0) os << to_string(v);
                else {
                    std::string pw = (e % 2 == 0) ? "q^" + std::to_string(e / 2) : "v^" + std::to_string(e);
                    if (v == 1) os << pw;
                    else os << "(* " << to_string(v) << " " << pw << ")";
                }
            }
            os << ")";
        };
        if (c.is_laurent()) {
            render_laurent(c.as_laurent());
        } else {
            os << "(/ ";
            render_laurent(c.num());
            os << " ";
            render_laurent(c.den());
            os << ")";
        }
        return os.str();
    };
    std::ostringstream os;
    bool multi = x.terms().size() > 1;
    if (multi) os << "(+ ";
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        if (!first) os << " ";
        first = false;
        bool scalar_one = c == RatFunc::one();
        if (w.empty()) {
            os << render_scalar(c);
            continue;
        }
        os << "(*";
        if (!scalar_one) os << " " << render_scalar(c);
        for (const Gen& g : w) os << " (" << to_string(g.fam) << " " << g.idx.str() << ")";
        os << ")";
    }
    if (multi) os << ")";
    return os.str();
}

NcH to_hbar(const NcR& x, const GridCtx& ctx, int order) {
    (void)ctx;
    NcH out;
    for (const auto& [w, c] : x.terms()) {
        NcH prod(expand_hbar(c, order));
        for (const Gen& g : w) {
            NcH letter;
            if (g.fam == Family::K || g.fam == Family::Kinv) {
                // exp(s*hbar/2 H_c) truncated
                int s = g.fam == Family::K ? 1 : -1;
                Rational fact(1), pw(1);
                Word hw;
                letter.add_term(hw, HSeries::one(order));
                for (int m = 1; m <= order; ++m) {
                    fact *= m;
                    pw *= Rational(s, 2);
                    hw.push_back({Family::H, g.idx});
                    letter.add_term(hw, HSeries::hbar_pow(order, m).scaled(pw / fact));
                }
            } else {
                letter = NcH::from_gen(g, HSeries::one(order));
            }
            prod = prod * letter;
        }
        out += prod;
    }
    return out;
}

NcTensor2<HSeries> to_hbar(const TensorR& t, const GridCtx& ctx, int order) {
    NcTensor2<HSeries> out;
    for (const auto& [k, c] : t.terms()) {
        NcH left = to_hbar(NcR::from_word(k.first, RatFunc::one()), ctx, order);
        NcH right = to_hbar(NcR::from_word(k.second, RatFunc::one()), ctx, order);
        HSeries cs = expand_hbar(c, order);
        for (const auto& [wl, cl] : left.terms())
            for (const auto& [wr, cr] : right.terms()) out.add_term({wl, wr}, cs * cl * cr);
    }
    return out;
}

} // namespace ckm
