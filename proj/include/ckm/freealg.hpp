#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ckm/errors.hpp"
#include "ckm/intervals.hpp"
#include "ckm/scalars.hpp"

namespace ckm {

/// Generator families. E/F are the positive/negative quantum generators,
/// K/Kinv the group-likes, H the primitive Cartan elements. The numeric
/// values give the block order of normal forms: F-block, Cartan block,
/// E-block.
enum class Family : std::uint8_t { F = 0, Kinv = 1, K = 2, H = 3, E = 4 };

inline int family_block(Family f) {
    if (f == Family::F) return 0;
    if (f == Family::E) return 2;
    return 1;
}

std::string to_string(Family f);

struct Gen {
    Family fam;
    Interval idx;

    friend bool operator==(const Gen& a, const Gen& b) { return a.fam == b.fam && a.idx == b.idx; }
    friend bool operator!=(const Gen& a, const Gen& b) { return !(a == b); }
    // Cartan letters sort by (cell, family) so that K_c and Kinv_c are
    // neighbours and cancellation rules fire.
    friend bool operator<(const Gen& a, const Gen& b) {
        int ba = family_block(a.fam), bb = family_block(b.fam);
        if (ba != bb) return ba < bb;
        if (a.idx != b.idx) return a.idx < b.idx;
        return a.fam < b.fam;
    }
    std::string str() const { return to_string(fam) + " " + idx.str(); }
};

using Word = std::vector<Gen>;

std::string word_str(const Word& w);

inline int ef_count(const Word& w) {
    int n = 0;
    for (const Gen& g : w) n += (g.fam == Family::E || g.fam == Family::F) ? 1 : 0;
    return n;
}

/// Term order for the rewriting engine: count of E/F letters, then the E/F
/// subsequence lexicographically, then the Cartan letter count, then the
/// whole word lexicographically. Every rule strictly decreases it.
bool word_term_less(const Word& a, const Word& b);

template <class S>
class NcElem {
public:
    NcElem() = default;
    explicit NcElem(S c) {
        if (!c.is_zero()) terms_[Word{}] = std::move(c);
    }
    static NcElem from_word(Word w, S c) {
        NcElem x;
        if (!c.is_zero()) x.terms_[std::move(w)] = std::move(c);
        return x;
    }
    static NcElem from_gen(Gen g, S c) { return from_word(Word{std::move(g)}, std::move(c)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, S>& terms() const { return terms_; }
    S coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? S() : it->second;
    }

    void add_term(const Word& w, const S& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_[w] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    NcElem& operator+=(const NcElem& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NcElem& operator-=(const NcElem& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend NcElem operator+(NcElem a, const NcElem& b) { return a += b; }
    friend NcElem operator-(NcElem a, const NcElem& b) { return a -= b; }
    friend NcElem operator*(const NcElem& a, const NcElem& b) {
        NcElem r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }
    NcElem scaled(const S& c) const {
        NcElem r;
        if (c.is_zero()) return r;
        for (const auto& [w, v] : terms_) r.add_term(w, v * c);
        return r;
    }
    NcElem operator-() const {
        NcElem r;
        for (const auto& [w, v] : terms_) r.add_term(w, -v);
        return r;
    }

    friend bool operator==(const NcElem& a, const NcElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NcElem& a, const NcElem& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            if (!w.empty()) os << "*" << word_str(w);
        }
        return os.str();
    }

private:
    std::map<Word, S> terms_;
};

template <class S>
class NcTensor2 {
public:
    using Key = std::pair<Word, Word>;
    NcTensor2() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, S>& terms() const { return terms_; }
    void add_term(const Key& k, const S& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    static NcTensor2 tensor(const NcElem<S>& x, const NcElem<S>& y) {
        NcTensor2 r;
        for (const auto& [wx, cx] : x.terms())
            for (const auto& [wy, cy] : y.terms()) r.add_term({wx, wy}, cx * cy);
        return r;
    }
    NcTensor2& operator+=(const NcTensor2& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    NcTensor2& operator-=(const NcTensor2& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend NcTensor2 operator+(NcTensor2 a, const NcTensor2& b) { return a += b; }
    friend NcTensor2 operator-(NcTensor2 a, const NcTensor2& b) { return a -= b; }
    friend NcTensor2 operator*(const NcTensor2& a, const NcTensor2& b) {
        NcTensor2 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Word w1 = ka.first;
                w1.insert(w1.end(), kb.first.begin(), kb.first.end());
                Word w2 = ka.second;
                w2.insert(w2.end(), kb.second.begin(), kb.second.end());
                r.add_term({std::move(w1), std::move(w2)}, ca * cb);
            }
        return r;
    }
    NcTensor2 scaled(const S& c) const {
        NcTensor2 r;
        for (const auto& [k, v] : terms_) r.add_term(k, v * c);
        return r;
    }
    NcTensor2 flipped() const {
        NcTensor2 r;
        for (const auto& [k, v] : terms_) r.add_term({k.second, k.first}, v);
        return r;
    }
    friend bool operator==(const NcTensor2& a, const NcTensor2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NcTensor2& a, const NcTensor2& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << word_str(k.first) << " (x) " << word_str(k.second);
        }
        return os.str();
    }

private:
    std::map<Key, S> terms_;
};

template <class S>
class NcTensor3 {
public:
    using Key = std::tuple<Word, Word, Word>;
    NcTensor3() = default;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, S>& terms() const { return terms_; }
    void add_term(const Key& k, const S& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    NcTensor3& operator-=(const NcTensor3& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, S() - c);
        return *this;
    }
    friend bool operator==(const NcTensor3& a, const NcTensor3& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << word_str(std::get<0>(k)) << " (x) "
               << word_str(std::get<1>(k)) << " (x) " << word_str(std::get<2>(k));
        }
        return os.str();
    }

private:
    std::map<Key, S> terms_;
};

using NcR = NcElem<RatFunc>;
using NcH = NcElem<HSeries>;
using TensorR = NcTensor2<RatFunc>;
using Tensor3R = NcTensor3<RatFunc>;
using TensorH = NcTensor2<HSeries>;

/// A closed grid plus element factories. K/H letters are always indexed by
/// grid cells: composite group-likes are built multiplicatively and
/// composite Cartan elements additively, matching xi additivity.
class GridCtx {
public:
    explicit GridCtx(Grid grid);

    const Grid& grid() const { return grid_; }
    const std::vector<Interval>& cells() const { return cells_; }
    SpaceKind space() const { return grid_.space; }

    /// Cells covering iv, in concatenation order.
    std::vector<Interval> cells_of(const Interval& iv) const;

    NcR E(const Interval& iv) const { return NcR::from_gen({Family::E, iv}, RatFunc::one()); }
    NcR F(const Interval& iv) const { return NcR::from_gen({Family::F, iv}, RatFunc::one()); }
    NcR K(const Interval& iv, int exponent = 1) const;
    NcR H(const Interval& iv) const;
    Word k_word(const Interval& iv, int exponent) const;

    NcR one() const { return NcR(RatFunc::one()); }

private:
    Grid grid_;
    std::vector<Interval> cells_;
};

struct Rule {
    Gen g1, g2;
    NcR rhs;
    std::string name;
};

class RewriteSystem {
public:
    void add(Rule r);
    const Rule* find(const Gen& a, const Gen& b) const;
    const std::vector<Rule>& rules() const { return list_; }
    std::size_t size() const { return list_.size(); }

private:
    std::map<std::pair<Gen, Gen>, std::size_t> index_;
    std::vector<Rule> list_;
};

/// Mutations for negative-control tests: each flag corrupts one coefficient
/// family in the generated relations/rules.
struct CoeffMutation {
    bool flip_theta_minus = false;
    bool flip_beta_prime = false;
    bool shift_sigma = false;
    bool flip_coproduct_sign = false;
    bool any() const { return flip_theta_minus || flip_beta_prime || shift_sigma || flip_coproduct_sign; }
};

/// Full rule set for the grid: E/F straightening from the quantum Serre
/// relations, EF double relations, Cartan commutation and cancellation.
RewriteSystem build_rules(const GridCtx& ctx, const CoeffMutation& mut = {});

enum class ReduceStrategy { LeftmostInnermost, RightmostInnermost };

struct ReduceResult {
    NcR value;
    long steps = 0;
    bool completed = true;
};

ReduceResult reduce(const NcR& x, const RewriteSystem& rs, long step_budget,
                    ReduceStrategy strategy = ReduceStrategy::LeftmostInnermost);

/// Reduction to the rewrite fixpoint; BudgetExhausted when the budget runs
/// out (the partial result is in the exception message).
NcR normal_form(const NcR& x, const RewriteSystem& rs, long step_budget,
                ReduceStrategy strategy = ReduceStrategy::LeftmostInnermost);

TensorR reduce_legs(const TensorR& t, const RewriteSystem& rs, long step_budget);
Tensor3R reduce_legs(const Tensor3R& t, const RewriteSystem& rs, long step_budget);

struct OverlapCase {
    Word superposition;
    std::string rule_left, rule_right;
    NcR nf_left, nf_right;
};

/// Critical pairs of the rule set whose two reductions disagree within the
/// budget; empty output is evidence of local confluence up to max_degree.
std::vector<OverlapCase> overlap_report(const RewriteSystem& rs, int max_degree,
                                        long step_budget = 100000);

/// The unique algebra homomorphism extending a generator assignment.
NcR apply_hom(const std::map<Gen, NcR>& assignment, const NcR& x);

/// S-expression element syntax, e.g. "(+ (* 3/2 q^2 (E (0,1]) (F (1,2])) (K (0,1]))".
NcR parse_element(const std::string& text, const GridCtx& ctx);
std::string render_element(const NcR& x);

/// hbar-mode image: scalars via v = exp(hbar/4), group-likes expanded as
/// truncated exponentials in the cell H letters.
NcH to_hbar(const NcR& x, const GridCtx& ctx, int order);
NcTensor2<HSeries> to_hbar(const TensorR& t, const GridCtx& ctx, int order);

} // namespace ckm
