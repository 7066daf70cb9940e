#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ckm/intervals.hpp"
#include "ckm/report.hpp"

namespace ckm {

/// Element of the generator span: x+ and x- components indexed by intervals,
/// Cartan component as a step function. The span is closed under the bracket
/// on the line and the circle, so this is a faithful structure-constant model.
struct LieElem {
    SpaceKind space;
    std::map<Interval, Rational> plus, minus;
    StepFun cartan;

    explicit LieElem(SpaceKind s) : space(s), cartan(s) {}
    bool is_zero() const { return plus.empty() && minus.empty() && cartan.is_zero(); }

    LieElem& operator+=(const LieElem& o);
    friend LieElem operator+(LieElem a, const LieElem& b) { return a += b; }
    friend LieElem operator-(LieElem a, const LieElem& b) { return a += b.scaled(Rational(-1)); }
    LieElem scaled(const Rational& c) const;
    friend bool operator==(const LieElem& a, const LieElem& b) {
        return a.plus == b.plus && a.minus == b.minus && a.cartan == b.cartan;
    }
    friend bool operator!=(const LieElem& a, const LieElem& b) { return !(a == b); }
    std::string str() const;
};

LieElem lie_xplus(const Interval& iv);
LieElem lie_xminus(const Interval& iv);
LieElem lie_xi(const Interval& iv);
LieElem lie_xi(StepFun f);

/// Structure-constant bracket: diagonal action, double relations, Serre
/// relations; undefined-interval terms drop.
LieElem bracket(const LieElem& x, const LieElem& y);

/// Invariant form: (xi,xi) is the Euler form, (x+_a, x-_b) = delta_ab,
/// everything else zero.
Rational invariant_form(const LieElem& x, const LieElem& y);

/// Generator references for sweeps: x+ / x- / xi over grid intervals.
struct LieGen {
    enum Kind : std::uint8_t { Plus = 0, Minus = 1, Cartan = 2 };
    Kind kind;
    Interval iv;
    friend bool operator<(const LieGen& a, const LieGen& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.iv < b.iv;
    }
    friend bool operator==(const LieGen& a, const LieGen& b) {
        return a.kind == b.kind && a.iv == b.iv;
    }
    std::string str() const;
};

std::vector<LieGen> grid_generators(const Grid& grid);
LieElem to_elem(SpaceKind space, const LieGen& g);

/// Tensor square over the generator basis; Cartan legs are decomposed into
/// grid cells so equality is canonical.
class LieTensor2 {
public:
    using Key = std::pair<LieGen, LieGen>;
    LieTensor2() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }
    void add_term(const Key& k, const Rational& c);
    LieTensor2& operator+=(const LieTensor2& o);
    LieTensor2& operator-=(const LieTensor2& o);
    LieTensor2 flipped() const;
    friend bool operator==(const LieTensor2& a, const LieTensor2& b) { return a.terms_ == b.terms_; }
    std::string str() const;

private:
    std::map<Key, Rational> terms_;
};

/// Decomposition of an element over the generator basis (Cartan by cells).
std::vector<std::pair<LieGen, Rational>> decompose(const LieElem& x,
                                                   const std::vector<Interval>& cells);

/// Grid-truncated cobracket: delta(xi)=0, delta(x+-_a) = xi_a /\ x+-_a +
/// sum over ordered grid splittings b(+)c = a of the Serre coefficient times
/// x_b /\ x_c, with /\ = (x)  -  flip.
LieTensor2 cobracket(const LieGen& g, const Grid& grid);

CheckReport jacobi_check(const Grid& grid);
CheckReport invariant_form_check(const Grid& grid);
CheckReport cobracket_check(const Grid& grid);   // co-Jacobi + cocycle
CheckReport lba_pairing_check(const Grid& grid); // pairing identity + db coefficient identities
CheckReport db_coeff_check(const Grid& grid);
CheckReport cartan_random_check(std::uint64_t seed, int count);

/// phi' (inclusion) / phi'' (split refinement) embedding check: applies the
/// generator substitution to every defining relation of the smaller
/// Borcherds-Kac-Moody presentation and evaluates in the model.
CheckReport colimit_embedding_check(const std::vector<Interval>& j_small,
                                    const std::vector<Interval>& j_big,
                                    bool corrupt_sign_for_test = false);

/// Enumerates all split refinements inside the grid plus coherence diamonds
/// for chains of length up to three.
CheckReport colimit_check(const Grid& grid, std::size_t max_sets = 4096);

CheckReport sl_presentation_check(const Grid& grid);
CheckReport circle_decomposition_check(const Grid& grid);

} // namespace ckm
