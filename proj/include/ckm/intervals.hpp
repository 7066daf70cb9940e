#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ckm/rational.hpp"

namespace ckm {

enum class SpaceKind { Line, Circle };

std::string to_string(SpaceKind s);

/// Half-open interval (a,b] on the rational line, a proper arc on the
/// rational circle (the set traversed counterclockwise from a exclusive to b
/// inclusive, endpoints normalized to [0,1)), or the full circle.
class Interval {
public:
    static Interval line(const Rational& a, const Rational& b);
    static Interval arc(const Rational& a, const Rational& b);
    static Interval full_circle();

    SpaceKind space() const { return space_; }
    bool is_full() const { return full_; }
    bool is_contractible() const { return !full_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    /// Arc length on the circle (fraction of the whole), (b-a) for the line.
    Rational length() const;
    bool contains(const Rational& x) const;

    friend bool operator==(const Interval& x, const Interval& y);
    friend bool operator!=(const Interval& x, const Interval& y) { return !(x == y); }
    /// Total order used for words and reports: line (a, b) lex; circle by
    /// (start, length descending) with the full circle greatest. The
    /// descending length tie-break keeps strict unions below their operands,
    /// which the rewriting term order needs on the circle.
    friend bool operator<(const Interval& x, const Interval& y);

    std::string str() const;

private:
    Interval() = default;
    SpaceKind space_ = SpaceKind::Line;
    bool full_ = false;
    Rational a_, b_;
};

/// "(a,b]" on the line, "circ(a,b]" for arcs, "circle" for the full circle.
Interval parse_interval(const std::string& text);

enum class RelativePosition {
    Equal,
    AdjacentAB,
    AdjacentBA,
    OverlapAB,
    OverlapBA,
    Orthogonal,
    StrictSubAB,
    StrictSubBA,
    RSubAB,
    LSubAB,
    RSubBA,
    LSubBA,
    DoubleOverlap,
    ContainsFullCircleAB,
    ContainsFullCircleBA,
};

std::string to_string(RelativePosition p);

/// Table row letter (a)-(k) for the eleven line positions; '\0' for Equal and
/// the circle-only positions.
char table_row(RelativePosition p);

RelativePosition classify(const Interval& alpha, const Interval& beta);

std::optional<Interval> sum(const Interval& alpha, const Interval& beta);
std::optional<Interval> difference(const Interval& alpha, const Interval& beta);
std::optional<Interval> strict_union(const Interval& alpha, const Interval& beta);
std::optional<Interval> strict_intersection(const Interval& alpha, const Interval& beta);

bool serre_pair(const Interval& alpha, const Interval& beta);

/// Finite Z- (or Q-) combination of characteristic functions, kept in
/// canonical step form: on the line, breakpoints t0<...<tk with heights on
/// (t_{i-1},t_i] and zero outside; on the circle, cyclic pieces plus a
/// constant part (the full circle has no jumps).
class StepFun {
public:
    explicit StepFun(SpaceKind space) : space_(space) {}
    static StepFun indicator(const Interval& iv, const Rational& height = Rational(1));

    SpaceKind space() const { return space_; }
    bool is_zero() const;
    Rational at(const Rational& x) const;        // f(x) = left limit (left-continuous)
    Rational right_limit(const Rational& x) const;

    StepFun& operator+=(const StepFun& o);
    friend StepFun operator+(StepFun a, const StepFun& b) { return a += b; }
    friend StepFun operator-(StepFun a, const StepFun& b) { return a += b.scaled(Rational(-1)); }
    StepFun scaled(const Rational& c) const;
    friend bool operator==(const StepFun& a, const StepFun& b);
    friend bool operator!=(const StepFun& a, const StepFun& b) { return !(a == b); }
    friend bool operator<(const StepFun& a, const StepFun& b);

    const std::vector<Rational>& breakpoints() const { return ts_; }

    friend Rational half_form(const StepFun& f, const StepFun& g);

    std::string str() const;

private:
    SpaceKind space_;
    std::vector<Rational> ts_;
    std::vector<Rational> hs_;  // line: hs_[i] on (ts_[i], ts_[i+1]]; circle: cyclic
    Rational const_;            // circle only: constant summand
    void canonicalize();
};

using CharFun = StepFun;

/// <f|g> = sum_p f_-(p) (g_-(p) - g_+(p)); finite jump sum.
Rational half_form(const StepFun& f, const StepFun& g);
long half_form(const Interval& alpha, const Interval& beta);

Rational euler_form(const StepFun& f, const StepFun& g);
long euler_form(const Interval& alpha, const Interval& beta);
Rational euler_form(const StepFun& f, const Interval& beta);

/// The coefficient functions driving every relation. All are documented by
/// their defining formulas; values can be half-integers on the circle (the
/// relations only ever use them multiplied by a vanishing factor or inside
/// q-exponents, where v = q^{1/2} absorbs the half).
long coeff_alpha(const Interval& a, const Interval& b);  // (-1)^{<a|b>} (a,b)
std::optional<Rational> coeff_beta_prime(const Interval& a, const Interval& b);
std::optional<Rational> coeff_gamma_plus(const Interval& a, const Interval& b);
std::optional<Rational> coeff_gamma_minus(const Interval& a, const Interval& b);
long coeff_sigma(const Interval& a, const Interval& b);
std::optional<Rational> coeff_theta_plus(const Interval& a, const Interval& b);
std::optional<Rational> coeff_theta_minus(const Interval& a, const Interval& b);

/// Classical Serre coefficient alpha_c(a, a+b); zero stands in when a+b is
/// undefined (the relation's right side drops).
long serre_coeff(const Interval& a, const Interval& b);

struct Grid {
    SpaceKind space = SpaceKind::Line;
    std::vector<Interval> intervals;  // sorted, closed under sum/difference

    bool contains(const Interval& iv) const;
    /// Minimal cells between consecutive grid endpoints; every grid interval
    /// is a concatenation of cells.
    std::vector<Interval> cells() const;
};

Grid close_grid(SpaceKind space, std::vector<Interval> seed, std::size_t cap = 256);
Grid uniform_line_grid(int n, std::size_t cap = 256);
Grid circle_arc_grid(int arcs, std::size_t cap = 256);

struct CartanData {
    std::vector<Interval> intervals;
    std::vector<std::vector<long>> matrix;
};

/// Checks conditions for an irreducible set: each pair concatenates, is
/// orthogonal, or nests inside a full circle. Returns a reason on failure.
bool is_irreducible(const std::vector<Interval>& js, std::string* why = nullptr);
CartanData cartan_matrix(const std::vector<Interval>& js);  // throws NotIrreducible
std::string quiver_dot(const CartanData& data);

std::vector<Interval> random_irreducible_set(std::mt19937_64& rng, int max_size);

} // namespace ckm
