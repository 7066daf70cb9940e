#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ckm/rational.hpp"

namespace ckm {

/// Laurent polynomial in v = q^{1/2} over the rationals. Exponents are
/// exponents of v, so q^k is stored as v^{2k}. No zero coefficients kept.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const Rational& c) {
        if (c != 0) c_[0] = c;
    }
    explicit Laurent(long n) : Laurent(Rational(n)) {}

    static Laurent v_pow(long k) {
        Laurent x;
        x.c_[k] = 1;
        return x;
    }
    static Laurent q_pow(long k) { return v_pow(2 * k); }
    static Laurent one() { return Laurent(Rational(1)); }
    // q - q^{-1} = v^2 - v^{-2}
    static Laurent q_minus_qinv() {
        Laurent x;
        x.c_[2] = 1;
        x.c_[-2] = -1;
        return x;
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<long, Rational>& coeffs() const { return c_; }
    Rational coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    long min_exp() const { return c_.begin()->first; }   // pre: !is_zero
    long max_exp() const { return c_.rbegin()->first; }  // pre: !is_zero

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent operator-() const;
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
    friend bool operator<(const Laurent& a, const Laurent& b) { return a.c_ < b.c_; }

    Laurent scaled(const Rational& c) const;

    /// Exact division by a monomial c*v^k; anything else raises
    /// DivisionByNonMonomial.
    Laurent divided_by_monomial(const Laurent& m) const;

    /// Exact polynomial division; nullopt when the remainder is nonzero.
    std::optional<Laurent> divided_exactly(const Laurent& d) const;

    std::string str() const;

private:
    std::map<long, Rational> c_;
    void set(long e, const Rational& v) {
        if (v == 0) c_.erase(e);
        else c_[e] = v;
    }
    friend Laurent laurent_gcd(const Laurent&, const Laurent&);
};

/// Monic-ish gcd in Q[v, v^{-1}] (defined up to units c*v^k; we return the
/// representative with min exponent 0 and leading coefficient 1).
Laurent laurent_gcd(const Laurent& a, const Laurent& b);

/// Element of the fraction field Q(v), kept as num/den with den normalized
/// (gcd-reduced, min exponent 0, leading coefficient 1).
class RatFunc {
public:
    RatFunc() : num_(), den_(Laurent::one()) {}
    RatFunc(const Laurent& n) : num_(n), den_(Laurent::one()) {}
    RatFunc(const Rational& c) : num_(Laurent(c)), den_(Laurent::one()) {}
    explicit RatFunc(long n) : RatFunc(Rational(n)) {}
    RatFunc(Laurent n, Laurent d);

    static RatFunc v_pow(long k) { return RatFunc(Laurent::v_pow(k)); }
    static RatFunc q_pow(long k) { return RatFunc(Laurent::q_pow(k)); }
    static RatFunc one() { return RatFunc(Laurent::one()); }

    bool is_zero() const { return num_.is_zero(); }
    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_laurent() const;
    Laurent as_laurent() const;  // pre: is_laurent

    RatFunc scaled(const Rational& c) const { return *this * RatFunc(c); }
    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);  // pre: b != 0
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc inverse() const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    std::string str() const;

private:
    Laurent num_, den_;
    void normalize();
};

/// Truncated Laurent series in hbar: coefficients for exponents <= order are
/// exact, everything above is discarded. Negative exponents carry the
/// 1/(q-q^{-1}) and 1/hbar factors that appear in pairings and limits.
class HSeries {
public:
    /// Default: an exact zero of effectively unlimited order (neutral under
    /// the min-order rule of the arithmetic).
    HSeries() : order_(1 << 20) {}
    explicit HSeries(int order) : order_(order) {}
    HSeries(int order, const Rational& c) : order_(order) {
        if (c != 0 && order >= 0) c_[0] = c;
    }

    static HSeries hbar_pow(int order, int k) {
        HSeries s(order);
        if (k <= order) s.c_[k] = 1;
        return s;
    }
    static HSeries one(int order) { return HSeries(order, Rational(1)); }

    int order() const { return order_; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    const std::map<int, Rational>& coeffs() const { return c_; }
    int valuation() const { return c_.empty() ? order_ + 1 : c_.begin()->first; }

    HSeries operator-() const;
    friend HSeries operator+(const HSeries& a, const HSeries& b);
    friend HSeries operator-(const HSeries& a, const HSeries& b);
    friend HSeries operator*(const HSeries& a, const HSeries& b);
    HSeries& operator+=(const HSeries& o) { return *this = *this + o; }
    HSeries& operator-=(const HSeries& o) { return *this = *this - o; }
    HSeries& operator*=(const HSeries& o) { return *this = *this * o; }
    friend bool operator==(const HSeries& a, const HSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const HSeries& a, const HSeries& b) { return !(a == b); }
    friend bool operator<(const HSeries& a, const HSeries& b) { return a.c_ < b.c_; }

    HSeries scaled(const Rational& c) const;
    /// Multiply by hbar^k (k may be negative); drops coefficients past order.
    HSeries shifted(int k) const;
    HSeries truncated(int order) const;
    /// Division by a series with nonzero lowest retained coefficient.
    HSeries divided_by(const HSeries& d) const;

    std::string str() const;

private:
    int order_;
    std::map<int, Rational> c_;  // exponent -> coefficient, no zeros
    void set(int e, const Rational& v) {
        if (v == 0 || e > order_) c_.erase(e);
        else c_[e] = v;
    }
};

/// Substitution v = exp(hbar/4), truncated at the given order; a ring
/// homomorphism up to that order.
HSeries expand_hbar(const Laurent& x, int order);
HSeries expand_hbar(const RatFunc& x, int order);

} // namespace ckm
