#include "ckm/scalars.hpp"

#include <sstream>

namespace ckm {

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, v] : o.c_) set(e, coeff(e) + v);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, v] : o.c_) set(e, coeff(e) - v);
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) r.set(ea + eb, r.coeff(ea + eb) + va * vb);
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, v] : c_) r.c_[e] = -v;
    return r;
}

Laurent Laurent::scaled(const Rational& c) const {
    Laurent r;
    if (c == 0) return r;
    for (const auto& [e, v] : c_) r.c_[e] = v * c;
    return r;
}

Laurent Laurent::divided_by_monomial(const Laurent& m) const {
    if (m.c_.size() != 1) throw DivisionByNonMonomial("divisor is not a monomial: " + m.str());
    long e = m.c_.begin()->first;
    Rational c = m.c_.begin()->second;
    Laurent r;
    for (const auto& [ex, v] : c_) r.c_[ex - e] = v / c;
    return r;
}

std::optional<Laurent> Laurent::divided_exactly(const Laurent& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return Laurent();
    // Units v^k are invertible, so shift both to polynomials with nonzero
    // constant term and run plain long division.
    long shift = min_exp() - d.min_exp();
    Laurent u = *this * v_pow(-min_exp());
    Laurent w = d * v_pow(-d.min_exp());
    Laurent quot, rem = u;
    while (!rem.is_zero() && rem.max_exp() >= w.max_exp()) {
        long e = rem.max_exp() - w.max_exp();
        Rational c = rem.coeff(rem.max_exp()) / w.coeff(w.max_exp());
        Laurent t;
        t.c_[e] = c;
        quot += t;
        rem -= t * w;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot * v_pow(shift);
}

std::string Laurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        Rational v = it->second;
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        } else if (v < 0) {
            os << "-";
            v = -v;
        }
        first = false;
        long e = it->first;
        std::string var;
        if (e == 0) var = "";
        else if (e % 2 == 0) var = (e == 2) ? "q" : "q^" + std::to_string(e / 2);
        else var = (e == 1) ? "v" : "v^" + std::to_string(e);
        if (var.empty()) os << to_string(v);
        else if (v == 1) os << var;
        else os << to_string(v) << "*" << var;
    }
    return os.str();
}

Laurent laurent_gcd(const Laurent& a, const Laurent& b) {
    // Work with min exponent shifted to 0; units v^k are quotiented out.
    auto shift0 = [](const Laurent& x) {
        Laurent r;
        if (x.is_zero()) return r;
        long m = x.min_exp();
        for (const auto& [e, v] : x.c_) r.c_[e - m] = v;
        return r;
    };
    Laurent u = shift0(a), w = shift0(b);
    while (!w.is_zero()) {
        // remainder of u by w (degrees are plain polynomial degrees here)
        Laurent rem = u;
        while (!rem.is_zero() && rem.max_exp() >= w.max_exp()) {
            long e = rem.max_exp() - w.max_exp();
            Rational c = rem.coeff(rem.max_exp()) / w.coeff(w.max_exp());
            Laurent t;
            t.c_[e] = c;
            rem -= t * w;
        }
        u = w;
        w = shift0(rem);
    }
    if (u.is_zero()) return u;
    return u.scaled(Rational(1) / u.coeff(u.max_exp()));
}

RatFunc::RatFunc(Laurent n, Laurent d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw DivisionByNonMonomial("zero denominator in Q(v)");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Laurent::one();
        return;
    }
    Laurent g = laurent_gcd(num_, den_);
    if (!(g == Laurent::one())) {
        num_ = *num_.divided_exactly(g);
        den_ = *den_.divided_exactly(g);
    }
    // push the unit c*v^k of den into num
    long k = den_.min_exp();
    Rational lead = den_.coeff(den_.max_exp());
    Laurent unit;
    if (k != 0 || lead != 1) {
        Laurent u = Laurent::v_pow(-k).scaled(Rational(1) / lead);
        den_ = den_ * u;
        num_ = num_ * u;
    }
}

bool RatFunc::is_laurent() const { return den_ == Laurent::one(); }

Laurent RatFunc::as_laurent() const {
    if (!is_laurent()) throw DivisionByNonMonomial("not a Laurent polynomial: " + str());
    return num_;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByNonMonomial("division by zero in Q(v)");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByNonMonomial("inverse of zero in Q(v)");
    return RatFunc(den_, num_);
}

std::string RatFunc::str() const {
    if (is_laurent()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

HSeries HSeries::operator-() const {
    HSeries r(order_);
    for (const auto& [e, v] : c_) r.c_[e] = -v;
    return r;
}

HSeries operator+(const HSeries& a, const HSeries& b) {
    HSeries r(std::min(a.order_, b.order_));
    for (const auto& [e, v] : a.c_)
        if (e <= r.order_) r.c_[e] = v;
    for (const auto& [e, v] : b.c_)
        if (e <= r.order_) r.set(e, r.coeff(e) + v);
    return r;
}

HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }

HSeries operator*(const HSeries& a, const HSeries& b) {
    HSeries r(std::min(a.order_, b.order_));
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) {
            int e = ea + eb;
            if (e <= r.order_) r.set(e, r.coeff(e) + va * vb);
        }
    return r;
}

HSeries HSeries::scaled(const Rational& c) const {
    HSeries r(order_);
    if (c == 0) return r;
    for (const auto& [e, v] : c_) r.c_[e] = v * c;
    return r;
}

HSeries HSeries::shifted(int k) const {
    HSeries r(order_);
    for (const auto& [e, v] : c_)
        if (e + k <= order_) r.c_[e + k] = v;
    return r;
}

HSeries HSeries::truncated(int order) const {
    HSeries r(order);
    for (const auto& [e, v] : c_)
        if (e <= order) r.c_[e] = v;
    return r;
}

HSeries HSeries::divided_by(const HSeries& d) const {
    if (d.is_zero()) throw DivisionByNonMonomial("division by zero hbar-series");
    int vd = d.valuation();
    // shift divisor to valuation 0, divide, shift back; the quotient is
    // exact only vd orders below the operands
    HSeries den = d.shifted(-vd);
    Rational lead = den.coeff(0);
    HSeries num = shifted(-vd);
    HSeries quot(std::min(order_, d.order_) - vd);
    HSeries rem = num;
    for (int e = rem.valuation(); e <= quot.order(); e = rem.valuation()) {
        if (rem.is_zero()) break;
        Rational c = rem.coeff(e) / lead;
        HSeries t(quot.order());
        t.set(e, c);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

std::string HSeries::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        Rational w = v;
        if (!first) {
            os << (w < 0 ? " - " : " + ");
            if (w < 0) w = -w;
        } else if (w < 0) {
            os << "-";
            w = -w;
        }
        first = false;
        std::string var;
        if (e == 0) var = "";
        else if (e == 1) var = "h";
        else var = "h^" + std::to_string(e);
        if (var.empty()) os << to_string(w);
        else if (w == 1) os << var;
        else os << to_string(w) << "*" << var;
    }
    return os.str();
}

HSeries expand_hbar(const Laurent& x, int order) {
    // exp(k*hbar/4) for the needed exponents
    HSeries r(order);
    for (const auto& [e, v] : x.coeffs()) {
        HSeries term(order, v);
        // multiply by exp(e*hbar/4)
        HSeries ex(order, Rational(1));
        Rational fact(1);
        Rational pw(1);
        for (int k = 1; k <= order; ++k) {
            fact *= k;
            pw *= Rational(e, 4);
            ex += HSeries::hbar_pow(order, k).scaled(pw / fact);
        }
        r += term * ex;
    }
    return r;
}

HSeries expand_hbar(const RatFunc& x, int order) {
    if (x.is_laurent()) return expand_hbar(x.num(), order);
    // The denominator's hbar-expansion has some valuation m; to keep the
    // quotient exact through `order` the numerator must be expanded to
    // order + m.
    HSeries den_probe = expand_hbar(x.den(), order + 8);
    int m = den_probe.valuation();
    HSeries num = expand_hbar(x.num(), order + m);
    HSeries den = expand_hbar(x.den(), order + m);
    return num.divided_by(den).truncated(order);
}

} // namespace ckm
