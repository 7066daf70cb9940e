#include "ckm/intervals.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "ckm/errors.hpp"

namespace ckm {

std::string to_string(SpaceKind s) { return s == SpaceKind::Line ? "line" : "circle"; }

Interval Interval::line(const Rational& a, const Rational& b) {
    if (!(a < b)) throw ParseError("line interval needs a < b, got (" + ckm::to_string(a) + "," + ckm::to_string(b) + "]");
    Interval iv;
    iv.space_ = SpaceKind::Line;
    iv.a_ = a;
    iv.b_ = b;
    return iv;
}

Interval Interval::arc(const Rational& a, const Rational& b) {
    Interval iv;
    iv.space_ = SpaceKind::Circle;
    iv.a_ = frac_mod1(a);
    iv.b_ = frac_mod1(b);
    if (iv.a_ == iv.b_) throw ParseError("arc endpoints must differ mod 1");
    return iv;
}

Interval Interval::full_circle() {
    Interval iv;
    iv.space_ = SpaceKind::Circle;
    iv.full_ = true;
    return iv;
}

Rational Interval::length() const {
    if (full_) return Rational(1);
    if (space_ == SpaceKind::Line) return b_ - a_;
    Rational len = b_ - a_;
    if (len <= 0) len += 1;
    return len;
}

bool Interval::contains(const Rational& x) const {
    if (space_ == SpaceKind::Line) return a_ < x && x <= b_;
    if (full_) return true;
    Rational d = frac_mod1(x - a_);
    return 0 < d && d <= length();
}

bool operator==(const Interval& x, const Interval& y) {
    if (x.space_ != y.space_ || x.full_ != y.full_) return false;
    if (x.full_) return true;
    return x.a_ == y.a_ && x.b_ == y.b_;
}

bool operator<(const Interval& x, const Interval& y) {
    if (x.space_ != y.space_) return x.space_ < y.space_;
    if (x.space_ == SpaceKind::Line) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }
    if (x.full_ != y.full_) return y.full_;  // full circle greatest
    if (x.full_) return false;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return y.length() < x.length();  // longer arc first at equal start
}

std::string Interval::str() const {
    if (full_) return "circle";
    std::string body = "(" + ckm::to_string(a_) + "," + ckm::to_string(b_) + "]";
    return space_ == SpaceKind::Line ? body : "circ" + body;
}

Interval parse_interval(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "circle") return Interval::full_circle();
    bool circ = false;
    if (s.rfind("circ(", 0) == 0) {
        circ = true;
        s = s.substr(4);
    }
    if (s.size() < 5 || s.front() != '(' || s.back() != ']')
        throw ParseError("bad interval literal: " + text);
    s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("bad interval literal: " + text);
    Rational a = parse_rational(s.substr(0, comma));
    Rational b = parse_rational(s.substr(comma + 1));
    return circ ? Interval::arc(a, b) : Interval::line(a, b);
}

std::string to_string(RelativePosition p) {
    switch (p) {
        case RelativePosition::Equal: return "Equal";
        case RelativePosition::AdjacentAB: return "AdjacentAB";
        case RelativePosition::AdjacentBA: return "AdjacentBA";
        case RelativePosition::OverlapAB: return "OverlapAB";
        case RelativePosition::OverlapBA: return "OverlapBA";
        case RelativePosition::Orthogonal: return "Orthogonal";
        case RelativePosition::StrictSubAB: return "StrictSubAB";
        case RelativePosition::StrictSubBA: return "StrictSubBA";
        case RelativePosition::RSubAB: return "RSubAB";
        case RelativePosition::LSubAB: return "LSubAB";
        case RelativePosition::RSubBA: return "RSubBA";
        case RelativePosition::LSubBA: return "LSubBA";
        case RelativePosition::DoubleOverlap: return "DoubleOverlap";
        case RelativePosition::ContainsFullCircleAB: return "ContainsFullCircleAB";
        case RelativePosition::ContainsFullCircleBA: return "ContainsFullCircleBA";
    }
    return "?";
}

char table_row(RelativePosition p) {
    switch (p) {
        case RelativePosition::AdjacentAB: return 'a';
        case RelativePosition::AdjacentBA: return 'b';
        case RelativePosition::OverlapAB: return 'c';
        case RelativePosition::OverlapBA: return 'd';
        case RelativePosition::Orthogonal: return 'e';
        case RelativePosition::StrictSubAB: return 'f';
        case RelativePosition::StrictSubBA: return 'g';
        case RelativePosition::RSubAB: return 'h';
        case RelativePosition::LSubAB: return 'i';
        case RelativePosition::RSubBA: return 'j';
        case RelativePosition::LSubBA: return 'k';
        default: return '\0';
    }
}

namespace {

void require_same_space(const Interval& a, const Interval& b) {
    if (a.space() != b.space())
        throw SpaceMismatch("intervals on different spaces: " + a.str() + " vs " + b.str());
}

using Seg = std::pair<Rational, Rational>;  // (lo, hi] inside (0,1]

// Fundamental-domain segments of an arc or the full circle.
std::vector<Seg> segments(const Interval& iv) {
    if (iv.is_full()) return {{Rational(0), Rational(1)}};
    Rational a = iv.a(), b = iv.b();
    if (b == 0) return {{a, Rational(1)}};
    if (a < b) return {{a, b}};
    std::vector<Seg> out = {{a, Rational(1)}};
    out.push_back({Rational(0), b});
    return out;
}

// Circle components of the intersection of two arcs, as arcs.
std::vector<Interval> circle_intersection(const Interval& x, const Interval& y) {
    std::vector<Seg> pieces;
    for (const Seg& s : segments(x))
        for (const Seg& t : segments(y)) {
            Rational lo = std::max(s.first, t.first);
            Rational hi = std::min(s.second, t.second);
            if (lo < hi) pieces.push_back({lo, hi});
        }
    std::sort(pieces.begin(), pieces.end());
    // merge segments touching inside the domain
    std::vector<Seg> merged;
    for (const Seg& p : pieces) {
        if (!merged.empty() && merged.back().second == p.first) merged.back().second = p.second;
        else merged.push_back(p);
    }
    // merge through the wrap point 1 == 0
    bool wrap = merged.size() >= 2 && merged.front().first == 0 && merged.back().second == 1;
    std::vector<Interval> comps;
    size_t begin = 0, end = merged.size();
    if (wrap) {
        comps.push_back(Interval::arc(merged.back().first, merged.front().second));
        begin = 1;
        end = merged.size() - 1;
    }
    for (size_t i = begin; i < end; ++i)
        comps.push_back(Interval::arc(merged[i].first, merged[i].second == 1 ? Rational(0) : merged[i].second));
    return comps;
}

bool disjoint(const Interval& x, const Interval& y) {
    if (x.space() == SpaceKind::Line) return x.b() <= y.a() || y.b() <= x.a();
    if (x.is_full() || y.is_full()) return false;
    return circle_intersection(x, y).empty();
}

RelativePosition classify_line(const Interval& x, const Interval& y) {
    const Rational &a = x.a(), &b = x.b(), &c = y.a(), &d = y.b();
    if (b < c || d < a) return RelativePosition::Orthogonal;
    if (b == c) return RelativePosition::AdjacentAB;
    if (d == a) return RelativePosition::AdjacentBA;
    if (a == c) return b < d ? RelativePosition::RSubAB : RelativePosition::RSubBA;
    if (b == d) return a > c ? RelativePosition::LSubAB : RelativePosition::LSubBA;
    if (c < a && b < d) return RelativePosition::StrictSubAB;
    if (a < c && d < b) return RelativePosition::StrictSubBA;
    return a < c ? RelativePosition::OverlapAB : RelativePosition::OverlapBA;
}

RelativePosition classify_circle(const Interval& x, const Interval& y) {
    if (x.is_full()) return RelativePosition::ContainsFullCircleAB;
    if (y.is_full()) return RelativePosition::ContainsFullCircleBA;
    auto comps = circle_intersection(x, y);
    if (comps.empty()) {
        if (x.b() == y.a()) return RelativePosition::AdjacentAB;
        if (y.b() == x.a()) return RelativePosition::AdjacentBA;
        return RelativePosition::Orthogonal;
    }
    if (comps.size() == 2) return RelativePosition::DoubleOverlap;
    Rational off_yx = frac_mod1(y.a() - x.a());
    if (off_yx + y.length() <= x.length()) {  // y inside x
        if (off_yx == 0) return RelativePosition::RSubBA;
        if (off_yx + y.length() == x.length()) return RelativePosition::LSubBA;
        return RelativePosition::StrictSubBA;
    }
    Rational off_xy = frac_mod1(x.a() - y.a());
    if (off_xy + x.length() <= y.length()) {  // x inside y
        if (off_xy == 0) return RelativePosition::RSubAB;
        if (off_xy + x.length() == y.length()) return RelativePosition::LSubAB;
        return RelativePosition::StrictSubAB;
    }
    // proper single overlap: the shared arc is (y.a, x.b] or (x.a, y.b]
    if (y.a() != x.b() && comps[0] == Interval::arc(y.a(), x.b())) return RelativePosition::OverlapAB;
    return RelativePosition::OverlapBA;
}

} // namespace

RelativePosition classify(const Interval& alpha, const Interval& beta) {
    require_same_space(alpha, beta);
    if (alpha == beta) return RelativePosition::Equal;
    return alpha.space() == SpaceKind::Line ? classify_line(alpha, beta) : classify_circle(alpha, beta);
}

std::optional<Interval> sum(const Interval& alpha, const Interval& beta) {
    require_same_space(alpha, beta);
    if (alpha.space() == SpaceKind::Line) {
        if (alpha.b() == beta.a()) return Interval::line(alpha.a(), beta.b());
        if (beta.b() == alpha.a()) return Interval::line(beta.a(), alpha.b());
        return std::nullopt;
    }
    if (alpha.is_full() || beta.is_full()) return std::nullopt;
    if (!disjoint(alpha, beta)) return std::nullopt;
    bool ab = alpha.b() == beta.a(), ba = beta.b() == alpha.a();
    if (ab && ba) return Interval::full_circle();
    if (ab) return Interval::arc(alpha.a(), beta.b());
    if (ba) return Interval::arc(beta.a(), alpha.b());
    return std::nullopt;
}

std::optional<Interval> difference(const Interval& alpha, const Interval& beta) {
    require_same_space(alpha, beta);
    if (alpha == beta) return std::nullopt;
    if (alpha.space() == SpaceKind::Line) {
        if (!(alpha.a() <= beta.a() && beta.b() <= alpha.b())) return std::nullopt;
        if (beta.a() == alpha.a()) return Interval::line(beta.b(), alpha.b());
        if (beta.b() == alpha.b()) return Interval::line(alpha.a(), beta.a());
        return std::nullopt;
    }
    if (beta.is_full()) return std::nullopt;
    if (alpha.is_full()) return Interval::arc(beta.b(), beta.a());
    Rational off = frac_mod1(beta.a() - alpha.a());
    if (off + beta.length() > alpha.length()) return std::nullopt;  // beta not inside alpha
    if (off == 0) return Interval::arc(beta.b(), alpha.b());
    if (off + beta.length() == alpha.length()) return Interval::arc(alpha.a(), beta.a());
    return std::nullopt;
}

std::optional<Interval> strict_union(const Interval& alpha, const Interval& beta) {
    switch (classify(alpha, beta)) {
        case RelativePosition::AdjacentAB:
        case RelativePosition::AdjacentBA:
            return sum(alpha, beta);
        case RelativePosition::OverlapAB:
            if (alpha.space() == SpaceKind::Line) return Interval::line(alpha.a(), beta.b());
            // overlapping arcs can cover the whole circle
            if (alpha.a() == beta.b()) return Interval::full_circle();
            return Interval::arc(alpha.a(), beta.b());
        case RelativePosition::OverlapBA:
            if (alpha.space() == SpaceKind::Line) return Interval::line(beta.a(), alpha.b());
            if (beta.a() == alpha.b()) return Interval::full_circle();
            return Interval::arc(beta.a(), alpha.b());
        case RelativePosition::DoubleOverlap:
            return Interval::full_circle();
        default:
            return std::nullopt;
    }
}

std::optional<Interval> strict_intersection(const Interval& alpha, const Interval& beta) {
    switch (classify(alpha, beta)) {
        case RelativePosition::OverlapAB:
            return alpha.space() == SpaceKind::Line ? Interval::line(beta.a(), alpha.b())
                                                    : Interval::arc(beta.a(), alpha.b());
        case RelativePosition::OverlapBA:
            return alpha.space() == SpaceKind::Line ? Interval::line(alpha.a(), beta.b())
                                                    : Interval::arc(alpha.a(), beta.b());
        default:
            // adjacency, nesting, double overlap: no unique extremal witness
            return std::nullopt;
    }
}

bool serre_pair(const Interval& alpha, const Interval& beta) {
    require_same_space(alpha, beta);
    if (alpha.space() == SpaceKind::Line) return true;
    return !alpha.is_full();
}

StepFun StepFun::indicator(const Interval& iv, const Rational& height) {
    StepFun f(iv.space());
    if (height == 0) return f;
    if (iv.space() == SpaceKind::Line) {
        f.ts_ = {iv.a(), iv.b()};
        f.hs_ = {height};
        return f;
    }
    if (iv.is_full()) {
        f.const_ = height;
        return f;
    }
    Rational a = iv.a(), b = iv.b();
    if (a < b) {
        f.ts_ = {a, b};
        f.hs_ = {height, Rational(0)};  // (a,b] -> h, (b,a] wrap -> 0
    } else {
        f.ts_ = {b, a};
        f.hs_ = {Rational(0), height};  // (b,a] -> 0, (a,b] wrap -> h
    }
    return f;
}

bool StepFun::is_zero() const { return ts_.empty() && const_ == 0; }

void StepFun::canonicalize() {
    if (space_ == SpaceKind::Line) {
        // merge equal neighbours, trim zero boundary pieces
        std::vector<Rational> ts;
        std::vector<Rational> hs;
        for (size_t i = 0; i < hs_.size(); ++i) {
            if (!hs.empty() && hs.back() == hs_[i]) {
                ts.back() = ts_[i + 1];
            } else {
                if (ts.empty()) ts.push_back(ts_[i]);
                ts.push_back(ts_[i + 1]);
                hs.push_back(hs_[i]);
            }
        }
        while (!hs.empty() && hs.front() == 0) {
            hs.erase(hs.begin());
            ts.erase(ts.begin());
        }
        while (!hs.empty() && hs.back() == 0) {
            hs.pop_back();
            ts.pop_back();
        }
        if (hs.empty()) ts.clear();
        ts_ = std::move(ts);
        hs_ = std::move(hs);
        return;
    }
    if (ts_.empty()) return;
    // circle: fold the constant into the pieces so the representation is
    // unique, then drop breakpoints between cyclically equal neighbours
    if (const_ != 0) {
        for (auto& h : hs_) h += const_;
        const_ = 0;
    }
    size_t k = ts_.size();
    std::vector<Rational> ts;
    std::vector<Rational> hs;
    for (size_t i = 0; i < k; ++i) {
        if (hs_[i] == hs_[(i + k - 1) % k]) continue;  // piece continues across ts_[i]
        ts.push_back(ts_[i]);
        hs.push_back(hs_[i]);
    }
    if (ts.empty()) {
        const_ = hs_[0];  // all pieces equal: constant function
        ts_.clear();
        hs_.clear();
        return;
    }
    ts_ = std::move(ts);
    hs_ = std::move(hs);
}

Rational StepFun::at(const Rational& x) const {
    if (space_ == SpaceKind::Line) {
        if (ts_.empty()) return Rational(0);
        if (x <= ts_.front() || x > ts_.back()) return Rational(0);
        size_t i = std::lower_bound(ts_.begin(), ts_.end(), x) - ts_.begin();
        // ts_[i-1] < x <= ts_[i]
        return hs_[i - 1];
    }
    Rational y = frac_mod1(x);
    if (ts_.empty()) return const_;
    if (y <= ts_.front() || y > ts_.back()) return const_ + hs_.back();
    size_t i = std::lower_bound(ts_.begin(), ts_.end(), y) - ts_.begin();
    return const_ + hs_[i - 1];
}

Rational StepFun::right_limit(const Rational& x) const {
    if (space_ == SpaceKind::Line) {
        if (ts_.empty()) return Rational(0);
        if (x < ts_.front() || x >= ts_.back()) return Rational(0);
        size_t i = std::upper_bound(ts_.begin(), ts_.end(), x) - ts_.begin();
        // ts_[i-1] <= x < ts_[i]
        return hs_[i - 1];
    }
    Rational y = frac_mod1(x);
    if (ts_.empty()) return const_;
    if (y < ts_.front() || y >= ts_.back()) return const_ + hs_.back();
    size_t i = std::upper_bound(ts_.begin(), ts_.end(), y) - ts_.begin();
    return const_ + hs_[i - 1];
}

StepFun& StepFun::operator+=(const StepFun& o) {
    if (space_ != o.space_)
        throw SpaceMismatch("adding step functions on different spaces");
    std::vector<Rational> ts;
    ts.reserve(ts_.size() + o.ts_.size());
    std::merge(ts_.begin(), ts_.end(), o.ts_.begin(), o.ts_.end(), std::back_inserter(ts));
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (space_ == SpaceKind::Line) {
        std::vector<Rational> hs;
        for (size_t i = 0; i + 1 < ts.size(); ++i) hs.push_back(at(ts[i + 1]) + o.at(ts[i + 1]));
        ts_ = std::move(ts);
        hs_ = std::move(hs);
        if (ts_.size() == 1) ts_.clear();
        canonicalize();
        return *this;
    }
    if (ts.empty()) {
        const_ += o.const_;
        return *this;
    }
    std::vector<Rational> hs(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        const Rational& probe = ts[(i + 1) % ts.size()];  // right end of piece i lies inside it
        hs[i] = at(probe) + o.at(probe);
    }
    const_ = 0;
    ts_ = std::move(ts);
    hs_ = std::move(hs);
    canonicalize();
    return *this;
}

StepFun StepFun::scaled(const Rational& c) const {
    StepFun r(space_);
    if (c == 0) return r;
    r.ts_ = ts_;
    r.hs_.reserve(hs_.size());
    for (const auto& h : hs_) r.hs_.push_back(h * c);
    r.const_ = const_ * c;
    r.canonicalize();
    return r;
}

bool operator==(const StepFun& a, const StepFun& b) {
    return a.space_ == b.space_ && a.ts_ == b.ts_ && a.hs_ == b.hs_ && a.const_ == b.const_;
}

bool operator<(const StepFun& a, const StepFun& b) {
    if (a.space_ != b.space_) return a.space_ < b.space_;
    if (a.const_ != b.const_) return a.const_ < b.const_;
    if (a.ts_ != b.ts_) return a.ts_ < b.ts_;
    return a.hs_ < b.hs_;
}

std::string StepFun::str() const {
    std::ostringstream os;
    os << "{";
    if (space_ == SpaceKind::Circle && const_ != 0) os << "const " << ckm::to_string(const_) << "; ";
    for (size_t i = 0; i < hs_.size(); ++i) {
        if (i) os << ", ";
        size_t j = space_ == SpaceKind::Line ? i + 1 : (i + 1) % ts_.size();
        os << "(" << ckm::to_string(ts_[i]) << "," << ckm::to_string(ts_[j]) << "]:" << ckm::to_string(hs_[i]);
    }
    os << "}";
    return os.str();
}

Rational half_form(const StepFun& f, const StepFun& g) {
    if (f.space_ != g.space_) throw SpaceMismatch("half_form across spaces");
    Rational total(0);
    const auto& ts = g.ts_;
    size_t k = ts.size();
    for (size_t i = 0; i < k; ++i) {
        Rational left, right;
        if (g.space_ == SpaceKind::Line) {
            left = i == 0 ? Rational(0) : g.hs_[i - 1];
            right = i < g.hs_.size() ? g.hs_[i] : Rational(0);
        } else {
            left = g.const_ + g.hs_[(i + k - 1) % k];
            right = g.const_ + g.hs_[i];
        }
        if (left != right) total += f.at(ts[i]) * (left - right);
    }
    return total;
}

long half_form(const Interval& alpha, const Interval& beta) {
    require_same_space(alpha, beta);
    Rational r = half_form(StepFun::indicator(alpha), StepFun::indicator(beta));
    assert(denominator(r) == 1);
    return static_cast<long>(numerator(r));
}

Rational euler_form(const StepFun& f, const StepFun& g) { return half_form(f, g) + half_form(g, f); }

long euler_form(const Interval& alpha, const Interval& beta) {
    return half_form(alpha, beta) + half_form(beta, alpha);
}

Rational euler_form(const StepFun& f, const Interval& beta) {
    return euler_form(f, StepFun::indicator(beta));
}

long coeff_alpha(const Interval& a, const Interval& b) {
    long sign = (half_form(a, b) % 2 != 0) ? -1 : 1;
    return sign * euler_form(a, b);
}

std::optional<Rational> coeff_beta_prime(const Interval& a, const Interval& b) {
    auto u = strict_union(a, b);
    if (!u) return std::nullopt;
    return Rational(coeff_alpha(a, *u));
}

std::optional<Rational> coeff_gamma_plus(const Interval& a, const Interval& b) {
    auto d = difference(a, b);
    if (!d) return std::nullopt;
    return Rational(coeff_alpha(b, *d) - 1) / 2;
}

std::optional<Rational> coeff_gamma_minus(const Interval& a, const Interval& b) {
    auto d = difference(b, a);
    if (!d) return std::nullopt;
    return Rational(coeff_alpha(*d, a) + 1) / 2;
}

long coeff_sigma(const Interval& a, const Interval& b) {
    if (a == b) return 0;
    long sign = (half_form(a, b) % 2 != 0) ? -1 : 1;
    long e = euler_form(a, b);
    return sign * e * e;
}

std::optional<Rational> coeff_theta_plus(const Interval& a, const Interval& b) {
    auto s = sum(a, b);
    if (!s) return std::nullopt;
    return Rational(coeff_alpha(b, *s) + 1) / 2;
}

std::optional<Rational> coeff_theta_minus(const Interval& a, const Interval& b) {
    auto s = sum(a, b);
    if (!s) return std::nullopt;
    return Rational(coeff_alpha(b, *s) - 1) / 2;
}

long serre_coeff(const Interval& a, const Interval& b) {
    auto s = sum(a, b);
    if (!s) return 0;
    return coeff_alpha(a, *s);
}

bool Grid::contains(const Interval& iv) const {
    return std::binary_search(intervals.begin(), intervals.end(), iv);
}

std::vector<Interval> Grid::cells() const {
    std::set<Rational> pts;
    bool has_any = false;
    for (const auto& iv : intervals) {
        if (iv.is_full()) continue;
        pts.insert(iv.a());
        pts.insert(iv.b());
        has_any = true;
    }
    std::vector<Interval> out;
    if (!has_any) {
        return out;  // a lone full circle has no cell decomposition
    }
    std::vector<Rational> v(pts.begin(), pts.end());
    auto covered = [&](const Interval& cell) {
        for (const auto& iv : intervals) {
            if (iv.is_full()) return true;
            if (space == SpaceKind::Line) {
                if (iv.a() <= cell.a() && cell.b() <= iv.b()) return true;
            } else {
                Rational off = frac_mod1(cell.a() - iv.a());
                if (off + cell.length() <= iv.length()) return true;
            }
        }
        return false;
    };
    if (space == SpaceKind::Line) {
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            Interval cell = Interval::line(v[i], v[i + 1]);
            if (covered(cell)) out.push_back(cell);
        }
    } else {
        size_t k = v.size();
        for (size_t i = 0; i < k; ++i) {
            if (k == 1) break;
            Interval cell = Interval::arc(v[i], v[(i + 1) % k]);
            if (covered(cell)) out.push_back(cell);
        }
    }
    return out;
}

Grid close_grid(SpaceKind space, std::vector<Interval> seed, std::size_t cap) {
    std::set<Interval> acc;
    for (auto& iv : seed) {
        if (iv.space() != space) throw SpaceMismatch("grid seed interval on wrong space");
        acc.insert(iv);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Interval> cur(acc.begin(), acc.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = 0; j < cur.size(); ++j) {
                if (auto s = sum(cur[i], cur[j]); s && !acc.count(*s)) {
                    acc.insert(*s);
                    changed = true;
                }
                if (auto d = difference(cur[i], cur[j]); d && !acc.count(*d)) {
                    acc.insert(*d);
                    changed = true;
                }
                if (acc.size() > cap)
                    throw ResourceLimit("grid closure exceeded cap of " + std::to_string(cap));
            }
    }
    Grid g;
    g.space = space;
    g.intervals.assign(acc.begin(), acc.end());
    return g;
}

Grid uniform_line_grid(int n, std::size_t cap) {
    std::vector<Interval> seed;
    for (int i = 0; i < n; ++i) seed.push_back(Interval::line(Rational(i), Rational(i + 1)));
    return close_grid(SpaceKind::Line, std::move(seed), cap);
}

Grid circle_arc_grid(int arcs, std::size_t cap) {
    std::vector<Interval> seed;
    for (int i = 0; i < arcs; ++i)
        seed.push_back(Interval::arc(Rational(i, arcs), Rational(i + 1, arcs)));
    return close_grid(SpaceKind::Circle, std::move(seed), cap);
}

bool is_irreducible(const std::vector<Interval>& js, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (js.empty()) return fail("empty set");
    for (size_t i = 0; i < js.size(); ++i)
        for (size_t j = i + 1; j < js.size(); ++j) {
            const Interval &x = js[i], &y = js[j];
            if (x.space() != y.space()) return fail("mixed spaces");
            if (x == y) return fail("duplicate interval " + x.str());
            if (sum(x, y)) continue;                        // (a) concatenation
            if (disjoint(x, y)) continue;                   // (b) orthogonal
            if (x.is_full() != y.is_full()) continue;       // (c) nested in a full circle
            return fail("pair " + x.str() + ", " + y.str() + " is " +
                        to_string(classify(x, y)) + ": neither concatenates, nor is orthogonal, nor nests in a full circle");
        }
    return true;
}

CartanData cartan_matrix(const std::vector<Interval>& js) {
    std::string why;
    if (!is_irreducible(js, &why)) throw NotIrreducible(why);
    CartanData data;
    data.intervals = js;
    std::sort(data.intervals.begin(), data.intervals.end());
    size_t n = data.intervals.size();
    data.matrix.assign(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            data.matrix[i][j] = euler_form(data.intervals[i], data.intervals[j]);
    return data;
}

std::string quiver_dot(const CartanData& data) {
    std::ostringstream os;
    os << "digraph quiver {\n  rankdir=LR;\n";
    for (size_t i = 0; i < data.intervals.size(); ++i)
        os << "  n" << i << " [label=\"" << data.intervals[i].str() << "\"];\n";
    for (size_t i = 0; i < data.intervals.size(); ++i) {
        if (data.intervals[i].is_full()) os << "  n" << i << " -> n" << i << ";\n";
        for (size_t j = 0; j < data.intervals.size(); ++j) {
            if (i == j) continue;
            if (classify(data.intervals[i], data.intervals[j]) == RelativePosition::AdjacentAB)
                os << "  n" << i << " -> n" << j << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::vector<Interval> random_irreducible_set(std::mt19937_64& rng, int max_size) {
    auto rnd = [&](int n) { return static_cast<int>(rng() % n); };
    bool circle = rnd(2) == 0;
    int ncells = 2 + rnd(5);
    std::set<Rational> pts;
    while (static_cast<int>(pts.size()) < ncells + 1) {
        int den = 1 + rnd(6);
        int num = circle ? rnd(4 * den) : rnd(40) - 20;
        Rational p(num, den);
        if (circle) p = frac_mod1(p);
        pts.insert(p);
    }
    std::vector<Rational> t(pts.begin(), pts.end());
    std::vector<Interval> out;
    if (!circle) {
        size_t i = 0;
        while (i + 1 < t.size() && static_cast<int>(out.size()) < max_size) {
            if (rnd(3) == 0) {  // gap
                ++i;
                continue;
            }
            size_t len = 1 + rnd(3);
            size_t j = std::min(i + len, t.size() - 1);
            // split the run [t_i, t_j] into adjacent intervals at random
            size_t k = i;
            while (k < j) {
                size_t step = 1 + rnd(static_cast<int>(j - k));
                out.push_back(Interval::line(t[k], t[k + step]));
                k += step;
            }
            i = j + 1;  // leave a gap after the run
        }
        if (out.empty()) out.push_back(Interval::line(t[0], t[1]));
        return out;
    }
    // circle: maybe a full circle plus arcs with pairwise-disjoint interiors
    if (rnd(3) == 0) out.push_back(Interval::full_circle());
    size_t k = t.size();
    // choose a circular pattern of covered cells, then cut runs into arcs;
    // guard against a single run covering everything (not an arc)
    std::vector<bool> cover(k);
    bool all = true;
    for (size_t i = 0; i < k; ++i) {
        cover[i] = rnd(4) != 0;
        all = all && cover[i];
    }
    std::vector<std::pair<size_t, size_t>> runs;  // [start cell, count]
    if (all) {
        size_t cut = rnd(static_cast<int>(k));
        runs.push_back({(cut + 1) % k, k});  // one run around, forced split below
    } else {
        size_t start = 0;
        while (cover[start]) ++start;  // start at a gap
        size_t i = start, seen = 0;
        while (seen < k) {
            if (cover[i % k]) {
                size_t j = i;
                while (cover[j % k] && j - i < k) ++j;
                runs.push_back({i % k, j - i});
                seen += j - i;
                i = j;
            } else {
                ++i;
                ++seen;
            }
        }
    }
    for (auto [startc, count] : runs) {
        size_t pos = startc;
        size_t left = count;
        bool must_split = count == k;  // full cover: at least two pieces
        while (left > 0 && static_cast<int>(out.size()) < max_size) {
            size_t step = 1 + rnd(static_cast<int>(left));
            if (must_split && left == count && step == count) step = 1 + rnd(static_cast<int>(count - 1));
            out.push_back(Interval::arc(t[pos % k], t[(pos + step) % k]));
            pos += step;
            left -= step;
        }
    }
    if (out.empty()) out.push_back(Interval::arc(t[0], t[1]));
    return out;
}

} // namespace ckm
