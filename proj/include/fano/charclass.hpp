#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/ring.hpp"

namespace fano {

// Characteristic-class series truncated at the ambient complex dimension:
// total Chern classes, Chern characters and Todd classes share the same
// graded container and convert into each other via Newton's identities.
class CharClassSeries {
public:
    enum class Kind { TotalChern, ChernCharacter, Todd };

    CharClassSeries() = default;
    CharClassSeries(Kind kind, long rank, std::vector<RingElement> comp)
        : kind_(kind), rank_(rank), comp_(std::move(comp)) {
        if (comp_.empty()) throw std::invalid_argument("empty series");
    }

    static CharClassSeries zero_series(Kind kind, long rank, const GradedRing& ring) {
        std::vector<RingElement> c(ring.dimension() + 1, ring.zero());
        return CharClassSeries(kind, rank, std::move(c));
    }

    // Total Chern class 1 + c1 + c2 + ... from the positive-degree components.
    static CharClassSeries total_chern(const GradedRing& ring, long rank,
                                       const std::vector<RingElement>& positive) {
        auto s = zero_series(Kind::TotalChern, rank, ring);
        s.comp_[0] = ring.one();
        for (size_t i = 0; i < positive.size(); ++i) {
            if (static_cast<int>(i) + 1 > ring.dimension()) break;
            s.comp_[i + 1] = positive[i];
        }
        return s;
    }

    Kind kind() const { return kind_; }
    long rank() const { return rank_; }
    const GradedRing& ring() const { return *comp_.at(0).ring(); }
    int truncation() const { return static_cast<int>(comp_.size()) - 1; }
    const RingElement& operator[](int d) const { return comp_.at(d); }
    RingElement& operator[](int d) { return comp_.at(d); }

    bool operator==(const CharClassSeries& o) const {
        return kind_ == o.kind_ && rank_ == o.rank_ && comp_ == o.comp_;
    }

    CharClassSeries& operator+=(const CharClassSeries& o) {
        check(o);
        rank_ += o.rank_;
        for (size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
        return *this;
    }
    CharClassSeries& operator-=(const CharClassSeries& o) {
        check(o);
        rank_ -= o.rank_;
        for (size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
        return *this;
    }
    friend CharClassSeries operator+(CharClassSeries a, const CharClassSeries& b) { return a += b; }
    friend CharClassSeries operator-(CharClassSeries a, const CharClassSeries& b) { return a -= b; }

    CharClassSeries scaled(const Rat& s) const {
        CharClassSeries r = *this;
        for (auto& c : r.comp_) c *= s;
        // Integer multiples of Chern characters; rank scales along.
        Rat rk = s * Rat(rank_);
        if (!is_integer(rk)) throw std::invalid_argument("scaled: non-integral rank");
        r.rank_ = static_cast<long>(rk.get_num().get_si());
        return r;
    }

    // Graded product of the underlying series (truncated).
    friend CharClassSeries operator*(const CharClassSeries& a, const CharClassSeries& b) {
        a.check(b);
        CharClassSeries r = a;
        int top = r.truncation();
        for (int d = 0; d <= top; ++d) {
            RingElement acc = a.ring().zero();
            for (int i = 0; i <= d; ++i) acc += a.comp_[i] * b.comp_[d - i];
            r.comp_[d] = acc;
        }
        r.rank_ = a.rank_ * b.rank_;
        return r;
    }

    // Sum of all graded components as one ring element.
    RingElement total() const {
        RingElement r = ring().zero();
        for (const auto& c : comp_) r += c;
        return r;
    }

    std::string str() const {
        std::string s;
        for (int d = 0; d <= truncation(); ++d) {
            if (comp_[d].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "[" + std::to_string(d) + "] " + ring().to_string(comp_[d]);
        }
        return s.empty() ? "0" : s;
    }

private:
    void check(const CharClassSeries& o) const {
        if (&ring() != &o.ring() || comp_.size() != o.comp_.size())
            throw std::invalid_argument("series on different rings");
    }

    Kind kind_ = Kind::TotalChern;
    long rank_ = 0;
    std::vector<RingElement> comp_;
};

// exp of an element concentrated in positive degrees (finite in a truncated ring).
inline CharClassSeries exp_series(const GradedRing& ring, const RingElement& x) {
    auto r = CharClassSeries::zero_series(CharClassSeries::Kind::ChernCharacter, 1, ring);
    RingElement power = ring.one();
    Rat fact(1);
    for (int k = 0; k <= ring.dimension(); ++k) {
        if (k > 0) {
            power = power * x;
            fact *= k;
        }
        RingElement term = power * (Rat(1) / fact);
        for (int d = 0; d <= ring.dimension(); ++d) r[d] += ring.component(term, d);
        if (power.is_zero()) break;
    }
    return r;
}

// Power sums of the Chern roots from the elementary symmetric functions
// (the Chern classes), by Newton's identities.
inline std::vector<RingElement> power_sums_from_chern(const CharClassSeries& c) {
    const GradedRing& ring = c.ring();
    int top = ring.dimension();
    std::vector<RingElement> p(top + 1, ring.zero());
    for (int j = 1; j <= top; ++j) {
        RingElement acc = c[j] * Rat(j) * Rat(j % 2 == 1 ? 1 : -1);
        for (int i = 1; i < j; ++i)
            acc += c[i] * p[j - i] * Rat(i % 2 == 1 ? 1 : -1);
        p[j] = acc;
    }
    return p;
}

inline CharClassSeries chern_to_ch(const CharClassSeries& c) {
    if (c.kind() != CharClassSeries::Kind::TotalChern)
        throw std::invalid_argument("chern_to_ch: expected a total Chern class");
    const GradedRing& ring = c.ring();
    auto p = power_sums_from_chern(c);
    auto r = CharClassSeries::zero_series(CharClassSeries::Kind::ChernCharacter, c.rank(), ring);
    r[0] = ring.scalar(Rat(c.rank()));
    for (int j = 1; j <= ring.dimension(); ++j) r[j] = p[j] * (Rat(1) / factorial(j));
    return r;
}

inline CharClassSeries ch_to_chern(const CharClassSeries& ch) {
    if (ch.kind() != CharClassSeries::Kind::ChernCharacter)
        throw std::invalid_argument("ch_to_chern: expected a Chern character");
    const GradedRing& ring = ch.ring();
    int top = ring.dimension();
    std::vector<RingElement> p(top + 1, ring.zero());
    for (int j = 1; j <= top; ++j) p[j] = ch[j] * factorial(j);
    auto c = CharClassSeries::zero_series(CharClassSeries::Kind::TotalChern, ch.rank(), ring);
    c[0] = ring.one();
    for (int j = 1; j <= top; ++j) {
        RingElement acc = p[j];
        for (int i = 1; i < j; ++i)
            acc -= c[i] * p[j - i] * Rat(i % 2 == 1 ? 1 : -1);
        c[j] = acc * (Rat(j % 2 == 1 ? 1 : -1) / Rat(j));
    }
    return c;
}

// Negates the odd-degree components: ch(E) -> ch(E^dual).
inline CharClassSeries dual_involution(const CharClassSeries& ch) {
    if (ch.kind() != CharClassSeries::Kind::ChernCharacter)
        throw std::invalid_argument("dual_involution: expected a Chern character");
    CharClassSeries r = ch;
    for (int d = 1; d <= r.truncation(); d += 2) r[d] *= Rat(-1);
    return r;
}

// Rebrands a series (kind/rank) without touching the graded data.
inline CharClassSeries rekind(const CharClassSeries& s, CharClassSeries::Kind kind, long rank) {
    std::vector<RingElement> v;
    for (int d = 0; d <= s.truncation(); ++d) v.push_back(s[d]);
    return CharClassSeries(kind, rank, std::move(v));
}

// Multiplicative inverse of a series with invertible degree-0 part.
inline CharClassSeries series_inverse(const CharClassSeries& s) {
    const GradedRing& ring = s.ring();
    Rat lead = s[0].coeffs()[0];  // basis index 0 is the degree-0 monomial
    if (is_zero(lead)) throw std::invalid_argument("series_inverse: zero constant term");
    CharClassSeries r = CharClassSeries::zero_series(s.kind(), 1, ring);
    r[0] = ring.scalar(Rat(1) / lead);
    for (int d = 1; d <= r.truncation(); ++d) {
        RingElement acc = ring.zero();
        for (int i = 1; i <= d; ++i) acc += s[i] * r[d - i];
        r[d] = acc * (Rat(-1) / lead);
    }
    return r;
}

// Total Chern class of a K-theory difference A - B.
inline CharClassSeries chern_of_difference(const CharClassSeries& A, const CharClassSeries& B) {
    if (A.kind() != CharClassSeries::Kind::TotalChern || B.kind() != CharClassSeries::Kind::TotalChern)
        throw std::invalid_argument("chern_of_difference: expected total Chern classes");
    return rekind(A * series_inverse(B), CharClassSeries::Kind::TotalChern, A.rank() - B.rank());
}

// log(x/(1-e^{-x})) = x/2 - sum_{k>=1} B_{2k}/(2k (2k)!) x^{2k}; summed over
// Chern roots this expresses log(td) through power sums.
inline CharClassSeries todd(const CharClassSeries& c) {
    if (c.kind() != CharClassSeries::Kind::TotalChern)
        throw std::invalid_argument("todd: expected a total Chern class");
    const GradedRing& ring = c.ring();
    if (ring.dimension() > 9) throw std::logic_error("todd: extend Bernoulli table");
    static const std::pair<int, Rat> bern[] = {
        {2, rat(1, 6)}, {4, rat(-1, 30)}, {6, rat(1, 42)}, {8, rat(-1, 30)}};
    auto p = power_sums_from_chern(c);
    RingElement logtd = p[1] * rat(1, 2);
    for (const auto& [k2, b] : bern) {
        if (k2 > ring.dimension()) break;
        logtd -= p[k2] * (b / (Rat(k2) * factorial(k2)));
    }
    return rekind(exp_series(ring, logtd), CharClassSeries::Kind::Todd, c.rank());
}

// (1-e^{-x})/x for a line class x, i.e. td(L)^{-1}.
inline CharClassSeries todd_inverse_of_line(const GradedRing& ring, const RingElement& x) {
    auto r = CharClassSeries::zero_series(CharClassSeries::Kind::Todd, 1, ring);
    RingElement power = ring.one();
    for (int k = 0; k <= ring.dimension(); ++k) {
        if (k > 0) power = power * x;
        RingElement term = power * (Rat(k % 2 == 0 ? 1 : -1) / factorial(k + 1));
        for (int d = 0; d <= ring.dimension(); ++d) r[d] += ring.component(term, d);
        if (power.is_zero()) break;
    }
    return r;
}

// Lift a series on a factor to a product ring.
inline CharClassSeries embed_series_left(const GradedRing& prod, const CharClassSeries& s) {
    auto r = CharClassSeries::zero_series(s.kind(), s.rank(), prod);
    for (int d = 0; d <= s.truncation(); ++d) r[d] = prod.embed_left(s[d]);
    return r;
}

inline CharClassSeries embed_series_right(const GradedRing& prod, const CharClassSeries& s) {
    auto r = CharClassSeries::zero_series(s.kind(), s.rank(), prod);
    for (int d = 0; d <= s.truncation(); ++d) r[d] = prod.embed_right(s[d]);
    return r;
}

// Determinantal class of the locus where a map E -> F drops to rank <= r:
// det( c_{f-r+j-i}(F - E) ) of size (e-r), expected codimension (e-r)(f-r).
inline RingElement porteous_class(const CharClassSeries& E, const CharClassSeries& F, int r) {
    if (r >= E.rank() || r >= F.rank())
        throw std::invalid_argument("porteous_class: r must be below both ranks");
    const GradedRing& ring = E.ring();
    CharClassSeries diff = chern_of_difference(F, E);
    int e = static_cast<int>(E.rank());
    int f = static_cast<int>(F.rank());
    int size = e - r;
    auto entry = [&](int i, int j) {  // 1-based
        int d = f - r + j - i;
        if (d < 0) return ring.zero();
        if (d > ring.dimension()) return ring.zero();
        return diff[d];
    };
    // Laplace expansion; the matrices here are at most 3x3.
    std::vector<int> cols(size);
    for (int j = 0; j < size; ++j) cols[j] = j + 1;
    std::function<RingElement(int, std::vector<int>&)> det = [&](int row,
                                                                 std::vector<int>& cs) -> RingElement {
        if (cs.empty()) return ring.one();
        RingElement acc = ring.zero();
        for (size_t k = 0; k < cs.size(); ++k) {
            int col = cs[k];
            std::vector<int> rest;
            for (size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            RingElement sub = det(row + 1, rest);
            RingElement term = entry(row, col) * sub;
            if (k % 2 == 1) term *= Rat(-1);
            acc += term;
        }
        return acc;
    };
    return det(1, cols);
}

}  // namespace fano
