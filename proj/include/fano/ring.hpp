#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/rational.hpp"

namespace fano {

// Exponent vector over the ring's generators.
using Monomial = std::vector<int>;

// Sparse polynomial in the generators, prior to reduction.
using Poly = std::map<Monomial, Rat>;

struct Generator {
    std::string name;
    int degree;  // complex degree
};

// A finite graded quotient ring presented by generators and homogeneous
// relations, e.g. H*(Gr(2,5)) = Q[m1,m2]/(c4(Q), c5(Q)). The quotient is
// realized by a fixed monomial basis per degree plus a reduction table,
// computed once by exact linear algebra against the relation multiples.
struct RingPresentation {
    std::string name;
    std::vector<Generator> generators;
    std::vector<Poly> relations;       // homogeneous
    int dimension = 0;                 // top nonzero complex degree
    Monomial point_monomial;           // basis element dual to the point
    std::vector<int> betti;            // expected basis size per degree (checked)
};

class GradedRing;

class RingElement {
public:
    RingElement() = default;
    RingElement(const GradedRing* ring, std::vector<Rat> coeffs)
        : ring_(ring), coeffs_(std::move(coeffs)) {}

    const GradedRing* ring() const { return ring_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    std::vector<Rat>& coeffs() { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!fano::is_zero(c)) return false;
        return true;
    }

    RingElement& operator+=(const RingElement& o) {
        check_same(o);
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    RingElement& operator-=(const RingElement& o) {
        check_same(o);
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    RingElement& operator*=(const Rat& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const Rat& s) { return a *= s; }
    friend RingElement operator*(const Rat& s, RingElement a) { return a *= s; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);

    bool operator==(const RingElement& o) const {
        return ring_ == o.ring_ && coeffs_ == o.coeffs_;
    }

private:
    void check_same(const RingElement& o) const {
        if (ring_ != o.ring_) throw std::invalid_argument("elements from different rings");
    }
    const GradedRing* ring_ = nullptr;
    std::vector<Rat> coeffs_;
};

class GradedRing {
public:
    explicit GradedRing(RingPresentation pres) : pres_(std::move(pres)) { build(); }

    GradedRing(const GradedRing&) = delete;
    GradedRing& operator=(const GradedRing&) = delete;

    const std::string& name() const { return pres_.name; }
    int dimension() const { return pres_.dimension; }
    int num_generators() const { return static_cast<int>(pres_.generators.size()); }
    const std::vector<Generator>& generators() const { return pres_.generators; }

    struct BasisEntry {
        Monomial mon;
        int degree;
    };
    const std::vector<BasisEntry>& basis() const { return basis_; }
    int basis_size() const { return static_cast<int>(basis_.size()); }
    int point_index() const { return point_index_; }

    int generator_index(const std::string& name) const {
        for (size_t i = 0; i < pres_.generators.size(); ++i)
            if (pres_.generators[i].name == name) return static_cast<int>(i);
        throw std::invalid_argument("unknown generator name: " + name);
    }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * pres_.generators[i].degree;
        return d;
    }

    RingElement zero() const { return RingElement(this, std::vector<Rat>(basis_.size(), Rat(0))); }
    RingElement one() const { return monomial_class(Monomial(pres_.generators.size(), 0)); }

    RingElement var(const std::string& name, int power = 1) const {
        Monomial m(pres_.generators.size(), 0);
        m[generator_index(name)] = power;
        return monomial_class(m);
    }

    RingElement scalar(const Rat& s) const { return one() * s; }

    // Class of a monomial after full reduction; zero beyond the top degree.
    RingElement monomial_class(const Monomial& m) const {
        if (m.size() != pres_.generators.size())
            throw std::invalid_argument("monomial arity mismatch");
        int d = monomial_degree(m);
        RingElement r = zero();
        if (d > pres_.dimension) return r;
        const auto& layer = layers_[d];
        auto it = layer.index_of.find(m);
        if (it == layer.index_of.end()) throw std::logic_error("monomial not enumerated");
        const auto& row = layer.reduction[it->second];
        for (const auto& [gidx, c] : row) r.coeffs()[gidx] += c;
        return r;
    }

    // Ring homomorphism from the free polynomial algebra.
    RingElement normal_form(const Poly& p) const {
        RingElement r = zero();
        for (const auto& [mon, coeff] : p) {
            if (fano::is_zero(coeff)) continue;
            r += monomial_class(mon) * coeff;
        }
        return r;
    }

    RingElement multiply(const RingElement& a, const RingElement& b) const {
        RingElement r = zero();
        for (int i = 0; i < basis_size(); ++i) {
            if (fano::is_zero(a.coeffs()[i])) continue;
            for (int j = 0; j < basis_size(); ++j) {
                if (fano::is_zero(b.coeffs()[j])) continue;
                const auto& row = mult_table_[i * basis_size() + j];
                if (row.empty()) continue;
                Rat s = a.coeffs()[i] * b.coeffs()[j];
                for (const auto& [gidx, c] : row) r.coeffs()[gidx] += s * c;
            }
        }
        return r;
    }

    // Coefficient of the point-class basis element (0 if no top-degree part).
    Rat integrate(const RingElement& x) const {
        if (x.ring() != this) throw std::invalid_argument("integrate: wrong ring");
        return x.coeffs()[point_index_];
    }

    // Degree-d part of an element.
    RingElement component(const RingElement& x, int d) const {
        RingElement r = zero();
        for (int i = 0; i < basis_size(); ++i)
            if (basis_[i].degree == d) r.coeffs()[i] = x.coeffs()[i];
        return r;
    }

    int basis_dim_in_degree(int d) const {
        int n = 0;
        for (const auto& b : basis_)
            if (b.degree == d) ++n;
        return n;
    }

    std::string to_string(const RingElement& x) const {
        std::string s;
        for (int i = 0; i < basis_size(); ++i) {
            const Rat& c = x.coeffs()[i];
            if (fano::is_zero(c)) continue;
            if (!s.empty()) s += " + ";
            s += fano::to_string(c);
            std::string m = monomial_string(basis_[i].mon);
            if (!m.empty()) s += "*" + m;
        }
        return s.empty() ? "0" : s;
    }

    std::string monomial_string(const Monomial& m) const {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += pres_.generators[i].name;
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

    // --- Kuenneth structure for product rings --------------------------------

    bool is_product() const { return left_ != nullptr; }
    const GradedRing& left() const { return *left_; }
    const GradedRing& right() const { return *right_; }

    RingElement embed_left(const RingElement& a) const {
        require_product();
        if (a.ring() != left_) throw std::invalid_argument("embed_left: wrong ring");
        RingElement r = zero();
        int ng = num_generators();
        int nl = left_->num_generators();
        for (int i = 0; i < left_->basis_size(); ++i) {
            if (fano::is_zero(a.coeffs()[i])) continue;
            Monomial m(ng, 0);
            for (int k = 0; k < nl; ++k) m[k] = left_->basis()[i].mon[k];
            r += monomial_class(m) * a.coeffs()[i];
        }
        return r;
    }

    RingElement embed_right(const RingElement& b) const {
        require_product();
        if (b.ring() != right_) throw std::invalid_argument("embed_right: wrong ring");
        RingElement r = zero();
        int ng = num_generators();
        int nl = left_->num_generators();
        for (int i = 0; i < right_->basis_size(); ++i) {
            if (fano::is_zero(b.coeffs()[i])) continue;
            Monomial m(ng, 0);
            for (size_t k = 0; k < right_->basis()[i].mon.size(); ++k)
                m[nl + k] = right_->basis()[i].mon[k];
            r += monomial_class(m) * b.coeffs()[i];
        }
        return r;
    }

    // Pushforward along the projection to the left factor: keeps Kuenneth
    // terms whose right part is the right factor's point class.
    RingElement push_to_left(const RingElement& x) const {
        require_product();
        if (x.ring() != this) throw std::invalid_argument("push_to_left: wrong ring");
        RingElement r = left_->zero();
        int nl = left_->num_generators();
        for (int i = 0; i < basis_size(); ++i) {
            if (fano::is_zero(x.coeffs()[i])) continue;
            const Monomial& m = basis_[i].mon;
            Monomial ml(m.begin(), m.begin() + nl);
            Monomial mr(m.begin() + nl, m.end());
            if (right_->monomial_degree(mr) != right_->dimension()) continue;
            if (mr != right_->pres_.point_monomial)
                throw std::logic_error("push_to_left: top-degree basis monomial is not the point class");
            r += left_->monomial_class(ml) * x.coeffs()[i];
        }
        return r;
    }

    // Splits an element as sum of (left-degree dl) x (right part); returns the
    // left-part element obtained by pairing the right part against `1`.
    // Used for extracting the moduli-side component of a degree-1 class.
    RingElement left_component_of_degree(const RingElement& x, int dl) const {
        require_product();
        RingElement r = left_->zero();
        int nl = left_->num_generators();
        for (int i = 0; i < basis_size(); ++i) {
            if (fano::is_zero(x.coeffs()[i])) continue;
            const Monomial& m = basis_[i].mon;
            Monomial ml(m.begin(), m.begin() + nl);
            Monomial mr(m.begin() + nl, m.end());
            if (right_->monomial_degree(mr) != 0) continue;
            if (left_->monomial_degree(ml) != dl) continue;
            r += left_->monomial_class(ml) * x.coeffs()[i];
        }
        return r;
    }

    static std::unique_ptr<GradedRing> product(const GradedRing& A, const GradedRing& B,
                                               const std::string& name) {
        RingPresentation p;
        p.name = name;
        p.generators = A.pres_.generators;
        p.generators.insert(p.generators.end(), B.pres_.generators.begin(),
                            B.pres_.generators.end());
        for (const auto& g : A.pres_.generators)
            for (const auto& h : B.pres_.generators)
                if (g.name == h.name)
                    throw std::invalid_argument("product ring: generator name clash " + g.name);
        int na = A.num_generators(), nb = B.num_generators();
        for (const auto& rel : A.pres_.relations) {
            Poly q;
            for (const auto& [mon, c] : rel) {
                Monomial m = mon;
                m.resize(na + nb, 0);
                q[m] = c;
            }
            p.relations.push_back(std::move(q));
        }
        for (const auto& rel : B.pres_.relations) {
            Poly q;
            for (const auto& [mon, c] : rel) {
                Monomial m(na + nb, 0);
                for (int k = 0; k < nb; ++k) m[na + k] = mon[k];
                q[m] = c;
            }
            p.relations.push_back(std::move(q));
        }
        p.dimension = A.dimension() + B.dimension();
        p.point_monomial = A.pres_.point_monomial;
        p.point_monomial.insert(p.point_monomial.end(), B.pres_.point_monomial.begin(),
                                B.pres_.point_monomial.end());
        p.betti.assign(p.dimension + 1, 0);
        for (int a = 0; a <= A.dimension(); ++a)
            for (int b = 0; b <= B.dimension(); ++b)
                p.betti[a + b] += A.pres_.betti[a] * B.pres_.betti[b];
        auto ring = std::make_unique<GradedRing>(std::move(p));
        ring->left_ = &A;
        ring->right_ = &B;
        ring->check_product_basis();
        return ring;
    }

private:
    void require_product() const {
        if (!is_product()) throw std::logic_error("not a product ring");
    }

    // All monomials of the given degree, in descending lexicographic order, so
    // that Gaussian pivots consume the generator-heavy monomials first and the
    // declared point monomial survives into the basis.
    std::vector<Monomial> monomials_of_degree(int d) const {
        std::vector<Monomial> out;
        Monomial cur(pres_.generators.size(), 0);
        enumerate(d, 0, cur, out);
        std::sort(out.begin(), out.end(), std::greater<Monomial>());
        return out;
    }

    void enumerate(int remaining, size_t gen, Monomial& cur, std::vector<Monomial>& out) const {
        if (gen == pres_.generators.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        int gd = pres_.generators[gen].degree;
        for (int e = 0; e * gd <= remaining; ++e) {
            cur[gen] = e;
            enumerate(remaining - e * gd, gen + 1, cur, out);
        }
        cur[gen] = 0;
    }

    struct Layer {
        std::vector<Monomial> mons;
        std::map<Monomial, int> index_of;
        // reduction[i]: normal form of mons[i] as (global basis index, coeff).
        std::vector<std::vector<std::pair<int, Rat>>> reduction;
    };

    void build() {
        for (const auto& rel : pres_.relations) {
            int d = -1;
            for (const auto& [mon, c] : rel) {
                if (fano::is_zero(c)) continue;
                Monomial m = mon;
                if (m.size() != pres_.generators.size())
                    throw std::invalid_argument("relation monomial arity mismatch");
                int md = monomial_degree(m);
                if (d < 0) d = md;
                if (md != d) throw std::invalid_argument("relation is not homogeneous");
            }
        }
        layers_.resize(pres_.dimension + 1);
        for (int d = 0; d <= pres_.dimension; ++d) build_layer(d);
        if (!pres_.betti.empty()) {
            for (int d = 0; d <= pres_.dimension; ++d) {
                if (basis_dim_in_degree(d) != pres_.betti[d])
                    throw std::logic_error(pres_.name + ": basis dimension in degree " +
                                           std::to_string(d) + " is " +
                                           std::to_string(basis_dim_in_degree(d)) +
                                           ", expected " + std::to_string(pres_.betti[d]));
            }
        }
        if (basis_dim_in_degree(pres_.dimension) != 1)
            throw std::logic_error(pres_.name + ": top degree is not one-dimensional");
        point_index_ = -1;
        for (int i = 0; i < basis_size(); ++i)
            if (basis_[i].mon == pres_.point_monomial) point_index_ = i;
        if (point_index_ < 0)
            throw std::logic_error(pres_.name + ": point monomial is not a basis element");
        build_mult_table();
    }

    void build_layer(int d) {
        Layer& layer = layers_[d];
        layer.mons = monomials_of_degree(d);
        for (size_t i = 0; i < layer.mons.size(); ++i)
            layer.index_of[layer.mons[i]] = static_cast<int>(i);
        int cols = static_cast<int>(layer.mons.size());

        // Rows: every relation times every complementary-degree monomial.
        std::vector<std::vector<Rat>> rows;
        for (const auto& rel : pres_.relations) {
            int rd = monomial_degree(rel.begin()->first);
            if (rd > d) continue;
            for (const auto& mu : monomials_of_degree(d - rd)) {
                std::vector<Rat> row(cols, Rat(0));
                for (const auto& [mon, c] : rel) {
                    Monomial m(mon.size());
                    for (size_t k = 0; k < m.size(); ++k) m[k] = mon[k] + mu[k];
                    row[layer.index_of.at(m)] += c;
                }
                rows.push_back(std::move(row));
            }
        }

        // Exact RREF.
        std::vector<int> pivot_row_of_col(cols, -1);
        int r = 0;
        for (int col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
            int sel = -1;
            for (int i = r; i < static_cast<int>(rows.size()); ++i)
                if (!fano::is_zero(rows[i][col])) { sel = i; break; }
            if (sel < 0) continue;
            std::swap(rows[r], rows[sel]);
            Rat inv = Rat(1) / rows[r][col];
            for (auto& v : rows[r]) v *= inv;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == r || fano::is_zero(rows[i][col])) continue;
                Rat f = rows[i][col];
                for (int k = col; k < cols; ++k) rows[i][k] -= f * rows[r][k];
            }
            pivot_row_of_col[col] = r;
            ++r;
        }

        std::vector<int> global_index(cols, -1);
        for (int col = 0; col < cols; ++col) {
            if (pivot_row_of_col[col] >= 0) continue;
            global_index[col] = basis_size();
            basis_.push_back({layer.mons[col], d});
        }
        layer.reduction.resize(cols);
        for (int col = 0; col < cols; ++col) {
            auto& red = layer.reduction[col];
            if (pivot_row_of_col[col] < 0) {
                red.emplace_back(global_index[col], Rat(1));
                continue;
            }
            const auto& row = rows[pivot_row_of_col[col]];
            for (int k = 0; k < cols; ++k) {
                if (k == col || fano::is_zero(row[k])) continue;
                if (pivot_row_of_col[k] >= 0)
                    throw std::logic_error("RREF row touches another pivot column");
                red.emplace_back(global_index[k], -row[k]);
            }
        }
    }

    void build_mult_table() {
        int n = basis_size();
        mult_table_.assign(static_cast<size_t>(n) * n, {});
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                int d = basis_[i].degree + basis_[j].degree;
                if (d > pres_.dimension) continue;
                Monomial m(basis_[i].mon.size());
                for (size_t k = 0; k < m.size(); ++k) m[k] = basis_[i].mon[k] + basis_[j].mon[k];
                const Layer& layer = layers_[d];
                const auto& red = layer.reduction[layer.index_of.at(m)];
                mult_table_[static_cast<size_t>(i) * n + j] = red;
            }
        }
    }

    void check_product_basis() const {
        int nl = left_->num_generators();
        for (const auto& b : basis_) {
            Monomial ml(b.mon.begin(), b.mon.begin() + nl);
            Monomial mr(b.mon.begin() + nl, b.mon.end());
            bool okl = false, okr = false;
            for (const auto& e : left_->basis())
                if (e.mon == ml) okl = true;
            for (const auto& e : right_->basis())
                if (e.mon == mr) okr = true;
            if (!okl || !okr)
                throw std::logic_error("product basis is not a Kuenneth product basis");
        }
    }

    RingPresentation pres_;
    std::vector<Layer> layers_;
    std::vector<BasisEntry> basis_;
    std::vector<std::vector<std::pair<int, Rat>>> mult_table_;
    int point_index_ = -1;
    const GradedRing* left_ = nullptr;
    const GradedRing* right_ = nullptr;
};

inline RingElement operator*(const RingElement& a, const RingElement& b) {
    if (a.ring() == nullptr || a.ring() != b.ring())
        throw std::invalid_argument("product of elements from different rings");
    return a.ring()->multiply(a, b);
}

// Relation-building helpers; usable before the ring itself exists.
inline int generator_index(const std::vector<Generator>& gens, const std::string& name) {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown generator name: " + name);
}

// One term: coefficient times a product of named generator powers.
using PolyTerm = std::pair<Rat, std::vector<std::pair<std::string, int>>>;

inline Poly make_poly(const std::vector<Generator>& gens, const std::vector<PolyTerm>& terms) {
    Poly p;
    for (const auto& [c, factors] : terms) {
        Monomial m(gens.size(), 0);
        for (const auto& [name, e] : factors) m[generator_index(gens, name)] += e;
        p[m] += c;
    }
    return p;
}

}  // namespace fano
