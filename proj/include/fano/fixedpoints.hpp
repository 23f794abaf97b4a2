#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "fano/rational.hpp"

namespace fano {

// Raised when a weight specialization hits a vanishing denominator or Euler
// factor; callers retry the whole run with the next seed.
struct DegenerateWeights : std::runtime_error {
    DegenerateWeights() : std::runtime_error("degenerate torus weight specialization") {}
};

// Formal torus weights specialized to exact rationals. Correctness is
// recovered downstream by computing with independent specializations and
// asserting equality.
struct TorusWeights {
    int n = 0;
    std::vector<Rat> alpha;  // distinct
    std::uint64_t seed = 0;

    static TorusWeights specialize(int n, std::uint64_t seed) {
        TorusWeights w;
        w.n = n;
        w.seed = seed;
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<std::int64_t> dist(1, (std::int64_t(1) << 62));
        std::vector<std::int64_t> vals;
        while (static_cast<int>(vals.size()) < n) {
            std::int64_t v = dist(rng);
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        for (auto v : vals) w.alpha.push_back(rat_i64(v));
        return w;
    }
};

// A torus-fixed point of Gr(r,n): the coordinate subspace spanned by the
// listed basis vectors. Indices are 1-based and kept sorted.
struct FixedPoint {
    std::vector<int> idx;

    bool operator==(const FixedPoint& o) const { return idx == o.idx; }
    bool operator<(const FixedPoint& o) const { return idx < o.idx; }
    bool contains(int k) const { return std::find(idx.begin(), idx.end(), k) != idx.end(); }
};

inline std::vector<FixedPoint> fixed_points(int r, int n) {
    if (!(0 < r && r < n)) throw std::invalid_argument("fixed_points: need 0 < r < n");
    std::vector<FixedPoint> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back({cur});
            return;
        }
        for (int k = start; k <= n; ++k) {
            cur.push_back(k);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

// Fixed points joined to p by a torus-fixed line: drop one index, add one
// outside index.
inline std::vector<FixedPoint> neighbors(const FixedPoint& p, int n) {
    std::vector<FixedPoint> out;
    for (int drop : p.idx) {
        for (int add = 1; add <= n; ++add) {
            if (p.contains(add)) continue;
            FixedPoint q = p;
            q.idx.erase(std::find(q.idx.begin(), q.idx.end(), drop));
            q.idx.push_back(add);
            std::sort(q.idx.begin(), q.idx.end());
            out.push_back(std::move(q));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The r(n-r) weights alpha_u - alpha_k, u in S, k outside S.
inline std::vector<Rat> tangent_weights(const FixedPoint& p, const TorusWeights& w) {
    std::vector<Rat> out;
    for (int u : p.idx) {
        for (int k = 1; k <= w.n; ++k) {
            if (p.contains(k)) continue;
            Rat t = w.alpha[u - 1] - w.alpha[k - 1];
            if (is_zero(t)) throw DegenerateWeights();
            out.push_back(std::move(t));
        }
    }
    return out;
}

inline Rat euler_tangent(const FixedPoint& p, const TorusWeights& w) {
    Rat prod(1);
    for (const auto& t : tangent_weights(p, w)) prod *= t;
    return prod;
}

// An edge of a decorated graph: two fixed points sharing r-1 indices, covered
// with degree d_e.
struct EdgeGeometry {
    FixedPoint a, b;
    int d_e = 1;
    std::vector<int> shared;
    int moving_a = 0, moving_b = 0;

    EdgeGeometry(FixedPoint pa, FixedPoint pb, int degree)
        : a(std::move(pa)), b(std::move(pb)), d_e(degree) {
        std::set_intersection(a.idx.begin(), a.idx.end(), b.idx.begin(), b.idx.end(),
                              std::back_inserter(shared));
        if (shared.size() + 1 != a.idx.size() || a.idx.size() != b.idx.size())
            throw std::invalid_argument("edge endpoints must share r-1 indices");
        for (int u : a.idx)
            if (!b.contains(u)) moving_a = u;
        for (int u : b.idx)
            if (!a.contains(u)) moving_b = u;
        if (d_e < 1) throw std::invalid_argument("edge degree must be positive");
    }

    // Tangent weight of the source curve at the endpoint lying over `a`.
    Rat omega_at_a(const TorusWeights& w) const {
        Rat t = (w.alpha[moving_a - 1] - w.alpha[moving_b - 1]) / d_e;
        if (is_zero(t)) throw DegenerateWeights();
        return t;
    }
};

// Equivariant line bundle data on an edge curve: fiber weights at the two
// fixed points and the degree of the bundle on the source curve.
struct EquivLineData {
    Rat lambda_a, lambda_b;
    int m = 0;
    Rat omega_a;

    EquivLineData(Rat la, Rat lb, int degree, Rat oa)
        : lambda_a(std::move(la)), lambda_b(std::move(lb)), m(degree), omega_a(std::move(oa)) {
        if (lambda_a - lambda_b != Rat(m) * omega_a)
            throw std::invalid_argument("line data violates lambda_a - lambda_b = m * omega_a");
    }
};

struct LineCohomology {
    std::vector<Rat> h0, h1;
};

// Weights of H^0 and H^1 on a rational curve: sections interpolate the two
// endpoint weights in steps of omega_a; duals give the interior H^1 weights.
inline LineCohomology line_bundle_cohomology_weights(const EquivLineData& L) {
    LineCohomology c;
    if (L.m >= 0) {
        for (int j = 0; j <= L.m; ++j) c.h0.push_back(L.lambda_a - Rat(j) * L.omega_a);
    } else {
        for (int j = 1; j <= -L.m - 1; ++j) c.h1.push_back(L.lambda_a + Rat(j) * L.omega_a);
    }
    return c;
}

// Signed multiset of exact rationals; the value at 0 tracks the structural
// fixed part, everything else multiplies into an Euler class.
class WeightMultiset {
public:
    void add(const Rat& w, int mult = 1) { counts_[w] += mult; }

    // Product of w^mult over nonzero weights. The weight 0 must appear with
    // net multiplicity `expected_zeros` (the structural fixed directions);
    // anything else signals a degenerate specialization.
    Rat euler(int expected_zeros) const {
        Rat num(1), den(1);
        for (const auto& [w, mult] : counts_) {
            if (is_zero(w)) {
                if (mult != expected_zeros) throw DegenerateWeights();
                continue;
            }
            if (mult > 0)
                num *= pow_rat(w, mult);
            else if (mult < 0)
                den *= pow_rat(w, -mult);
        }
        if (is_zero(den)) throw DegenerateWeights();
        return num / den;
    }

private:
    std::map<Rat, int> counts_;
};

// e^T of the moving part of H^0(C_e, f^* T_G), assembled through the Euler
// sequence 0 -> S^v (x) S -> S^v (x) O^n -> T_G -> 0 pulled back to the edge:
//   H^0(T_G) = H^0(S^v (x) O^n) - H^0(S^v (x) S) + H^1(S^v (x) S)
// in K-theory. Exactly one zero weight survives (the reparametrization
// direction along the edge) and is dropped.
inline Rat edge_tangent_euler(const EdgeGeometry& e, const TorusWeights& w) {
    WeightMultiset ws;
    const Rat& aa = w.alpha[e.moving_a - 1];
    const Rat& ab = w.alpha[e.moving_b - 1];
    // Explicit Rat return: gmpxx expression templates must not outlive their
    // operands.
    auto interp = [&](int c1) -> Rat { return (Rat(c1) * aa + Rat(e.d_e - c1) * ab) / e.d_e; };

    // H^0(S^v (x) O^n): trivial summands of S^v times every coordinate line.
    for (int u : e.shared)
        for (int k = 1; k <= w.n; ++k) ws.add(w.alpha[u - 1] - w.alpha[k - 1]);
    // ... and the O(d_e) summand of S^v times every coordinate line.
    for (int c1 = 0; c1 <= e.d_e; ++c1)
        for (int k = 1; k <= w.n; ++k) ws.add(interp(c1) - w.alpha[k - 1]);

    // minus H^0(S^v (x) S).
    for (int u : e.shared)
        for (int v : e.shared) ws.add(w.alpha[u - 1] - w.alpha[v - 1], -1);
    for (int u : e.shared)
        for (int c1 = 0; c1 <= e.d_e; ++c1) ws.add(interp(c1) - w.alpha[u - 1], -1);
    ws.add(Rat(0), -1);  // O(d_e) (x) O(-d_e) piece

    // plus H^1(S^v (x) S): interior weights of the O(-d_e) pieces.
    for (int u : e.shared)
        for (int c1 = 1; c1 <= e.d_e - 1; ++c1) ws.add(w.alpha[u - 1] - interp(c1));

    return ws.euler(/*expected_zeros=*/1);
}

inline Rat sum_alpha(const FixedPoint& p, const TorusWeights& w) {
    Rat s(0);
    for (int u : p.idx) s += w.alpha[u - 1];
    return s;
}

inline Rat e2_alpha(const FixedPoint& p, const TorusWeights& w) {
    Rat s(0);
    for (size_t i = 0; i < p.idx.size(); ++i)
        for (size_t j = i + 1; j < p.idx.size(); ++j)
            s += w.alpha[p.idx[i] - 1] * w.alpha[p.idx[j] - 1];
    return s;
}

// Equivariant lift of the degree-2 insertion class, normalized so that the
// restriction to the threefold is h2.
struct InsertionLift {
    enum class Kind { Sigma1Sq, Sigma11, Sigma2 };
    Kind kind = Kind::Sigma1Sq;
    Rat divisor = Rat(1);
};

inline Rat insertion_weight(const InsertionLift& lift, const FixedPoint& p,
                            const TorusWeights& w) {
    switch (lift.kind) {
        case InsertionLift::Kind::Sigma1Sq: {
            Rat s = sum_alpha(p, w);
            return s * s / lift.divisor;
        }
        case InsertionLift::Kind::Sigma11:
            return e2_alpha(p, w) / lift.divisor;
        case InsertionLift::Kind::Sigma2: {
            Rat s = sum_alpha(p, w);
            return (s * s - e2_alpha(p, w)) / lift.divisor;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace fano
