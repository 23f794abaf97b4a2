#pragma once

#include <vector>

#include "fano/charclass.hpp"
#include "fano/ring.hpp"

namespace fano::test {

// Exact determinant by Gaussian elimination; used for pairing nondegeneracy.
inline Rat det(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    Rat d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && is_zero(m[sel][c])) ++sel;
        if (sel == n) return Rat(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(m[i][c])) continue;
            Rat f = m[i][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return d;
}

// Poincare pairing matrix between degrees d and dim-d is invertible.
inline bool poincare_nondegenerate(const GradedRing& ring) {
    int dim = ring.dimension();
    for (int d = 0; 2 * d <= dim; ++d) {
        std::vector<int> lo, hi;
        for (int i = 0; i < ring.basis_size(); ++i) {
            if (ring.basis()[i].degree == d) lo.push_back(i);
            if (ring.basis()[i].degree == dim - d) hi.push_back(i);
        }
        if (lo.size() != hi.size()) return false;
        std::vector<std::vector<Rat>> m(lo.size(), std::vector<Rat>(hi.size(), Rat(0)));
        for (size_t a = 0; a < lo.size(); ++a) {
            for (size_t b = 0; b < hi.size(); ++b) {
                RingElement ea = ring.zero(), eb = ring.zero();
                ea.coeffs()[lo[a]] = 1;
                eb.coeffs()[hi[b]] = 1;
                m[a][b] = ring.integrate(ea * eb);
            }
        }
        if (is_zero(det(m))) return false;
    }
    return true;
}

}  // namespace fano::test
