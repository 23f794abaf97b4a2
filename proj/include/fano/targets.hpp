#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fano/charclass.hpp"
#include "fano/ring.hpp"

namespace fano {

inline constexpr const char* kDatasetVersion = "1";

enum class Target { V5, V22 };

inline std::string target_name(Target t) { return t == Target::V5 ? "v5" : "v22"; }

inline std::optional<Target> parse_target(const std::string& s) {
    if (s == "v5" || s == "V5") return Target::V5;
    if (s == "v22" || s == "V22") return Target::V22;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cohomology rings. Presentations use integer generators h_i of complex
// degree i on the threefolds, m_i on the moduli spaces; coefficients are
// rational throughout since descendant classes have denominators.
// ---------------------------------------------------------------------------

inline const GradedRing& fano_threefold_ring(int deg) {
    static std::map<int, std::unique_ptr<GradedRing>> cache;
    auto it = cache.find(deg);
    if (it != cache.end()) return *it->second;
    RingPresentation p;
    p.name = deg == 5 ? "V5" : (deg == 22 ? "V22" : "Y" + std::to_string(deg));
    p.generators = {{"h1", 1}, {"h2", 2}, {"h3", 3}};
    const auto& g = p.generators;
    p.relations = {
        make_poly(g, {{rat(1), {{"h1", 2}}}, {rat(-deg), {{"h2", 1}}}}),
        make_poly(g, {{rat(1), {{"h1", 3}}}, {rat(-deg), {{"h3", 1}}}}),
        make_poly(g, {{rat(1), {{"h1", 1}, {"h2", 1}}}, {rat(-1), {{"h3", 1}}}}),
        make_poly(g, {{rat(1), {{"h2", 2}}}}),
    };
    p.dimension = 3;
    p.point_monomial = {0, 0, 1};
    p.betti = {1, 1, 1, 1};
    auto ring = std::make_unique<GradedRing>(std::move(p));
    return *cache.emplace(deg, std::move(ring)).first->second;
}

inline const GradedRing& ring_v5() { return fano_threefold_ring(5); }
inline const GradedRing& ring_v22() { return fano_threefold_ring(22); }

inline const GradedRing& projective_space_ring(int n) {
    static std::map<int, std::unique_ptr<GradedRing>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    RingPresentation p;
    p.name = "P" + std::to_string(n);
    p.generators = {{"m1", 1}};
    p.relations = {make_poly(p.generators, {{rat(1), {{"m1", n + 1}}}})};
    p.dimension = n;
    p.point_monomial = {n};
    p.betti.assign(n + 1, 1);
    auto ring = std::make_unique<GradedRing>(std::move(p));
    return *cache.emplace(n, std::move(ring)).first->second;
}

// H*(Gr(2,5)) presented on m_i = c_i(S); the relations are c4 and c5 of the
// quotient bundle, written out.
inline const GradedRing& ring_gr25() {
    static std::unique_ptr<GradedRing> cached = [] {
        RingPresentation p;
        p.name = "Gr(2,5)";
        p.generators = {{"m1", 1}, {"m2", 2}};
        const auto& g = p.generators;
        p.relations = {
            make_poly(g, {{rat(-1), {{"m1", 5}}},
                          {rat(4), {{"m1", 3}, {"m2", 1}}},
                          {rat(-3), {{"m1", 1}, {"m2", 2}}}}),
            make_poly(g, {{rat(1), {{"m1", 4}}},
                          {rat(-3), {{"m1", 2}, {"m2", 1}}},
                          {rat(1), {{"m2", 2}}}}),
        };
        p.dimension = 6;
        p.point_monomial = {0, 3};
        p.betti = {1, 1, 2, 2, 2, 1, 1};
        return std::make_unique<GradedRing>(std::move(p));
    }();
    return *cached;
}

// ---------------------------------------------------------------------------
// Bundles entering the universal-sheaf resolutions and obstruction classes.
// ---------------------------------------------------------------------------

struct YBundle {
    enum class Base { O, S, Q, Qdual, E };
    Base base = Base::O;
    int twist = 0;  // tensor by O_Y(twist)
};

struct MBundle {
    enum class Base { O, S };
    Base base = Base::O;
    int twist = 0;  // tensor by O_M(twist)
};

struct ResolutionTerm {
    MBundle m;
    YBundle y;
};

struct ModuliSpace {
    const GradedRing* ring = nullptr;
    // c1 of O_M(1) as an element of the moduli ring (m1 on P^n, -m1 on Gr(2,5)
    // where m1 = c1(S)).
    RingElement hyperplane;
    bool is_grassmannian = false;
};

// One auditable record per (target, degree) on the sheaf side.
struct ModuliDescription {
    int d = 0;
    std::string moduli_name;
    ModuliSpace space;
    // 0 -> R2 -> R1 -> R0 -> i_* O_C -> 0; terms listed as R0, R1, R2.
    std::vector<ResolutionTerm> resolution;
    // Tabulated obstruction K-class on M: (multiplicity, M bundle).
    std::vector<std::pair<int, MBundle>> obstruction_table;
    std::vector<std::pair<int, std::string>> obstruction_table_extra;  // Gr(2,5) tensor terms
    // Degree-1 case on V22: the sheaf is handed over by its Chern character on
    // the ambient P(B*) x Y together with the plane-curve degree of the moduli.
    bool ambient_chern_character = false;
    int ambient_curve_degree = 0;  // quartic
};

enum class ATwist { HyperplaneCubed, WedgeSquaredDualCubed };

struct InsertionLiftInfo {
    std::string id;
    Rat divisor;  // equivariant polynomial divided by this restricts to h2
};

struct TargetGeometry {
    Target target;
    std::string display;
    int degree;      // deg(Y)
    int fano_index;  // -K = index * H
    const GradedRing* y;
    CharClassSeries cS, cQ, cY;  // on the threefold ring
    // GW side
    int gr_r, gr_n;
    ATwist a_twist;
    int b_exponent;
    std::vector<InsertionLiftInfo> lifts;
    // DT side
    std::map<int, ModuliDescription> moduli;
    // GV side: H^4(|K_Y| compactified) = <T1, T2>
    Rat t1_dot_t1;
    Rat c2x_coeff;  // c2(X) = c2x_coeff * T2
};

inline CharClassSeries chern_on_threefold(const GradedRing& y, long rank, const Rat& c1,
                                          const Rat& c2, const Rat& c3) {
    return CharClassSeries::total_chern(
        y, rank, {y.var("h1") * c1, y.var("h2") * c2, y.var("h3") * c3});
}

inline const TargetGeometry& target_geometry(Target t) {
    static const TargetGeometry v5 = [] {
        TargetGeometry g;
        g.target = Target::V5;
        g.display = "V5";
        g.degree = 5;
        g.fano_index = 2;
        g.y = &ring_v5();
        g.cS = chern_on_threefold(*g.y, 2, rat(-1), rat(2), rat(0));
        g.cQ = chern_on_threefold(*g.y, 3, rat(1), rat(3), rat(1));
        g.cY = chern_on_threefold(*g.y, 3, rat(2), rat(12), rat(4));
        g.gr_r = 2;
        g.gr_n = 5;
        g.a_twist = ATwist::HyperplaneCubed;
        g.b_exponent = 2;
        g.lifts = {{"sigma1sq", rat(5)}, {"sigma11", rat(2)}, {"sigma2", rat(3)}};
        {
            ModuliDescription m;
            m.d = 1;
            m.moduli_name = "P2";
            m.space = {&projective_space_ring(2), projective_space_ring(2).var("m1"), false};
            m.resolution = {
                {{MBundle::Base::O, 0}, {YBundle::Base::O, 0}},
                {{MBundle::Base::O, -2}, {YBundle::Base::Qdual, 0}},
                {{MBundle::Base::O, -3}, {YBundle::Base::S, 0}},
            };
            m.obstruction_table = {{1, {MBundle::Base::O, 0}},
                                   {-5, {MBundle::Base::O, 2}},
                                   {5, {MBundle::Base::O, 3}}};
            g.moduli[1] = std::move(m);
        }
        {
            ModuliDescription m;
            m.d = 2;
            m.moduli_name = "P4";
            m.space = {&projective_space_ring(4), projective_space_ring(4).var("m1"), false};
            m.resolution = {
                {{MBundle::Base::O, 0}, {YBundle::Base::O, 0}},
                {{MBundle::Base::O, -1}, {YBundle::Base::S, 0}},
                {{MBundle::Base::O, -2}, {YBundle::Base::O, -1}},
            };
            m.obstruction_table = {{1, {MBundle::Base::O, 0}},
                                   {-5, {MBundle::Base::O, 1}},
                                   {7, {MBundle::Base::O, 2}}};
            g.moduli[2] = std::move(m);
        }
        {
            ModuliDescription m;
            m.d = 3;
            m.moduli_name = "Gr(2,5)";
            m.space = {&ring_gr25(), ring_gr25().var("m1") * rat(-1), true};
            m.resolution = {
                {{MBundle::Base::O, 0}, {YBundle::Base::O, 0}},
                {{MBundle::Base::O, -1}, {YBundle::Base::Q, -1}},
                {{MBundle::Base::S, -1}, {YBundle::Base::O, -1}},
            };
            m.obstruction_table = {{1, {MBundle::Base::O, 0}}, {-10, {MBundle::Base::O, 1}}};
            m.obstruction_table_extra = {{7, "S*(1)"}, {-5, "S*"}, {1, "S**S"}, {1, "S**Q"}};
            g.moduli[3] = std::move(m);
        }
        g.t1_dot_t1 = rat(-10);
        g.c2x_coeff = rat(-8);
        return g;
    }();
    static const TargetGeometry v22 = [] {
        TargetGeometry g;
        g.target = Target::V22;
        g.display = "V22";
        g.degree = 22;
        g.fano_index = 1;
        g.y = &ring_v22();
        g.cS = chern_on_threefold(*g.y, 3, rat(-1), rat(10), rat(-2));
        g.cQ = chern_on_threefold(*g.y, 4, rat(1), rat(12), rat(4));
        g.cY = chern_on_threefold(*g.y, 3, rat(1), rat(24), rat(4));
        g.gr_r = 3;
        g.gr_n = 7;
        g.a_twist = ATwist::WedgeSquaredDualCubed;
        g.b_exponent = 1;
        g.lifts = {{"sigma1sq", rat(22)}, {"c2S", rat(10)}};
        {
            ModuliDescription m;
            m.d = 1;
            m.moduli_name = "Q (planar quartic) in P(B*)";
            m.space = {&projective_space_ring(2), projective_space_ring(2).var("m1"), false};
            m.ambient_chern_character = true;
            m.ambient_curve_degree = 4;
            g.moduli[1] = std::move(m);
        }
        {
            ModuliDescription m;
            m.d = 2;
            m.moduli_name = "P2";
            m.space = {&projective_space_ring(2), projective_space_ring(2).var("m1"), false};
            m.resolution = {
                {{MBundle::Base::O, 0}, {YBundle::Base::O, 0}},
                {{MBundle::Base::O, -3}, {YBundle::Base::Qdual, 0}},
                {{MBundle::Base::O, -4}, {YBundle::Base::S, 0}},
            };
            m.obstruction_table = {{1, {MBundle::Base::O, 0}},
                                   {-7, {MBundle::Base::O, 3}},
                                   {7, {MBundle::Base::O, 4}}};
            g.moduli[2] = std::move(m);
        }
        {
            ModuliDescription m;
            m.d = 3;
            m.moduli_name = "P3";
            m.space = {&projective_space_ring(3), projective_space_ring(3).var("m1"), false};
            m.resolution = {
                {{MBundle::Base::O, 0}, {YBundle::Base::O, 0}},
                {{MBundle::Base::O, -2}, {YBundle::Base::S, 0}},
                {{MBundle::Base::O, -3}, {YBundle::Base::E, 0}},
            };
            m.obstruction_table = {{1, {MBundle::Base::O, 0}},
                                   {-7, {MBundle::Base::O, 2}},
                                   {8, {MBundle::Base::O, 3}}};
            g.moduli[3] = std::move(m);
        }
        g.t1_dot_t1 = rat(-22);
        g.c2x_coeff = rat(2);
        return g;
    }();
    return t == Target::V5 ? v5 : v22;
}

// ---------------------------------------------------------------------------
// Chern characters of the dataset bundles, on the factor rings.
// ---------------------------------------------------------------------------

inline CharClassSeries ch_line(const GradedRing& ring, const RingElement& c1) {
    return rekind(exp_series(ring, c1), CharClassSeries::Kind::ChernCharacter, 1);
}

inline CharClassSeries ch_y_bundle(const TargetGeometry& g, const YBundle& b) {
    const GradedRing& y = *g.y;
    CharClassSeries base = [&] {
        switch (b.base) {
            case YBundle::Base::O:
                return ch_line(y, y.zero());
            case YBundle::Base::S:
                return chern_to_ch(g.cS);
            case YBundle::Base::Q:
                return chern_to_ch(g.cQ);
            case YBundle::Base::Qdual:
                return dual_involution(chern_to_ch(g.cQ));
            case YBundle::Base::E: {
                if (g.target != Target::V22)
                    throw std::invalid_argument("bundle E is V22 data");
                auto cE = chern_on_threefold(y, 2, rat(-1), rat(7), rat(0));
                return chern_to_ch(cE);
            }
        }
        throw std::logic_error("unreachable");
    }();
    if (b.twist == 0) return base;
    return rekind(base * ch_line(y, y.var("h1") * rat(b.twist)),
                  CharClassSeries::Kind::ChernCharacter, base.rank());
}

inline CharClassSeries ch_gr25_taut_sub() {
    const GradedRing& m = ring_gr25();
    auto cS = CharClassSeries::total_chern(m, 2, {m.var("m1"), m.var("m2")});
    return chern_to_ch(cS);
}

inline CharClassSeries ch_m_bundle(const ModuliSpace& space, const MBundle& b) {
    const GradedRing& m = *space.ring;
    CharClassSeries base = [&] {
        switch (b.base) {
            case MBundle::Base::O:
                return ch_line(m, m.zero());
            case MBundle::Base::S:
                if (!space.is_grassmannian)
                    throw std::invalid_argument("tautological subbundle needs Gr(2,5)");
                return ch_gr25_taut_sub();
        }
        throw std::logic_error("unreachable");
    }();
    if (b.twist == 0) return base;
    return rekind(base * ch_line(m, space.hyperplane * rat(b.twist)),
                  CharClassSeries::Kind::ChernCharacter, base.rank());
}

// ch of the tangent bundle of the moduli space: Euler sequence on P^n,
// S^dual (x) Q on Gr(2,5).
inline CharClassSeries ch_tangent_moduli(const ModuliSpace& space) {
    const GradedRing& m = *space.ring;
    if (!space.is_grassmannian) {
        int n = m.dimension();
        auto chO1 = ch_line(m, space.hyperplane);
        auto sum = chO1.scaled(rat(n + 1));
        auto one = ch_line(m, m.zero());
        return rekind(sum - one, CharClassSeries::Kind::ChernCharacter, n);
    }
    auto chS = ch_gr25_taut_sub();
    auto chSd = dual_involution(chS);
    auto chQ = ch_line(m, m.zero()).scaled(rat(5)) - chS;
    return rekind(chSd * chQ, CharClassSeries::Kind::ChernCharacter, 6);
}

// ---------------------------------------------------------------------------
// Product rings M x Y, cached.
// ---------------------------------------------------------------------------

inline const GradedRing& moduli_times_y(Target t, int d) {
    static std::map<std::pair<int, int>, std::unique_ptr<GradedRing>> cache;
    auto key = std::make_pair(static_cast<int>(t), d);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    const auto& g = target_geometry(t);
    const auto& md = g.moduli.at(d);
    auto prod = GradedRing::product(*md.space.ring, *g.y,
                                    md.moduli_name + " x " + g.display);
    return *cache.emplace(key, std::move(prod)).first->second;
}

// ---------------------------------------------------------------------------
// Human-readable dump of the embedded dataset.
// ---------------------------------------------------------------------------

inline std::string bundle_string(const MBundle& b) {
    std::string base = b.base == MBundle::Base::O ? "O" : "S";
    if (b.twist != 0) base += "(" + std::to_string(b.twist) + ")";
    return base;
}

inline std::string bundle_string(const YBundle& b) {
    std::string base;
    switch (b.base) {
        case YBundle::Base::O: base = "O"; break;
        case YBundle::Base::S: base = "S"; break;
        case YBundle::Base::Q: base = "Q"; break;
        case YBundle::Base::Qdual: base = "Q*"; break;
        case YBundle::Base::E: base = "E"; break;
    }
    if (b.twist != 0) base += "(" + std::to_string(b.twist) + ")";
    return base;
}

inline std::string dataset_text() {
    std::ostringstream out;
    out << "dataset version " << kDatasetVersion << "\n";
    for (Target t : {Target::V5, Target::V22}) {
        const auto& g = target_geometry(t);
        out << "\n[" << g.display << "]\n";
        out << "  deg(Y) = " << g.degree << ", Fano index = " << g.fano_index << "\n";
        out << "  H*(Y) = Q[h1,h2,h3]/(h1^2-" << g.degree << "h2, h1^3-" << g.degree
            << "h3, h1h2-h3, h2^2)\n";
        out << "  c(S) = " << g.cS[0].ring()->to_string(g.cS.total()) << "  (rank "
            << g.cS.rank() << ")\n";
        out << "  c(Q) = " << g.cQ[0].ring()->to_string(g.cQ.total()) << "  (rank "
            << g.cQ.rank() << ")\n";
        out << "  c(Y) = " << g.cY[0].ring()->to_string(g.cY.total()) << "\n";
        out << "  ambient for stable maps: Gr(" << g.gr_r << "," << g.gr_n << "), twists: "
            << (g.a_twist == ATwist::HyperplaneCubed ? "O(1)^3" : "(wedge^2 S*)^3")
            << " and O(-" << g.b_exponent << ")\n";
        for (const auto& [d, md] : g.moduli) {
            out << "  d=" << d << ": M = " << md.moduli_name << "\n";
            if (md.ambient_chern_character) {
                out << "    ch(O_C) on P(B*) x Y: (2m1^2*h1 + 4m1*h2) + (-8m1^2*h2 + 2m1*h3)"
                       " + higher; plane-curve degree " << md.ambient_curve_degree << "\n";
                continue;
            }
            out << "    resolution 0 -> R2 -> R1 -> R0 -> i_*O_C -> 0 with";
            for (size_t i = 0; i < md.resolution.size(); ++i) {
                const auto& term = md.resolution[i];
                out << " R" << i << " = " << bundle_string(term.m) << " (x) "
                    << bundle_string(term.y) << (i + 1 < md.resolution.size() ? "," : "\n");
            }
            out << "    tabulated [ob] =";
            bool first = true;
            for (const auto& [mult, mb] : md.obstruction_table) {
                out << (first ? " " : " + ") << mult << "[" << bundle_string(mb) << "]";
                first = false;
            }
            for (const auto& [mult, name] : md.obstruction_table_extra)
                out << " + " << mult << "[" << name << "]";
            out << "\n";
        }
        out << "  T1.T1 = " << to_string(g.t1_dot_t1) << ", c2(X) = " << to_string(g.c2x_coeff)
            << " T2\n";
    }
    return out.str();
}

}  // namespace fano
