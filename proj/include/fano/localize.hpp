#pragma once

#include <atomic>
#include <cassert>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fano/fixedpoints.hpp"
#include "fano/graphs.hpp"
#include "fano/targets.hpp"

namespace fano {

// Genus-0 psi-class integral over M_{0,m}: (m-3)!/prod(a_i!) when the
// exponents sum to the dimension, else 0.
inline Rat psi_integral(int m, const std::vector<int>& exponents) {
    if (m < 3) throw std::invalid_argument("psi_integral: m >= 3");
    int total = 0;
    for (int a : exponents) {
        if (a < 0) throw std::invalid_argument("psi_integral: negative exponent");
        total += a;
    }
    if (total != m - 3) return Rat(0);
    Rat r = factorial(m - 3);
    for (int a : exponents) r /= factorial(a);
    return r;
}

// Euler-class twist data: the convex bundle cutting Y out of the ambient
// Grassmannian and the negative powers of O(-1) for the canonical direction.
struct TwistSpec {
    struct Convex {
        enum class Kind { Hyperplane, WedgeSquaredDual };
        Kind kind = Kind::Hyperplane;
        int copies = 1;
    };
    std::vector<Convex> convex;
    std::vector<int> negative_exponents;  // one R^1 pi_* f^* O(-b) factor per entry

    static TwistSpec for_target(const TargetGeometry& g) {
        TwistSpec t;
        t.convex = {{g.a_twist == ATwist::HyperplaneCubed ? Convex::Kind::Hyperplane
                                                          : Convex::Kind::WedgeSquaredDual,
                     3}};
        t.negative_exponents = {g.b_exponent};
        return t;
    }
};

inline InsertionLift resolve_lift(const TargetGeometry& g, const std::string& id) {
    for (const auto& l : g.lifts) {
        if (l.id != id) continue;
        InsertionLift lift;
        lift.divisor = l.divisor;
        if (id == "sigma1sq")
            lift.kind = InsertionLift::Kind::Sigma1Sq;
        else if (id == "sigma11" || id == "c2S")
            lift.kind = InsertionLift::Kind::Sigma11;
        else if (id == "sigma2")
            lift.kind = InsertionLift::Kind::Sigma2;
        else
            throw std::invalid_argument("unknown lift id: " + id);
        return lift;
    }
    throw std::invalid_argument("lift " + id + " not available for " + g.display);
}

namespace detail {

struct FlagData {
    int vertex;
    int edge;
    Rat omega;
};

// Per-graph scratch: edge geometries and flag weights under one weight
// specialization.
struct GraphGeometry {
    std::vector<EdgeGeometry> edges;
    std::vector<std::vector<FlagData>> flags_at;  // by vertex

    GraphGeometry(const DecoratedGraph& g, const TorusWeights& w) {
        flags_at.resize(g.num_vertices());
        for (size_t ei = 0; ei < g.edges.size(); ++ei) {
            const auto& e = g.edges[ei];
            edges.emplace_back(g.labels[e.a], g.labels[e.b], e.d);
            const auto& geom = edges.back();
            Rat oa = geom.omega_at_a(w);
            flags_at[e.a].push_back({e.a, static_cast<int>(ei), oa});
            flags_at[e.b].push_back({e.b, static_cast<int>(ei), -oa});
        }
    }
};

inline void require_nonzero(const Rat& w) {
    if (is_zero(w)) throw DegenerateWeights();
}

// H^0 weight product of one convex summand along an edge. The hyperplane
// bundle interpolates the Pluecker weights; wedge^2 S^dual splits into the
// pairwise-sum line summands.
inline Rat convex_edge_h0(const TwistSpec::Convex::Kind kind, const EdgeGeometry& e,
                          const TorusWeights& w) {
    Rat prod(1);
    Rat omega = e.omega_at_a(w);
    auto h0 = [&](const Rat& lambda_a, int m) {
        for (int j = 0; j <= m; ++j) {
            Rat wt = lambda_a - Rat(j) * omega;
            require_nonzero(wt);
            prod *= wt;
        }
    };
    if (kind == TwistSpec::Convex::Kind::Hyperplane) {
        Rat la = sum_alpha(e.a, w);
        h0(la, e.d_e);
        return prod;
    }
    // wedge^2 S^dual on Gr(3,7): one edge-trivial summand and two moving ones.
    if (e.shared.size() != 2)
        throw std::invalid_argument("wedge^2 twist needs rank-3 tautological bundle");
    Rat trivial = w.alpha[e.shared[0] - 1] + w.alpha[e.shared[1] - 1];
    require_nonzero(trivial);
    prod *= trivial;
    for (int s : e.shared) {
        Rat la = w.alpha[s - 1] + w.alpha[e.moving_a - 1];
        h0(la, e.d_e);
    }
    return prod;
}

inline Rat convex_fiber_euler(const TwistSpec::Convex::Kind kind, const FixedPoint& p,
                              const TorusWeights& w) {
    if (kind == TwistSpec::Convex::Kind::Hyperplane) {
        Rat s = sum_alpha(p, w);
        require_nonzero(s);
        return s;
    }
    Rat prod(1);
    for (size_t i = 0; i < p.idx.size(); ++i)
        for (size_t j = i + 1; j < p.idx.size(); ++j) {
            Rat s = w.alpha[p.idx[i] - 1] + w.alpha[p.idx[j] - 1];
            require_nonzero(s);
            prod *= s;
        }
    return prod;
}

}  // namespace detail

// Deformation factors of the domain curve: reparametrizations at unmarked
// ends, node smoothings between edge pairs, and the psi-class data at
// vertices carrying moduli.
struct DomainFactors {
    Rat ext0{1};             // product over unmarked n(v)=1 vertices of omega_F
    Rat node_smoothings{1};  // product over unmarked 2-edge vertices of (omega_1 + omega_2)
    struct ModuliVertex {
        int vertex;
        int special_points;        // n(v)
        std::vector<Rat> omegas;   // edge flags at the vertex
    };
    std::vector<ModuliVertex> moduli;
};

inline DomainFactors domain_aut_def_factors(const DecoratedGraph& g, const TorusWeights& w) {
    detail::GraphGeometry geom(g, w);
    DomainFactors out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int val = g.valency(v);
        int nv = g.special_points(v);
        const auto& flags = geom.flags_at[v];
        if (nv == 1) {
            out.ext0 *= flags[0].omega;
        } else if (nv == 2 && val == 2) {
            Rat s = flags[0].omega + flags[1].omega;
            detail::require_nonzero(s);
            out.node_smoothings *= s;
        } else if (nv >= 3) {
            DomainFactors::ModuliVertex mv;
            mv.vertex = v;
            mv.special_points = nv;
            for (const auto& f : flags) mv.omegas.push_back(f.omega);
            out.moduli.push_back(std::move(mv));
        }
    }
    return out;
}

// Integral over M_{0,n(v)} of prod_F 1/(omega_F - psi_F): expand each factor
// as a geometric series in psi and feed the monomials to psi_integral.
inline Rat moduli_vertex_integral(const DomainFactors::ModuliVertex& mv) {
    int dim = mv.special_points - 3;
    Rat total(0);
    std::vector<int> exps(mv.omegas.size(), 0);
    auto rec = [&](auto&& self, size_t i, int remaining) -> void {
        if (i == exps.size()) {
            if (remaining != 0) return;
            std::vector<int> full = exps;
            full.resize(mv.special_points, 0);  // marked points carry exponent 0
            Rat term = psi_integral(mv.special_points, full);
            for (size_t f = 0; f < exps.size(); ++f)
                term /= pow_rat(mv.omegas[f], exps[f] + 1);
            total += term;
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            exps[i] = a;
            self(self, i + 1, remaining - a);
        }
        exps[i] = 0;
    };
    rec(rec, 0, dim);
    return total;
}

// Equivariant Euler classes of the twist bundles restricted to the fixed
// locus, via the normalization sequence: edges contribute H^0 (resp. H^1)
// weights, vertices and flags cancel to fiber-weight powers 1 - val(v)
// (resp. val(v) - 1).
inline std::pair<Rat, Rat> twist_euler(const DecoratedGraph& g, const TwistSpec& twist,
                                       const TorusWeights& w) {
    detail::GraphGeometry geom(g, w);
    Rat eF1(1);
    for (const auto& cx : twist.convex) {
        Rat factor(1);
        for (const auto& e : geom.edges) factor *= detail::convex_edge_h0(cx.kind, e, w);
        for (int v = 0; v < g.num_vertices(); ++v) {
            int val = g.valency(v);
            if (val < 2) continue;
            factor /= pow_rat(detail::convex_fiber_euler(cx.kind, g.labels[v], w), val - 1);
        }
        eF1 *= pow_rat(factor, cx.copies);
    }
    Rat eF2(1);
    for (int b : twist.negative_exponents) {
        Rat factor(1);
        for (const auto& e : geom.edges) {
            Rat la = Rat(-b) * sum_alpha(e.a, w);
            Rat omega = e.omega_at_a(w);
            for (int j = 1; j <= b * e.d_e - 1; ++j) {
                Rat wt = la + Rat(j) * omega;
                detail::require_nonzero(wt);
                factor *= wt;
            }
        }
        for (int v = 0; v < g.num_vertices(); ++v) {
            int val = g.valency(v);
            if (val < 2) continue;
            Rat lv = Rat(-b) * sum_alpha(g.labels[v], w);
            detail::require_nonzero(lv);
            factor *= pow_rat(lv, val - 1);
        }
        eF2 *= factor;
    }
    return {eF1, eF2};
}

// One decorated graph's term in the localization sum: Euler classes of the
// twist bundles and the insertion weight against e^T(N^vir), divided by the
// automorphism factor. psi classes at vertices with moduli are integrated out.
inline Rat graph_contribution(const DecoratedGraph& g, const TwistSpec& twist,
                              const std::optional<InsertionLift>& lift, const TorusWeights& w,
                              const AutInfo& aut) {
    if (g.total_degree() <= 3)
        for (int v = 0; v < g.num_vertices(); ++v) assert(g.special_points(v) <= 4);

    Rat num(1), den(Rat(aut.a_gamma));

    DomainFactors dom = domain_aut_def_factors(g, w);
    num *= dom.ext0;
    den *= dom.node_smoothings;
    for (const auto& mv : dom.moduli) num *= moduli_vertex_integral(mv);

    // Vertex and flag tangent spaces combine to e^T(T_p G)^(val-1).
    for (int v = 0; v < g.num_vertices(); ++v) {
        int val = g.valency(v);
        if (val >= 2) num *= pow_rat(euler_tangent(g.labels[v], w), val - 1);
    }
    detail::GraphGeometry geom(g, w);
    for (const auto& e : geom.edges) den *= edge_tangent_euler(e, w);

    auto [eF1, eF2] = twist_euler(g, twist, w);
    num *= eF1 * eF2;

    if (g.marking >= 0) {
        if (!lift) throw std::invalid_argument("marked graph needs an insertion lift");
        num *= insertion_weight(*lift, g.labels[g.marking], w);
    }

    return num / den;
}

using ProgressHook = std::function<void(size_t done, size_t total)>;

// Exact parallel reduction over the graph list. Shards are contiguous in
// enumeration order; rational arithmetic makes the result schedule-independent.
inline Rat sum_over_graphs(const std::vector<GraphRecord>& records, const TwistSpec& twist,
                           const std::optional<InsertionLift>& lift, const TorusWeights& w,
                           int jobs, const ProgressHook& progress = nullptr,
                           std::vector<Rat>* per_graph = nullptr) {
    if (jobs < 1) jobs = 1;
    size_t total = records.size();
    if (per_graph) per_graph->assign(total, Rat(0));
    std::vector<Rat> partial(jobs, Rat(0));
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<size_t> done{0};
    auto work = [&](int t) {
        try {
            size_t lo = total * t / jobs, hi = total * (t + 1) / jobs;
            Rat acc(0);
            for (size_t i = lo; i < hi; ++i) {
                Rat c = graph_contribution(records[i].graph, twist, lift, w, records[i].aut);
                if (per_graph) (*per_graph)[i] = c;
                acc += c;
                size_t d = ++done;
                if (progress && d % 2048 == 0) progress(d, total);
            }
            partial[t] = std::move(acc);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(work, t);
        for (auto& th : threads) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Rat sum(0);
    for (const auto& p : partial) sum += p;
    if (progress) progress(total, total);
    return sum;
}

inline constexpr std::uint64_t kSeedBase = 20240801;

struct GWOptions {
    int seed_count = 2;
    std::uint64_t seed_base = kSeedBase;
    int jobs = 1;
    ProgressHook progress;
};

struct GWResult {
    Rat value;
    std::vector<std::uint64_t> seeds;  // the specializations that succeeded
};

// Twisted genus-0 invariant of the target at degree d: the graph sum, run
// over several independent weight specializations, which must agree exactly.
// Degenerate specializations are retried with the next seed.
inline GWResult twisted_gw(Target target, int d, const std::string& lift_id,
                           const GWOptions& opts = {}) {
    const auto& g = target_geometry(target);
    auto records = enumerate_graphs(g.gr_r, g.gr_n, d, 1);
    TwistSpec twist = TwistSpec::for_target(g);
    InsertionLift lift = resolve_lift(g, lift_id);

    GWResult result;
    bool have = false;
    std::uint64_t seed = opts.seed_base;
    int successes = 0;
    int attempts = 0;
    while (successes < opts.seed_count) {
        if (++attempts > opts.seed_count + 64)
            throw std::runtime_error("all weight specializations degenerate");
        auto w = TorusWeights::specialize(g.gr_n, seed++);
        Rat value;
        try {
            value = sum_over_graphs(records, twist, lift, w, opts.jobs, opts.progress);
        } catch (const DegenerateWeights&) {
            continue;
        }
        if (!have) {
            result.value = value;
            have = true;
        } else if (value != result.value) {
            throw std::runtime_error("weight specializations disagree; localization bug");
        }
        result.seeds.push_back(w.seed);
        ++successes;
    }
    return result;
}

}  // namespace fano
