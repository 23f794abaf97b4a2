#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "fano/fixedpoints.hpp"

namespace fano {

// A torus-fixed locus of M_{0,k}(Gr(r,n), d): a tree whose vertices carry
// fixed-point labels (adjacent labels share r-1 indices), whose edges carry
// covering degrees summing to d, and at most one marked vertex.
struct DecoratedGraph {
    struct Edge {
        int a = 0, b = 0;
        int d = 1;
    };

    int r = 0, n = 0;
    std::vector<FixedPoint> labels;
    std::vector<Edge> edges;
    int marking = -1;  // vertex index, -1 when unmarked

    int num_vertices() const { return static_cast<int>(labels.size()); }

    int total_degree() const {
        int d = 0;
        for (const auto& e : edges) d += e.d;
        return d;
    }

    std::vector<std::vector<int>> incident_edges() const {
        std::vector<std::vector<int>> inc(labels.size());
        for (size_t i = 0; i < edges.size(); ++i) {
            inc[edges[i].a].push_back(static_cast<int>(i));
            inc[edges[i].b].push_back(static_cast<int>(i));
        }
        return inc;
    }

    int valency(int v) const {
        int c = 0;
        for (const auto& e : edges) c += (e.a == v) + (e.b == v);
        return c;
    }

    // Special points n(v) = valency + markings; drives the moduli factor and
    // the stability bookkeeping at v.
    int special_points(int v) const { return valency(v) + (marking == v ? 1 : 0); }
};

struct AutInfo {
    long aut = 1;      // decorated tree automorphisms fixing markings pointwise
    long a_gamma = 1;  // |Aut| * prod of edge degrees
};

namespace detail {

inline std::string label_str(const FixedPoint& p) {
    std::string s = "{";
    for (size_t i = 0; i < p.idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.idx[i]);
    }
    return s + "}";
}

// AHU-style rooted encoding of the decorated tree.
inline std::string encode(const DecoratedGraph& g, const std::vector<std::vector<int>>& inc,
                          int v, int parent_edge) {
    std::vector<std::string> items;
    for (int ei : inc[v]) {
        if (ei == parent_edge) continue;
        const auto& e = g.edges[ei];
        int u = e.a == v ? e.b : e.a;
        items.push_back("d" + std::to_string(e.d) + encode(g, inc, u, ei));
    }
    std::sort(items.begin(), items.end());
    std::string s = "(" + label_str(g.labels[v]);
    if (g.marking == v) s += "*";
    for (auto& it : items) s += it;
    return s + ")";
}

inline void canonical_order(const DecoratedGraph& g, const std::vector<std::vector<int>>& inc,
                            int v, int parent_edge, std::vector<int>& order) {
    order.push_back(v);
    std::vector<std::pair<std::string, int>> children;  // (encoding, edge index)
    for (int ei : inc[v]) {
        if (ei == parent_edge) continue;
        const auto& e = g.edges[ei];
        int u = e.a == v ? e.b : e.a;
        children.emplace_back("d" + std::to_string(e.d) + encode(g, inc, u, ei), ei);
    }
    std::sort(children.begin(), children.end());
    for (const auto& [enc, ei] : children) {
        const auto& e = g.edges[ei];
        canonical_order(g, inc, e.a == v ? e.b : e.a, ei, order);
    }
}

}  // namespace detail

// Serialization in a fixed layout: vertex labels as sorted index lists, edges
// as (i,j,d_e), markings as vertex indices.
inline std::string serialize(const DecoratedGraph& g) {
    std::string s = "V[";
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (v) s += ",";
        s += detail::label_str(g.labels[v]);
    }
    s += "];E[";
    std::vector<std::tuple<int, int, int>> es;
    for (const auto& e : g.edges) es.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), e.d);
    std::sort(es.begin(), es.end());
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(std::get<0>(es[i])) + "," + std::to_string(std::get<1>(es[i])) +
             "," + std::to_string(std::get<2>(es[i])) + ")";
    }
    s += "];M[";
    if (g.marking >= 0) s += std::to_string(g.marking);
    return s + "]";
}

// Relabels vertices into the canonical DFS order of the minimal rooted
// encoding, so isomorphic graphs serialize identically.
inline DecoratedGraph canonical_form(const DecoratedGraph& g) {
    auto inc = g.incident_edges();
    int best_root = 0;
    std::string best;
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::string enc = detail::encode(g, inc, v, -1);
        if (best.empty() || enc < best) {
            best = std::move(enc);
            best_root = v;
        }
    }
    std::vector<int> order;
    detail::canonical_order(g, inc, best_root, -1, order);
    std::vector<int> pos(g.num_vertices());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    DecoratedGraph out;
    out.r = g.r;
    out.n = g.n;
    out.labels.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) out.labels[pos[v]] = g.labels[v];
    for (const auto& e : g.edges) {
        DecoratedGraph::Edge ne{std::min(pos[e.a], pos[e.b]), std::max(pos[e.a], pos[e.b]), e.d};
        out.edges.push_back(ne);
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.a, x.b, x.d) < std::tie(y.a, y.b, y.d);
    });
    out.marking = g.marking >= 0 ? pos[g.marking] : -1;
    return out;
}

inline std::string canonical_serialization(const DecoratedGraph& g) {
    return serialize(canonical_form(g));
}

// Decorated automorphisms: vertex permutations preserving labels, edges with
// degrees, and the marking pointwise. Trees here have at most 5 vertices.
inline AutInfo automorphism_order(const DecoratedGraph& g) {
    int nv = g.num_vertices();
    std::vector<std::tuple<int, int, int>> edge_set;
    for (const auto& e : g.edges) edge_set.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), e.d);
    std::sort(edge_set.begin(), edge_set.end());
    std::vector<int> perm(nv);
    for (int i = 0; i < nv; ++i) perm[i] = i;
    long count = 0;
    do {
        bool ok = true;
        for (int v = 0; v < nv && ok; ++v)
            if (!(g.labels[perm[v]] == g.labels[v])) ok = false;
        if (ok && g.marking >= 0 && perm[g.marking] != g.marking) ok = false;
        if (ok) {
            std::vector<std::tuple<int, int, int>> mapped;
            for (const auto& e : g.edges)
                mapped.emplace_back(std::min(perm[e.a], perm[e.b]),
                                    std::max(perm[e.a], perm[e.b]), e.d);
            std::sort(mapped.begin(), mapped.end());
            ok = mapped == edge_set;
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    AutInfo info;
    info.aut = count;
    info.a_gamma = count;
    for (const auto& e : g.edges) info.a_gamma *= e.d;
    return info;
}

struct GraphRecord {
    DecoratedGraph graph;
    AutInfo aut;
    std::string canon;
};

// Every isomorphism class of decorated graphs for M_{0,k}(Gr(r,n), d),
// exactly once, in the lexicographic order of the canonical serialization.
inline std::vector<GraphRecord> enumerate_graphs(int r, int n, int d, int k) {
    if (d < 1) throw std::invalid_argument("enumerate_graphs: d >= 1");
    if (k != 0 && k != 1) throw std::invalid_argument("enumerate_graphs: k in {0,1}");
    auto points = fixed_points(r, n);
    std::vector<std::vector<FixedPoint>> nbrs(points.size());
    for (size_t i = 0; i < points.size(); ++i) nbrs[i] = neighbors(points[i], n);

    std::vector<GraphRecord> out;
    std::unordered_set<std::string> seen;

    auto consider = [&](const DecoratedGraph& g) {
        DecoratedGraph cg = canonical_form(g);
        std::string key = serialize(cg);
        if (!seen.insert(key).second) return;
        GraphRecord rec;
        rec.graph = std::move(cg);
        rec.aut = automorphism_order(rec.graph);
        rec.canon = std::move(key);
        out.push_back(std::move(rec));
    };

    // Trees on E+1 indexed vertices via parent vectors (parent[j] < j), edge
    // degree compositions, then adjacency-constrained labelings.
    for (int ne = 1; ne <= d; ++ne) {
        int nv = ne + 1;
        std::vector<int> parent(nv, -1);
        std::vector<int> degs(ne, 1);

        auto label_and_emit = [&](const std::vector<int>& par, const std::vector<int>& ds) {
            DecoratedGraph g;
            g.r = r;
            g.n = n;
            g.labels.resize(nv);
            g.edges.clear();
            for (int j = 1; j < nv; ++j)
                g.edges.push_back({par[j], j, ds[j - 1]});
            auto rec = [&](auto&& self, int v) -> void {
                if (v == nv) {
                    if (k == 0) {
                        g.marking = -1;
                        consider(g);
                    } else {
                        for (int mv = 0; mv < nv; ++mv) {
                            g.marking = mv;
                            consider(g);
                        }
                    }
                    return;
                }
                if (v == 0) {
                    for (const auto& p : points) {
                        g.labels[0] = p;
                        self(self, 1);
                    }
                    return;
                }
                const FixedPoint& pl = g.labels[par[v]];
                size_t pi = std::lower_bound(points.begin(), points.end(), pl) - points.begin();
                for (const auto& q : nbrs[pi]) {
                    g.labels[v] = q;
                    self(self, v + 1);
                }
            };
            rec(rec, 0);
        };

        auto deg_rec = [&](auto&& self, int j, int remaining) -> void {
            if (j == ne) {
                if (remaining == 0) {
                    // all parent vectors
                    auto par_rec = [&](auto&& pself, int v) -> void {
                        if (v == nv) {
                            label_and_emit(parent, degs);
                            return;
                        }
                        for (int p = 0; p < v; ++p) {
                            parent[v] = p;
                            pself(pself, v + 1);
                        }
                    };
                    par_rec(par_rec, 1);
                }
                return;
            }
            for (int dd = 1; dd <= remaining - (ne - j - 1); ++dd) {
                degs[j] = dd;
                self(self, j + 1, remaining - dd);
            }
        };
        deg_rec(deg_rec, 0, d);
    }

    std::sort(out.begin(), out.end(),
              [](const GraphRecord& a, const GraphRecord& b) { return a.canon < b.canon; });
    return out;
}

}  // namespace fano
