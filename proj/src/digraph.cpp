#include "robusteq/digraph.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "robusteq/errors.hpp"

namespace robusteq {

void WeightedDigraph::add_edge(int from, int to, std::vector<long long> weights) {
    if (from < 0 || from >= vertex_count || to < 0 || to >= vertex_count)
        throw StructureError("edge endpoint out of range");
    if (static_cast<int>(weights.size()) != dims)
        throw StructureError("edge weight arity mismatch");
    edges.push_back(Edge{from, to, std::move(weights)});
}

std::vector<std::vector<int>> WeightedDigraph::out_edges() const {
    std::vector<std::vector<int>> out(vertex_count);
    for (size_t e = 0; e < edges.size(); ++e) out[edges[e].from].push_back(static_cast<int>(e));
    return out;
}

std::vector<bool> reachable_set(const WeightedDigraph& g, int from) {
    std::vector<bool> seen(g.vertex_count, false);
    if (from < 0 || from >= g.vertex_count) return seen;
    auto out = g.out_edges();
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : out[v]) {
            int to = g.edges[e].to;
            if (!seen[to]) {
                seen[to] = true;
                stack.push_back(to);
            }
        }
    }
    return seen;
}

SccPartition sccs(const WeightedDigraph& g) {
    const int n = g.vertex_count;
    auto out = g.out_edges();

    // Iterative Tarjan.
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;

    SccPartition part;
    part.component_of.assign(n, -1);

    struct Frame {
        int v;
        size_t edge_pos;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge_pos < out[f.v].size()) {
                int e = out[f.v][f.edge_pos++];
                int w = g.edges[e].to;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    for (int w : comp) part.component_of[w] = static_cast<int>(part.components.size());
                    part.components.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // Tarjan emits components in reverse topological order.
    std::reverse(part.components.begin(), part.components.end());
    for (size_t c = 0; c < part.components.size(); ++c)
        for (int v : part.components[c]) part.component_of[v] = static_cast<int>(c);

    part.trivial.assign(part.components.size(), false);
    std::vector<bool> has_self_loop(n, false);
    for (const Edge& e : g.edges)
        if (e.from == e.to) has_self_loop[e.from] = true;
    for (size_t c = 0; c < part.components.size(); ++c)
        part.trivial[c] = part.components[c].size() == 1 && !has_self_loop[part.components[c][0]];
    return part;
}

namespace {

struct SccMeanResult {
    Rational value;
    std::vector<int> cycle_vertices;
    std::vector<int> cycle_edges;
};

// Maximum mean cycle inside one strongly connected nontrivial component,
// weights taken as sign * w[dim]. Karp's dynamic program plus a witness
// cycle extracted from the tight subgraph after reweighting.
SccMeanResult scc_max_mean(const WeightedDigraph& g, const std::vector<int>& comp, int dim,
                           long long sign) {
    const int m = static_cast<int>(comp.size());
    std::vector<int> local(g.vertex_count, -1);
    for (int i = 0; i < m; ++i) local[comp[i]] = i;

    struct LocalEdge {
        int from, to, id;
        long long w;
    };
    std::vector<LocalEdge> edges;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        if (local[ed.from] != -1 && local[ed.to] != -1)
            edges.push_back({local[ed.from], local[ed.to], static_cast<int>(e), sign * ed.w[dim]});
    }
    assert(!edges.empty());

    // D[k][v] = best weight of a walk with exactly k edges from the root.
    const long long kUnset = std::numeric_limits<long long>::min();
    std::vector<std::vector<long long>> D(m + 1, std::vector<long long>(m, kUnset));
    D[0][0] = 0;
    for (int k = 1; k <= m; ++k)
        for (const LocalEdge& e : edges)
            if (D[k - 1][e.from] != kUnset)
                D[k][e.to] = std::max(D[k][e.to], D[k - 1][e.from] + e.w);

    bool have = false;
    Rational best;
    for (int v = 0; v < m; ++v) {
        if (D[m][v] == kUnset) continue;
        bool inner_have = false;
        Rational inner;
        for (int k = 0; k < m; ++k) {
            if (D[k][v] == kUnset) continue;
            Rational cand(D[m][v] - D[k][v], m - k);
            if (!inner_have || cand < inner) {
                inner = cand;
                inner_have = true;
            }
        }
        assert(inner_have);
        if (!have || inner > best) {
            best = inner;
            have = true;
        }
    }
    assert(have);

    // Witness: reweight by -best; no positive cycles remain and some cycle
    // has weight exactly zero. Longest-walk potentials from the root make
    // that cycle all-tight, so any cycle of tight edges attains the optimum.
    std::vector<Rational> pot(m);
    std::vector<bool> pot_set(m, false);
    pot_set[0] = true;
    for (int round = 0; round < m - 1; ++round) {
        bool changed = false;
        for (const LocalEdge& e : edges) {
            if (!pot_set[e.from]) continue;
            Rational cand = pot[e.from] + Rational(e.w) - best;
            if (!pot_set[e.to] || cand > pot[e.to]) {
                pot[e.to] = cand;
                pot_set[e.to] = true;
                changed = true;
            }
        }
        if (!changed) break;
    }

    std::vector<std::vector<int>> tight(m);
    for (size_t i = 0; i < edges.size(); ++i) {
        const LocalEdge& e = edges[i];
        if (pot_set[e.from] && pot_set[e.to] && pot[e.from] + Rational(e.w) - best == pot[e.to])
            tight[e.from].push_back(static_cast<int>(i));
    }

    // DFS for a cycle in the tight subgraph.
    std::vector<int> color(m, 0);  // 0 white, 1 gray, 2 black
    std::vector<int> via_edge(m, -1), parent(m, -1);
    std::vector<std::pair<int, size_t>> dfs;
    int cycle_head = -1, closing_edge = -1;
    for (int s = 0; s < m && cycle_head == -1; ++s) {
        if (color[s] != 0) continue;
        dfs.push_back({s, 0});
        color[s] = 1;
        while (!dfs.empty() && cycle_head == -1) {
            auto& [v, pos] = dfs.back();
            if (pos < tight[v].size()) {
                int ei = tight[v][pos++];
                int to = edges[ei].to;
                if (color[to] == 0) {
                    color[to] = 1;
                    parent[to] = v;
                    via_edge[to] = ei;
                    dfs.push_back({to, 0});
                } else if (color[to] == 1) {
                    cycle_head = to;
                    closing_edge = ei;
                }
            } else {
                color[v] = 2;
                dfs.pop_back();
            }
        }
        dfs.clear();
    }
    assert(cycle_head != -1);

    std::vector<int> cyc_vertices, cyc_edges;
    cyc_edges.push_back(closing_edge);
    int v = edges[closing_edge].from;
    cyc_vertices.push_back(v);
    while (v != cycle_head) {
        cyc_edges.push_back(via_edge[v]);
        v = parent[v];
        cyc_vertices.push_back(v);
    }
    std::reverse(cyc_vertices.begin(), cyc_vertices.end());
    std::reverse(cyc_edges.begin(), cyc_edges.end());

    SccMeanResult res;
    res.value = best;
    long long total = 0;
    for (int ei : cyc_edges) {
        total += edges[ei].w;
        res.cycle_edges.push_back(edges[ei].id);
    }
    for (int lv : cyc_vertices) res.cycle_vertices.push_back(comp[lv]);
    assert(Rational(total, static_cast<long long>(cyc_edges.size())) == best);
    return res;
}

}  // namespace

std::optional<MeanCycle> extreme_mean_cycle(const WeightedDigraph& g, int dim, Sense sense) {
    if (dim < 0 || dim >= g.dims) throw StructureError("mean-cycle dimension out of range");
    std::vector<bool> reach = reachable_set(g, g.start);

    WeightedDigraph sub;
    sub.vertex_count = g.vertex_count;
    sub.dims = g.dims;
    sub.start = g.start;
    std::vector<int> orig_edge;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (reach[g.edges[e].from]) {
            sub.edges.push_back(g.edges[e]);
            orig_edge.push_back(static_cast<int>(e));
        }
    }

    SccPartition part = sccs(sub);
    const long long sign = sense == Sense::Max ? 1 : -1;
    std::optional<SccMeanResult> best;
    for (size_t c = 0; c < part.components.size(); ++c) {
        if (part.trivial[c]) continue;
        if (!reach[part.components[c][0]]) continue;
        SccMeanResult r = scc_max_mean(sub, part.components[c], dim, sign);
        if (!best || r.value > best->value) best = std::move(r);
    }
    if (!best) return std::nullopt;

    MeanCycle out;
    out.value = sense == Sense::Max ? best->value : -best->value;
    out.vertices = best->cycle_vertices;
    for (int e : best->cycle_edges) out.edges.push_back(orig_edge[e]);
    return out;
}

}  // namespace robusteq
