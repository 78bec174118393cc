#include "pdef/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace pdef {

std::size_t AttackDag::edge_count() const {
    std::size_t e = 0;
    for (const auto& o : out) e += o.size();
    return e;
}

bool AttackDag::has_edge(std::size_t from, std::size_t to) const {
    return std::binary_search(out[from].begin(), out[from].end(), to);
}

AttackDag build_dag(const AttackSequence& attacks, double v) {
    if (!(v > 0.0)) throw std::invalid_argument("build_dag: speed must be positive");
    AttackDag dag;
    dag.n = attacks.size();
    dag.out.resize(dag.n);
    for (std::size_t j = 0; j < dag.n; ++j) {
        for (std::size_t k = j + 1; k < dag.n; ++k) {
            const Attack& a = attacks[j];
            const Attack& b = attacks[k];
            if (dist(a.location, b.location) <= v * (b.time - a.time)) dag.out[j].push_back(k);
        }
    }
    return dag;
}

BipartiteGraph split_graph(const AttackDag& dag) {
    return {dag.n, dag.n, dag.out};
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

struct HopcroftKarp {
    const BipartiteGraph& g;
    Matching m;
    std::vector<std::size_t> layer;
    std::vector<std::size_t> next_edge;

    explicit HopcroftKarp(const BipartiteGraph& graph) : g(graph) {
        m.match_left.assign(g.n_left, -1);
        m.match_right.assign(g.n_right, -1);
        layer.assign(g.n_left, kInf);
        next_edge.assign(g.n_left, 0);
    }

    // Layers free left vertices at 0; true if some free right vertex is reachable.
    bool bfs() {
        std::deque<std::size_t> queue;
        for (std::size_t u = 0; u < g.n_left; ++u) {
            if (m.match_left[u] < 0) {
                layer[u] = 0;
                queue.push_back(u);
            } else {
                layer[u] = kInf;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t r : g.adj[u]) {
                const long w = m.match_right[r];
                if (w < 0) {
                    found = true;
                } else if (layer[static_cast<std::size_t>(w)] == kInf) {
                    layer[static_cast<std::size_t>(w)] = layer[u] + 1;
                    queue.push_back(static_cast<std::size_t>(w));
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (std::size_t& e = next_edge[u]; e < g.adj[u].size(); ++e) {
            const std::size_t r = g.adj[u][e];
            const long w = m.match_right[r];
            if (w < 0 || (layer[static_cast<std::size_t>(w)] == layer[u] + 1 &&
                          dfs(static_cast<std::size_t>(w)))) {
                m.match_left[u] = static_cast<long>(r);
                m.match_right[r] = static_cast<long>(u);
                ++e;
                return true;
            }
        }
        layer[u] = kInf;
        return false;
    }

    Matching run() {
        while (bfs()) {
            std::fill(next_edge.begin(), next_edge.end(), 0);
            for (std::size_t u = 0; u < g.n_left; ++u) {
                if (m.match_left[u] < 0 && dfs(u)) ++m.size;
            }
        }
        return std::move(m);
    }
};

}  // namespace

Matching hopcroft_karp(const BipartiteGraph& graph) {
    for (const auto& nbrs : graph.adj) {
        for (std::size_t r : nbrs) {
            if (r >= graph.n_right) throw std::invalid_argument("bipartite edge out of range");
        }
    }
    return HopcroftKarp(graph).run();
}

std::size_t max_matching(const BipartiteGraph& graph) {
    return hopcroft_karp(graph).size;
}

PathCover min_path_cover(const AttackSequence& attacks, double v) {
    if (attacks.empty()) throw std::invalid_argument("min_path_cover: attack list is empty");
    const AttackDag dag = build_dag(attacks, v);
    const Matching matching = hopcroft_karp(split_graph(dag));

    PathCover cover;
    cover.defenders = dag.n - matching.size;
    // Each in-copy left unmatched starts a path; follow matched out-edges forward.
    for (std::size_t start = 0; start < dag.n; ++start) {
        if (matching.match_right[start] >= 0) continue;
        std::vector<std::size_t> path;
        for (long u = static_cast<long>(start); u >= 0; u = matching.match_left[static_cast<std::size_t>(u)]) {
            path.push_back(static_cast<std::size_t>(u) + 1);
        }
        cover.paths.push_back(std::move(path));
    }
    return cover;
}

std::size_t min_defenders(const AttackSequence& attacks, double v) {
    return min_path_cover(attacks, v).defenders;
}

AlphaFit alpha_estimate(std::span<const AlphaPoint> points) {
    std::vector<double> xs;
    std::vector<double> ys;
    AlphaFit fit;
    for (const auto& p : points) {
        if (!(p.mean_m > 1.0) || !(p.v > 0.0)) {
            ++fit.points_dropped;
            continue;
        }
        xs.push_back(std::log(p.v));
        ys.push_back(std::log(p.mean_m - 1.0));
    }
    fit.points_used = xs.size();
    if (fit.points_used < 3) {
        throw std::invalid_argument("alpha_estimate: need at least 3 points with mean M > 1");
    }
    const auto count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("alpha_estimate: speeds must not all be equal");
    const double slope = sxy / sxx;
    fit.alpha = -slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace pdef
