#pragma once

// Dinic max-flow on a sparse graph with real capacities. Residual
// comparisons use a fixed epsilon so float round-off cannot open
// phantom arcs.

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace tvsc {

class MaxFlowGraph {
public:
    static constexpr double kEps = 1e-12;

    explicit MaxFlowGraph(int node_count)
        : head_(node_count, -1), level_(node_count), iter_(node_count) {}

    int node_count() const { return static_cast<int>(head_.size()); }

    // Adds arc u->v with capacity cap and the reverse arc with capacity 0.
    void add_edge(int u, int v, double cap) {
        arcs_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({u, head_[v], 0.0});
        head_[v] = static_cast<int>(arcs_.size()) - 1;
    }

    double max_flow(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            iter_ = head_;
            double f;
            while ((f = dfs(s, t, std::numeric_limits<double>::infinity())) > kEps)
                flow += f;
        }
        return flow;
    }

    // Nodes reachable from s in the residual graph (the minimal min-cut side).
    std::vector<std::uint8_t> source_side(int s) const {
        std::vector<std::uint8_t> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = arcs_[e].next) {
                if (arcs_[e].cap > kEps && !seen[arcs_[e].to]) {
                    seen[arcs_[e].to] = 1;
                    q.push(arcs_[e].to);
                }
            }
        }
        return seen;
    }

    // Nodes that can reach t in the residual graph (the complement is the
    // maximal min-cut source side).
    std::vector<std::uint8_t> sink_side(int t) const {
        // arc e and e^1 are mutual reverses: u can step to v iff residual
        // capacity of (u,v) is positive, i.e. cap of the arc stored at v's
        // reverse list entry. Walk arcs backwards: from t follow incoming
        // residual arcs, which are the reverses of outgoing ones.
        std::vector<std::uint8_t> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(t);
        seen[t] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int e = head_[v]; e != -1; e = arcs_[e].next) {
                // arc e: v->w. The paired arc (e^1): w->v has residual cap
                // arcs_[e^1].cap; w reaches t through it.
                const int w = arcs_[e].to;
                if (arcs_[e ^ 1].cap > kEps && !seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        int next;
        double cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = arcs_[e].next) {
                if (arcs_[e].cap > kEps && level_[arcs_[e].to] < 0) {
                    level_[arcs_[e].to] = level_[u] + 1;
                    q.push(arcs_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    double dfs(int u, int t, double f) {
        if (u == t) return f;
        for (int& e = iter_[u]; e != -1; e = arcs_[e].next) {
            Arc& a = arcs_[e];
            if (a.cap > kEps && level_[a.to] == level_[u] + 1) {
                const double d = dfs(a.to, t, std::min(f, a.cap));
                if (d > kEps) {
                    a.cap -= d;
                    arcs_[e ^ 1].cap += d;
                    return d;
                }
            }
        }
        return 0.0;
    }

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

} // namespace tvsc
