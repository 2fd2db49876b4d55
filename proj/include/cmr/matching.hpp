#ifndef CMR_MATCHING_HPP
#define CMR_MATCHING_HPP

#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

namespace cmr {

// Hopcroft-Karp maximum bipartite matching.
// adj[u] lists right-side neighbors of left vertex u.
inline std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t n_right) {
    const std::size_t n_left = adj.size();
    const std::size_t NIL = static_cast<std::size_t>(-1);
    const std::size_t INF = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_l(n_left, NIL), match_r(n_right, NIL), dist(n_left);

    auto bfs = [&]() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < n_left; ++u) {
            if (match_l[u] == NIL) { dist[u] = 0; q.push(u); }
            else dist[u] = INF;
        }
        while (!q.empty()) {
            std::size_t u = q.front(); q.pop();
            for (std::size_t v : adj[u]) {
                std::size_t w = match_r[v];
                if (w == NIL) found = true;
                else if (dist[w] == INF) { dist[w] = dist[u] + 1; q.push(w); }
            }
        }
        return found;
    };

    std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
        for (std::size_t v : adj[u]) {
            std::size_t w = match_r[v];
            if (w == NIL || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = INF;
        return false;
    };

    std::size_t matched = 0;
    while (bfs())
        for (std::size_t u = 0; u < n_left; ++u)
            if (match_l[u] == NIL && dfs(u)) ++matched;
    return matched;
}

}  // namespace cmr

#endif
