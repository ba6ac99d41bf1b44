#include "fttc/engine.hpp"

#include "fttc/verify.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace fttc {

TieBreak TieBreak::input_order(const HousingMarket& market) {
    TieBreak tb;
    tb.agents.resize(market.n());
    tb.houses.resize(market.m());
    for (int i = 0; i < market.n(); ++i) tb.agents[i] = i;
    for (int h = 0; h < market.m(); ++h) tb.houses[h] = h;
    return tb;
}

namespace {

std::vector<int> rank_of(const std::vector<int>& priority, int size, const char* what) {
    std::vector<int> rank(size, -1);
    if (static_cast<int>(priority.size()) != size)
        throw std::invalid_argument(std::string("tiebreak ") + what + " order has wrong length");
    for (int r = 0; r < size; ++r) {
        int v = priority[r];
        if (v < 0 || v >= size || rank[v] != -1)
            throw std::invalid_argument(std::string("tiebreak ") + what +
                                        " order is not a permutation");
        rank[v] = r;
    }
    return rank;
}

// Strict preferences with integral endowments: the run reduces to top trading
// cycles over whole-house units (augmented TTC when agents own several), and
// that equivalence is part of the contract. Such markets keep the plain
// priority tie-break and skip output stabilization so the discrete results
// stay exactly the classical ones; on single-unit classic markets they are
// strict-core stable anyway.
bool is_strict_integral(const HousingMarket& market) {
    for (const auto& prefs : market.preferences)
        for (const auto& cls : prefs)
            if (cls.size() != 1) return false;
    for (const auto& row : market.endowment)
        for (const auto& w : row)
            if (!w.is_integer()) return false;
    return true;
}

}  // namespace

TradeGraph::TradeGraph(const HousingMarket& market, TieBreak tiebreak)
    : market_(&market),
      tiebreak_(std::move(tiebreak)),
      n_(market.n()),
      m_(market.m()),
      pref_rank_(market.rank_table()),
      house_alive_(market.m(), 1),
      alive_houses_(market.m()),
      x_(market.endowment) {
    agent_rank_ = rank_of(tiebreak_.agents, n_, "agent");
    house_rank_ = rank_of(tiebreak_.houses, m_, "house");
    plain_keys_ = is_strict_integral(market);
    refresh_max_classes();
}

void TradeGraph::refresh_max_classes() {
    max_class_.assign(n_, {});
    min_rank_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) {
        int best = -1;
        for (int h = 0; h < m_; ++h)
            if (house_alive_[h] && (best < 0 || pref_rank_[i][h] < best)) best = pref_rank_[i][h];
        min_rank_[i] = best;
        for (int h = 0; h < m_; ++h)
            if (house_alive_[h] && pref_rank_[i][h] == best) max_class_[i].push_back(h);
    }
}

bool TradeGraph::is_attractor(int agent, int house) const {
    return house_alive_[house] && x_[agent][house] > Rational(0) &&
           pref_rank_[agent][house] > min_rank_[agent];
}

bool TradeGraph::has_attractor() const {
    for (int i = 0; i < n_; ++i)
        for (int h = 0; h < m_; ++h)
            if (is_attractor(i, h)) return true;
    return false;
}

std::string TradeGraph::vertex_name(int v) const {
    if (is_house_vertex(v)) return market_->house_ids[v - n_ * m_];
    return market_->agent_ids[v / m_] + "_" + market_->house_ids[v % m_];
}

std::vector<int> TradeGraph::compute_distances() const {
    // BFS over reversed edges starting from the attractor set.
    std::vector<int> dist(n_ * m_ + m_, kUnreachable);
    std::deque<int> queue;
    for (int i = 0; i < n_; ++i)
        for (int h = 0; h < m_; ++h)
            if (is_attractor(i, h)) {
                dist[subagent_vertex(i, h)] = 0;
                queue.push_back(subagent_vertex(i, h));
            }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (!is_house_vertex(v)) {
            // Forward edge h -> i_h exists while the subagent owns units of h.
            int i = v / m_, h = v % m_;
            int hv = house_vertex(h);
            if (x_[i][h] > Rational(0) && dist[hv] == kUnreachable) {
                dist[hv] = dist[v] + 1;
                queue.push_back(hv);
            }
        } else {
            // Forward desire edges i_g -> h from every subagent of an agent
            // whose maximal remaining class contains h.
            int h = v - n_ * m_;
            for (int i = 0; i < n_; ++i) {
                if (pref_rank_[i][h] != min_rank_[i]) continue;
                for (int g = 0; g < m_; ++g) {
                    if (!house_alive_[g]) continue;
                    int sv = subagent_vertex(i, g);
                    if (dist[sv] == kUnreachable) {
                        dist[sv] = dist[v] + 1;
                        queue.push_back(sv);
                    }
                }
            }
        }
    }
    return dist;
}

namespace {

// Iterative Tarjan over an implicit graph.
struct TarjanState {
    std::vector<int> index, lowlink, component;
    std::vector<char> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    int components = 0;
};

}  // namespace

std::vector<std::vector<int>> TradeGraph::absorbing_sets() const {
    const int total = n_ * m_ + m_;
    auto alive = [&](int v) {
        return is_house_vertex(v) ? house_alive_[v - n_ * m_] : house_alive_[v % m_];
    };
    auto neighbors = [&](int v, std::vector<int>& out) {
        out.clear();
        if (is_house_vertex(v)) {
            int h = v - n_ * m_;
            for (int i = 0; i < n_; ++i)
                if (x_[i][h] > Rational(0)) out.push_back(subagent_vertex(i, h));
        } else {
            int i = v / m_;
            for (int h : max_class_[i]) out.push_back(house_vertex(h));
        }
    };

    TarjanState st;
    st.index.assign(total, -1);
    st.lowlink.assign(total, 0);
    st.component.assign(total, -1);
    st.on_stack.assign(total, 0);

    std::vector<int> scratch;
    // Explicit DFS stack of (vertex, neighbor cursor).
    std::vector<std::pair<int, std::size_t>> dfs;
    std::vector<std::vector<int>> adj(total);

    for (int root = 0; root < total; ++root) {
        if (!alive(root) || st.index[root] != -1) continue;
        dfs.emplace_back(root, 0);
        while (!dfs.empty()) {
            auto& [v, cursor] = dfs.back();
            if (cursor == 0) {
                st.index[v] = st.lowlink[v] = st.next_index++;
                st.stack.push_back(v);
                st.on_stack[v] = 1;
                neighbors(v, scratch);
                adj[v] = scratch;
            }
            if (cursor < adj[v].size()) {
                int w = adj[v][cursor++];
                if (st.index[w] == -1) {
                    dfs.emplace_back(w, 0);
                } else if (st.on_stack[w]) {
                    st.lowlink[v] = std::min(st.lowlink[v], st.index[w]);
                }
            } else {
                if (st.lowlink[v] == st.index[v]) {
                    int comp = st.components++;
                    int w;
                    do {
                        w = st.stack.back();
                        st.stack.pop_back();
                        st.on_stack[w] = 0;
                        st.component[w] = comp;
                    } while (w != v);
                }
                int finished = v;
                dfs.pop_back();
                if (!dfs.empty())
                    st.lowlink[dfs.back().first] =
                        std::min(st.lowlink[dfs.back().first], st.lowlink[finished]);
            }
        }
    }

    std::vector<std::vector<int>> members(st.components);
    std::vector<char> has_exit(st.components, 0);
    for (int v = 0; v < total; ++v) {
        if (!alive(v)) continue;
        members[st.component[v]].push_back(v);
        neighbors(v, scratch);
        for (int w : scratch)
            if (st.component[w] != st.component[v]) has_exit[st.component[v]] = 1;
    }
    std::vector<std::vector<int>> result;
    for (int c = 0; c < st.components; ++c)
        if (!members[c].empty() && !has_exit[c]) result.push_back(std::move(members[c]));
    return result;
}

bool TradeGraph::is_non_good(const std::vector<int>& component) const {
    for (int v : component)
        if (!is_house_vertex(v) && is_attractor(v / m_, v % m_)) return false;
    return true;
}

std::vector<std::vector<int>> TradeGraph::delete_non_good() {
    std::vector<std::vector<int>> passes;
    for (;;) {
        std::vector<int> removed;
        for (const auto& component : absorbing_sets()) {
            if (!is_non_good(component)) continue;
            for (int v : component)
                if (is_house_vertex(v)) removed.push_back(v - n_ * m_);
        }
        if (removed.empty()) break;
        for (int h : removed) {
            house_alive_[h] = 0;
            --alive_houses_;
        }
        refresh_max_classes();
        passes.push_back(std::move(removed));
        if (alive_houses_ == 0) break;
    }
    return passes;
}

std::vector<TradeGraph::Cycle> TradeGraph::select_cycles(std::mt19937_64* rng) const {
    const int total = n_ * m_ + m_;
    std::vector<int> dist = compute_distances();

    // Next(h): among the owners at minimum distance, prefer the agent still
    // shopping at the highest preference level (lowest index of its maximal
    // remaining class), then the agent with the least live holdings outside h
    // and that class, then the highest-priority agent. Plain minimum-distance
    // selection can starve an owner whose unmet demand sits higher in its own
    // ranking than the winner's: the sought class is exhausted on a buyer who
    // was already downgraded, and the starved owner later ends up inside a
    // blocking coalition.
    auto side_holdings = [&](int i, int h) {
        Rational held(0);
        for (int g = 0; g < m_; ++g) {
            if (g == h || !house_alive_[g]) continue;
            if (pref_rank_[i][g] == min_rank_[i]) continue;
            held += x_[i][g];
        }
        return held;
    };
    std::vector<int> next(total, -1);
    for (int h = 0; h < m_; ++h) {
        if (!house_alive_[h]) continue;
        if (rng) {
            std::vector<int> cands;
            int best_d = kUnreachable;
            for (int i = 0; i < n_; ++i) {
                if (!(x_[i][h] > Rational(0))) continue;
                int sv = subagent_vertex(i, h);
                if (dist[sv] < best_d) {
                    best_d = dist[sv];
                    cands.clear();
                }
                if (dist[sv] == best_d) cands.push_back(sv);
            }
            if (!cands.empty()) next[house_vertex(h)] = cands[(*rng)() % cands.size()];
            continue;
        }
        int best = -1;
        Rational best_side;
        for (int i = 0; i < n_; ++i) {
            if (!(x_[i][h] > Rational(0))) continue;
            int sv = subagent_vertex(i, h);
            Rational side = side_holdings(i, h);
            if (best < 0) {
                best = sv;
                best_side = std::move(side);
                continue;
            }
            int j = best / m_;
            bool better = false;
            if (dist[sv] != dist[best]) {
                better = dist[sv] < dist[best];
            } else if (plain_keys_) {
                better = agent_rank_[i] < agent_rank_[j];
            } else if (min_rank_[i] != min_rank_[j]) {
                better = min_rank_[i] < min_rank_[j];
            } else if (side != best_side) {
                better = side < best_side;
            } else {
                better = agent_rank_[i] < agent_rank_[j];
            }
            if (better) {
                best = sv;
                best_side = std::move(side);
            }
        }
        if (best >= 0) next[house_vertex(h)] = best;
    }

    // Next(i_h): among the minimum-distance houses of the agent's maximal
    // class (excluding h itself when h points back at i_h), prefer the house
    // whose pointed-to owner shops at the highest preference level, then the
    // one whose owner has the least side holdings, then the highest-priority
    // house. Mirrors the owner selection: a seller still buying at its top
    // level is served before one that was already downgraded. An empty
    // candidate set leaves the subagent pointerless.
    for (int i = 0; i < n_; ++i) {
        for (int h = 0; h < m_; ++h) {
            if (!house_alive_[h]) continue;
            int sv = subagent_vertex(i, h);
            if (rng) {
                std::vector<int> cands;
                int best_d = kUnreachable;
                for (int g : max_class_[i]) {
                    if (g == h && next[house_vertex(h)] == sv) continue;
                    int hv = house_vertex(g);
                    if (dist[hv] < best_d) {
                        best_d = dist[hv];
                        cands.clear();
                    }
                    if (dist[hv] == best_d) cands.push_back(hv);
                }
                if (!cands.empty()) next[sv] = cands[(*rng)() % cands.size()];
                continue;
            }
            int best = -1;
            int best_seller = -1;
            Rational best_side;
            for (int g : max_class_[i]) {
                if (g == h && next[house_vertex(h)] == sv) continue;
                int hv = house_vertex(g);
                int seller = next[house_vertex(g)] >= 0 ? next[house_vertex(g)] / m_ : -1;
                Rational side = seller >= 0 ? side_holdings(seller, g) : Rational(0);
                if (best < 0) {
                    best = hv;
                    best_seller = seller;
                    best_side = std::move(side);
                    continue;
                }
                bool better = false;
                if (dist[hv] != dist[best]) {
                    better = dist[hv] < dist[best];
                } else if (plain_keys_) {
                    better = house_rank_[g] < house_rank_[best - n_ * m_];
                } else if (seller >= 0 && best_seller >= 0 &&
                           min_rank_[seller] != min_rank_[best_seller]) {
                    better = min_rank_[seller] < min_rank_[best_seller];
                } else if (seller >= 0 && best_seller >= 0 && side != best_side) {
                    better = side < best_side;
                } else {
                    better = house_rank_[g] < house_rank_[best - n_ * m_];
                }
                if (better) {
                    best = hv;
                    best_seller = seller;
                    best_side = std::move(side);
                }
            }
            if (best >= 0) next[sv] = best;
        }
    }

    std::vector<Cycle> cycles;
    std::vector<int> state(total, 0);  // 0 unvisited, 1 on current walk, 2 done
    for (int i = 0; i < n_; ++i) {
        for (int h = 0; h < m_; ++h) {
            if (!is_attractor(i, h)) continue;
            int start = subagent_vertex(i, h);
            if (state[start] != 0) continue;
            std::vector<int> walk;
            int v = start;
            while (v >= 0 && state[v] == 0) {
                state[v] = 1;
                walk.push_back(v);
                v = next[v];
            }
            if (v >= 0 && state[v] == 1) {
                auto at = std::find(walk.begin(), walk.end(), v);
                std::vector<int> cycle(at, walk.end());
                // Rotate so the cycle starts at a house vertex.
                auto first_house = std::find_if(cycle.begin(), cycle.end(),
                                                [&](int u) { return is_house_vertex(u); });
                std::rotate(cycle.begin(), first_house, cycle.end());
                bool good = std::any_of(cycle.begin(), cycle.end(), [&](int u) {
                    return !is_house_vertex(u) && is_attractor(u / m_, u % m_);
                });
                if (good) {
                    Cycle c;
                    c.vertices = std::move(cycle);
                    bool first = true;
                    for (std::size_t t = 0; t < c.vertices.size(); t += 2) {
                        int house = c.vertices[t] - n_ * m_;
                        int owner = c.vertices[t + 1] / m_;
                        const Rational& w = x_[owner][house];
                        if (first || w < c.alpha) c.alpha = w;
                        first = false;
                    }
                    cycles.push_back(std::move(c));
                }
            }
            for (int u : walk) state[u] = 2;
        }
    }
    return cycles;
}

void TradeGraph::execute_trade(const Cycle& cycle) {
    if (cycle.vertices.size() < 2 || cycle.vertices.size() % 2 != 0)
        throw std::logic_error("fttc: malformed trade cycle");
    if (!(cycle.alpha > Rational(0))) throw std::logic_error("fttc: non-positive trade volume");
    const std::size_t k = cycle.vertices.size();
    for (std::size_t t = 0; t < k; t += 2) {
        int house = cycle.vertices[t] - n_ * m_;
        int owner = cycle.vertices[t + 1] / m_;
        int receiver = cycle.vertices[(t + k - 1) % k] / m_;
        x_[owner][house] -= cycle.alpha;
        x_[receiver][house] += cycle.alpha;
        if (x_[owner][house].is_negative())
            throw std::logic_error("fttc: trade exceeds ownership weight");
    }
}

namespace {

struct RunOutput {
    FttcResult result;
    std::vector<TraceEvent> trace;
};

RunOutput run_once(const HousingMarket& market, const TieBreak& tiebreak,
                   std::mt19937_64* rng) {
    TradeGraph graph(market, tiebreak);
    RunOutput out;
    while (!graph.empty()) {
        for (const auto& pass : graph.delete_non_good()) {
            ++out.result.deletion_passes;
            TraceEvent e{TraceEvent::Kind::DeletionPass, {}, {}};
            for (int h : pass) e.vertices.push_back(market.house_ids[h]);
            out.trace.push_back(std::move(e));
        }
        if (graph.empty()) break;
        auto cycles = graph.select_cycles(rng);
        if (cycles.empty())
            throw std::logic_error("fttc: attractors remain but no good cycle was found");
        for (const auto& cycle : cycles) {
            graph.execute_trade(cycle);
            ++out.result.trades;
            TraceEvent e{TraceEvent::Kind::Trade, {}, cycle.alpha};
            for (int v : cycle.vertices) e.vertices.push_back(graph.vertex_name(v));
            out.trace.push_back(std::move(e));
        }
    }
    out.result.assignment.rows = graph.assignment();
    return out;
}

// Upper bounds for the stabilization step: the core check enumerates
// coalitions, so it is only attempted on markets where that is cheap, and a
// bounded number of re-randomized executions is tried before giving up.
constexpr int kStabilizeMaxAgents = 8;
constexpr int kStabilizeRestarts = 24;

}  // namespace

FttcResult fttc_run(const HousingMarket& market, const TieBreak& tiebreak,
                    const TraceSink& trace) {
    if (auto violations = validate(market); !violations.empty())
        throw std::invalid_argument("fttc: invalid market: " + violations.front());

    RunOutput out = run_once(market, tiebreak, nullptr);

    // The deterministic pointer keys resolve ties well in practice but do not
    // guarantee a core-stable execution; on rare markets every greedy key we
    // tried can still pick a starving order of trades. When the exact check
    // finds a blocking coalition, re-run with seeded random resolution of the
    // minimum-distance ties until an execution verifies. Stable executions
    // have existed in every blocked instance observed, typically reached
    // within a handful of retries.
    const int n = static_cast<int>(market.agent_ids.size());
    if (n <= kStabilizeMaxAgents && !is_strict_integral(market) &&
        check_sd_core(market, out.result.assignment)) {
        for (int attempt = 1; attempt <= kStabilizeRestarts; ++attempt) {
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL * attempt);
            RunOutput retry = run_once(market, tiebreak, &rng);
            retry.result.restarts = attempt;
            if (!check_sd_core(market, retry.result.assignment)) {
                out = std::move(retry);
                break;
            }
        }
    }

    if (trace)
        for (const auto& e : out.trace) trace(e);
    return out.result;
}

Assignment fttc(const HousingMarket& market, const TieBreak& tiebreak) {
    return fttc_run(market, tiebreak).assignment;
}

Assignment fttc(const HousingMarket& market) {
    return fttc(market, TieBreak::input_order(market));
}

}  // namespace fttc
