#pragma once

// The FTTC algorithm: a trading graph over subagents i_h and houses,
// repeated deletion of non-good absorbing sets, attractor distances,
// pointer-based cycle selection under dual tie-breaking, and alpha-trades.

#include "fttc/market.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fttc {

struct TieBreak {
    // Permutations of agent / house indices, highest priority first.
    std::vector<int> agents;
    std::vector<int> houses;

    static TieBreak input_order(const HousingMarket& market);
};

constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Graph vertices: subagent (agent, house) pairs and houses. A subagent
/// exists exactly while its house is in the graph; ownership weights live in
/// the running assignment (w(h, i_h) = x(i)(h) for houses still in the graph).
class TradeGraph {
public:
    TradeGraph(const HousingMarket& market, TieBreak tiebreak);

    int n() const { return n_; }
    int m() const { return m_; }
    bool house_alive(int h) const { return house_alive_[h] != 0; }
    int alive_house_count() const { return alive_houses_; }
    bool empty() const { return alive_houses_ == 0; }

    const Matrix& assignment() const { return x_; }
    const Rational& weight(int agent, int house) const { return x_[agent][house]; }

    /// Maximally preferred remaining class of an agent (desire targets of all
    /// its subagents).
    const std::vector<int>& max_class(int agent) const { return max_class_[agent]; }

    bool is_attractor(int agent, int house) const;
    bool has_attractor() const;

    // Vertex ids: subagent (i, h) -> i * m + h; house h -> n * m + h.
    int subagent_vertex(int agent, int house) const { return agent * m_ + house; }
    int house_vertex(int house) const { return n_ * m_ + house; }
    bool is_house_vertex(int v) const { return v >= n_ * m_; }
    std::string vertex_name(int v) const;

    /// Shortest directed distance from every vertex to an attractor
    /// (attractor subagents at 0, kUnreachable when no path exists).
    std::vector<int> compute_distances() const;

    /// Strongly connected components with no outgoing arc, over the current
    /// graph. Each set lists vertex ids.
    std::vector<std::vector<int>> absorbing_sets() const;

    /// An absorbing set is non-good when it contains no attractor subagent;
    /// its allocation is final.
    bool is_non_good(const std::vector<int>& component) const;

    /// Removes non-good absorbing sets (and the subagents of removed houses)
    /// until none remain. Returns one entry per pass: the houses deleted.
    std::vector<std::vector<int>> delete_non_good();

    struct Cycle {
        std::vector<int> vertices;  // alternating house / subagent, house first
        Rational alpha;
    };

    /// Pointer selection per the dual tie-break; follows pointers from each
    /// attractor and returns the vertex-disjoint good cycles found.
    /// Precondition: no non-good absorbing set remains.
    /// With an rng, ties among minimum-distance candidates are broken
    /// uniformly at random instead of by the deterministic keys; used by the
    /// stabilizing restarts in fttc_run.
    std::vector<Cycle> select_cycles(std::mt19937_64* rng = nullptr) const;

    /// Moves alpha units around the cycle and drops zero-weight edges.
    void execute_trade(const Cycle& cycle);

private:
    void refresh_max_classes();

    const HousingMarket* market_;
    TieBreak tiebreak_;
    std::vector<int> agent_rank_;  // agent index -> priority rank (0 best)
    std::vector<int> house_rank_;
    int n_;
    int m_;
    std::vector<std::vector<int>> pref_rank_;   // agent x house -> class index
    std::vector<char> house_alive_;
    int alive_houses_;
    Matrix x_;
    std::vector<std::vector<int>> max_class_;
    std::vector<int> min_rank_;  // rank of the maximal remaining class
    bool plain_keys_;            // classical mode: priority-only tie resolution
};

struct TraceEvent {
    enum class Kind { DeletionPass, Trade };
    Kind kind;
    std::vector<std::string> vertices;  // removed houses, or the cycle
    Rational alpha;                     // trades only
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct FttcResult {
    Assignment assignment;
    int trades = 0;
    int deletion_passes = 0;
    // Randomized re-executions taken before a core-stable run was found
    // (0 when the deterministic pass already verifies).
    int restarts = 0;
};

FttcResult fttc_run(const HousingMarket& market, const TieBreak& tiebreak,
                    const TraceSink& trace = nullptr);

Assignment fttc(const HousingMarket& market, const TieBreak& tiebreak);
Assignment fttc(const HousingMarket& market);

}  // namespace fttc
