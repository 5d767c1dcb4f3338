#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

// Emptiness of two-way one-head finite automata by behavior tables: for each
// processed prefix the table holds, per state, which states can exit the
// prefix rightward after entering at its last cell, whether a final state is
// reachable inside, and the forward set of states crossing the boundary from
// runs that started at the initial configuration. Tables form a DFA over the
// alphabet; reachability decides emptiness and yields a shortest witness.

namespace csa {
namespace transforms {

namespace {

using Row = std::vector<std::uint64_t>;

struct BitOps {
    std::size_t words;
    Row make() const { return Row(words, 0); }
    static bool get(const Row& r, int i) { return (r[i >> 6] >> (i & 63)) & 1; }
    static void set(Row& r, int i) { r[i >> 6] |= 1ull << (i & 63); }
    static bool or_into(Row& dst, const Row& src) {
        bool changed = false;
        for (std::size_t w = 0; w < dst.size(); ++w) {
            const std::uint64_t v = dst[w] | src[w];
            if (v != dst[w]) changed = true;
            dst[w] = v;
        }
        return changed;
    }
    static bool intersects(const Row& a, const Row& b) {
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & b[w]) return true;
        return false;
    }
};

struct Table {
    std::vector<Row> ret;  // per entry state: states exiting rightward
    Row acc_ret;           // entry states from which a final is reachable inside
    Row fwd;               // initial-run states crossing the boundary
    bool acc = false;

    std::string key() const {
        std::string k;
        auto put = [&k](const Row& r) {
            k.append(reinterpret_cast<const char*>(r.data()), r.size() * sizeof(std::uint64_t));
        };
        for (const auto& r : ret) put(r);
        put(acc_ret);
        put(fwd);
        k.push_back(acc ? 1 : 0);
        return k;
    }
};

struct Arrow {
    int to;
    int mv;
};

}  // namespace

EmptinessResult two_way_emptiness(const MachineSpec& spec, std::size_t table_cap) {
    if (spec.stack_count != 0 || spec.head_count != 1)
        throw TransformError("two_way_emptiness requires a one-head finite automaton");
    if (spec.sensing_enabled) throw TransformError("two_way_emptiness does not support sensing");

    // Prune to states on some initial -> final graph path; emptiness and the
    // accepted language are unaffected.
    std::map<std::string, int> id;
    for (std::size_t i = 0; i < spec.states.size(); ++i) id[spec.states[i]] = static_cast<int>(i);
    const int n_all = static_cast<int>(spec.states.size());
    std::vector<std::vector<int>> succ(n_all), pred(n_all);
    for (const auto& t : spec.transitions) {
        succ[id.at(t.from)].push_back(id.at(t.to));
        pred[id.at(t.to)].push_back(id.at(t.from));
    }
    auto flood = [&](std::vector<int> seeds, const std::vector<std::vector<int>>& edges) {
        std::vector<bool> mark(n_all, false);
        std::deque<int> bfs;
        for (int s : seeds)
            if (!mark[s]) {
                mark[s] = true;
                bfs.push_back(s);
            }
        while (!bfs.empty()) {
            int cur = bfs.front();
            bfs.pop_front();
            for (int nx : edges[cur])
                if (!mark[nx]) {
                    mark[nx] = true;
                    bfs.push_back(nx);
                }
        }
        return mark;
    };
    const auto reach = flood({id.at(spec.initial_state)}, succ);
    std::vector<int> final_seeds;
    for (const auto& f : spec.final_states) final_seeds.push_back(id.at(f));
    const auto coreach = flood(final_seeds, pred);

    std::vector<int> keep;
    std::vector<int> remap(n_all, -1);
    for (int i = 0; i < n_all; ++i)
        if (reach[i] && coreach[i]) {
            remap[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }
    const int n = static_cast<int>(keep.size());
    EmptinessResult result;
    if (n == 0 || remap[id.at(spec.initial_state)] < 0) return result;  // empty

    // Transition arrows by (state, symbol id); 0 = left marker, 1 = right
    // marker, 2.. = alphabet.
    std::map<Symbol, int> sym_id{{kLeftMarker, 0}, {kRightMarker, 1}};
    for (const auto& a : spec.input_alphabet)
        sym_id.emplace(a, static_cast<int>(sym_id.size()));
    const int n_syms = static_cast<int>(sym_id.size());
    std::vector<std::vector<std::vector<Arrow>>> arrows(
        n, std::vector<std::vector<Arrow>>(n_syms));
    for (const auto& t : spec.transitions) {
        const int from = remap[id.at(t.from)];
        const int to = remap[id.at(t.to)];
        if (from < 0 || to < 0) continue;
        arrows[from][sym_id.at(t.input_guard[0])].push_back({to, t.moves[0]});
    }

    BitOps bits{static_cast<std::size_t>((n + 63) / 64)};
    Row fin = bits.make();
    for (const auto& f : spec.final_states)
        if (remap[id.at(f)] >= 0) BitOps::set(fin, remap[id.at(f)]);

    const int init = remap[id.at(spec.initial_state)];

    // Closure at a cell: from arrival set A, following stationary moves and
    // left-dips resolved by the previous table. Returns reached set, right
    // exits, and whether a final is reachable (inside or via a left dip).
    auto closure = [&](const Row& arrivals, int sym, const Table* prev, Row& exits,
                       bool& acc_found) {
        Row seen = arrivals;
        exits = bits.make();
        acc_found = BitOps::intersects(seen, fin);
        std::deque<int> work;
        for (int q = 0; q < n; ++q)
            if (BitOps::get(seen, q)) work.push_back(q);
        while (!work.empty()) {
            int q = work.front();
            work.pop_front();
            for (const auto& a : arrows[q][sym]) {
                if (a.mv == 1) {
                    BitOps::set(exits, a.to);
                    continue;
                }
                if (a.mv == 0) {
                    if (!BitOps::get(seen, a.to)) {
                        BitOps::set(seen, a.to);
                        if (BitOps::get(fin, a.to)) acc_found = true;
                        work.push_back(a.to);
                    }
                    continue;
                }
                // Left dip: must have a previous cell.
                if (!prev) continue;
                if (BitOps::get(fin, a.to)) acc_found = true;
                if (BitOps::get(prev->acc_ret, a.to)) acc_found = true;
                const Row& ret = prev->ret[a.to];
                for (int p = 0; p < n; ++p) {
                    if (!BitOps::get(ret, p)) continue;
                    if (!BitOps::get(seen, p)) {
                        BitOps::set(seen, p);
                        if (BitOps::get(fin, p)) acc_found = true;
                        work.push_back(p);
                    }
                }
            }
        }
        return seen;
    };

    auto step_table = [&](const Table& prev, int sym) {
        Table next;
        next.ret.resize(n);
        next.acc_ret = bits.make();
        next.acc = prev.acc;
        // Forward part: arrivals from the initial runs.
        {
            Row exits = bits.make();
            bool accf = false;
            closure(prev.fwd, sym, &prev, exits, accf);
            next.fwd = exits;
            next.acc = next.acc || accf;
        }
        for (int p = 0; p < n; ++p) {
            Row arrivals = bits.make();
            BitOps::set(arrivals, p);
            Row exits = bits.make();
            bool accf = false;
            closure(arrivals, sym, &prev, exits, accf);
            next.ret[p] = exits;
            if (accf) BitOps::set(next.acc_ret, p);
        }
        return next;
    };

    // Base table: the left marker cell. Forward holds the initial state (the
    // head materializes at cell 1, which the next step processes).
    Table base;
    base.ret.resize(n);
    base.acc_ret = bits.make();
    base.fwd = bits.make();
    BitOps::set(base.fwd, init);
    for (int p = 0; p < n; ++p) {
        Row arrivals = bits.make();
        BitOps::set(arrivals, p);
        Row exits = bits.make();
        bool accf = false;
        closure(arrivals, 0 /* left marker */, nullptr, exits, accf);
        base.ret[p] = exits;
        if (accf) BitOps::set(base.acc_ret, p);
    }

    auto accepts_after_end = [&](const Table& t) {
        Table closed = step_table(t, 1 /* right marker */);
        return closed.acc;
    };

    std::map<std::string, int> table_ids;
    std::vector<Table> tables{base};
    std::vector<std::pair<int, int>> parent{{-1, -1}};  // (parent table, symbol index)
    table_ids[base.key()] = 0;
    std::deque<int> frontier{0};

    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        if (accepts_after_end(tables[cur])) {
            std::vector<int> syms;
            for (int i = cur; parent[i].first >= 0; i = parent[i].first)
                syms.push_back(parent[i].second);
            std::reverse(syms.begin(), syms.end());
            result.empty = false;
            for (int s : syms) result.witness.push_back(spec.input_alphabet[s]);
            return result;
        }
        for (std::size_t a = 0; a < spec.input_alphabet.size(); ++a) {
            Table next = step_table(tables[cur], 2 + static_cast<int>(a));
            const std::string key = next.key();
            auto it = table_ids.find(key);
            if (it != table_ids.end()) continue;
            if (tables.size() >= table_cap) {
                result.aborted = true;
                result.empty = false;
                return result;
            }
            table_ids.emplace(key, static_cast<int>(tables.size()));
            parent.emplace_back(cur, static_cast<int>(a));
            tables.push_back(std::move(next));
            frontier.push_back(static_cast<int>(tables.size()) - 1);
        }
    }
    return result;
}

}  // namespace transforms
}  // namespace csa
