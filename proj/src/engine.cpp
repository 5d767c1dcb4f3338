#include "csa/engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace csa {
namespace engine {

namespace {

void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

std::size_t RunConfigHash::operator()(const RunConfig& c) const {
    std::size_t seed = std::hash<int>{}(c.state);
    for (int h : c.heads) hash_combine(seed, std::hash<int>{}(h));
    for (const auto& s : c.stacks) {
        hash_combine(seed, std::hash<int>{}(s.cursor));
        hash_combine(seed, std::hash<bool>{}(s.reading));
        for (int sym : s.content) hash_combine(seed, std::hash<int>{}(sym));
    }
    return seed;
}

CompiledMachine::CompiledMachine(const MachineSpec& spec) : spec_(spec) {
    ValidationReport report = validate_spec(spec);
    if (!report.ok()) {
        std::string msg = "invalid machine:";
        for (const auto& v : report.violations) {
            msg += " [";
            if (v.transition_index >= 0) msg += "t" + std::to_string(v.transition_index) + ": ";
            msg += v.message + "]";
        }
        throw std::invalid_argument(msg);
    }
    r_ = spec.head_count;
    k_ = spec.stack_count;

    state_names_ = spec.states;
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        state_ids_[state_names_[i]] = static_cast<int>(i);
    initial_ = state_ids_.at(spec.initial_state);
    final_.assign(state_names_.size(), false);
    for (const auto& f : spec.final_states) final_[state_ids_.at(f)] = true;

    input_names_ = {kLeftMarker, kRightMarker};
    for (const auto& s : spec.input_alphabet) input_names_.push_back(s);
    for (std::size_t i = 0; i < input_names_.size(); ++i)
        input_ids_[input_names_[i]] = static_cast<int>(i);

    stack_names_.resize(k_);
    stack_ids_.resize(k_);
    for (int j = 0; j < k_; ++j) {
        stack_names_[j] = {kStackBottom, kStackTop};
        for (const auto& s : spec.stack_alphabets[j]) stack_names_[j].push_back(s);
        for (std::size_t i = 0; i < stack_names_[j].size(); ++i)
            stack_ids_[j][stack_names_[j][i]] = static_cast<int>(i);
    }

    transitions_.reserve(spec.transitions.size());
    for (std::size_t t = 0; t < spec.transitions.size(); ++t) {
        const Transition& tr = spec.transitions[t];
        CTransition ct;
        ct.index = static_cast<int>(t);
        ct.from = state_ids_.at(tr.from);
        ct.to = state_ids_.at(tr.to);
        for (const auto& s : tr.input_guard) ct.input_guard.push_back(input_ids_.at(s));
        for (int j = 0; j < k_; ++j) ct.stack_guard.push_back(stack_ids_[j].at(tr.stack_guard[j]));
        for (int j = 0; j < k_; ++j) {
            const StackAction& a = tr.actions[j];
            CAction ca{a.op, -1};
            if (a.op == StackOp::kPush) ca.symbol = stack_ids_[j].at(a.symbol);
            ct.actions.push_back(ca);
        }
        ct.moves = tr.moves;
        ct.sense = tr.sense;
        table_[pack_key(ct.from, ct.input_guard, ct.stack_guard)].push_back(
            static_cast<int>(transitions_.size()));
        transitions_.push_back(std::move(ct));
    }
}

std::string CompiledMachine::pack_key(int state, const std::vector<int>& in_syms,
                                      const std::vector<int>& stk_syms) const {
    std::string key;
    key.reserve((2 + in_syms.size() + stk_syms.size()) * sizeof(int));
    auto put = [&key](int v) {
        key.append(reinterpret_cast<const char*>(&v), sizeof(int));
    };
    put(state);
    for (int v : in_syms) put(v);
    for (int v : stk_syms) put(v);
    return key;
}

int CompiledMachine::input_symbol_id(const Symbol& s) const {
    auto it = input_ids_.find(s);
    if (it == input_ids_.end()) throw std::invalid_argument("symbol '" + s + "' not in input alphabet");
    return it->second;
}

int CompiledMachine::stack_symbol_id(int stack, const Symbol& s) const {
    auto it = stack_ids_[stack].find(s);
    if (it == stack_ids_[stack].end())
        throw std::invalid_argument("symbol '" + s + "' not in stack alphabet");
    return it->second;
}

const std::vector<int>& CompiledMachine::lookup(int state, const std::vector<int>& in_syms,
                                                const std::vector<int>& stk_syms) const {
    static const std::vector<int> kEmpty;
    auto it = table_.find(pack_key(state, in_syms, stk_syms));
    return it == table_.end() ? kEmpty : it->second;
}

std::vector<int> CompiledMachine::intern_word(const Word& word) const {
    std::vector<int> out;
    out.reserve(word.size());
    for (const auto& s : word) {
        int id = input_symbol_id(s);
        if (id < 2) throw std::invalid_argument("end-marker inside input word");
        out.push_back(id);
    }
    return out;
}

RunConfig initial_config(const CompiledMachine& m, const std::vector<int>& word) {
    (void)word;
    RunConfig c;
    c.state = m.initial_state();
    c.heads.assign(m.head_count(), 1);
    c.stacks.resize(m.stack_count());
    return c;
}

Configuration to_public(const CompiledMachine& m, const RunConfig& c) {
    Configuration out;
    out.state = m.state_name(c.state);
    out.head_positions = c.heads;
    out.stacks.resize(c.stacks.size());
    for (std::size_t j = 0; j < c.stacks.size(); ++j) {
        const auto& s = c.stacks[j];
        out.stacks[j].cursor = s.cursor;
        out.stacks[j].phase = s.reading ? StackPhase::kReading : StackPhase::kWriting;
        for (int sym : s.content)
            out.stacks[j].content.push_back(m.stack_symbol(static_cast<int>(j), sym));
    }
    return out;
}

RunConfig from_public(const CompiledMachine& m, const Configuration& c, std::size_t word_length) {
    RunConfig out;
    bool found = false;
    for (int i = 0; i < m.state_count(); ++i) {
        if (m.state_name(i) == c.state) {
            out.state = i;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("configuration state unknown");
    if (static_cast<int>(c.head_positions.size()) != m.head_count())
        throw std::invalid_argument("configuration head arity mismatch");
    for (int h : c.head_positions)
        if (h < 0 || h > static_cast<int>(word_length) + 1)
            throw std::invalid_argument("head position out of range");
    out.heads = c.head_positions;
    if (static_cast<int>(c.stacks.size()) != m.stack_count())
        throw std::invalid_argument("configuration stack arity mismatch");
    out.stacks.resize(c.stacks.size());
    for (std::size_t j = 0; j < c.stacks.size(); ++j) {
        const auto& s = c.stacks[j];
        if (s.cursor < 0 || s.cursor > static_cast<int>(s.content.size()) + 1)
            throw std::invalid_argument("stack cursor out of range");
        out.stacks[j].cursor = s.cursor;
        out.stacks[j].reading = s.phase == StackPhase::kReading;
        for (const auto& sym : s.content)
            out.stacks[j].content.push_back(m.stack_symbol_id(static_cast<int>(j), sym));
    }
    return out;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::kAccept: return "accept";
        case Outcome::kReject: return "reject";
        case Outcome::kBudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

std::vector<int> scanned_inputs(const CompiledMachine& m, const RunConfig& c,
                                const std::vector<int>& word) {
    std::vector<int> out(c.heads.size());
    const int n = static_cast<int>(word.size());
    for (std::size_t i = 0; i < c.heads.size(); ++i) {
        const int pos = c.heads[i];
        if (pos == 0) out[i] = 0;
        else if (pos == n + 1) out[i] = 1;
        else out[i] = word[pos - 1];
    }
    return out;
}

std::vector<int> scanned_stacks(const CompiledMachine& m, const RunConfig& c) {
    std::vector<int> out(c.stacks.size());
    for (std::size_t j = 0; j < c.stacks.size(); ++j) {
        const auto& s = c.stacks[j];
        if (s.cursor == 0) out[j] = 0;
        else if (s.cursor == static_cast<int>(s.content.size()) + 1) out[j] = 1;
        else out[j] = s.content[s.cursor - 1];
    }
    return out;
}

std::vector<int> applicable_transitions(const CompiledMachine& m, const RunConfig& c,
                                        const std::vector<int>& word) {
    const auto in_syms = scanned_inputs(m, c, word);
    const auto stk_syms = scanned_stacks(m, c);
    const bool checking = m.spec().machine_class == MachineClass::kChecking;
    std::vector<int> out;
    for (int idx : m.lookup(c.state, in_syms, stk_syms)) {
        const auto& tr = m.transitions()[idx];
        bool ok = true;
        for (const auto& s : tr.sense) {
            const bool eq = c.heads[s.left - 1] == c.heads[s.right - 1];
            if (eq != s.equal) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (std::size_t j = 0; j < tr.actions.size() && ok; ++j) {
            const auto& act = tr.actions[j];
            if (act.op == StackOp::kPush || act.op == StackOp::kPop) {
                // push/pop require the cursor on the topmost stored symbol.
                if (c.stacks[j].cursor != static_cast<int>(c.stacks[j].content.size())) ok = false;
                if (act.op == StackOp::kPush && checking && c.stacks[j].reading) ok = false;
            }
        }
        if (ok) out.push_back(idx);
    }
    std::sort(out.begin(), out.end(), [&m](int a, int b) {
        return m.transitions()[a].index < m.transitions()[b].index;
    });
    return out;
}

RunConfig apply_transition(const CompiledMachine& m, const RunConfig& c, int transition) {
    const auto& tr = m.transitions()[transition];
    RunConfig next = c;
    next.state = tr.to;
    for (std::size_t i = 0; i < tr.moves.size(); ++i) next.heads[i] += tr.moves[i];
    for (std::size_t j = 0; j < tr.actions.size(); ++j) {
        auto& s = next.stacks[j];
        switch (tr.actions[j].op) {
            case StackOp::kPush:
                s.content.push_back(tr.actions[j].symbol);
                s.cursor = static_cast<int>(s.content.size());
                break;
            case StackOp::kPop:
                s.content.pop_back();
                s.cursor = static_cast<int>(s.content.size());
                break;
            case StackOp::kStay:
                break;
            case StackOp::kDown:
                --s.cursor;
                s.reading = true;
                break;
            case StackOp::kUp:
                ++s.cursor;
                s.reading = true;
                break;
        }
    }
    return next;
}

std::vector<Configuration> step(const MachineSpec& spec, const Configuration& config,
                                const Word& word) {
    CompiledMachine m(spec);
    const auto interned = m.intern_word(word);
    RunConfig c = from_public(m, config, word.size());
    std::vector<Configuration> out;
    for (int idx : applicable_transitions(m, c, interned))
        out.push_back(to_public(m, apply_transition(m, c, idx)));
    return out;
}

namespace {

struct SearchNode {
    RunConfig config;
    int parent = -1;
    int via = -1;  // spec transition index
    std::uint64_t depth = 0;
};

void track_heights(RunStats& stats, const RunConfig& c) {
    for (std::size_t j = 0; j < c.stacks.size(); ++j)
        stats.max_heights[j] = std::max<std::uint64_t>(stats.max_heights[j], c.stacks[j].content.size());
}

Verdict make_accept(const CompiledMachine& m, const std::vector<SearchNode>& nodes, int idx,
                    RunStats stats) {
    Verdict v;
    v.outcome = Outcome::kAccept;
    v.stats = std::move(stats);
    std::vector<int> path;
    for (int i = idx; i >= 0; i = nodes[i].parent) path.push_back(i);
    std::reverse(path.begin(), path.end());
    for (int i : path) {
        v.witness.push_back(to_public(m, nodes[i].config));
        if (nodes[i].via >= 0) v.witness_transitions.push_back(nodes[i].via);
    }
    return v;
}

bool oracle_allows(const CompiledMachine& m, const PushOracle* oracle, const RunConfig& c,
                   const CompiledMachine::CTransition& tr) {
    if (!oracle) return true;
    for (std::size_t j = 0; j < tr.actions.size(); ++j) {
        if (tr.actions[j].op != StackOp::kPush) continue;
        if (j >= oracle->expected_contents.size()) continue;
        const auto& expected = oracle->expected_contents[j];
        const std::size_t h = c.stacks[j].content.size();
        if (h >= expected.size() || expected[h] != tr.actions[j].symbol) return false;
    }
    return true;
}

}  // namespace

Verdict decide_membership(const CompiledMachine& m, const std::vector<int>& word,
                          const RunBudget& budget, const PushOracle* oracle) {
    RunStats stats;
    stats.max_heights.assign(m.stack_count(), 0);

    std::vector<SearchNode> nodes;
    std::unordered_map<RunConfig, int, RunConfigHash> seen;
    std::deque<int> frontier;

    bool search_capped = false;

    RunConfig init = initial_config(m, word);
    nodes.push_back({init, -1, -1, 0});
    seen.emplace(init, 0);
    track_heights(stats, init);
    if (m.is_final(init.state)) {
        stats.configurations = 1;
        return make_accept(m, nodes, 0, stats);
    }
    frontier.push_back(0);

    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        const std::uint64_t depth = nodes[cur].depth;
        stats.steps = std::max(stats.steps, depth);

        const auto applicable = applicable_transitions(m, nodes[cur].config, word);
        if (depth >= budget.max_steps) {
            if (!applicable.empty()) search_capped = true;
            continue;
        }
        for (int idx : applicable) {
            const auto& tr = m.transitions()[idx];
            if (!oracle_allows(m, oracle, nodes[cur].config, tr)) continue;
            RunConfig next = apply_transition(m, nodes[cur].config, idx);

            bool over_cap = false;
            for (int j = 0; j < m.stack_count(); ++j) {
                auto cap = budget.height_cap(j);
                if (cap && next.stacks[j].content.size() > *cap) over_cap = true;
            }
            if (over_cap) continue;  // outside the space-bounded semantics

            auto it = seen.find(next);
            if (it != seen.end()) continue;
            if (nodes.size() >= budget.max_configurations) {
                search_capped = true;
                break;
            }
            const int id = static_cast<int>(nodes.size());
            seen.emplace(next, id);
            nodes.push_back({std::move(next), cur, tr.index, depth + 1});
            track_heights(stats, nodes.back().config);
            stats.steps = std::max(stats.steps, depth + 1);
            if (m.is_final(nodes.back().config.state)) {
                stats.configurations = nodes.size();
                return make_accept(m, nodes, id, stats);
            }
            frontier.push_back(id);
        }
        if (search_capped && nodes.size() >= budget.max_configurations) break;
    }

    stats.configurations = nodes.size();
    Verdict v;
    v.outcome = search_capped ? Outcome::kBudgetExhausted : Outcome::kReject;
    v.stats = std::move(stats);
    return v;
}

Verdict decide_membership(const MachineSpec& spec, const Word& word, const RunBudget& budget) {
    CompiledMachine m(spec);
    return decide_membership(m, m.intern_word(word), budget);
}

Verdict run_deterministic(const CompiledMachine& m, const std::vector<int>& word,
                          const RunBudget& budget) {
    if (m.spec().determinism != DeterminismMode::kDeterministic)
        throw std::invalid_argument("run_deterministic requires a deterministic machine");

    RunStats stats;
    stats.max_heights.assign(m.stack_count(), 0);
    std::vector<SearchNode> nodes;
    std::unordered_set<RunConfig, RunConfigHash> seen;

    RunConfig cur = initial_config(m, word);
    nodes.push_back({cur, -1, -1, 0});
    seen.insert(cur);
    track_heights(stats, cur);

    std::uint64_t depth = 0;
    while (true) {
        stats.steps = depth;
        stats.configurations = nodes.size();
        if (m.is_final(cur.state)) return make_accept(m, nodes, static_cast<int>(nodes.size()) - 1, stats);

        const auto applicable = applicable_transitions(m, cur, word);
        if (applicable.empty()) {
            Verdict v;
            v.outcome = Outcome::kReject;
            v.stats = stats;
            v.note = "halted with no applicable transition";
            return v;
        }
        if (depth >= budget.max_steps || nodes.size() >= budget.max_configurations) {
            Verdict v;
            v.outcome = Outcome::kBudgetExhausted;
            v.stats = stats;
            return v;
        }
        RunConfig next = apply_transition(m, cur, applicable.front());
        bool over_cap = false;
        for (int j = 0; j < m.stack_count(); ++j) {
            auto cap = budget.height_cap(j);
            if (cap && next.stacks[j].content.size() > *cap) over_cap = true;
        }
        if (over_cap) {
            Verdict v;
            v.outcome = Outcome::kReject;
            v.stats = stats;
            v.note = "push beyond the stack height cap";
            return v;
        }
        if (seen.count(next)) {
            Verdict v;
            v.outcome = Outcome::kReject;
            v.stats = stats;
            v.note = "infinite loop: configuration repeated";
            return v;
        }
        nodes.push_back({next, static_cast<int>(nodes.size()) - 1,
                         m.transitions()[applicable.front()].index, depth + 1});
        seen.insert(next);
        track_heights(stats, next);
        cur = std::move(next);
        ++depth;
    }
}

Verdict run_deterministic(const MachineSpec& spec, const Word& word, const RunBudget& budget) {
    CompiledMachine m(spec);
    return run_deterministic(m, m.intern_word(word), budget);
}

namespace {

// Enumerates words over Σ of exactly the given length in lexicographic
// symbol-id order and feeds them to fn until it returns false.
bool for_each_word(const CompiledMachine& m, int length, std::vector<int>& word,
                   const std::function<bool(const std::vector<int>&)>& fn) {
    const int sigma = static_cast<int>(m.spec().input_alphabet.size());
    if (length == 0) return fn(word);
    for (int s = 0; s < sigma; ++s) {
        word.push_back(2 + s);
        if (!for_each_word(m, length - 1, word, fn)) return false;
        word.pop_back();
    }
    return true;
}

}  // namespace

WriteDeterminismReport check_write_deterministic(const MachineSpec& spec, int max_word_len,
                                                 const RunBudget& budget) {
    CompiledMachine m(spec);
    WriteDeterminismReport report;

    auto scan_word = [&](const std::vector<int>& word) -> bool {
        std::unordered_set<RunConfig, RunConfigHash> seen;
        std::deque<RunConfig> frontier;
        RunConfig init = initial_config(m, word);
        seen.insert(init);
        frontier.push_back(init);
        std::uint64_t expanded = 0;
        while (!frontier.empty()) {
            if (expanded++ >= budget.max_steps || seen.size() >= budget.max_configurations) break;
            RunConfig cur = frontier.front();
            frontier.pop_front();
            const auto applicable = applicable_transitions(m, cur, word);
            const bool constrained =
                m.stack_count() == 0 ||
                std::any_of(cur.stacks.begin(), cur.stacks.end(),
                            [](const RunConfig::Stack& s) { return !s.reading; });
            if (constrained && applicable.size() > 1) {
                report.holds_on_sample = false;
                for (int pos : word) report.violating_word.push_back(m.input_symbol(pos));
                report.violating_config = to_public(m, cur);
                for (int idx : applicable)
                    report.violating_transitions.push_back(m.transitions()[idx].index);
                return false;
            }
            for (int idx : applicable) {
                RunConfig next = apply_transition(m, cur, idx);
                bool over_cap = false;
                for (int j = 0; j < m.stack_count(); ++j) {
                    auto cap = budget.height_cap(j);
                    if (cap && next.stacks[j].content.size() > *cap) over_cap = true;
                }
                if (over_cap) continue;
                if (seen.insert(next).second) frontier.push_back(next);
            }
        }
        return true;
    };

    for (int len = 0; len <= max_word_len; ++len) {
        std::vector<int> word;
        if (!for_each_word(m, len, word, scan_word)) break;
    }
    return report;
}

DisciplineReport classify_run_discipline(const MachineSpec& spec, const Word& word,
                                         const RunBudget& budget) {
    DisciplineReport report;
    Verdict v = decide_membership(spec, word, budget);
    if (!v.accepted()) return report;
    report.accepted = true;
    for (std::size_t i = 0; i + 1 < v.witness.size(); ++i) {
        const Configuration& a = v.witness[i];
        const Configuration& b = v.witness[i + 1];
        for (std::size_t j = 0; j < a.stacks.size(); ++j) {
            if (b.stacks[j].content.size() < a.stacks[j].content.size()) report.pop_used = true;
            if (b.stacks[j].content.size() > a.stacks[j].content.size() &&
                a.stacks[j].phase == StackPhase::kReading)
                report.write_after_read = true;
        }
    }
    return report;
}

bool replay_witness(const MachineSpec& spec, const Word& word,
                    const std::vector<Configuration>& witness) {
    if (witness.empty()) return false;
    CompiledMachine m(spec);
    const auto interned = m.intern_word(word);
    if (!(from_public(m, witness.front(), word.size()) == initial_config(m, interned))) return false;
    if (!spec.is_final(witness.back().state)) return false;
    for (std::size_t i = 0; i + 1 < witness.size(); ++i) {
        RunConfig cur = from_public(m, witness[i], word.size());
        RunConfig next = from_public(m, witness[i + 1], word.size());
        bool found = false;
        for (int idx : applicable_transitions(m, cur, interned)) {
            if (apply_transition(m, cur, idx) == next) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::optional<DesyncWitness> find_desync_run(const MachineSpec& spec, const Word& word,
                                             const RunBudget& budget) {
    CompiledMachine m(spec);
    const auto interned = m.intern_word(word);

    std::vector<SearchNode> nodes;
    std::unordered_map<RunConfig, int, RunConfigHash> seen;
    std::deque<int> frontier;
    RunConfig init = initial_config(m, interned);
    nodes.push_back({init, -1, -1, 0});
    seen.emplace(init, 0);
    frontier.push_back(0);

    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        if (nodes[cur].depth >= budget.max_steps) continue;
        for (int idx : applicable_transitions(m, nodes[cur].config, interned)) {
            const auto& tr = m.transitions()[idx];
            bool pushes = false;
            for (const auto& a : tr.actions) pushes |= a.op == StackOp::kPush;
            bool other_reading = false;
            for (std::size_t j = 0; j < tr.actions.size(); ++j) {
                if (tr.actions[j].op != StackOp::kPush) continue;
                for (std::size_t j2 = 0; j2 < nodes[cur].config.stacks.size(); ++j2)
                    if (j2 != j && nodes[cur].config.stacks[j2].reading) other_reading = true;
            }
            RunConfig next = apply_transition(m, nodes[cur].config, idx);
            bool over_cap = false;
            for (int j = 0; j < m.stack_count(); ++j) {
                auto cap = budget.height_cap(j);
                if (cap && next.stacks[j].content.size() > *cap) over_cap = true;
            }
            if (over_cap) continue;
            if (pushes && other_reading) {
                DesyncWitness w;
                w.word = word;
                std::vector<int> path;
                for (int i = cur; i >= 0; i = nodes[i].parent) path.push_back(i);
                std::reverse(path.begin(), path.end());
                for (int i : path) w.path.push_back(to_public(m, nodes[i].config));
                w.path.push_back(to_public(m, next));
                return w;
            }
            auto it = seen.find(next);
            if (it != seen.end()) continue;
            if (nodes.size() >= budget.max_configurations) return std::nullopt;
            const int id = static_cast<int>(nodes.size());
            seen.emplace(next, id);
            nodes.push_back({std::move(next), cur, tr.index, nodes[cur].depth + 1});
            frontier.push_back(id);
        }
    }
    return std::nullopt;
}

}  // namespace engine
}  // namespace csa
