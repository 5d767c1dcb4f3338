#include "csa/turing.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace csa {

bool TuringMachineSpec::is_accepting(const std::string& q) const {
    return std::find(accepting_states.begin(), accepting_states.end(), q) != accepting_states.end();
}

std::vector<Symbol> TuringMachineSpec::input_alphabet() const {
    std::vector<Symbol> out;
    for (const auto& s : tape_alphabet)
        if (s != blank) out.push_back(s);
    return out;
}

ValidationReport validate_tm(const TuringMachineSpec& tm) {
    ValidationReport report;
    auto fail = [&report](int idx, std::string msg) {
        report.violations.push_back({idx, std::move(msg)});
    };
    std::set<std::string> states(tm.states.begin(), tm.states.end());
    std::set<Symbol> tape(tm.tape_alphabet.begin(), tm.tape_alphabet.end());
    if (!states.count(tm.initial_state)) fail(-1, "initial state not in state set");
    for (const auto& q : tm.accepting_states)
        if (!states.count(q)) fail(-1, "accepting state '" + q + "' not in state set");
    if (!tape.count(tm.blank)) fail(-1, "blank symbol not in tape alphabet");
    for (std::size_t t = 0; t < tm.transitions.size(); ++t) {
        const auto& tr = tm.transitions[t];
        const int idx = static_cast<int>(t);
        if (!states.count(tr.from)) fail(idx, "unknown source state");
        if (!states.count(tr.to)) fail(idx, "unknown target state");
        if (!tape.count(tr.read)) fail(idx, "read symbol not in tape alphabet");
        if (!tape.count(tr.write)) fail(idx, "written symbol not in tape alphabet");
        if (tr.move < -1 || tr.move > 1) fail(idx, "move outside {-1,0,1}");
    }
    return report;
}

namespace {

struct TmConfig {
    std::string state;
    std::vector<Symbol> tape;
    int head = 0;  // 0-based

    friend bool operator<(const TmConfig& a, const TmConfig& b) {
        return std::tie(a.state, a.head, a.tape) < std::tie(b.state, b.head, b.tape);
    }
};

std::string encode_id(const TmConfig& c) {
    std::string out;
    for (int i = 0; i < static_cast<int>(c.tape.size()); ++i) {
        if (i == c.head) out += c.state;
        out += c.tape[i];
    }
    if (c.head == static_cast<int>(c.tape.size())) out += c.state;
    return out;
}

}  // namespace

TmRunResult tm_accepts(const TuringMachineSpec& tm, const Word& input, std::uint64_t max_steps) {
    TmRunResult result;
    TmConfig init{tm.initial_state, input, 0};
    if (init.tape.empty()) init.tape.push_back(tm.blank);

    std::vector<TmConfig> nodes{init};
    std::vector<int> parent{-1};
    std::map<TmConfig, int> seen{{init, 0}};
    std::deque<int> frontier{0};
    std::uint64_t expanded = 0;

    auto finish = [&](int idx) {
        result.accepted = true;
        std::vector<int> path;
        for (int i = idx; i >= 0; i = parent[i]) path.push_back(i);
        std::reverse(path.begin(), path.end());
        for (int i : path) result.id_strings.push_back(encode_id(nodes[i]));
    };

    if (tm.is_accepting(init.state)) {
        finish(0);
        return result;
    }

    while (!frontier.empty()) {
        if (expanded++ >= max_steps) {
            result.exhausted = false;
            return result;
        }
        const int cur = frontier.front();
        frontier.pop_front();
        TmConfig c = nodes[cur];
        const Symbol scanned = c.head < static_cast<int>(c.tape.size()) ? c.tape[c.head] : tm.blank;
        for (const auto& tr : tm.transitions) {
            if (tr.from != c.state || tr.read != scanned) continue;
            if (c.head == 0 && tr.move == -1) continue;  // one-ended tape
            TmConfig next = c;
            if (next.head == static_cast<int>(next.tape.size())) next.tape.push_back(tm.blank);
            next.tape[next.head] = tr.write;
            next.head += tr.move;
            next.state = tr.to;
            if (next.head == static_cast<int>(next.tape.size())) next.tape.push_back(tm.blank);
            auto [it, inserted] = seen.try_emplace(next, static_cast<int>(nodes.size()));
            if (!inserted) continue;
            nodes.push_back(next);
            parent.push_back(cur);
            if (tm.is_accepting(next.state)) {
                finish(static_cast<int>(nodes.size()) - 1);
                return result;
            }
            frontier.push_back(static_cast<int>(nodes.size()) - 1);
        }
    }
    return result;
}

}  // namespace csa
