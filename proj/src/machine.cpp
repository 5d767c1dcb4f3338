#include "csa/machine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace csa {

bool MachineSpec::is_final(const std::string& q) const {
    return std::find(final_states.begin(), final_states.end(), q) != final_states.end();
}

std::string to_string(MachineClass c) {
    switch (c) {
        case MachineClass::kChecking: return "checking";
        case MachineClass::kNonErasing: return "non_erasing";
        case MachineClass::kGeneralStack: return "general_stack";
        case MachineClass::kFinite: return "finite";
    }
    return "?";
}

std::string to_string(DeterminismMode m) {
    switch (m) {
        case DeterminismMode::kDeterministic: return "deterministic";
        case DeterminismMode::kNondeterministic: return "nondeterministic";
        case DeterminismMode::kWriteDeterministic: return "write_deterministic";
    }
    return "?";
}

std::string to_string(StackOp op) {
    switch (op) {
        case StackOp::kPush: return "push";
        case StackOp::kPop: return "pop";
        case StackOp::kStay: return "stay";
        case StackOp::kDown: return "down";
        case StackOp::kUp: return "up";
    }
    return "?";
}

Word split_word(const std::string& text) {
    Word out;
    for (char ch : text) {
        if (ch == '\'' && !out.empty()) {
            out.back().push_back(ch);
        } else {
            out.emplace_back(1, ch);
        }
    }
    return out;
}

std::string join_word(const Word& word) {
    std::string out;
    for (const auto& s : word) out += s;
    return out;
}

namespace {

bool is_reserved(const Symbol& s) {
    return s == kLeftMarker || s == kRightMarker || s == kStackBottom || s == kStackTop;
}

// Two fully matching guards overlap unless their sensing requirements are
// contradictory on some pair.
bool sense_guards_compatible(const std::vector<SenseTest>& a, const std::vector<SenseTest>& b) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (x.left == y.left && x.right == y.right && x.equal != y.equal) return false;
    return true;
}

}  // namespace

ValidationReport validate_spec(const MachineSpec& spec) {
    ValidationReport report;
    auto fail = [&report](int idx, std::string msg) {
        report.violations.push_back({idx, std::move(msg)});
    };

    std::set<std::string> states(spec.states.begin(), spec.states.end());
    std::set<Symbol> sigma(spec.input_alphabet.begin(), spec.input_alphabet.end());

    if (spec.head_count < 1) fail(-1, "head_count must be at least 1");
    if (spec.stack_count < 0) fail(-1, "stack_count must be nonnegative");
    if (static_cast<int>(spec.stack_alphabets.size()) != spec.stack_count)
        fail(-1, "stack_alphabets size differs from stack_count");
    if (!states.count(spec.initial_state)) fail(-1, "initial state not in state set");
    for (const auto& f : spec.final_states)
        if (!states.count(f)) fail(-1, "final state '" + f + "' not in state set");
    for (const auto& s : spec.input_alphabet)
        if (is_reserved(s)) fail(-1, "reserved symbol '" + s + "' in input alphabet");
    for (const auto& gamma : spec.stack_alphabets)
        for (const auto& s : gamma)
            if (is_reserved(s)) fail(-1, "reserved symbol '" + s + "' in stack alphabet");
    if ((spec.machine_class == MachineClass::kFinite) != (spec.stack_count == 0))
        fail(-1, "machine_class finite <=> stack_count == 0");
    if (spec.write_subphases) {
        for (int h : *spec.write_subphases)
            if (h < 1 || h > spec.head_count) fail(-1, "write_subphases head index out of range");
    }

    std::vector<std::set<Symbol>> gammas;
    gammas.reserve(spec.stack_alphabets.size());
    for (const auto& g : spec.stack_alphabets) gammas.emplace_back(g.begin(), g.end());

    const int r = spec.head_count;
    const int k = spec.stack_count;
    for (std::size_t t = 0; t < spec.transitions.size(); ++t) {
        const Transition& tr = spec.transitions[t];
        const int idx = static_cast<int>(t);
        if (!states.count(tr.from)) fail(idx, "unknown source state '" + tr.from + "'");
        if (!states.count(tr.to)) fail(idx, "unknown target state '" + tr.to + "'");
        if (static_cast<int>(tr.input_guard.size()) != r) fail(idx, "input guard arity != head count");
        if (static_cast<int>(tr.moves.size()) != r) fail(idx, "move arity != head count");
        if (static_cast<int>(tr.stack_guard.size()) != k) fail(idx, "stack guard arity != stack count");
        if (static_cast<int>(tr.actions.size()) != k) fail(idx, "action arity != stack count");

        for (std::size_t i = 0; i < tr.input_guard.size() && i < tr.moves.size(); ++i) {
            const Symbol& a = tr.input_guard[i];
            if (a != kLeftMarker && a != kRightMarker && !sigma.count(a))
                fail(idx, "input guard symbol '" + a + "' not in alphabet");
            if (tr.moves[i] < -1 || tr.moves[i] > 1) fail(idx, "head move outside {-1,0,1}");
            if (a == kLeftMarker && tr.moves[i] == -1)
                fail(idx, "head may not move left from the left end-marker");
            if (a == kRightMarker && tr.moves[i] == 1)
                fail(idx, "head may not move right from the right end-marker");
        }

        for (std::size_t j = 0; j < tr.stack_guard.size() && j < tr.actions.size(); ++j) {
            const Symbol& b = tr.stack_guard[j];
            const StackAction& act = tr.actions[j];
            const bool in_gamma = j < gammas.size() && gammas[j].count(b) > 0;
            if (b != kStackBottom && b != kStackTop && !in_gamma)
                fail(idx, "stack guard symbol '" + b + "' not in stack alphabet");
            switch (act.op) {
                case StackOp::kDown:
                    if (b == kStackBottom) fail(idx, "down while scanning Zb");
                    break;
                case StackOp::kUp:
                    if (b == kStackTop) fail(idx, "up while scanning Zt");
                    break;
                case StackOp::kPush:
                    // push applies with the cursor on the topmost stored symbol
                    // (or Zb when empty), never past it.
                    if (b == kStackTop) fail(idx, "push while scanning Zt");
                    if (j >= gammas.size() || !gammas[j].count(act.symbol))
                        fail(idx, "pushed symbol '" + act.symbol + "' not in stack alphabet");
                    break;
                case StackOp::kPop:
                    if (!in_gamma) fail(idx, "pop requires scanning a stack symbol");
                    if (spec.machine_class == MachineClass::kChecking ||
                        spec.machine_class == MachineClass::kNonErasing)
                        fail(idx, "pop is not available in this machine class");
                    break;
                case StackOp::kStay:
                    break;
            }
        }

        if (!tr.sense.empty() && !spec.sensing_enabled) fail(idx, "sensing guard on a non-sensing machine");
        for (const auto& s : tr.sense) {
            if (s.left < 1 || s.right <= s.left || s.right > r)
                fail(idx, "sense pair indices out of range");
        }
    }

    if (spec.determinism == DeterminismMode::kDeterministic) {
        std::map<std::pair<std::string, std::pair<std::vector<Symbol>, std::vector<Symbol>>>,
                 std::vector<std::size_t>>
            by_guard;
        for (std::size_t t = 0; t < spec.transitions.size(); ++t) {
            const Transition& tr = spec.transitions[t];
            by_guard[{tr.from, {tr.input_guard, tr.stack_guard}}].push_back(t);
        }
        for (const auto& [key, idxs] : by_guard) {
            for (std::size_t i = 0; i < idxs.size(); ++i) {
                for (std::size_t j = i + 1; j < idxs.size(); ++j) {
                    if (sense_guards_compatible(spec.transitions[idxs[i]].sense,
                                                spec.transitions[idxs[j]].sense)) {
                        std::ostringstream msg;
                        msg << "deterministic mode: transitions " << idxs[i] << " and " << idxs[j]
                            << " overlap on the same guard";
                        fail(static_cast<int>(idxs[j]), msg.str());
                    }
                }
            }
        }
    }

    return report;
}

}  // namespace csa
