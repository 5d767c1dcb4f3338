#include <deque>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

// Per-state subphase classification for write-restricted machines: 1..l
// during the write phase (subphase index), 0 once the stack has been entered.
// Throws when the annotation contradicts the transition graph: a write-phase
// move may move at most one head, namely the current subphase's head, or jump
// forward to a later subphase's head.
std::vector<int> classify_subphases(const MachineSpec& spec) {
    if (!spec.write_subphases || spec.write_subphases->empty())
        throw TransformError("write-restricted machine lacks the write_subphases annotation");
    const auto& subphases = *spec.write_subphases;
    const int l = static_cast<int>(subphases.size());
    {
        std::set<int> distinct(subphases.begin(), subphases.end());
        if (static_cast<int>(distinct.size()) != l)
            throw TransformError("write_subphases heads must be distinct");
    }
    auto subphase_of_head = [&](int head1) {
        for (int i = 0; i < l; ++i)
            if (subphases[i] == head1) return i + 1;
        return 0;
    };

    std::map<std::string, int> sid;
    for (std::size_t i = 0; i < spec.states.size(); ++i) sid[spec.states[i]] = static_cast<int>(i);
    std::vector<int> phase(spec.states.size(), -1);
    std::deque<int> frontier;
    phase[sid.at(spec.initial_state)] = 1;
    frontier.push_back(sid.at(spec.initial_state));

    auto assign = [&](const std::string& q, int p) {
        const int i = sid.at(q);
        if (phase[i] == -1) {
            phase[i] = p;
            frontier.push_back(i);
        } else if (phase[i] != p) {
            throw TransformError("write_subphases annotation inconsistent at state '" + q + "'");
        }
    };

    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        const int p = phase[cur];
        for (const auto& t : spec.transitions) {
            if (sid.at(t.from) != cur) continue;
            if (p == 0) {
                if (t.actions[0].op == StackOp::kPush) continue;  // pruned after reading
                assign(t.to, 0);
                continue;
            }
            if (t.actions[0].op == StackOp::kDown || t.actions[0].op == StackOp::kUp) {
                assign(t.to, 0);
                continue;
            }
            int mover = -1;
            for (std::size_t h = 0; h < t.moves.size(); ++h) {
                if (t.moves[h] == 0) continue;
                if (mover >= 0)
                    throw TransformError("write phase moves two heads in one step from '" +
                                         t.from + "'");
                mover = static_cast<int>(h) + 1;
            }
            if (mover < 0) {
                assign(t.to, p);
                continue;
            }
            const int sp = subphase_of_head(mover);
            if (sp == 0 || sp < p)
                throw TransformError("head " + std::to_string(mover) +
                                     " moves outside its subphase from '" + t.from + "'");
            assign(t.to, sp);
        }
    }
    return phase;
}

TransformResult write_restricted_to_multistack(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("write_restricted_to_multistack requires a checking machine");
    if (spec.determinism != DeterminismMode::kDeterministic)
        throw TransformError("write_restricted_to_multistack requires a deterministic machine");
    if (spec.stack_count != 1)
        throw TransformError("write_restricted_to_multistack requires exactly one stack");
    if (spec.sensing_enabled)
        throw TransformError("write_restricted_to_multistack does not support sensing");
    if (!spec.write_subphases || spec.write_subphases->size() != 1)
        throw TransformError("write_restricted_to_multistack requires a single write subphase");
    if (!validate_spec(spec).ok())
        throw TransformError("write_restricted_to_multistack: invalid input machine");
    classify_subphases(spec);

    const int k = spec.head_count;
    const int hw = (*spec.write_subphases)[0] - 1;

    if (k == 1) {
        TransformResult result;
        result.machine = spec;
        result.machine.write_subphases.reset();
        for (auto& q : result.machine.states) q = "m|" + q;
        result.machine.initial_state = "m|" + result.machine.initial_state;
        for (auto& q : result.machine.final_states) q = "m|" + q;
        for (auto& t : result.machine.transitions) {
            t.from = "m|" + t.from;
            t.to = "m|" + t.to;
        }
        result.report.source = detail::summarize(spec);
        result.report.target = detail::summarize(result.machine);
        result.report.relation = "language_equal";
        result.report.rule = "single head: same machine shape with one stack";
        return result;
    }

    // Output stacks: slot 0 is the source stack; slots 1..k-1 carry input
    // copies standing in for the non-writing heads, in head order.
    std::vector<int> other_heads;
    for (int h = 0; h < k; ++h)
        if (h != hw) other_heads.push_back(h);

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = 1;
    out.stack_count = k;
    out.stack_alphabets.push_back(spec.stack_alphabets[0]);
    for (int j = 1; j < k; ++j) out.stack_alphabets.push_back(spec.input_alphabet);
    out.machine_class = MachineClass::kChecking;
    out.determinism = DeterminismMode::kDeterministic;

    detail::TargetBuilder tb;
    std::vector<Symbol> sigma_plus = {kLeftMarker, kRightMarker};
    sigma_plus.insert(sigma_plus.end(), spec.input_alphabet.begin(), spec.input_alphabet.end());

    // Emits a transition with unconstrained copy-stack guards expanded.
    auto emit = [&](const std::string& from, const Symbol& in, std::vector<Symbol> stk,
                    const std::string& to, std::vector<StackAction> acts, int mv) {
        std::vector<Transition> batch(1);
        batch[0].from = from;
        batch[0].to = to;
        batch[0].input_guard = {in};
        batch[0].stack_guard = std::move(stk);
        batch[0].actions = std::move(acts);
        batch[0].moves = {mv};
        for (int j = 0; j < k; ++j) {
            if (!batch[0].stack_guard[j].empty()) continue;
            std::vector<Symbol> opts = {kStackBottom, kStackTop};
            opts.insert(opts.end(), out.stack_alphabets[j].begin(), out.stack_alphabets[j].end());
            std::vector<Transition> next;
            for (const auto& base : batch)
                for (const auto& y : opts) {
                    Transition t2 = base;
                    t2.stack_guard[j] = y;
                    next.push_back(std::move(t2));
                }
            batch = std::move(next);
        }
        for (auto& t2 : batch) {
            // push/stay-only guards during the write phase never scan Zt.
            bool legal = true;
            for (int j = 0; j < k; ++j) {
                if (t2.actions[j].op == StackOp::kPush && t2.stack_guard[j] == kStackTop)
                    legal = false;
                if (t2.actions[j].op == StackOp::kDown && t2.stack_guard[j] == kStackBottom)
                    legal = false;
                if (t2.actions[j].op == StackOp::kUp && t2.stack_guard[j] == kStackTop)
                    legal = false;
            }
            if (legal) tb.add_transition(std::move(t2));
        }
    };

    const std::vector<StackAction> all_stay(k, {StackOp::kStay, ""});

    // Copy pass: push every input symbol onto the copy stacks.
    for (const auto& a : spec.input_alphabet) {
        std::vector<StackAction> acts(k, {StackOp::kPush, a});
        acts[0] = {StackOp::kStay, ""};
        std::vector<Symbol> stk(k, "");
        stk[0] = kStackBottom;
        emit("copy", a, stk, "copy", std::move(acts), 1);
    }
    {
        std::vector<Symbol> stk(k, "");
        stk[0] = kStackBottom;
        emit("copy", kRightMarker, stk, "rwi", all_stay, -1);
        for (const auto& a : spec.input_alphabet) emit("rwi", a, stk, "rwi", all_stay, -1);
        emit("rwi", kLeftMarker, stk, "ws|" + spec.initial_state + "|?|?", all_stay, 1);
    }
    if (spec.is_final(spec.initial_state)) tb.mark_final("ws|" + spec.initial_state + "|?|?");

    // Write simulation: states ws|q|sym1|last_real. The working head plays the
    // writing head; parked heads scan the captured first symbol.
    std::deque<std::tuple<std::string, Symbol, Symbol>> frontier;
    std::set<std::string> seen;
    auto ws_name = [](const std::string& q, const Symbol& sym1, const Symbol& lr) {
        return "ws|" + q + "|" + sym1 + "|" + lr;
    };
    frontier.push_back({spec.initial_state, "?", "?"});
    seen.insert(ws_name(spec.initial_state, "?", "?"));

    std::set<std::string> emitted_align;

    auto top_repr = [](const Symbol& lr) { return lr == "?" ? Symbol(kStackBottom) : lr; };

    // Read simulation states, one per source state: the copy stacks mirror the
    // parked heads, the real head mirrors the writing head.
    for (const auto& q : spec.states) {
        const std::string rd = "rd|" + q;
        tb.add_state(rd);
        if (spec.is_final(q)) tb.mark_final(rd);
        for (const auto& t : spec.transitions) {
            if (t.from != q) continue;
            if (t.actions[0].op == StackOp::kPush || t.actions[0].op == StackOp::kPop) continue;
            std::vector<Symbol> stk(k);
            std::vector<StackAction> acts(k);
            stk[0] = t.stack_guard[0];
            acts[0] = t.actions[0];
            for (int j = 1; j < k; ++j) {
                const Symbol& g = t.input_guard[other_heads[j - 1]];
                stk[j] = g == kLeftMarker ? kStackBottom : g == kRightMarker ? kStackTop : g;
                const int mv = t.moves[other_heads[j - 1]];
                acts[j] = mv > 0   ? StackAction{StackOp::kUp, ""}
                          : mv < 0 ? StackAction{StackOp::kDown, ""}
                                   : StackAction{StackOp::kStay, ""};
            }
            if (spec.is_final(t.to)) tb.mark_final("rd|" + t.to);
            emit(rd, t.input_guard[hw], std::move(stk), "rd|" + t.to, std::move(acts),
                 t.moves[hw]);
        }
    }

    // Alignment: rewind the copy stacks to the bottom, then step them all to
    // cell 1 where the parked heads sit.
    auto emit_align = [&](const std::string& q, const Symbol& lr) {
        const std::string al = "al|" + q + "|" + lr;
        if (!emitted_align.insert(al).second) return al;
        // Enumerate copy-stack tops: Zb or an alphabet symbol.
        std::vector<std::vector<Symbol>> combos(1, std::vector<Symbol>(k, ""));
        for (int j = 1; j < k; ++j) {
            std::vector<std::vector<Symbol>> next;
            for (const auto& base : combos) {
                for (const auto& y : out.stack_alphabets[j]) {
                    auto c = base;
                    c[j] = y;
                    next.push_back(c);
                }
                auto c = base;
                c[j] = kStackBottom;
                next.push_back(c);
            }
            combos = std::move(next);
        }
        for (auto& combo : combos) {
            combo[0] = top_repr(lr);
            bool all_bottom = true;
            std::vector<StackAction> acts(k, {StackOp::kStay, ""});
            for (int j = 1; j < k; ++j)
                if (combo[j] != kStackBottom) {
                    all_bottom = false;
                    acts[j] = {StackOp::kDown, ""};
                }
            if (all_bottom)
                for (int j = 1; j < k; ++j) acts[j] = {StackOp::kUp, ""};
            for (const auto& a : sigma_plus) {
                emit(al, a, combo, all_bottom ? "rd|" + q : al, acts, 0);
            }
        }
        return al;
    };

    while (!frontier.empty()) {
        auto [q, sym1, lr] = frontier.front();
        frontier.pop_front();
        const std::string cur = ws_name(q, sym1, lr);
        tb.add_state(cur);
        if (spec.is_final(q)) tb.mark_final(cur);

        for (const auto& g : sigma_plus) {
            const Symbol others = sym1 == "?" ? g : sym1;
            std::vector<Symbol> source_guard(k, others);
            source_guard[hw] = g;
            for (const auto& t : spec.transitions) {
                if (t.from != q) continue;
                if (t.input_guard != source_guard) continue;
                if (t.stack_guard[0] != top_repr(lr)) continue;
                const Symbol nsym1 = sym1 == "?" ? g : sym1;
                std::vector<Symbol> stk(k, "");
                stk[0] = top_repr(lr);
                if (t.actions[0].op == StackOp::kDown || t.actions[0].op == StackOp::kUp) {
                    // The stack enters reading: align the copy stacks first;
                    // the entering move re-dispatches from the read state.
                    const std::string al = emit_align(q, lr);
                    std::vector<StackAction> acts(k, {StackOp::kStay, ""});
                    emit(cur, g, stk, al, std::move(acts), 0);
                    continue;
                }
                Symbol nlr = lr;
                std::vector<StackAction> acts(k, {StackOp::kStay, ""});
                if (t.actions[0].op == StackOp::kPush) {
                    acts[0] = t.actions[0];
                    nlr = t.actions[0].symbol;
                }
                const std::string to = ws_name(t.to, nsym1, nlr);
                if (seen.insert(to).second) frontier.push_back({t.to, nsym1, nlr});
                if (spec.is_final(t.to)) tb.mark_final(to);
                emit(cur, g, stk, to, std::move(acts), t.moves[hw]);
            }
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), "copy");
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "input copied onto stacks 2.." + std::to_string(k) +
                         " standing in for the parked heads; the single write phase lands on "
                         "stack 1 (k heads to k stacks, synchronous)";
    return result;
}

}  // namespace transforms
}  // namespace csa
