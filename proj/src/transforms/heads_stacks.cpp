#include "common.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

namespace {

// Guard combinations over the stack alphabets for rewind loops: each stack
// scans Zb or one of its symbols.
void for_each_stack_combo(const std::vector<std::vector<Symbol>>& alphabets,
                          const std::function<void(const std::vector<Symbol>&)>& fn) {
    std::vector<Symbol> combo(alphabets.size());
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == alphabets.size()) {
            fn(combo);
            return;
        }
        combo[j] = kStackBottom;
        rec(j + 1);
        for (const auto& y : alphabets[j]) {
            combo[j] = y;
            rec(j + 1);
        }
    };
    rec(0);
}

}  // namespace

TransformResult heads_to_stacks(const MachineSpec& spec) {
    if (spec.stack_count != 0) throw TransformError("heads_to_stacks requires a finite automaton");
    if (spec.head_count < 2) throw TransformError("heads_to_stacks requires at least two heads");
    if (spec.sensing_enabled) throw TransformError("heads_to_stacks does not support sensing");
    if (!validate_spec(spec).ok()) throw TransformError("heads_to_stacks: invalid input machine");

    const int k = spec.head_count - 1;

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = 1;
    out.stack_count = k;
    out.stack_alphabets.assign(k, spec.input_alphabet);
    out.machine_class = MachineClass::kChecking;
    out.determinism = spec.determinism;

    detail::TargetBuilder tb;
    std::vector<std::string> all_stay(k, "stay");
    std::vector<Symbol> all_zb(k, kStackBottom);

    auto mk = [&](const std::string& from, const Symbol& in, std::vector<Symbol> stk,
                  const std::string& to, std::vector<StackAction> acts, int mv) {
        Transition tr;
        tr.from = from;
        tr.input_guard = {in};
        tr.stack_guard = std::move(stk);
        tr.to = to;
        tr.actions = std::move(acts);
        tr.moves = {mv};
        tb.add_transition(std::move(tr));
    };

    // Copy pass: push the scanned symbol onto every stack.
    for_each_stack_combo(out.stack_alphabets, [&](const std::vector<Symbol>& combo) {
        for (const auto& a : spec.input_alphabet) {
            std::vector<StackAction> acts(k, {StackOp::kPush, a});
            mk("copy", a, combo, "copy", std::move(acts), 1);
        }
        mk("copy", kRightMarker, combo, "rw_in", std::vector<StackAction>(k, {StackOp::kStay, ""}),
           0);
        // Rewind the input head to the left marker.
        for (const auto& a : spec.input_alphabet)
            mk("rw_in", a, combo, "rw_in", std::vector<StackAction>(k, {StackOp::kStay, ""}), -1);
        mk("rw_in", kRightMarker, combo, "rw_in",
           std::vector<StackAction>(k, {StackOp::kStay, ""}), -1);
        // Rewind the stacks to the bottom, then step everything to cell 1.
        bool all_bottom = true;
        for (const auto& y : combo) all_bottom &= y == kStackBottom;
        std::vector<StackAction> acts(k);
        for (int j = 0; j < k; ++j)
            acts[j] = combo[j] == kStackBottom ? StackAction{StackOp::kStay, ""}
                                               : StackAction{StackOp::kDown, ""};
        if (!all_bottom) mk("rw_in", kLeftMarker, combo, "rw_in", std::move(acts), 0);
    });
    mk("rw_in", kLeftMarker, all_zb, "sim|" + spec.initial_state,
       std::vector<StackAction>(k, {StackOp::kUp, ""}), 1);

    // Simulation: head 1 stays on the real input, heads 2..k+1 become stack
    // cursors; end-marker cells map to the stack sentinels.
    auto map_guard = [](const Symbol& a) -> Symbol {
        if (a == kLeftMarker) return kStackBottom;
        if (a == kRightMarker) return kStackTop;
        return a;
    };
    for (const auto& t : spec.transitions) {
        Transition tr;
        tr.from = "sim|" + t.from;
        tr.to = "sim|" + t.to;
        tr.input_guard = {t.input_guard[0]};
        tr.moves = {t.moves[0]};
        for (int j = 0; j < k; ++j) {
            tr.stack_guard.push_back(map_guard(t.input_guard[j + 1]));
            const int mv = t.moves[j + 1];
            tr.actions.push_back(mv > 0   ? StackAction{StackOp::kUp, ""}
                                 : mv < 0 ? StackAction{StackOp::kDown, ""}
                                          : StackAction{StackOp::kStay, ""});
        }
        tb.add_transition(std::move(tr));
    }
    for (const auto& q : spec.states)
        tb.add_state("sim|" + q);
    for (const auto& f : spec.final_states) tb.mark_final("sim|" + f);

    TransformResult result;
    result.machine = tb.finish(std::move(out), "copy");
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "input copied to " + std::to_string(k) +
                         " stacks; simulated heads 2.." + std::to_string(k + 1) +
                         " ride the stack cursors (k+1 heads to k stacks)";
    return result;
}

}  // namespace transforms
}  // namespace csa
