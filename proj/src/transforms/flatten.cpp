#include <deque>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

// Write-phase flattening: the first subphase head simulates every subphase in
// turn. Closing subphase i walks that head back to the left marker while
// pushing one dummy #_i per cell, recording the head's displacement; before
// the read phase the dummy runs restore every closed head, and the read
// simulation skips dummy cells.

namespace csa {
namespace transforms {

namespace {

struct FState {
    // mode: W (subphase sim), CJ (closing, next subphase), CE (closing, then
    // read), PR/P2 (restore entry), RS (restore walk), CL (climb), RP
    // (pre-read at the top sentinel), RD (read sim), SK (dummy skip).
    std::string mode;
    int i = 1;                    // current subphase (W/CJ/CE)
    std::string q;                // simulated source state
    std::vector<Symbol> parked;   // per subphase 1..l: final scanned symbol ("" = open)
    Symbol sym1 = "?";            // symbol at position 1 ("?" before capture)
    Symbol last_real = "?";       // source stack top ("?" = empty)
    Symbol phys = "?";            // physical stack top of the target ("?" = empty)
    int ienter = 0;               // subphases closed at read entry (PR/P2)
    bool down = true;             // skip direction (SK)
    bool extra = false;           // skip once more past the first real cell (SK)
};

std::string render(const FState& s) {
    std::string out = "f" + s.mode + "|" + std::to_string(s.i) + "|" + s.q + "|";
    for (const auto& p : s.parked) out += (p.empty() ? "-" : p) + ";";
    out += "|" + s.sym1 + "|" + s.last_real + "|" + s.phys;
    if (s.mode == "PR" || s.mode == "P2") out += "|" + std::to_string(s.ienter);
    if (s.mode == "SK") out += std::string("|") + (s.down ? "v" : "^") + (s.extra ? "+" : "");
    return out;
}

}  // namespace

TransformResult flatten_write_phases(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("flatten_write_phases requires a checking machine");
    if (spec.determinism != DeterminismMode::kDeterministic)
        throw TransformError("flatten_write_phases requires a deterministic machine");
    if (spec.stack_count != 1)
        throw TransformError("flatten_write_phases requires exactly one stack");
    if (spec.sensing_enabled)
        throw TransformError("flatten_write_phases does not support sensing");
    if (!spec.write_subphases || spec.write_subphases->empty())
        throw TransformError("flatten_write_phases requires the write_subphases annotation");
    if (!validate_spec(spec).ok())
        throw TransformError("flatten_write_phases: invalid input machine");
    classify_subphases(spec);  // throws when the annotation is inconsistent

    const auto& subphases = *spec.write_subphases;  // 1-based head indices
    const int l = static_cast<int>(subphases.size());
    const int r = spec.head_count;
    const int hw = subphases[0] - 1;  // the single writing head of the target

    if (l == 1) {
        TransformResult result;
        result.machine = spec;
        for (auto& q : result.machine.states) q = "f|" + q;
        result.machine.initial_state = "f|" + result.machine.initial_state;
        for (auto& q : result.machine.final_states) q = "f|" + q;
        for (auto& t : result.machine.transitions) {
            t.from = "f|" + t.from;
            t.to = "f|" + t.to;
        }
        result.report.source = detail::summarize(spec);
        result.report.target = detail::summarize(result.machine);
        result.report.relation = "language_equal";
        result.report.rule = "single write subphase: renamed copy";
        return result;
    }

    // Dummy run symbols, one per subphase.
    std::vector<Symbol> hashes;
    for (int i = 1; i <= l; ++i) {
        std::string h = "#" + std::to_string(i);
        while (std::find(spec.stack_alphabets[0].begin(), spec.stack_alphabets[0].end(), h) !=
               spec.stack_alphabets[0].end())
            h += "'";
        hashes.push_back(h);
    }
    auto hash_index = [&](const Symbol& s) {
        for (int i = 0; i < l; ++i)
            if (hashes[i] == s) return i;
        return -1;
    };

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = r;
    out.stack_count = 1;
    out.stack_alphabets = {spec.stack_alphabets[0]};
    for (const auto& h : hashes) out.stack_alphabets[0].push_back(h);
    out.machine_class = MachineClass::kChecking;
    out.determinism = DeterminismMode::kDeterministic;
    out.write_subphases = std::vector<int>{subphases[0]};

    detail::TargetBuilder tb;
    std::vector<Symbol> sigma_plus = {kLeftMarker, kRightMarker};
    sigma_plus.insert(sigma_plus.end(), spec.input_alphabet.begin(), spec.input_alphabet.end());
    std::vector<Symbol> cells = {kStackBottom, kStackTop};
    cells.insert(cells.end(), out.stack_alphabets[0].begin(), out.stack_alphabets[0].end());

    std::deque<FState> frontier;
    std::set<std::string> seen;
    auto enqueue = [&](const FState& s) {
        const std::string name = render(s);
        if (seen.insert(name).second) frontier.push_back(s);
        if (spec.is_final(s.q)) tb.mark_final(name);
        return name;
    };
    auto top_repr = [&](const Symbol& phys) {
        return phys == "?" ? Symbol(kStackBottom) : phys;
    };

    // Emits with explicit per-head guards; heads with "" enumerate Sigma+.
    auto emit = [&](const std::string& from, std::vector<Symbol> in, const Symbol& stk,
                    const std::string& to, StackAction act, std::vector<int> mv) {
        std::vector<Transition> batch(1);
        batch[0].from = from;
        batch[0].to = to;
        batch[0].input_guard = std::move(in);
        batch[0].stack_guard = {stk};
        batch[0].actions = {act};
        batch[0].moves = std::move(mv);
        for (int h = 0; h < r; ++h) {
            if (!batch[0].input_guard.empty() && !batch[0].input_guard[h].empty()) continue;
            std::vector<Transition> next;
            for (const auto& base : batch)
                for (const auto& s : sigma_plus) {
                    if (s == kLeftMarker && base.moves[h] == -1) continue;
                    if (s == kRightMarker && base.moves[h] == 1) continue;
                    Transition t2 = base;
                    t2.input_guard[h] = s;
                    next.push_back(std::move(t2));
                }
            batch = std::move(next);
        }
        for (auto& t2 : batch) {
            bool legal = true;
            for (int h = 0; h < r; ++h) {
                if (t2.input_guard[h] == kLeftMarker && t2.moves[h] == -1) legal = false;
                if (t2.input_guard[h] == kRightMarker && t2.moves[h] == 1) legal = false;
            }
            if (legal) tb.add_transition(std::move(t2));
        }
    };

    FState init;
    init.mode = "W";
    init.q = spec.initial_state;
    init.parked.assign(l, "");
    enqueue(init);

    while (!frontier.empty()) {
        FState cur = frontier.front();
        frontier.pop_front();
        const std::string name = render(cur);
        tb.add_state(name);

        if (cur.mode == "W") {
            const int hi = subphases[cur.i - 1] - 1;
            for (const auto& g : sigma_plus) {
                // Source guard tuple: the active head scans g, closed heads
                // their parked symbols, everything else the first cell.
                const Symbol others = cur.sym1 == "?" ? g : cur.sym1;
                std::vector<Symbol> source_guard(r);
                for (int h = 0; h < r; ++h) source_guard[h] = others;
                source_guard[hi] = g;
                for (int m = 1; m < cur.i; ++m)
                    if (!cur.parked[m - 1].empty()) source_guard[subphases[m - 1] - 1] = cur.parked[m - 1];
                if (cur.sym1 == "?" && g != others) continue;  // unreachable mix

                for (const auto& t : spec.transitions) {
                    if (t.from != cur.q) continue;
                    if (t.input_guard != source_guard) continue;
                    if (t.stack_guard[0] != top_repr(cur.last_real == "?" ? "?" : cur.last_real))
                        continue;
                    // Target-side guards: the active head reads g, parked
                    // heads physically rest on cell 1.
                    std::vector<Symbol> in(r, cur.sym1 == "?" ? g : cur.sym1);
                    in[hw] = g;

                    const bool enters = t.actions[0].op == StackOp::kDown ||
                                        t.actions[0].op == StackOp::kUp;
                    int mover = -1;
                    for (int h = 0; h < r; ++h)
                        if (t.moves[h] != 0) mover = h;

                    if (enters) {
                        FState nx = cur;
                        nx.mode = "CE";
                        nx.parked[cur.i - 1] = g;
                        nx.ienter = cur.i;
                        if (nx.sym1 == "?") nx.sym1 = g;
                        emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kStay, ""},
                             std::vector<int>(r, 0));
                        continue;
                    }
                    if (mover >= 0 && mover != hi) {
                        // A later subphase's head moves: close this one first.
                        FState nx = cur;
                        nx.mode = "CJ";
                        nx.parked[cur.i - 1] = g;
                        if (nx.sym1 == "?") nx.sym1 = g;
                        emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kStay, ""},
                             std::vector<int>(r, 0));
                        continue;
                    }
                    // Direct simulation of the subphase move.
                    FState nx = cur;
                    nx.mode = "W";
                    nx.q = t.to;
                    if (nx.sym1 == "?") nx.sym1 = g;
                    StackAction act = {StackOp::kStay, ""};
                    if (t.actions[0].op == StackOp::kPush) {
                        act = t.actions[0];
                        nx.last_real = act.symbol;
                        nx.phys = act.symbol;
                    }
                    std::vector<int> mv(r, 0);
                    mv[hw] = t.moves[hi];
                    emit(name, in, top_repr(cur.phys), enqueue(nx), act, std::move(mv));
                }
            }
            continue;
        }

        if (cur.mode == "CJ" || cur.mode == "CE") {
            // Walk the working head to the left marker, one dummy per cell.
            const Symbol hash = hashes[cur.i - 1];
            for (const auto& g : sigma_plus) {
                std::vector<Symbol> in(r, cur.sym1);
                in[hw] = g;
                if (g != kLeftMarker) {
                    FState nx = cur;
                    nx.phys = hash;
                    std::vector<int> mv(r, 0);
                    mv[hw] = -1;
                    emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kPush, hash},
                         std::move(mv));
                } else if (cur.mode == "CJ") {
                    FState nx = cur;
                    nx.mode = "W";
                    nx.i = cur.i + 1;
                    std::vector<int> mv(r, 0);
                    mv[hw] = 1;
                    emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kStay, ""},
                         std::move(mv));
                } else {
                    FState nx = cur;
                    nx.mode = "PR";
                    emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kStay, ""},
                         std::vector<int>(r, 0));
                }
            }
            continue;
        }

        if (cur.mode == "PR") {
            // Enter the stack over the top; everything else waits.
            FState nx = cur;
            nx.mode = "P2";
            std::vector<Symbol> in(r, cur.sym1);
            in[hw] = kLeftMarker;
            emit(name, in, top_repr(cur.phys), enqueue(nx), {StackOp::kUp, ""},
                 std::vector<int>(r, 0));
            continue;
        }

        if (cur.mode == "P2") {
            // Closed heads other than the workhorse step onto the marker so
            // the dummy runs restore them exactly.
            FState nx = cur;
            nx.mode = "RS";
            std::vector<Symbol> in(r, cur.sym1);
            in[hw] = kLeftMarker;
            std::vector<int> mv(r, 0);
            for (int m = 2; m <= cur.ienter; ++m) mv[subphases[m - 1] - 1] = -1;
            emit(name, in, kStackTop, enqueue(nx), {StackOp::kStay, ""}, std::move(mv));
            continue;
        }

        if (cur.mode == "RS") {
            // Restore walk: each dummy cell advances its subphase's head.
            for (const auto& y : cells) {
                if (y == kStackBottom) {
                    FState nx = cur;
                    nx.mode = "CL";
                    emit(name, std::vector<Symbol>(r, ""), y, enqueue(nx), {StackOp::kStay, ""},
                         std::vector<int>(r, 0));
                    continue;
                }
                const int hm = hash_index(y);
                std::vector<int> mv(r, 0);
                std::vector<Symbol> in(r, "");
                if (hm >= 0) {
                    const int head = subphases[hm] - 1;
                    mv[head] = 1;
                    in[head] = "";  // any non-right-marker symbol; emit filters
                }
                emit(name, std::move(in), y, name, {StackOp::kDown, ""}, std::move(mv));
            }
            continue;
        }

        if (cur.mode == "CL") {
            for (const auto& y : cells) {
                if (y == kStackTop) {
                    FState nx = cur;
                    nx.mode = "RP";
                    emit(name, std::vector<Symbol>(r, ""), y, enqueue(nx), {StackOp::kStay, ""},
                         std::vector<int>(r, 0));
                } else {
                    emit(name, std::vector<Symbol>(r, ""), y, name, {StackOp::kUp, ""},
                         std::vector<int>(r, 0));
                }
            }
            continue;
        }

        if (cur.mode == "RP") {
            // Source sits on its top cell, the target on the top sentinel.
            for (const auto& t : spec.transitions) {
                if (t.from != cur.q) continue;
                if (t.stack_guard[0] != top_repr(cur.last_real == "?" ? "?" : cur.last_real))
                    continue;
                if (t.actions[0].op == StackOp::kPush || t.actions[0].op == StackOp::kPop)
                    continue;
                FState nx = cur;
                nx.q = t.to;
                StackAction act = {StackOp::kStay, ""};
                if (t.actions[0].op == StackOp::kDown) {
                    nx.mode = "SK";
                    nx.down = true;
                    nx.extra = true;
                    act = {StackOp::kDown, ""};
                } else if (t.actions[0].op == StackOp::kUp) {
                    nx.mode = "RD";
                } else {
                    nx.mode = "RP";
                }
                emit(name, t.input_guard, kStackTop, enqueue(nx), act, t.moves);
            }
            continue;
        }

        if (cur.mode == "RD") {
            for (const auto& t : spec.transitions) {
                if (t.from != cur.q) continue;
                if (t.actions[0].op == StackOp::kPush || t.actions[0].op == StackOp::kPop)
                    continue;
                FState nx = cur;
                nx.q = t.to;
                StackAction act = t.actions[0];
                if (t.actions[0].op == StackOp::kDown) {
                    nx.mode = "SK";
                    nx.down = true;
                    nx.extra = false;
                } else if (t.actions[0].op == StackOp::kUp) {
                    nx.mode = "SK";
                    nx.down = false;
                    nx.extra = false;
                }
                emit(name, t.input_guard, t.stack_guard[0], enqueue(nx), act, t.moves);
            }
            continue;
        }

        if (cur.mode == "SK") {
            const StackOp dir = cur.down ? StackOp::kDown : StackOp::kUp;
            for (const auto& y : cells) {
                if (hash_index(y) >= 0) {
                    emit(name, std::vector<Symbol>(r, ""), y, name, {dir, ""},
                         std::vector<int>(r, 0));
                } else if (cur.extra) {
                    if (y != kStackBottom && y != kStackTop) {
                        FState nx = cur;
                        nx.extra = false;
                        emit(name, std::vector<Symbol>(r, ""), y, enqueue(nx), {dir, ""},
                             std::vector<int>(r, 0));
                    }
                } else {
                    FState nx = cur;
                    nx.mode = "RD";
                    emit(name, std::vector<Symbol>(r, ""), y, enqueue(nx), {StackOp::kStay, ""},
                         std::vector<int>(r, 0));
                }
            }
            continue;
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), render(init));
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "write subphases serialized onto head " + std::to_string(subphases[0]) +
                         " with dummy displacement runs; " + std::to_string(l) +
                         " subphases to 1";
    return result;
}

}  // namespace transforms
}  // namespace csa
