#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

// Stack elimination for deterministic normal-form checking machines.
//
// Head layout of the target (0-based): H = 0..r-1 simulate the source heads;
// I = r..2r-1 hold a snapshot of the source head positions at the moment the
// scanned cell of the eliminated stack was pushed (the snapshot state rides in
// the finite control); J = 2r..3r-1 replay the write phase from the start to
// recover the predecessor snapshot when the cursor moves down. Stage 1 runs
// the write phase with the I heads as an r-digit base-(n+2) move counter and
// rejects when it overflows, which only happens when the write phase loops
// forever.

namespace csa {
namespace transforms {

namespace {

struct Emitter {
    const MachineSpec& src;
    MachineSpec& out;
    detail::TargetBuilder& tb;
    std::vector<Symbol> sigma_plus;

    Emitter(const MachineSpec& s, MachineSpec& o, detail::TargetBuilder& t)
        : src(s), out(o), tb(t) {
        sigma_plus = {kLeftMarker, kRightMarker};
        sigma_plus.insert(sigma_plus.end(), s.input_alphabet.begin(), s.input_alphabet.end());
    }

    // Emits transitions with the given fixed head guards (head -> symbol),
    // expanding unconstrained heads; illegal marker/move pairs are dropped.
    // Output stack guards: fixed entries are used as-is, empty entries are
    // expanded over the stack's full symbol range.
    void operator()(const std::string& from, const std::map<int, Symbol>& fixed,
                    const std::vector<int>& moves, std::vector<Symbol> stack_guard,
                    std::vector<StackAction> actions, std::vector<SenseTest> sense,
                    const std::string& to) {
        const int heads = out.head_count;
        std::vector<Transition> batch(1);
        batch[0].from = from;
        batch[0].to = to;
        batch[0].moves = moves;
        batch[0].sense = std::move(sense);
        batch[0].input_guard.assign(heads, "");
        for (const auto& [h, s] : fixed) batch[0].input_guard[h] = s;
        batch[0].stack_guard = std::move(stack_guard);
        batch[0].actions = std::move(actions);
        for (int h = 0; h < heads; ++h) {
            if (fixed.count(h)) continue;
            std::vector<Transition> next;
            for (const auto& base : batch)
                for (const auto& s : sigma_plus) {
                    if (s == kLeftMarker && moves[h] == -1) continue;
                    if (s == kRightMarker && moves[h] == 1) continue;
                    Transition t2 = base;
                    t2.input_guard[h] = s;
                    next.push_back(std::move(t2));
                }
            batch = std::move(next);
        }
        for (int j = 0; j < out.stack_count; ++j) {
            bool open = true;
            for (auto& t2 : batch)
                if (!t2.stack_guard[j].empty()) open = false;
            if (!open) continue;
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
            bool legal = true;
            for (const auto& [h, s] : fixed) {
                if (s == kLeftMarker && moves[h] == -1) legal = false;
                if (s == kRightMarker && moves[h] == 1) legal = false;
            }
            if (legal) tb.add_transition(std::move(t2));
        }
    }
};

}  // namespace

TransformResult eliminate_one_stack(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("eliminate_one_stack requires a checking machine");
    if (spec.determinism != DeterminismMode::kDeterministic)
        throw TransformError("eliminate_one_stack requires a deterministic machine");
    if (spec.stack_count < 1) throw TransformError("eliminate_one_stack requires a stack");
    if (!validate_spec(spec).ok())
        throw TransformError("eliminate_one_stack: invalid input machine");
    const StackDiscipline disc = derive_stack_discipline(spec, true);

    const int r = spec.head_count;
    const int k = spec.stack_count;
    const int l = static_cast<int>(spec.states.size());

    std::map<std::string, int> sid;
    for (std::size_t i = 0; i < spec.states.size(); ++i) sid[spec.states[i]] = static_cast<int>(i);
    auto status_of = [&](const std::string& q) -> const std::vector<std::string>& {
        return disc.status[sid.at(q)];
    };
    auto top_of = [](const std::string& st) -> Symbol {
        return st == "?" ? Symbol(kStackBottom) : Symbol(st);
    };

    // Union alphabet: the stack kept at output slot j depends on which source
    // stack entered reading first, so every output stack carries the union.
    std::vector<Symbol> union_gamma;
    {
        std::set<Symbol> seen;
        for (const auto& g : spec.stack_alphabets)
            for (const auto& y : g)
                if (seen.insert(y).second) union_gamma.push_back(y);
    }

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = 3 * r;
    out.stack_count = k - 1;
    out.stack_alphabets.assign(k - 1, union_gamma);
    out.machine_class = k - 1 == 0 ? MachineClass::kFinite : MachineClass::kChecking;
    out.determinism = DeterminismMode::kDeterministic;
    out.sensing_enabled = true;

    detail::TargetBuilder tb;
    Emitter emit(spec, out, tb);
    const std::vector<int> zero(3 * r, 0);
    const std::vector<Symbol> stk_any(k - 1, "");
    const std::vector<StackAction> stk_stay(k - 1, {StackOp::kStay, ""});

    auto mark_if_final = [&](const std::string& q, const std::string& name) {
        if (spec.is_final(q)) tb.mark_final(name);
    };

    auto shift_sense = [&](const std::vector<SenseTest>& sense, int offset) {
        std::vector<SenseTest> outp;
        for (const auto& s : sense) outp.push_back({s.left + offset, s.right + offset, s.equal});
        return outp;
    };

    // Lookup: unique source transition from q with writing tops forced by the
    // discipline map and the given reading-guard overrides.
    auto source_moves = [&](const std::string& q) {
        std::vector<const Transition*> ts;
        for (const auto& t : spec.transitions)
            if (t.from == q) ts.push_back(&t);
        return ts;
    };

    // ---- Stage 0: park the I and J heads on the left marker. -------------
    {
        // Move every I/J head that is not yet on the marker one step left.
        // One transition per subset is avoided by letting each head's own
        // guard choose its move: emitted per combination below.
        std::vector<int> aux;
        for (int h = r; h < 3 * r; ++h) aux.push_back(h);
        // Combination space over aux symbols: move -1 unless on the marker.
        std::vector<std::map<int, Symbol>> combos(1);
        for (int h : aux) {
            std::vector<std::map<int, Symbol>> next;
            for (const auto& c : combos)
                for (const auto& s : emit.sigma_plus) {
                    auto c2 = c;
                    c2[h] = s;
                    next.push_back(std::move(c2));
                }
            combos = std::move(next);
        }
        for (const auto& c : combos) {
            bool all_parked = true;
            std::vector<int> mv = zero;
            for (int h : aux)
                if (c.at(h) != kLeftMarker) {
                    all_parked = false;
                    mv[h] = -1;
                }
            emit("park", c, mv, stk_any, stk_stay, {},
                 all_parked ? "s1|" + spec.initial_state + "|0" : "park");
        }
        mark_if_final(spec.initial_state, "s1|" + spec.initial_state + "|0");
    }

    // ---- Stage 1: run the write phase, counting moves. --------------------
    for (const auto& q : spec.states) {
        if (!disc.reachable[sid.at(q)]) continue;
        const auto& st = status_of(q);
        bool all_writing = true;
        for (const auto& s : st) all_writing &= !s.empty();
        if (!all_writing) continue;  // stage 1 states only cover the write phase

        for (int c = 0; c < l; ++c) {
            const std::string cur = "s1|" + q + "|" + std::to_string(c);
            mark_if_final(q, cur);
            for (const Transition* t : source_moves(q)) {
                bool live = true;
                int entering = -1;
                for (int j = 0; j < k; ++j) {
                    if (t->stack_guard[j] != top_of(st[j])) live = false;
                    if (t->actions[j].op == StackOp::kDown || t->actions[j].op == StackOp::kUp)
                        if (entering < 0) entering = j;
                }
                if (!live) continue;
                std::map<int, Symbol> fixed;
                for (int h = 0; h < r; ++h) fixed[h] = t->input_guard[h];
                if (entering >= 0) {
                    // The first stack to read is found; restart for stage 2.
                    emit(cur, fixed, zero, stk_any, stk_stay, shift_sense(t->sense, 0),
                         "rst|" + std::to_string(entering));
                    continue;
                }
                std::vector<int> mv = zero;
                for (int h = 0; h < r; ++h) mv[h] = t->moves[h];
                const std::string to = c + 1 < l ? "s1|" + t->to + "|" + std::to_string(c + 1)
                                                 : "inc|" + t->to + "|" + std::to_string(r - 1);
                emit(cur, fixed, mv, stk_any, stk_stay, shift_sense(t->sense, 0), to);
                if (c + 1 < l) mark_if_final(t->to, to);
            }
        }
        // Counter roll-over: increment the I digits, least significant last.
        for (int d = r - 1; d >= 0; --d) {
            const std::string inc = "inc|" + q + "|" + std::to_string(d);
            mark_if_final(q, inc);
            {
                std::vector<int> mv = zero;
                mv[r + d] = 1;
                for (const auto& s : emit.sigma_plus) {
                    if (s == kRightMarker) continue;
                    emit(inc, {{r + d, s}}, mv, stk_any, stk_stay, {}, "s1|" + q + "|0");
                }
            }
            // Digit overflow: rewind it and carry into the next digit; if no
            // digit remains the write phase provably loops, so halt.
            const std::string rw = "rw|" + q + "|" + std::to_string(d);
            mark_if_final(q, rw);
            emit(inc, {{r + d, kRightMarker}}, zero, stk_any, stk_stay, {}, rw);
            {
                std::vector<int> mv = zero;
                mv[r + d] = -1;
                for (const auto& s : emit.sigma_plus)
                    if (s != kLeftMarker) emit(rw, {{r + d, s}}, mv, stk_any, stk_stay, {}, rw);
            }
            if (d > 0)
                emit(rw, {{r + d, kLeftMarker}}, zero, stk_any, stk_stay, {},
                     "inc|" + q + "|" + std::to_string(d - 1));
        }
    }

    // ---- Stage 2 ----------------------------------------------------------
    for (int e = 0; e < k; ++e) {
        const std::string etag = std::to_string(e);
        // Output stack slot of source stack j != e.
        auto slot = [&](int j) { return j < e ? j : j - 1; };

        // Reset: walk H and I to the marker, then step both groups to cell 1.
        {
            std::vector<int> aux;
            for (int h = 0; h < 2 * r; ++h) aux.push_back(h);
            std::vector<std::map<int, Symbol>> combos(1);
            for (int h : aux) {
                std::vector<std::map<int, Symbol>> next;
                for (const auto& c : combos)
                    for (const auto& s : emit.sigma_plus) {
                        auto c2 = c;
                        c2[h] = s;
                        next.push_back(std::move(c2));
                    }
                combos = std::move(next);
            }
            const std::string rst = "rst|" + etag;
            for (const auto& c : combos) {
                bool parked = true;
                std::vector<int> mv = zero;
                for (int h : aux)
                    if (c.at(h) != kLeftMarker) {
                        parked = false;
                        mv[h] = -1;
                    }
                if (parked)
                    for (int h : aux) mv[h] = 1;
                emit(rst, c, mv, stk_any, stk_stay, {},
                     parked ? "w|" + etag + "|" + spec.initial_state : rst);
            }
            mark_if_final(spec.initial_state, "w|" + etag + "|" + spec.initial_state);
        }

        // Write-phase simulation with I mirroring H.
        for (const auto& q : spec.states) {
            if (!disc.reachable[sid.at(q)]) continue;
            const auto& st = status_of(q);
            bool all_writing = true;
            for (const auto& s : st) all_writing &= !s.empty();
            if (!all_writing) continue;
            const std::string cur = "w|" + etag + "|" + q;
            mark_if_final(q, cur);
            for (const Transition* t : source_moves(q)) {
                bool live = true;
                int entering = -1;
                for (int j = 0; j < k; ++j) {
                    if (t->stack_guard[j] != top_of(st[j])) live = false;
                    if (t->actions[j].op == StackOp::kDown || t->actions[j].op == StackOp::kUp)
                        if (entering < 0) entering = j;
                }
                if (!live) continue;
                if (entering >= 0 && entering != e) continue;  // diverges from stage 1's pick

                std::map<int, Symbol> fixed;
                std::vector<int> mv = zero;
                for (int h = 0; h < r; ++h) {
                    fixed[h] = t->input_guard[h];
                    mv[h] = t->moves[h];
                }
                std::vector<Symbol> sg(k - 1, "");
                std::vector<StackAction> sa(k - 1, {StackOp::kStay, ""});
                for (int j = 0; j < k; ++j) {
                    if (j == e) continue;
                    sg[slot(j)] = top_of(st[j]);
                    sa[slot(j)] = t->actions[j];
                }
                if (entering < 0) {
                    // Pure write move: I mirrors H.
                    for (int h = 0; h < r; ++h) {
                        fixed[r + h] = t->input_guard[h];
                        mv[r + h] = t->moves[h];
                    }
                    emit(cur, fixed, mv, sg, sa, shift_sense(t->sense, 0),
                         "w|" + etag + "|" + t->to);
                    mark_if_final(t->to, "w|" + etag + "|" + t->to);
                } else if (t->actions[e].op == StackOp::kUp) {
                    // Enter reading over the top: snapshot stays at C_T.
                    emit(cur, fixed, mv, sg, sa, shift_sense(t->sense, 0),
                         "top|" + etag + "|" + t->to + "|" + q);
                    mark_if_final(t->to, "top|" + etag + "|" + t->to + "|" + q);
                } else {
                    // Enter reading downward: replay to the predecessor cell.
                    emit(cur, fixed, mv, sg, sa, shift_sense(t->sense, 0),
                         "rj|" + etag + "|" + t->to + "|" + q);
                    mark_if_final(t->to, "rj|" + etag + "|" + t->to + "|" + q);
                }
            }
        }

        // Read-phase simulation states. qi is the snapshot state; the scanned
        // symbol of the eliminated stack is its discipline top ("?": bottom).
        for (const auto& qh : spec.states) {
            if (!disc.reachable[sid.at(qh)]) continue;
            if (!status_of(qh)[e].empty()) continue;  // stack e reading here
            const std::string& sth_e_check = status_of(qh)[e];
            (void)sth_e_check;
            for (const auto& qi : spec.states) {
                if (!disc.reachable[sid.at(qi)]) continue;
                const auto& sti = status_of(qi);
                bool snapshot_ok = true;
                for (const auto& s : sti) snapshot_ok &= !s.empty();
                if (!snapshot_ok) continue;  // snapshots live in the write phase

                // ---- cursor on a cell (or the bottom marker) --------------
                {
                    const std::string cur = "c|" + etag + "|" + qh + "|" + qi;
                    mark_if_final(qh, cur);
                    const Symbol scan_e = top_of(sti[e]);
                    for (const Transition* t : source_moves(qh)) {
                        if (t->stack_guard[e] != scan_e) continue;
                        if (t->actions[e].op == StackOp::kPush ||
                            t->actions[e].op == StackOp::kPop)
                            continue;  // pruned by checking discipline
                        bool live = true;
                        std::vector<Symbol> sg(k - 1, "");
                        std::vector<StackAction> sa(k - 1, {StackOp::kStay, ""});
                        for (int j = 0; j < k; ++j) {
                            if (j == e) continue;
                            const auto& stj = status_of(qh)[j];
                            if (!stj.empty()) {
                                if (t->stack_guard[j] != top_of(stj)) live = false;
                                sg[slot(j)] = top_of(stj);
                            } else {
                                sg[slot(j)] = t->stack_guard[j];
                            }
                            sa[slot(j)] = t->actions[j];
                        }
                        if (!live) continue;
                        std::map<int, Symbol> fixed;
                        std::vector<int> mv = zero;
                        for (int h = 0; h < r; ++h) {
                            fixed[h] = t->input_guard[h];
                            mv[h] = t->moves[h];
                        }
                        auto sense = shift_sense(t->sense, 0);

                        if (t->actions[e].op == StackOp::kStay) {
                            emit(cur, fixed, mv, sg, sa, sense, "c|" + etag + "|" + t->to + "|" + qi);
                            mark_if_final(t->to, "c|" + etag + "|" + t->to + "|" + qi);
                        } else if (t->actions[e].op == StackOp::kDown) {
                            emit(cur, fixed, mv, sg, sa, sense,
                                 "rj|" + etag + "|" + t->to + "|" + qi);
                            mark_if_final(t->to, "rj|" + etag + "|" + t->to + "|" + qi);
                        } else {
                            // Up: advance the snapshot one write move, read
                            // through the I heads.
                            for (const Transition* t2 : source_moves(qi)) {
                                bool live2 = true;
                                for (int j = 0; j < k; ++j)
                                    if (t2->stack_guard[j] != top_of(sti[j])) live2 = false;
                                if (!live2) continue;
                                auto fixed2 = fixed;
                                auto mv2 = mv;
                                for (int h = 0; h < r; ++h) fixed2[r + h] = t2->input_guard[h];
                                auto sense2 = sense;
                                for (const auto& s2 : shift_sense(t2->sense, r))
                                    sense2.push_back(s2);
                                if (t2->actions[e].op == StackOp::kPush) {
                                    for (int h = 0; h < r; ++h) mv2[r + h] = t2->moves[h];
                                    emit(cur, fixed2, mv2, sg, sa, sense2,
                                         "c|" + etag + "|" + t->to + "|" + t2->to);
                                    mark_if_final(t->to, "c|" + etag + "|" + t->to + "|" + t2->to);
                                } else {
                                    // The snapshot's next move enters reading:
                                    // the cell above is the top sentinel.
                                    emit(cur, fixed2, mv2, sg, sa, sense2,
                                         "top|" + etag + "|" + t->to + "|" + qi);
                                    mark_if_final(t->to, "top|" + etag + "|" + t->to + "|" + qi);
                                }
                            }
                        }
                    }
                }

                // ---- cursor on the top sentinel ----------------------------
                {
                    const std::string cur = "top|" + etag + "|" + qh + "|" + qi;
                    mark_if_final(qh, cur);
                    for (const Transition* t : source_moves(qh)) {
                        if (t->stack_guard[e] != kStackTop) continue;
                        if (t->actions[e].op == StackOp::kPush ||
                            t->actions[e].op == StackOp::kPop || t->actions[e].op == StackOp::kUp)
                            continue;
                        bool live = true;
                        std::vector<Symbol> sg(k - 1, "");
                        std::vector<StackAction> sa(k - 1, {StackOp::kStay, ""});
                        for (int j = 0; j < k; ++j) {
                            if (j == e) continue;
                            const auto& stj = status_of(qh)[j];
                            if (!stj.empty()) {
                                if (t->stack_guard[j] != top_of(stj)) live = false;
                                sg[slot(j)] = top_of(stj);
                            } else {
                                sg[slot(j)] = t->stack_guard[j];
                            }
                            sa[slot(j)] = t->actions[j];
                        }
                        if (!live) continue;
                        std::map<int, Symbol> fixed;
                        std::vector<int> mv = zero;
                        for (int h = 0; h < r; ++h) {
                            fixed[h] = t->input_guard[h];
                            mv[h] = t->moves[h];
                        }
                        const std::string to_tag = t->actions[e].op == StackOp::kStay ? "top" : "c";
                        emit(cur, fixed, mv, sg, sa, shift_sense(t->sense, 0),
                             to_tag + "|" + etag + "|" + t->to + "|" + qi);
                        mark_if_final(t->to, to_tag + "|" + etag + "|" + t->to + "|" + qi);
                    }
                }

                // ---- replay machinery --------------------------------------
                {
                    // Reset J to cell 1, then step the replay from the start.
                    const std::string rj = "rj|" + etag + "|" + qh + "|" + qi;
                    mark_if_final(qh, rj);
                    std::vector<int> aux;
                    for (int h = 2 * r; h < 3 * r; ++h) aux.push_back(h);
                    std::vector<std::map<int, Symbol>> combos(1);
                    for (int h : aux) {
                        std::vector<std::map<int, Symbol>> next;
                        for (const auto& c : combos)
                            for (const auto& s : emit.sigma_plus) {
                                auto c2 = c;
                                c2[h] = s;
                                next.push_back(std::move(c2));
                            }
                        combos = std::move(next);
                    }
                    for (const auto& c : combos) {
                        bool parked = true;
                        std::vector<int> mv = zero;
                        for (int h : aux)
                            if (c.at(h) != kLeftMarker) {
                                parked = false;
                                mv[h] = -1;
                            }
                        if (parked)
                            for (int h : aux) mv[h] = 1;
                        emit(rj, c, mv, stk_any, stk_stay, {},
                             parked ? "rs|" + etag + "|" + qh + "|" + qi + "|" +
                                          spec.initial_state
                                    : rj);
                    }
                }
                for (const auto& qj : spec.states) {
                    if (!disc.reachable[sid.at(qj)]) continue;
                    const auto& stj = status_of(qj);
                    bool writing = true;
                    for (const auto& s : stj) writing &= !s.empty();
                    if (!writing) continue;

                    // Replay step: apply the unique write move at qj.
                    const std::string rs = "rs|" + etag + "|" + qh + "|" + qi + "|" + qj;
                    mark_if_final(qh, rs);
                    for (const Transition* t3 : source_moves(qj)) {
                        bool live = true;
                        bool enters = false;
                        for (int j = 0; j < k; ++j) {
                            if (t3->stack_guard[j] != top_of(stj[j])) live = false;
                            if (t3->actions[j].op == StackOp::kDown ||
                                t3->actions[j].op == StackOp::kUp)
                                enters = true;
                        }
                        if (!live || enters) continue;
                        std::map<int, Symbol> fixed;
                        std::vector<int> mv = zero;
                        for (int h = 0; h < r; ++h) {
                            fixed[2 * r + h] = t3->input_guard[h];
                            mv[2 * r + h] = t3->moves[h];
                        }
                        // Identify t3 by its index in the source list.
                        int t3_idx = 0;
                        for (std::size_t ti = 0; ti < spec.transitions.size(); ++ti)
                            if (&spec.transitions[ti] == t3) t3_idx = static_cast<int>(ti);
                        emit(rs, fixed, mv, stk_any, stk_stay, shift_sense(t3->sense, 2 * r),
                             "rc|" + etag + "|" + qh + "|" + qi + "|" + std::to_string(t3_idx));
                    }
                }
                // Replay check states are generated per applied transition.
                for (std::size_t ti = 0; ti < spec.transitions.size(); ++ti) {
                    const Transition& t3 = spec.transitions[ti];
                    if (!disc.reachable[sid.at(t3.from)]) continue;
                    {
                        const auto& stf = status_of(t3.from);
                        bool writing = true;
                        for (const auto& s : stf) writing &= !s.empty();
                        if (!writing) continue;
                    }
                    const std::string rc =
                        "rc|" + etag + "|" + qh + "|" + qi + "|" + std::to_string(ti);
                    mark_if_final(qh, rc);
                    if (t3.to == qi) {
                        // Possible match: all J heads on their I partners and
                        // the states agree. On a match, undo t3 on I.
                        std::vector<SenseTest> all_eq;
                        for (int h = 0; h < r; ++h) all_eq.push_back({r + h + 1, 2 * r + h + 1, true});
                        std::map<int, Symbol> fixed;
                        std::vector<int> mv = zero;
                        bool undo_legal = true;
                        for (int h = 0; h < r; ++h) mv[r + h] = -t3.moves[h];
                        (void)undo_legal;
                        emit(rc, fixed, mv, stk_any, stk_stay, all_eq,
                             "c|" + etag + "|" + qh + "|" + t3.from);
                        mark_if_final(qh, "c|" + etag + "|" + qh + "|" + t3.from);
                        // Mismatch: continue the replay from t3's target.
                        for (int h = 0; h < r; ++h) {
                            std::vector<SenseTest> prefix_eq;
                            for (int h2 = 0; h2 < h; ++h2)
                                prefix_eq.push_back({r + h2 + 1, 2 * r + h2 + 1, true});
                            prefix_eq.push_back({r + h + 1, 2 * r + h + 1, false});
                            emit(rc, {}, zero, stk_any, stk_stay, prefix_eq,
                                 "rs|" + etag + "|" + qh + "|" + qi + "|" + t3.to);
                        }
                    } else {
                        emit(rc, {}, zero, stk_any, stk_stay, {},
                             "rs|" + etag + "|" + qh + "|" + qi + "|" + t3.to);
                    }
                }
            }
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), "park");
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "stack elimination: " + std::to_string(r) + " heads, " +
                         std::to_string(k) + " stacks to " + std::to_string(3 * r) + " heads, " +
                         std::to_string(k - 1) + " stacks (3r heads, k-1 stacks)";
    return result;
}

}  // namespace transforms
}  // namespace csa
