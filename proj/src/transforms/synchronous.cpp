#include <deque>
#include <functional>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/engine.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

TransformResult make_synchronous(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("make_synchronous requires a checking machine");
    if (spec.determinism == DeterminismMode::kDeterministic)
        throw TransformError("make_synchronous requires a nondeterministic machine");
    if (!validate_spec(spec).ok()) throw TransformError("make_synchronous: invalid input machine");

    const int r = spec.head_count;
    const int k = spec.stack_count;

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = r;
    out.stack_count = k;
    out.stack_alphabets = spec.stack_alphabets;
    out.machine_class = MachineClass::kChecking;
    out.determinism = DeterminismMode::kNondeterministic;
    out.sensing_enabled = spec.sensing_enabled;

    detail::TargetBuilder tb;
    const auto input_tuples = detail::guard_tuples(spec.input_alphabet, r);
    const std::vector<int> zero_moves(r, 0);

    // Enumerates resting tops: stacks up to `guessing` rest on a guessed top,
    // later ones are still empty.
    auto tops_of = [&](int j, int guessing) {
        std::vector<Symbol> opts;
        if (j > guessing) {
            opts = {kStackBottom};
        } else {
            opts = {kStackBottom};
            for (const auto& y : spec.stack_alphabets[j]) opts.push_back(y);
        }
        return opts;
    };
    auto expand_guards = [&](int guessing, const std::function<void(const std::vector<Symbol>&)>& fn) {
        std::vector<Symbol> guard(k);
        std::function<void(int)> rec = [&](int j) {
            if (j == k) {
                fn(guard);
                return;
            }
            for (const auto& y : tops_of(j, guessing)) {
                guard[j] = y;
                rec(j + 1);
            }
        };
        rec(0);
    };

    // Phase 1: guess each stack's content in turn, heads parked.
    for (int j = 0; j < k; ++j) {
        const std::string cur = "guess" + std::to_string(j + 1);
        const std::string nxt = j + 1 < k ? "guess" + std::to_string(j + 2) : "rewind";
        expand_guards(j, [&](const std::vector<Symbol>& guard) {
            for (const auto& in : input_tuples) {
                for (const auto& y : spec.stack_alphabets[j]) {
                    Transition tr;
                    tr.from = cur;
                    tr.input_guard = in;
                    tr.stack_guard = guard;
                    tr.to = cur;
                    tr.actions.assign(k, {StackOp::kStay, ""});
                    tr.actions[j] = {StackOp::kPush, y};
                    tr.moves = zero_moves;
                    tb.add_transition(std::move(tr));
                }
                Transition done;
                done.from = cur;
                done.input_guard = in;
                done.stack_guard = guard;
                done.to = nxt;
                done.actions.assign(k, {StackOp::kStay, ""});
                done.moves = zero_moves;
                tb.add_transition(std::move(done));
            }
        });
    }

    // Phase 2: move every cursor to the bottom (the first read moves).
    expand_guards(k, [&](const std::vector<Symbol>& guard) {
        bool all_bottom = true;
        for (const auto& y : guard) all_bottom &= y == kStackBottom;
        for (const auto& in : input_tuples) {
            Transition tr;
            tr.from = "rewind";
            tr.input_guard = in;
            tr.stack_guard = guard;
            tr.moves = zero_moves;
            if (all_bottom) {
                tr.to = "sim|" + spec.initial_state + "|";
                tr.actions.assign(k, {StackOp::kStay, ""});
            } else {
                tr.to = "rewind";
                tr.actions.resize(k);
                for (int j = 0; j < k; ++j)
                    tr.actions[j] = guard[j] == kStackBottom ? StackAction{StackOp::kStay, ""}
                                                             : StackAction{StackOp::kDown, ""};
            }
            tb.add_transition(std::move(tr));
        }
    });

    // Phase 3: simulate the source. A source push becomes "step up"; the
    // pushed symbol is verified by forcing it as the next guard on that
    // stack, carried in the pending component of the state.
    auto render_sim = [&](const std::string& q, const std::vector<Symbol>& pend) {
        std::string name = "sim|" + q + "|";
        for (const auto& p : pend) name += (p.empty() ? "-" : p) + ";";
        return name;
    };

    std::deque<std::pair<std::string, std::vector<Symbol>>> frontier;
    std::set<std::string> seen;
    std::vector<Symbol> no_pend(k, "");
    frontier.push_back({spec.initial_state, no_pend});
    seen.insert(render_sim(spec.initial_state, no_pend));
    if (spec.is_final(spec.initial_state)) tb.mark_final(render_sim(spec.initial_state, no_pend));

    while (!frontier.empty()) {
        auto [q, pend] = frontier.front();
        frontier.pop_front();
        const std::string cur = render_sim(q, pend);
        tb.add_state(cur);
        for (const auto& t : spec.transitions) {
            if (t.from != q) continue;
            bool live = true;
            std::vector<Symbol> next_pend(k, "");
            Transition tr;
            tr.from = cur;
            tr.input_guard = t.input_guard;
            tr.sense = t.sense;
            tr.moves = t.moves;
            tr.stack_guard.assign(k, "");
            tr.actions.assign(k, {StackOp::kStay, ""});
            for (int j = 0; j < k && live; ++j) {
                if (!pend[j].empty() && t.stack_guard[j] != pend[j]) {
                    live = false;
                    break;
                }
                tr.stack_guard[j] = t.stack_guard[j];
                switch (t.actions[j].op) {
                    case StackOp::kPush:
                        if (t.stack_guard[j] == kStackTop) {
                            live = false;  // cannot occur in a legal run
                            break;
                        }
                        tr.actions[j] = {StackOp::kUp, ""};
                        next_pend[j] = t.actions[j].symbol;
                        break;
                    case StackOp::kStay:
                        break;
                    case StackOp::kDown:
                    case StackOp::kUp:
                        tr.actions[j] = t.actions[j];
                        break;
                    case StackOp::kPop:
                        live = false;
                        break;
                }
            }
            if (!live) continue;
            const std::string to = render_sim(t.to, next_pend);
            if (seen.insert(to).second) frontier.push_back({t.to, next_pend});
            if (spec.is_final(t.to)) tb.mark_final(to);
            tr.to = to;
            tb.add_transition(std::move(tr));
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), "guess1");
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule =
        "stack contents guessed up front, cursors rewound, then the source simulated with writes "
        "replaced by step-up-and-compare; all writing precedes any reading";
    return result;
}

// --- Synchrony decision ------------------------------------------------------

namespace {

// Two-way automaton over candidate contents of stack g. It simulates the
// source's one-way input by guessing symbols, follows stack g through its
// write phase (verifying the candidate cell by cell) and its read phase
// (mirrored by the head), tracks the other stack's top in the state, and
// accepts exactly when the other stack pushes after stack g started reading.
struct SyncNfa {
    MachineSpec machine;
    std::map<int, Symbol> guess_labels;  // transition index -> guessed input symbol
};

SyncNfa build_sync_nfa(const MachineSpec& spec, int g) {
    const int other = 1 - g;
    SyncNfa out;

    std::vector<Symbol> gamma = spec.stack_alphabets[g];

    MachineSpec m;
    m.input_alphabet = gamma;
    m.head_count = 1;
    m.stack_count = 0;
    m.machine_class = MachineClass::kFinite;
    m.determinism = DeterminismMode::kNondeterministic;

    std::vector<Transition> transitions;
    std::vector<std::string> states;
    std::set<std::string> seen_states;
    auto note = [&](const std::string& q) {
        if (seen_states.insert(q).second) states.push_back(q);
    };
    auto emit = [&](const std::string& from, const Symbol& in, const std::string& to, int mv,
                    const Symbol& guessed) {
        note(from);
        note(to);
        Transition tr;
        tr.from = from;
        tr.input_guard = {in};
        tr.to = to;
        tr.moves = {mv};
        transitions.push_back(std::move(tr));
        if (!guessed.empty())
            out.guess_labels[static_cast<int>(transitions.size()) - 1] = guessed;
    };

    auto name = [&](const std::string& ph, const std::string& q, const Symbol& cur,
                    const Symbol& tg, const Symbol& to_) {
        return ph + "|" + q + "|" + cur + "|" + tg + "|" + to_;
    };

    std::vector<Symbol> input_opts = {kRightMarker};
    for (const auto& a : spec.input_alphabet) input_opts.push_back(a);
    std::vector<Symbol> tg_opts = {kStackBottom};
    for (const auto& y : spec.stack_alphabets[g]) tg_opts.push_back(y);
    std::vector<Symbol> to_opts = {kStackBottom};
    for (const auto& y : spec.stack_alphabets[other]) to_opts.push_back(y);
    std::vector<Symbol> dont_care = {kRightMarker};  // head cell during W phase
    dont_care.insert(dont_care.end(), gamma.begin(), gamma.end());

    // Guess the first input symbol.
    for (const auto& a : input_opts)
        for (const auto& w1 : dont_care)
            emit("start", w1, name("W", spec.initial_state, a, kStackBottom, kStackBottom), 0, a);

    const std::string acc = "accept";
    note(acc);

    for (const auto& q : spec.states) {
        for (const auto& cur : input_opts) {
            for (const auto& tg : tg_opts) {
                for (const auto& to_ : to_opts) {
                    for (const auto& t : spec.transitions) {
                        if (t.from != q) continue;
                        if (t.input_guard[0] != cur) continue;
                        const auto& act_g = t.actions[g];
                        const auto& act_o = t.actions[other];
                        const int mv = t.moves[0];
                        if (t.stack_guard[other] != to_) continue;

                        // Write phase of stack g: its scanned symbol is the
                        // tracked top; the other stack must not read yet.
                        if (t.stack_guard[g] == tg &&
                            act_o.op != StackOp::kDown && act_o.op != StackOp::kUp) {
                            const Symbol nt = act_o.op == StackOp::kPush ? act_o.symbol : to_;
                            auto follow = [&](const Symbol& next_in, const Symbol& lbl) {
                                if (act_g.op == StackOp::kPush) {
                                    emit(name("W", q, cur, tg, to_), act_g.symbol,
                                         name("W", t.to, next_in, act_g.symbol, nt), 1, lbl);
                                } else if (act_g.op == StackOp::kStay) {
                                    for (const auto& w1 : dont_care)
                                        emit(name("W", q, cur, tg, to_), w1,
                                             name("W", t.to, next_in, tg, nt), 0, lbl);
                                } else if (act_g.op == StackOp::kDown) {
                                    // Entering downward: the candidate must be
                                    // exactly the written word (head on the
                                    // right marker); align two cells left.
                                    emit(name("W", q, cur, tg, to_), kRightMarker,
                                         name("al", t.to, next_in, tg, nt), -1, lbl);
                                } else if (act_g.op == StackOp::kUp) {
                                    emit(name("W", q, cur, tg, to_), kRightMarker,
                                         name("R", t.to, next_in, tg, nt), 0, lbl);
                                }
                            };
                            if (mv == 0) follow(cur, "");
                            else
                                for (const auto& a2 : input_opts) follow(a2, a2);
                        }

                        // Read phase of stack g: the head mirrors the cursor.
                        if (act_g.op != StackOp::kPush && act_g.op != StackOp::kPop) {
                            Symbol head_guard;
                            if (t.stack_guard[g] == kStackBottom) head_guard = kLeftMarker;
                            else if (t.stack_guard[g] == kStackTop) head_guard = kRightMarker;
                            else head_guard = t.stack_guard[g];
                            if (act_o.op == StackOp::kDown || act_o.op == StackOp::kUp)
                                continue;  // the other stack enters its stack: not a violation
                            const int hmv = act_g.op == StackOp::kDown ? -1
                                            : act_g.op == StackOp::kUp ? 1
                                                                       : 0;
                            if (act_o.op == StackOp::kPush) {
                                // A write after stack g entered reading.
                                emit(name("R", q, cur, tg, to_), head_guard, acc, 0, "");
                                continue;
                            }
                            auto follow = [&](const Symbol& next_in, const Symbol& lbl) {
                                emit(name("R", q, cur, tg, to_), head_guard,
                                     name("R", t.to, next_in, tg, to_), hmv, lbl);
                            };
                            if (mv == 0) follow(cur, "");
                            else
                                for (const auto& a2 : input_opts) follow(a2, a2);
                        }
                    }
                }
            }
        }
    }

    // Alignment after a downward entry: step once more left so the head
    // mirrors a cursor on the cell below the written top.
    for (const auto& q : spec.states)
        for (const auto& cur : input_opts)
            for (const auto& tg : tg_opts)
                for (const auto& to_ : to_opts)
                    for (const auto& w1 : gamma)
                        emit(name("al", q, cur, tg, to_), w1, name("R", q, cur, tg, to_), -1, "");

    m.transitions = std::move(transitions);
    m.states = states;
    m.initial_state = "start";
    note("start");
    m.states = states;
    m.final_states = {acc};
    out.machine = std::move(m);
    return out;
}

}  // namespace

SynchronyDecision decide_synchronous(const MachineSpec& spec, std::size_t table_cap) {
    if (spec.stack_count != 2) throw TransformError("decide_synchronous requires two stacks");
    if (spec.head_count != 1) throw TransformError("decide_synchronous requires one input head");
    for (const auto& t : spec.transitions)
        for (int mv : t.moves)
            if (mv < 0) throw TransformError("decide_synchronous requires one-way input");
    if (!validate_spec(spec).ok())
        throw TransformError("decide_synchronous: invalid input machine");

    SynchronyDecision decision;
    for (int g = 0; g < 2; ++g) {
        SyncNfa nfa = build_sync_nfa(spec, g);
        EmptinessResult em = two_way_emptiness(nfa.machine, table_cap);
        if (em.aborted) {
            decision.diagnostic = "behavior table cap exceeded";
            decision.synchronous = false;
            return decision;
        }
        if (em.empty) continue;

        decision.synchronous = false;
        decision.stack_witness = em.witness;

        // Recover the guessed one-way input by replaying the automaton on the
        // witness and reading guess labels off the accepting path.
        engine::CompiledMachine cm(nfa.machine);
        RunBudget budget;
        budget.max_steps = 1u << 20;
        budget.max_configurations =
            static_cast<std::uint64_t>(nfa.machine.states.size() + 2) * (em.witness.size() + 3);
        engine::Verdict v = engine::decide_membership(cm, cm.intern_word(em.witness), budget);
        if (v.accepted()) {
            for (int idx : v.witness_transitions) {
                auto it = nfa.guess_labels.find(idx);
                if (it != nfa.guess_labels.end() && it->second != kRightMarker)
                    decision.input_witness.push_back(it->second);
            }
        }
        return decision;
    }
    return decision;
}

}  // namespace transforms
}  // namespace csa
