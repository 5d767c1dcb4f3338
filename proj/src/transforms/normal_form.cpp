#include <deque>
#include <map>
#include <stdexcept>

#include "common.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

StackDiscipline derive_stack_discipline(const MachineSpec& spec, bool require_normal_form) {
    const int k = spec.stack_count;
    std::map<std::string, int> state_id;
    for (std::size_t i = 0; i < spec.states.size(); ++i)
        state_id[spec.states[i]] = static_cast<int>(i);

    StackDiscipline d;
    d.status.assign(spec.states.size(), {});
    d.reachable.assign(spec.states.size(), false);

    const int init = state_id.at(spec.initial_state);
    d.status[init].assign(k, "?");
    d.reachable[init] = true;
    std::deque<int> frontier{init};

    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop_front();
        const auto& st = d.status[cur];
        for (const auto& tr : spec.transitions) {
            if (state_id.at(tr.from) != cur) continue;
            // A transition whose guard contradicts the state-determined top of
            // a writing stack can never fire.
            bool live = true;
            for (int j = 0; j < k && live; ++j) {
                if (st[j].empty()) continue;  // reading: guard is run-dependent
                const std::string top = st[j] == "?" ? kStackBottom : st[j];
                if (tr.stack_guard[j] != top) live = false;
            }
            if (!live) continue;

            std::vector<std::string> next = st;
            for (int j = 0; j < k; ++j) {
                const auto& act = tr.actions[j];
                switch (act.op) {
                    case StackOp::kPush:
                        if (next[j].empty()) {
                            live = false;  // push after reading: pruned for checking machines
                            break;
                        }
                        next[j] = act.symbol;
                        break;
                    case StackOp::kDown:
                    case StackOp::kUp:
                        next[j] = "";
                        break;
                    case StackOp::kStay:
                        if (require_normal_form && !next[j].empty()) {
                            // The entering move is the only non-push allowed on
                            // a writing stack, and stay does not enter.
                            throw TransformError(
                                "not in normal form: writing stack kept idle by transition from '" +
                                tr.from + "'");
                        }
                        break;
                    case StackOp::kPop:
                        throw TransformError("stack discipline derivation does not support pop");
                }
            }
            if (!live) continue;

            const int to = state_id.at(tr.to);
            if (!d.reachable[to]) {
                d.reachable[to] = true;
                d.status[to] = next;
                frontier.push_back(to);
            } else if (d.status[to] != next) {
                throw TransformError("inconsistent write/read discipline at state '" + tr.to +
                                     "': machine is not in normal form shape");
            }
        }
    }
    return d;
}

namespace {

struct Pending {
    int stack = 0;
    bool down = true;
    bool extra = false;
};

struct WStatus {
    bool reading = false;
    std::string last_real = "?";  // "?" before the first push
    bool dummy_top = false;
};

struct NFState {
    std::string q;
    std::vector<WStatus> st;
    std::vector<Pending> pending;
};

std::string render(const NFState& s) {
    std::string out = "nf|" + s.q;
    for (const auto& w : s.st) {
        out += w.reading ? "|R" : "|W" + std::string(w.dummy_top ? "d" : "") + ":" + w.last_real;
    }
    for (const auto& p : s.pending)
        out += "|skip" + std::to_string(p.stack) + (p.down ? "v" : "^") + (p.extra ? "+" : "");
    return out;
}

}  // namespace

TransformResult to_normal_form(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("to_normal_form requires a checking machine");
    ValidationReport vr = validate_spec(spec);
    if (!vr.ok()) throw TransformError("to_normal_form: input machine is invalid");

    const int r = spec.head_count;
    const int k = spec.stack_count;

    // Fresh dummy symbol shared by all stacks.
    std::string dummy = "#";
    auto used = [&spec](const std::string& s) {
        for (const auto& g : spec.stack_alphabets)
            for (const auto& y : g)
                if (y == s) return true;
        return false;
    };
    while (used(dummy)) dummy += "#";

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = r;
    out.stack_count = k;
    out.stack_alphabets = spec.stack_alphabets;
    for (auto& g : out.stack_alphabets) g.push_back(dummy);
    out.machine_class = MachineClass::kChecking;
    out.determinism = spec.determinism;
    out.sensing_enabled = spec.sensing_enabled;

    detail::TargetBuilder tb;
    const auto input_tuples = detail::guard_tuples(spec.input_alphabet, r);

    NFState init;
    init.q = spec.initial_state;
    init.st.assign(k, WStatus{});

    std::deque<NFState> frontier{init};
    std::map<std::string, bool> seen{{render(init), true}};

    auto enqueue = [&](const NFState& s) {
        const std::string name = render(s);
        if (seen.emplace(name, true).second) frontier.push_back(s);
        if (spec.is_final(s.q)) tb.mark_final(name);
        return name;
    };
    if (spec.is_final(init.q)) tb.mark_final(render(init));

    while (!frontier.empty()) {
        NFState cur = frontier.front();
        frontier.pop_front();
        const std::string cur_name = render(cur);
        tb.add_state(cur_name);

        if (!cur.pending.empty()) {
            // Resolve the front skip: move through dummy cells, step once more
            // when the entering move started above a dummy run, then hand
            // over to the remaining skips.
            const Pending p = cur.pending.front();
            const std::string dir_sym = p.down ? "down" : "up";
            auto emit_skip = [&](const std::string& guard_j, bool move_j, bool clear_extra,
                                 bool done) {
                NFState next = cur;
                if (clear_extra) next.pending.front().extra = false;
                if (done) next.pending.erase(next.pending.begin());
                for (auto& w : next.st)
                    if (!w.reading) w.dummy_top = true;
                for (const auto& in : input_tuples) {
                    Transition tr;
                    tr.from = cur_name;
                    tr.input_guard = in;
                    tr.moves.assign(r, 0);
                    tr.stack_guard.assign(k, "");
                    tr.actions.assign(k, {StackOp::kStay, ""});
                    for (int j = 0; j < k; ++j) {
                        if (j == p.stack) {
                            tr.stack_guard[j] = guard_j;
                            tr.actions[j] = move_j ? StackAction{p.down ? StackOp::kDown : StackOp::kUp, ""}
                                                   : StackAction{StackOp::kStay, ""};
                        } else if (!cur.st[j].reading) {
                            tr.stack_guard[j] =
                                cur.st[j].dummy_top
                                    ? dummy
                                    : (cur.st[j].last_real == "?" ? kStackBottom : cur.st[j].last_real);
                            tr.actions[j] = {StackOp::kPush, dummy};
                        } else {
                            tr.stack_guard[j] = "";  // filled below per reading guard
                        }
                    }
                    // Reading stacks other than the skipping one keep their
                    // position; their scanned symbol is run-dependent, so
                    // enumerate it.
                    std::vector<int> open;
                    for (int j = 0; j < k; ++j)
                        if (tr.stack_guard[j].empty() && j != p.stack) open.push_back(j);
                    std::vector<Transition> batch{tr};
                    for (int j : open) {
                        std::vector<Transition> expanded;
                        std::vector<std::string> opts = {kStackBottom, kStackTop};
                        for (const auto& y : out.stack_alphabets[j]) opts.push_back(y);
                        for (const auto& base : batch)
                            for (const auto& y : opts) {
                                Transition t2 = base;
                                t2.stack_guard[j] = y;
                                expanded.push_back(std::move(t2));
                            }
                        batch = std::move(expanded);
                    }
                    for (auto& t2 : batch) {
                        t2.to = enqueue(next);
                        tb.add_transition(std::move(t2));
                    }
                }
            };

            emit_skip(dummy, true, false, false);  // still inside the dummy run
            std::vector<std::string> real_opts = {kStackBottom, kStackTop};
            for (const auto& y : spec.stack_alphabets[p.stack]) real_opts.push_back(y);
            for (const auto& y : real_opts) {
                if (p.extra) {
                    if (y != kStackBottom && y != kStackTop) emit_skip(y, true, true, false);
                } else {
                    emit_skip(y, false, false, true);
                }
            }
            continue;
        }

        // Base state: translate every live source transition.
        for (const auto& t : spec.transitions) {
            if (t.from != cur.q) continue;
            bool live = true;
            for (int j = 0; j < k && live; ++j) {
                if (cur.st[j].reading) {
                    if (t.actions[j].op == StackOp::kPush) live = false;  // pruned move
                } else {
                    const std::string source_top =
                        cur.st[j].last_real == "?" ? kStackBottom : cur.st[j].last_real;
                    if (t.stack_guard[j] != source_top) live = false;
                }
            }
            if (!live) continue;

            NFState next = cur;
            next.q = t.to;
            Transition tr;
            tr.from = cur_name;
            tr.input_guard = t.input_guard;
            tr.sense = t.sense;
            tr.moves = t.moves;
            tr.stack_guard.assign(k, "");
            tr.actions.assign(k, {StackOp::kStay, ""});
            for (int j = 0; j < k; ++j) {
                if (cur.st[j].reading) {
                    tr.stack_guard[j] = t.stack_guard[j];
                    tr.actions[j] = t.actions[j];
                    if (t.actions[j].op == StackOp::kDown)
                        next.pending.push_back({j, true, false});
                    else if (t.actions[j].op == StackOp::kUp)
                        next.pending.push_back({j, false, false});
                } else {
                    tr.stack_guard[j] = cur.st[j].dummy_top
                                            ? dummy
                                            : (cur.st[j].last_real == "?" ? kStackBottom
                                                                          : cur.st[j].last_real);
                    switch (t.actions[j].op) {
                        case StackOp::kPush:
                            tr.actions[j] = t.actions[j];
                            next.st[j].last_real = t.actions[j].symbol;
                            next.st[j].dummy_top = false;
                            break;
                        case StackOp::kStay:
                            tr.actions[j] = {StackOp::kPush, dummy};
                            next.st[j].dummy_top = true;
                            break;
                        case StackOp::kUp:
                            // Entering the read phase over the top: lands on
                            // the top sentinel whether or not dummies trail.
                            tr.actions[j] = t.actions[j];
                            next.st[j].reading = true;
                            break;
                        case StackOp::kDown:
                            tr.actions[j] = t.actions[j];
                            next.st[j].reading = true;
                            next.pending.push_back({j, true, cur.st[j].dummy_top});
                            break;
                        case StackOp::kPop:
                            live = false;
                            break;
                    }
                }
            }
            if (!live) continue;
            tr.to = enqueue(next);
            tb.add_transition(std::move(tr));
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), render(init));
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule =
        "normal form: states track per-stack phase and last push; every move pushes a symbol "
        "(dummy when idle) to each writing stack; reads skip dummy runs";
    return result;
}

}  // namespace transforms
}  // namespace csa
