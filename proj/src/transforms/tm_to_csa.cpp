#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

// TM to 2-stack checking automaton. Stack 1 guesses a separator-delimited
// sequence of equal-length tape configurations ("uqv" strings, the state
// symbol sitting before the scanned cell); stack 2 guesses a unary ruler of
// length t. Every block must span exactly (n+1)*t tape cells, counted by
// sweeping the input against the ruler; the first block is forced to be the
// initial configuration while it is guessed; the last block must contain an
// accepting state; and each adjacent pair is checked cell by cell, with the
// three cells around the state symbol validated jointly against one TM step.

namespace csa {
namespace transforms {

namespace {

struct Trip {
    Symbol a, b, c;

    friend bool operator<(const Trip& x, const Trip& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
};

}  // namespace

TransformResult tm_to_csa(const TuringMachineSpec& tm, int id_length_cap_factor) {
    if (!validate_tm(tm).ok()) throw TransformError("tm_to_csa: invalid Turing machine");

    const std::vector<Symbol> input_alpha = tm.input_alphabet();
    const std::vector<Symbol>& tape = tm.tape_alphabet;

    // Stack-1 symbols: tape symbols, one marker per TM state, one separator.
    auto fresh = [&](std::string base) {
        auto clashes = [&](const std::string& s) {
            return std::find(tape.begin(), tape.end(), s) != tape.end();
        };
        while (clashes(base)) base += "'";
        return base;
    };
    std::map<std::string, Symbol> state_sym;
    for (const auto& q : tm.states) state_sym[q] = fresh("[" + q + "]");
    const Symbol sep = fresh("#");

    std::vector<Symbol> gamma1 = tape;
    for (const auto& q : tm.states) gamma1.push_back(state_sym.at(q));
    gamma1.push_back(sep);
    const std::vector<Symbol> gamma2 = {"1"};

    auto is_state_sym = [&](const Symbol& s) {
        for (const auto& [q, sym] : state_sym)
            if (sym == s) return true;
        return false;
    };
    auto is_tape_sym = [&](const Symbol& s) {
        return std::find(tape.begin(), tape.end(), s) != tape.end();
    };

    // Joint rewrite relation: for a window (a, [q], c) of one configuration,
    // the valid windows of its successor at the same offsets.
    std::map<Trip, std::vector<Trip>> rewrites;
    for (const auto& tr : tm.transitions) {
        const Symbol qs = state_sym.at(tr.from);
        const Symbol q2 = state_sym.at(tr.to);
        std::vector<Symbol> lefts = {sep};
        lefts.insert(lefts.end(), tape.begin(), tape.end());
        for (const auto& a : lefts) {
            const Trip key{a, qs, tr.read};
            if (tr.move == 1) rewrites[key].push_back({a, tr.write, q2});
            else if (tr.move == 0) rewrites[key].push_back({a, q2, tr.write});
            else if (a != sep) rewrites[key].push_back({q2, a, tr.write});
        }
    }

    MachineSpec out;
    out.input_alphabet = input_alpha;
    out.head_count = 1;
    out.stack_count = 2;
    out.stack_alphabets = {gamma1, gamma2};
    out.machine_class = MachineClass::kChecking;
    out.determinism = DeterminismMode::kNondeterministic;

    detail::TargetBuilder tb;
    std::vector<Symbol> sigma_all = {kLeftMarker, kRightMarker};
    sigma_all.insert(sigma_all.end(), input_alpha.begin(), input_alpha.end());
    std::vector<Symbol> sigma_not_right = {kLeftMarker};
    sigma_not_right.insert(sigma_not_right.end(), input_alpha.begin(), input_alpha.end());
    std::vector<Symbol> cells1 = gamma1;  // interior stack-1 cells

    auto t = [&](const std::string& from, const Symbol& in, const Symbol& s1, const Symbol& s2,
                 const std::string& to, const StackAction& a1, const StackAction& a2, int mv) {
        Transition tr;
        tr.from = from;
        tr.input_guard = {in};
        tr.stack_guard = {s1, s2};
        tr.to = to;
        tr.actions = {a1, a2};
        tr.moves = {mv};
        tb.add_transition(std::move(tr));
    };
    const StackAction stay{StackOp::kStay, ""};
    const StackAction up1{StackOp::kUp, ""};
    const StackAction dn1{StackOp::kDown, ""};
    auto push = [](const Symbol& y) { return StackAction{StackOp::kPush, y}; };

    // Counter: rest is input on the left marker, ruler cursor on cell 1.
    // Counting (n+1)*t stack-1 moves = t sweeps of the input; the ruler steps
    // once per sweep and its arrival at the top sentinel flags completion.
    // emit_hop wires one instance moving stack 1 in `dir`, then `extras`
    // uncounted moves, then a counter reset, ending in `cont`.
    int hop_id = 0;
    auto emit_hop = [&](StackOp dir, int extras, const std::string& cont) {
        const std::string base = "hop" + std::to_string(hop_id++);
        const StackAction mv1{dir, ""};
        std::vector<Symbol> hop_cells = cells1;
        hop_cells.push_back(kStackBottom);  // hops may begin on a boundary
        for (const auto& c : hop_cells) {
            for (const auto& sig : sigma_not_right)
                if (!(c == kStackBottom && dir == StackOp::kDown))
                    t(base, sig, c, "1", base, mv1, stay, 1);
            t(base, kRightMarker, c, "1", base + "b", stay, up1, 0);
            t(base + "b", kRightMarker, c, "1", base + "r", stay, stay, 0);
            for (const auto& sig : input_alpha)
                t(base + "r", sig, c, "1", base + "r", stay, stay, -1);
            t(base + "r", kRightMarker, c, "1", base + "r", stay, stay, -1);
            t(base + "r", kLeftMarker, c, "1", base, stay, stay, 0);
            // Ruler exhausted: the count is complete.
            t(base + "b", kRightMarker, c, "Zt", base + "x0", stay, stay, 0);
        }
        std::string cur = base + "x0";
        for (int e = 0; e < extras; ++e) {
            const std::string nxt = base + "x" + std::to_string(e + 1);
            for (const auto& c : hop_cells)
                if (!(c == kStackBottom && dir == StackOp::kDown))
                    t(cur, kRightMarker, c, "Zt", nxt, mv1, stay, 0);
            cur = nxt;
        }
        // Reset: ruler back to cell 1, input back to the left marker.
        std::vector<Symbol> c1z = cells1;
        c1z.push_back(kStackBottom);
        c1z.push_back(kStackTop);
        for (const auto& c : c1z) {
            t(cur, kRightMarker, c, "Zt", cur + "d", stay, dn1, 0);
            t(cur + "d", kRightMarker, c, "1", cur + "d", stay, dn1, 0);
            t(cur + "d", kRightMarker, c, "Zb", cur + "e", stay, up1, 0);
            for (const auto& sig : input_alpha) t(cur + "e", sig, c, "1", cur + "e", stay, stay, -1);
            t(cur + "e", kRightMarker, c, "1", cur + "e", stay, stay, -1);
            t(cur + "e", kLeftMarker, c, "1", cont, stay, stay, 0);
        }
        return base;
    };

    // ---- Guess phase -------------------------------------------------------
    // Ruler first, then the configuration sequence.
    for (const auto& sig : sigma_all) {
        if (sig == kLeftMarker) continue;
        t("g2", sig, kStackBottom, kStackBottom, "g2", stay, push("1"), 0);
        t("g2", sig, kStackBottom, "1", "g2", stay, push("1"), 0);
        t("g2", sig, kStackBottom, "1", "ga0", stay, stay, 0);
    }
    // Initial configuration, forced against the input while guessed.
    for (const auto& sig : sigma_all) {
        if (sig == kLeftMarker) continue;
        t("ga0", sig, kStackBottom, "1", "ga1", push(state_sym.at(tm.initial_state)), stay, 0);
    }
    for (const auto& c : cells1)
        for (const auto& sig : input_alpha)
            t("ga1", sig, c, "1", "ga1", push(sig), stay, 1);
    const bool init_acc = tm.is_accepting(tm.initial_state);
    for (const auto& c : cells1) {
        t("ga1", kRightMarker, c, "1", "ga2", push(tm.blank), stay, 0);
        t("ga2", kRightMarker, c, "1", "ga2", push(tm.blank), stay, 0);
        t("ga1", kRightMarker, c, "1", init_acc ? "g1cA" : "g1c", push(sep), stay, 0);
        t("ga2", kRightMarker, c, "1", init_acc ? "g1cA" : "g1c", push(sep), stay, 0);
    }
    // Further configurations: (T* [q] T* #)+, tracking block acceptance.
    for (const auto& c : cells1) {
        for (const auto& y : tape) {
            t("g1a", kRightMarker, c, "1", "g1a", push(y), stay, 0);
            t("g1bA", kRightMarker, c, "1", "g1bA", push(y), stay, 0);
            t("g1b", kRightMarker, c, "1", "g1b", push(y), stay, 0);
        }
        for (const auto& q : tm.states)
            t("g1a", kRightMarker, c, "1",
              tm.is_accepting(q) ? "g1bA" : "g1b", push(state_sym.at(q)), stay, 0);
        t("g1b", kRightMarker, c, "1", "g1c", push(sep), stay, 0);
        t("g1bA", kRightMarker, c, "1", "g1cA", push(sep), stay, 0);
    }
    // After a block: guess another, or stop when the last one accepts.
    for (const auto& c : cells1) {
        t("g1c", kRightMarker, c, "1", "g1a", stay, stay, 0);
        t("g1cA", kRightMarker, c, "1", "g1a", stay, stay, 0);
        t("g1cA", kRightMarker, c, "1", "vs1", stay, stay, 0);
    }

    // ---- Length pass -------------------------------------------------------
    // Rewind everything, then verify each block holds exactly (n+1)*t tape
    // cells followed by the separator.
    std::vector<Symbol> c2z = {"1", kStackBottom, kStackTop};
    for (const auto& c : cells1) {
        t("vs1", kRightMarker, c, "1", "vs1", dn1, stay, 0);
    }
    for (const auto& s2 : c2z) t("vs1", kRightMarker, kStackBottom, s2, "vs2", stay, stay, 0);
    t("vs2", kRightMarker, kStackBottom, "1", "vs2", stay, dn1, 0);
    t("vs2", kRightMarker, kStackBottom, kStackBottom, "vs3", stay, up1, 0);
    for (const auto& sig : input_alpha)
        t("vs3", sig, kStackBottom, "1", "vs3", stay, stay, -1);
    t("vs3", kRightMarker, kStackBottom, "1", "vs3", stay, stay, -1);
    t("vs3", kLeftMarker, kStackBottom, "1", "vb", up1, stay, 0);

    for (const auto& c : cells1) {
        if (is_state_sym(c)) {
            for (const auto& sig : sigma_all) t("vb", sig, c, "1", "vb", up1, stay, 0);
        } else if (is_tape_sym(c)) {
            for (const auto& sig : sigma_not_right) t("vb", sig, c, "1", "vb", up1, stay, 1);
            t("vb", kRightMarker, c, "1", "vbB", stay, up1, 0);
            t("vbB", kRightMarker, c, "1", "vbR", stay, stay, 0);
            for (const auto& sig : input_alpha) t("vbR", sig, c, "1", "vbR", stay, stay, -1);
            t("vbR", kRightMarker, c, "1", "vbR", stay, stay, -1);
            t("vbR", kLeftMarker, c, "1", "vb", up1, stay, 1);
        }
    }
    t("vb", kRightMarker, sep, "1", "vchk", stay, up1, 0);
    t("vchk", kRightMarker, sep, kStackTop, "vrs1", stay, dn1, 0);
    t("vrs1", kRightMarker, sep, "1", "vrs1", stay, dn1, 0);
    t("vrs1", kRightMarker, sep, kStackBottom, "vrs2", stay, up1, 0);
    for (const auto& sig : input_alpha) t("vrs2", sig, sep, "1", "vrs2", stay, stay, -1);
    t("vrs2", kRightMarker, sep, "1", "vrs2", stay, stay, -1);
    t("vrs2", kLeftMarker, sep, "1", "vb2", up1, stay, 0);
    for (const auto& c : cells1) t("vb2", kLeftMarker, c, "1", "vb", stay, stay, 0);
    t("vb2", kLeftMarker, kStackTop, "1", "vc0", dn1, stay, 0);
    for (const auto& c : cells1) t("vc0", kLeftMarker, c, "1", "vc0", dn1, stay, 0);
    t("vc0", kLeftMarker, kStackBottom, "1", "ps", stay, stay, 0);

    // ---- Successor pass ----------------------------------------------------
    // ps: stands on a block boundary. Check whether a next block exists; if
    // not, everything is verified. Otherwise slide over the block, comparing
    // each cell against the next block one stride up.
    const std::string hop_psx = emit_hop(StackOp::kUp, 2, "psX");
    {
        // Entry into the probe hop from the boundary.
        for (const auto& b : {Symbol(kStackBottom), sep}) {
            t("ps", kLeftMarker, b, "1", hop_psx, stay, stay, 0);
        }
    }
    t("psX", kLeftMarker, sep, "1", "ps2", up1, stay, 0);
    t("ps2", kLeftMarker, kStackTop, "1", "ACC", stay, stay, 0);
    const std::string hop_back_b = emit_hop(StackOp::kDown, 2, "slStart");
    for (const auto& c : cells1) t("ps2", kLeftMarker, c, "1", "ps3", dn1, stay, 0);
    t("ps3", kLeftMarker, sep, "1", hop_back_b, stay, stay, 0);
    for (const auto& b : {Symbol(kStackBottom), sep}) t("slStart", kLeftMarker, b, "1", "slgo|" + sep, up1, stay, 0);

    // Sliding states. slgo|a: cursor on the cell to check, a below it.
    std::vector<Symbol> below_opts = {sep};
    for (const auto& y : tape) below_opts.push_back(y);
    for (const auto& q : tm.states) below_opts.push_back(state_sym.at(q));

    for (const auto& a : below_opts) {
        const std::string slgo = "slgo|" + a;
        t(slgo, kLeftMarker, sep, "1", "ps", stay, stay, 0);  // pair done
        for (const auto& b : cells1) {
            if (b == sep) continue;
            t(slgo, kLeftMarker, b, "1", "slup|" + a + "|" + b, up1, stay, 0);
        }
    }

    // Hops shared by every copy/joint check with the same continuation.
    std::map<Symbol, std::string> hop_down_to_slgo;
    auto down_hop = [&](const Symbol& s) {
        auto it = hop_down_to_slgo.find(s);
        if (it != hop_down_to_slgo.end()) return it->second;
        const std::string h = emit_hop(StackOp::kDown, 1, "slgo|" + s);
        hop_down_to_slgo.emplace(s, h);
        return h;
    };
    std::map<Symbol, std::string> cp_hop_up;
    for (const auto& b : cells1) {
        if (b == sep || is_state_sym(b)) continue;
        const std::string cp = "cp|" + b;
        cp_hop_up[b] = emit_hop(StackOp::kUp, 1, cp);
        t(cp, kLeftMarker, b, "1", down_hop(b), stay, stay, 0);
    }
    std::map<std::string, std::string> jt_hop_up;  // rendered trip -> hop base
    for (const auto& [trip, ws] : rewrites) {
        const std::string jt = "jt|" + trip.a + "|" + trip.b + "|" + trip.c;
        jt_hop_up[jt] = emit_hop(StackOp::kUp, 0, jt + "|1");
        std::set<std::pair<std::string, Symbol>> emitted;
        for (const auto& w : ws) {
            const std::string j1 = jt + "|1";
            const std::string j2 = jt + "|2|" + w.a;
            const std::string j3 = jt + "|3|" + w.a + "|" + w.b;
            if (emitted.insert({j1, w.a}).second) t(j1, kLeftMarker, w.a, "1", j2, up1, stay, 0);
            if (emitted.insert({j2, w.b}).second) t(j2, kLeftMarker, w.b, "1", j3, up1, stay, 0);
            if (emitted.insert({j3, w.c}).second)
                t(j3, kLeftMarker, w.c, "1", down_hop(trip.c), stay, stay, 0);
        }
    }

    // slup|a|b: cursor one above b, reading the guard c.
    for (const auto& a : below_opts) {
        for (const auto& b : cells1) {
            if (b == sep) continue;
            const std::string slup = "slup|" + a + "|" + b;
            for (const auto& c : cells1) {
                if (is_state_sym(b)) {
                    const Trip trip{a == kStackBottom ? sep : a, b, c};
                    const std::string jt = "jt|" + trip.a + "|" + trip.b + "|" + trip.c;
                    auto it = jt_hop_up.find(jt);
                    if (it != jt_hop_up.end())
                        t(slup, kLeftMarker, c, "1", it->second, stay, stay, 0);
                } else if (is_state_sym(c)) {
                    // The head sits just above; this cell is checked jointly.
                    t(slup, kLeftMarker, c, "1", "slgo|" + b, stay, stay, 0);
                } else {
                    t(slup, kLeftMarker, c, "1", cp_hop_up.at(b), stay, stay, 0);
                }
            }
        }
    }

    tb.mark_final("ACC");

    TransformResult result;
    result.machine = tb.finish(std::move(out), "g2");
    result.report.source = {0, 0, static_cast<int>(tm.states.size()), MachineClass::kFinite,
                            DeterminismMode::kNondeterministic};
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule =
        "guessed configuration sequence on stack 1 with a unary ruler on stack 2; blocks of "
        "(n+1)*t cells, joint window checks per step; ruler cap factor " +
        std::to_string(id_length_cap_factor);
    return result;
}

}  // namespace transforms
}  // namespace csa
