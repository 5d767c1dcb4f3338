#include <set>
#include <stdexcept>

#include "csa/oracle.hpp"

// Hand-built machines: the two worked examples, the space-bounded counter
// machines, and the auxiliary machines the transform tests need. Sweep-style
// machines consume one input symbol per interior stack move and turn for free
// on the sentinels, so each full stroke costs exactly `height` symbols.

namespace csa {
namespace oracle {

namespace {

StackAction act_of(const std::string& text) {
    if (text == "pop") return {StackOp::kPop, ""};
    if (text == "stay") return {StackOp::kStay, ""};
    if (text == "down") return {StackOp::kDown, ""};
    if (text == "up") return {StackOp::kUp, ""};
    if (text.rfind("push:", 0) == 0) return {StackOp::kPush, text.substr(5)};
    throw std::logic_error("bad action " + text);
}

struct Builder {
    MachineSpec m;
    std::vector<std::string> state_order;
    std::set<std::string> state_seen;

    void note_state(const std::string& q) {
        if (state_seen.insert(q).second) state_order.push_back(q);
    }

    void t(const std::string& from, std::vector<std::string> in, std::vector<std::string> stk,
           const std::string& to, std::vector<std::string> act, std::vector<int> mv,
           std::vector<SenseTest> sense = {}) {
        note_state(from);
        note_state(to);
        Transition tr;
        tr.from = from;
        tr.input_guard = std::move(in);
        tr.stack_guard = std::move(stk);
        tr.to = to;
        for (const auto& a : act) tr.actions.push_back(act_of(a));
        tr.moves = std::move(mv);
        tr.sense = std::move(sense);
        m.transitions.push_back(std::move(tr));
    }

    MachineSpec finish(const std::string& initial, std::vector<std::string> finals) {
        note_state(initial);
        for (const auto& f : finals) note_state(f);
        m.states = state_order;
        m.initial_state = initial;
        m.final_states = std::move(finals);
        return m;
    }
};

// {a^i b^m : i >= 1, m >= 1, i | m}. One-way; sweeps the pushed a-block.
MachineSpec build_example1() {
    Builder b;
    b.m.input_alphabet = {"a", "b"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    b.t("q0", {"a"}, {"Zb"}, "q0", {"push:A"}, {1});
    b.t("q0", {"a"}, {"A"}, "q0", {"push:A"}, {1});
    b.t("q0", {"b"}, {"A"}, "q1", {"down"}, {1});
    b.t("q1", {"b"}, {"A"}, "q1", {"down"}, {1});
    b.t("q1", {"b"}, {"Zb"}, "q2", {"up"}, {0});
    b.t("q1", {">"}, {"Zb"}, "qf", {"stay"}, {0});
    b.t("q2", {"b"}, {"A"}, "q2", {"up"}, {1});
    b.t("q2", {"b"}, {"Zt"}, "q1", {"down"}, {0});
    b.t("q2", {">"}, {"Zt"}, "qf", {"stay"}, {0});
    return b.finish("q0", {"qf"});
}

// {a^i b^j c^m : i*j = m}. Sweeps stack 1 per c, steps stack 2 down per turn.
MachineSpec build_example2() {
    Builder b;
    b.m.input_alphabet = {"a", "b", "c"};
    b.m.head_count = 1;
    b.m.stack_count = 2;
    b.m.stack_alphabets = {{"A"}, {"B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    b.t("p0", {"a"}, {"Zb", "Zb"}, "p0", {"push:A", "stay"}, {1});
    b.t("p0", {"a"}, {"A", "Zb"}, "p0", {"push:A", "stay"}, {1});
    b.t("p0", {"b"}, {"Zb", "Zb"}, "p1", {"stay", "push:B"}, {1});
    b.t("p0", {"b"}, {"A", "Zb"}, "p1", {"stay", "push:B"}, {1});
    b.t("p1", {"b"}, {"Zb", "B"}, "p1", {"stay", "push:B"}, {1});
    b.t("p1", {"b"}, {"A", "B"}, "p1", {"stay", "push:B"}, {1});
    b.t("p1", {"c"}, {"A", "B"}, "pd", {"down", "stay"}, {1});
    b.t("pd", {"c"}, {"A", "B"}, "pd", {"down", "stay"}, {1});
    b.t("pd", {"c"}, {"Zb", "B"}, "pu", {"up", "down"}, {0});
    b.t("pu", {"c"}, {"A", "B"}, "pu", {"up", "stay"}, {1});
    b.t("pu", {"c"}, {"Zt", "B"}, "pd", {"down", "down"}, {0});
    b.t("pd", {">"}, {"Zb", "B"}, "pc", {"stay", "down"}, {0});
    b.t("pu", {">"}, {"Zt", "B"}, "pc", {"stay", "down"}, {0});
    b.t("pc", {">"}, {"Zb", "Zb"}, "pf", {"stay", "stay"}, {0});
    b.t("pc", {">"}, {"Zt", "Zb"}, "pf", {"stay", "stay"}, {0});
    // words without any c: i*j = 0 = m.
    b.t("p0", {">"}, {"Zb", "Zb"}, "pf", {"stay", "stay"}, {0});
    b.t("p0", {">"}, {"A", "Zb"}, "pf", {"stay", "stay"}, {0});
    b.t("p1", {">"}, {"Zb", "B"}, "pf", {"stay", "stay"}, {0});
    b.t("p1", {">"}, {"A", "B"}, "pf", {"stay", "stay"}, {0});
    return b.finish("p0", {"pf"});
}

// {x # x^R : x over {a,b}}. Copies x, then compares while descending.
MachineSpec build_marked_palindrome() {
    Builder b;
    b.m.input_alphabet = {"a", "b", "#"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"a", "b"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    for (std::string s : {"a", "b"})
        for (std::string top : {"Zb", "a", "b"})
            b.t("m0", {s}, {top}, "m0", {"push:" + s}, {1});
    for (std::string top : {"Zb", "a", "b"})
        b.t("m0", {"#"}, {top}, "m1", {"stay"}, {1});
    for (std::string s : {"a", "b"})
        b.t("m1", {s}, {s}, "m1", {"down"}, {1});
    b.t("m1", {">"}, {"Zb"}, "mf", {"stay"}, {0});
    return b.finish("m0", {"mf"});
}

// {(a^n #)^n : n >= 1}. Rightward pass checks segment lengths by strokes,
// leftward pass counts segments; the input turns exactly once.
MachineSpec build_grid() {
    Builder b;
    b.m.input_alphabet = {"a", "#"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    b.t("g0", {"a"}, {"Zb"}, "g0", {"push:A"}, {1});
    b.t("g0", {"a"}, {"A"}, "g0", {"push:A"}, {1});
    b.t("g0", {"#"}, {"A"}, "gdt", {"stay"}, {1});
    b.t("gdt", {"a"}, {"A"}, "gdn", {"down"}, {1});
    b.t("gdn", {"a"}, {"A"}, "gdn", {"down"}, {1});
    b.t("gdn", {"#"}, {"Zb"}, "gut", {"up"}, {1});
    b.t("gut", {"a"}, {"A"}, "gup", {"up"}, {1});
    b.t("gup", {"a"}, {"A"}, "gup", {"up"}, {1});
    b.t("gup", {"#"}, {"Zt"}, "gdt", {"down"}, {1});
    // input exhausted right after a separator: start the leftward count
    b.t("gdt", {">"}, {"A"}, "p2a", {"up"}, {0});
    b.t("gut", {">"}, {"A"}, "p2a", {"up"}, {0});
    b.t("p2a", {">"}, {"A"}, "p2a", {"up"}, {0});
    b.t("p2a", {">"}, {"Zt"}, "p2", {"stay"}, {-1});
    b.t("p2", {"#"}, {"Zt"}, "p2", {"down"}, {-1});
    b.t("p2", {"#"}, {"A"}, "p2", {"down"}, {-1});
    b.t("p2", {"a"}, {"A"}, "p2", {"stay"}, {-1});
    b.t("p2", {"<"}, {"A"}, "gchk", {"down"}, {0});
    b.t("gchk", {"<"}, {"Zb"}, "gf", {"stay"}, {0});
    return b.finish("g0", {"gf"});
}

// Shared construction for the counter languages. k = 1 builds binary_counter
// (marked = false) and l_1 (marked = true); l_2 has its own nested builder.
//
// The ruler rests on a sentinel between hops. A hop over one block boundary
// is: one free ruler move off the sentinel (input parked), m paired moves and
// one landing move with the ruler parked, each advancing the input, for a
// displacement of exactly m+1. The length pass uses the same stroke without
// the landing move, pinning every block to exactly m cells.
MachineSpec build_counter_k1(bool marked) {
    Builder b;
    std::vector<std::string> bits = marked ? std::vector<std::string>{"0", "1", "0'"}
                                           : std::vector<std::string>{"0", "1"};
    std::vector<std::string> cells = bits;
    cells.push_back("#");
    b.m.input_alphabet = marked ? std::vector<std::string>{"0", "1", "#", "0'", "1'"}
                                : std::vector<std::string>{"0", "1", "#"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"U"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    const std::vector<std::string> sents = {"Zb", "Zt"};
    auto far_of = [](const std::string& dir) { return dir == "up" ? "Zt" : "Zb"; };
    auto dir_from = [](const std::string& sent) { return sent == "Zb" ? "up" : "down"; };

    // Phase A: one ruler cell per leading zero of x_1.
    if (!marked) {
        b.t("A0", {"0"}, {"Zb"}, "A0", {"push:U"}, {1});
        b.t("A0", {"0"}, {"U"}, "A0", {"push:U"}, {1});
        b.t("A0", {"#"}, {"U"}, "LRew", {"up"}, {-1});
    } else {
        b.t("A0", {"0"}, {"Zb"}, "A0", {"push:U"}, {1});
        b.t("A0", {"0"}, {"U"}, "A0", {"push:U"}, {1});
        b.t("A0", {"0'"}, {"Zb"}, "A1", {"push:U"}, {1});
        b.t("A0", {"0'"}, {"U"}, "A1", {"push:U"}, {1});
        b.t("A1", {"#"}, {"U"}, "LRew", {"up"}, {-1});
    }
    // Rewind to the left marker, then length-check every block.
    for (const auto& s : bits) b.t("LRew", {s}, {"Zt"}, "LRew", {"stay"}, {-1});
    b.t("LRew", {"<"}, {"Zt"}, "LC", {"stay"}, {1});
    for (const auto& sent : sents) {
        const std::string dir = dir_from(sent);
        for (const auto& s : bits) b.t("LC", {s}, {sent}, "LC_" + dir, {dir}, {0});
        b.t("LC", {">"}, {sent}, "Seek1", {"stay"}, {-1});
    }
    for (const std::string dir : {"up", "down"}) {
        for (const auto& s : bits) b.t("LC_" + dir, {s}, {"U"}, "LC_" + dir, {dir}, {1});
        b.t("LC_" + dir, {"#"}, {far_of(dir)}, "LC", {"stay"}, {1});
    }
    // Seek the first separator; the pair loop rests there.
    for (const auto& sent : sents) {
        for (const auto& s : cells) b.t("Seek1", {s}, {sent}, "Seek1", {"stay"}, {-1});
        b.t("Seek1", {"<"}, {sent}, "Seek2", {"stay"}, {1});
        for (const auto& s : bits) b.t("Seek2", {s}, {sent}, "Seek2", {"stay"}, {1});
        b.t("Seek2", {"#"}, {sent}, "Rst", {"stay"}, {0});
        b.t("Rst", {"#"}, {sent}, "ExE", {"stay"}, {-1});
    }

    // Pair check, positions examined right to left. Zone E: suffix still
    // equal; zone F: the flip boundary has passed, remaining pairs are (1,0).
    auto bitval = [](const std::string& s) { return s == "1" ? std::string("1") : std::string("0"); };
    for (const auto& sent : sents) {
        const std::string dir = dir_from(sent);
        for (const auto& s : bits) {
            b.t("ExE", {s}, {sent}, "HO_E" + bitval(s) + dir, {dir}, {0});
            b.t("ExF", {s}, {sent}, "HO_F" + bitval(s) + dir, {dir}, {0});
        }
        b.t("ExF", {"#"}, {sent}, "Adv_" + dir, {dir}, {0});
        b.t("ExF", {"<"}, {sent}, "Adv_" + dir, {dir}, {0});
    }
    for (const std::string z : {"E", "F"}) {
        for (const std::string v : {"0", "1"}) {
            for (const std::string dir : {"up", "down"}) {
                const std::string ho = "HO_" + z + v + dir;
                for (const auto& s : cells) b.t(ho, {s}, {"U"}, ho, {dir}, {1});
                for (const auto& s : cells)
                    b.t(ho, {s}, {far_of(dir)}, "Chk_" + z + v, {"stay"}, {1});
            }
        }
    }
    // Allowed (left bit, right bit) pairs and the zone they lead to.
    struct Rule { std::string z, v, rb, nz; };
    const std::vector<Rule> rules = {
        {"E", "0", "0", "E"}, {"E", "1", "1", "E"}, {"E", "0", "1", "F"}, {"F", "1", "0", "F"}};
    for (const auto& rule : rules) {
        for (const auto& far : sents) {
            const std::string back = dir_from(far);
            b.t("Chk_" + rule.z + rule.v, {rule.rb}, {far}, "HB_" + rule.nz + back, {back}, {0});
        }
    }
    for (const std::string z : {"E", "F"}) {
        for (const std::string dir : {"up", "down"}) {
            const std::string hb = "HB_" + z + dir;
            for (const auto& s : cells) b.t(hb, {s}, {"U"}, hb, {dir}, {-1});
            for (const auto& s : cells)
                b.t(hb, {s}, {far_of(dir)}, "Stp_" + z, {"stay"}, {-1});
        }
        for (const auto& sent : sents)
            for (const auto& s : bits) b.t("Stp_" + z, {s}, {sent}, "Ex" + z, {"stay"}, {-1});
    }
    // Advance two block lengths; peek for the end of the word.
    std::vector<std::string> adv_cells = cells;
    adv_cells.push_back("<");
    for (const std::string dir : {"up", "down"}) {
        const std::string a1 = "Adv_" + dir;
        for (const auto& s : adv_cells) b.t(a1, {s}, {"U"}, a1, {dir}, {1});
        for (const auto& s : adv_cells) b.t(a1, {s}, {far_of(dir)}, "A2p", {"stay"}, {1});
    }
    for (const auto& sent : sents) {
        const std::string dir = dir_from(sent);
        b.t("A2p", {"#"}, {sent}, "Adv2_" + dir, {dir}, {0});
    }
    for (const std::string dir : {"up", "down"}) {
        const std::string a2 = "Adv2_" + dir;
        for (const auto& s : cells) b.t(a2, {s}, {"U"}, a2, {dir}, {1});
        for (const auto& s : cells) b.t(a2, {s}, {far_of(dir)}, "PkP", {"stay"}, {1});
    }
    for (const auto& sent : sents) {
        b.t("PkP", {"#"}, {sent}, "Pk", {"stay"}, {1});
        for (const auto& s : bits) b.t("Pk", {s}, {sent}, "Rst", {"stay"}, {-1});
        b.t("Pk", {">"}, {sent}, "Fin0", {"stay"}, {-1});
        b.t("Fin0", {"#"}, {sent}, "Fin_" + dir_from(sent), {dir_from(sent)}, {0});
    }
    // Last block must read 1^m walking left; the first paired move crosses
    // its separator, the rest must scan ones.
    for (const std::string dir : {"up", "down"}) {
        const std::string fin = "Fin_" + dir;
        b.t(fin, {"#"}, {"U"}, fin, {dir}, {-1});
        b.t(fin, {"1"}, {"U"}, fin, {dir}, {-1});
        b.t(fin, {"1"}, {far_of(dir)}, "FinD", {"stay"}, {-1});
    }
    for (const auto& sent : sents) b.t("FinD", {"#"}, {sent}, "ACC", {"stay"}, {0});
    return b.finish("A0", {"ACC"});
}

// l_2: blocks of length m^2. Hops nest two rulers: the inner ruler counts m
// input moves per stroke, the outer ruler counts m strokes, and an optional
// landing move tops the displacement up to m^2 + 1.
MachineSpec build_counter_k2() {
    Builder b;
    const std::vector<std::string> bits = {"0", "1", "0'"};
    std::vector<std::string> cells = bits;
    cells.push_back("#");
    b.m.input_alphabet = {"0", "1", "#", "0'", "1'"};
    b.m.head_count = 1;
    b.m.stack_count = 2;
    b.m.stack_alphabets = {{"U"}, {"V"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    const std::vector<std::string> sents = {"Zb", "Zt"};
    auto far_of = [](const std::string& dir) { return dir == "up" ? "Zt" : "Zb"; };
    auto dir_from = [](const std::string& sent) { return sent == "Zb" ? "up" : "down"; };

    // Helper emitting one nested count of m^2 input moves in direction imv.
    // first_syms guard the starting cell (read by the whole first paired
    // move); rest_syms guard everything after it. With land, one extra input
    // move follows and `done` is entered one cell past the counted span;
    // without it, `done` is entered standing on the cell just past the span
    // read by the hand-off guard hand_sym.
    auto emit_nested = [&](const std::string& tag, const std::vector<std::string>& first_syms,
                           const std::vector<std::string>& rest_syms, int imv,
                           const std::string& done, bool land, const std::string& hand_sym) {
        for (const auto& s2sent : sents) {
            const std::string d2 = dir_from(s2sent);
            for (const auto& s1sent : sents) {
                for (const auto& s : first_syms)
                    b.t(tag, {s}, {s1sent, s2sent}, tag + "1f_" + d2, {"stay", d2}, {0});
            }
        }
        for (const std::string d2 : {"up", "down"}) {
            const std::string h1f = tag + "1f_" + d2;
            const std::string h1 = tag + "1_" + d2;
            for (const auto& s1sent : sents) {
                const std::string d1 = dir_from(s1sent);
                for (const auto& s : first_syms)
                    b.t(h1f, {s}, {s1sent, "V"}, tag + "2f_" + d2 + d1, {d1, "stay"}, {0});
                for (const auto& s : rest_syms)
                    b.t(h1, {s}, {s1sent, "V"}, tag + "2_" + d2 + d1, {d1, "stay"}, {0});
                if (land) {
                    for (const auto& s : rest_syms)
                        b.t(h1, {s}, {s1sent, far_of(d2)}, done, {"stay", "stay"}, {imv});
                } else {
                    b.t(h1, {hand_sym}, {s1sent, far_of(d2)}, done, {"stay", "stay"}, {imv});
                }
            }
            for (const std::string d1 : {"up", "down"}) {
                const std::string h2f = tag + "2f_" + d2 + d1;
                const std::string h2 = tag + "2_" + d2 + d1;
                for (const auto& s : first_syms) b.t(h2f, {s}, {"U", "V"}, h2, {d1, "stay"}, {imv});
                for (const auto& s : rest_syms) b.t(h2, {s}, {"U", "V"}, h2, {d1, "stay"}, {imv});
                for (const auto& s : rest_syms)
                    b.t(h2, {s}, {far_of(d1), "V"}, h1, {"stay", d2}, {0});
            }
        }
    };

    // Phase A: push both rulers per bit up to the mark, scan the remaining
    // zeros of x_1, then rewind for the length pass.
    b.t("A0", {"0"}, {"Zb", "Zb"}, "A0", {"push:U", "push:V"}, {1});
    b.t("A0", {"0"}, {"U", "V"}, "A0", {"push:U", "push:V"}, {1});
    b.t("A0", {"0'"}, {"Zb", "Zb"}, "A1", {"push:U", "push:V"}, {1});
    b.t("A0", {"0'"}, {"U", "V"}, "A1", {"push:U", "push:V"}, {1});
    b.t("A1", {"0"}, {"U", "V"}, "A1", {"stay", "stay"}, {1});
    b.t("A1", {"#"}, {"U", "V"}, "LRew", {"up", "up"}, {-1});
    for (const auto& s : bits) b.t("LRew", {s}, {"Zt", "Zt"}, "LRew", {"stay", "stay"}, {-1});
    b.t("LRew", {"<"}, {"Zt", "Zt"}, "LC", {"stay", "stay"}, {1});

    // Length pass: every block must span exactly m^2 bit cells then '#'.
    // The non-landing hand-off steps past the '#' and re-enters LC, whose
    // own guards dispatch the next block or the end of the input.
    emit_nested("LC", bits, bits, 1, "LC", false, "#");
    for (const auto& s1sent : sents)
        for (const auto& s2sent : sents) {
            b.t("LC", {">"}, {s1sent, s2sent}, "Seek1", {"stay", "stay"}, {-1});
            for (const auto& s : cells)
                b.t("Seek1", {s}, {s1sent, s2sent}, "Seek1", {"stay", "stay"}, {-1});
            b.t("Seek1", {"<"}, {s1sent, s2sent}, "Seek2", {"stay", "stay"}, {1});
            for (const auto& s : bits)
                b.t("Seek2", {s}, {s1sent, s2sent}, "Seek2", {"stay", "stay"}, {1});
            b.t("Seek2", {"#"}, {s1sent, s2sent}, "Rst", {"stay", "stay"}, {0});
            b.t("Rst", {"#"}, {s1sent, s2sent}, "ExE", {"stay", "stay"}, {-1});
        }

    // Pair loop over blocks of width m^2, mirroring the k = 1 machine.
    auto bitval = [](const std::string& s) { return s == "1" ? std::string("1") : std::string("0"); };
    for (const auto& s1sent : sents)
        for (const auto& s2sent : sents) {
            for (const auto& s : bits) {
                b.t("ExE", {s}, {s1sent, s2sent}, "HO_E" + bitval(s), {"stay", "stay"}, {0});
                b.t("ExF", {s}, {s1sent, s2sent}, "HO_F" + bitval(s), {"stay", "stay"}, {0});
            }
            b.t("ExF", {"#"}, {s1sent, s2sent}, "Adv", {"stay", "stay"}, {0});
            b.t("ExF", {"<"}, {s1sent, s2sent}, "Adv", {"stay", "stay"}, {0});
        }
    for (const std::string z : {"E", "F"})
        for (const std::string v : {"0", "1"})
            emit_nested("HO_" + z + v, cells, cells, 1, "Chk_" + z + v, true, "");
    struct Rule { std::string z, v, rb, nz; };
    const std::vector<Rule> rules = {
        {"E", "0", "0", "E"}, {"E", "1", "1", "E"}, {"E", "0", "1", "F"}, {"F", "1", "0", "F"}};
    for (const auto& rule : rules)
        for (const auto& s1sent : sents)
            for (const auto& s2sent : sents)
                b.t("Chk_" + rule.z + rule.v, {rule.rb}, {s1sent, s2sent}, "HB_" + rule.nz,
                    {"stay", "stay"}, {0});
    for (const std::string z : {"E", "F"}) {
        emit_nested("HB_" + z, cells, cells, -1, "Stp_" + z, true, "");
        for (const auto& s1sent : sents)
            for (const auto& s2sent : sents)
                for (const auto& s : bits)
                    b.t("Stp_" + z, {s}, {s1sent, s2sent}, "Ex" + z, {"stay", "stay"}, {-1});
    }
    std::vector<std::string> adv_cells = cells;
    adv_cells.push_back("<");
    emit_nested("Adv", adv_cells, adv_cells, 1, "A2p", true, "");
    for (const auto& s1sent : sents)
        for (const auto& s2sent : sents)
            b.t("A2p", {"#"}, {s1sent, s2sent}, "Adv2", {"stay", "stay"}, {0});
    emit_nested("Adv2", cells, cells, 1, "PkP", true, "");
    for (const auto& s1sent : sents)
        for (const auto& s2sent : sents) {
            b.t("PkP", {"#"}, {s1sent, s2sent}, "Pk", {"stay", "stay"}, {1});
            for (const auto& s : bits)
                b.t("Pk", {s}, {s1sent, s2sent}, "Rst", {"stay", "stay"}, {-1});
            b.t("Pk", {">"}, {s1sent, s2sent}, "Fin0", {"stay", "stay"}, {-1});
            b.t("Fin0", {"#"}, {s1sent, s2sent}, "Fin", {"stay", "stay"}, {0});
            b.t("FinD", {"#"}, {s1sent, s2sent}, "ACC", {"stay", "stay"}, {0});
        }
    // Walking left over the last block: the first paired move reads its own
    // separator, everything after must scan ones.
    emit_nested("Fin", std::vector<std::string>{"#"}, std::vector<std::string>{"1"}, -1, "FinD",
                true, "");
    return b.finish("A0", {"ACC"});
}

// 2-head 2DFA for {a^n b^n}: head 2 finds the first b, then both advance in
// lockstep.
MachineSpec build_two_head_anbn() {
    Builder b;
    b.m.input_alphabet = {"a", "b"};
    b.m.head_count = 2;
    b.m.stack_count = 0;
    b.m.machine_class = MachineClass::kFinite;
    b.m.determinism = DeterminismMode::kDeterministic;

    b.t("n0", {"a", "a"}, {}, "n0", {}, {0, 1});
    b.t("n0", {"a", "b"}, {}, "n1", {}, {0, 0});
    b.t("n0", {">", ">"}, {}, "nf", {}, {0, 0});
    b.t("n1", {"a", "b"}, {}, "n1", {}, {1, 1});
    b.t("n1", {"b", ">"}, {}, "nf", {}, {0, 0});
    return b.finish("n0", {"nf"});
}

// 2-head 2DFA for {x # x^R}: one # only, then the heads close in from both
// ends comparing symbols until they meet on the separator.
MachineSpec build_two_head_xpal() {
    Builder b;
    b.m.input_alphabet = {"a", "b", "#"};
    b.m.head_count = 2;
    b.m.stack_count = 0;
    b.m.machine_class = MachineClass::kFinite;
    b.m.determinism = DeterminismMode::kDeterministic;

    for (std::string s1 : {"a", "b", "#", ">"}) {
        for (std::string t2 : {"a", "b"}) b.t("p0", {s1, t2}, {}, "p0", {}, {0, 1});
        b.t("p0", {s1, "#"}, {}, "p1", {}, {0, 1});
        for (std::string t2 : {"a", "b"}) b.t("p1", {s1, t2}, {}, "p1", {}, {0, 1});
        b.t("p1", {s1, ">"}, {}, "cmp", {}, {0, -1});
    }
    for (std::string s : {"a", "b"}) b.t("cmp", {s, s}, {}, "cmp", {}, {1, -1});
    b.t("cmp", {"#", "#"}, {}, "xf", {}, {0, 0});
    return b.finish("p0", {"xf"});
}

// 2-head 2DFA with sensing for {x # x : x over {a,b}}: the heads walk toward
// each other; sense(1,2) detects the meeting cell, which must be the
// separator, splitting the word in equal halves before the copy check.
MachineSpec build_sense_copy() {
    Builder b;
    b.m.input_alphabet = {"a", "b", "#"};
    b.m.head_count = 2;
    b.m.stack_count = 0;
    b.m.machine_class = MachineClass::kFinite;
    b.m.determinism = DeterminismMode::kDeterministic;
    b.m.sensing_enabled = true;

    const std::vector<std::string> syms = {"a", "b", "#"};
    for (const auto& s1 : {"a", "b", "#"}) {
        for (const auto& t2 : syms) b.t("e0", {s1, t2}, {}, "e0", {}, {0, 1});
        b.t("e0", {s1, ">"}, {}, "e1", {}, {0, -1});
    }
    for (const auto& s1 : syms)
        for (const auto& t2 : syms)
            b.t("e1", {s1, t2}, {}, "e1", {}, {1, -1}, {{1, 2, false}});
    b.t("e1", {"#", "#"}, {}, "e2", {}, {0, 1}, {{1, 2, true}});
    for (const auto& s1 : syms)
        for (const auto& t2 : std::vector<std::string>{"a", "b", "#", ">"})
            b.t("e2", {s1, t2}, {}, "e2", {}, {-1, 0});
    for (const auto& t2 : std::vector<std::string>{"a", "b", "#", ">"})
        b.t("e2", {"<", t2}, {}, "e3", {}, {1, 0});
    for (const auto& s : {"a", "b"}) b.t("e3", {s, s}, {}, "e3", {}, {1, 1});
    b.t("e3", {"#", ">"}, {}, "ef", {}, {0, 0});
    return b.finish("e0", {"ef"});
}

// Tiny 2-stack NCSA violating synchrony on the empty input: stack 1 enters
// its read phase, then stack 2 still writes. L = {λ}.
MachineSpec build_non_sync() {
    Builder b;
    b.m.input_alphabet = {"a"};
    b.m.head_count = 1;
    b.m.stack_count = 2;
    b.m.stack_alphabets = {{"A"}, {"B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kNondeterministic;

    b.t("q0", {">"}, {"Zb", "Zb"}, "q1", {"push:A", "stay"}, {0});
    b.t("q0", {">"}, {"Zb", "Zb"}, "q1", {"push:A", "push:B"}, {0});
    b.t("q1", {">"}, {"A", "Zb"}, "q2", {"down", "stay"}, {0});
    b.t("q1", {">"}, {"A", "B"}, "q2", {"down", "stay"}, {0});
    b.t("q2", {">"}, {"Zb", "Zb"}, "q3", {"stay", "push:B"}, {0});
    b.t("q2", {">"}, {"Zb", "B"}, "q3", {"stay", "push:B"}, {0});
    b.t("q3", {">"}, {"Zb", "B"}, "q4", {"stay", "stay"}, {0});
    return b.finish("q0", {"q4"});
}

// 2-stack machine that never touches stack 2; trivially synchronous.
MachineSpec build_never_writes_s2() {
    Builder b;
    b.m.input_alphabet = {"a"};
    b.m.head_count = 1;
    b.m.stack_count = 2;
    b.m.stack_alphabets = {{"A"}, {"B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kNondeterministic;

    b.t("q0", {"a"}, {"Zb", "Zb"}, "q1", {"push:A", "stay"}, {0});
    b.t("q1", {"a"}, {"A", "Zb"}, "q2", {"down", "stay"}, {1});
    b.t("q2", {">"}, {"Zb", "Zb"}, "qf", {"up", "stay"}, {0});
    return b.finish("q0", {"qf"});
}

// One-way 2-stack NCSA for {a^n b^n}; both stacks enter reading together.
MachineSpec build_two_stack_anbn() {
    Builder b;
    b.m.input_alphabet = {"a", "b"};
    b.m.head_count = 1;
    b.m.stack_count = 2;
    b.m.stack_alphabets = {{"A"}, {"B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kNondeterministic;

    b.t("c0", {"a"}, {"Zb", "Zb"}, "c0", {"push:A", "stay"}, {1});
    b.t("c0", {"a"}, {"A", "Zb"}, "c0", {"push:A", "stay"}, {1});
    b.t("c0", {"b"}, {"A", "Zb"}, "c1", {"stay", "push:B"}, {1});
    b.t("c1", {"b"}, {"A", "B"}, "c1", {"stay", "push:B"}, {1});
    b.t("c1", {">"}, {"A", "B"}, "c2", {"down", "down"}, {0});
    b.t("c2", {">"}, {"A", "B"}, "c2", {"down", "down"}, {0});
    b.t("c2", {">"}, {"Zb", "Zb"}, "cf", {"stay", "stay"}, {0});
    b.t("c0", {">"}, {"Zb", "Zb"}, "cf", {"stay", "stay"}, {0});
    return b.finish("c0", {"cf"});
}

// Nondeterministic write phase: pushes A or B on the same guard. L = {a}.
MachineSpec build_guess_verify() {
    Builder b;
    b.m.input_alphabet = {"a"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A", "B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kNondeterministic;

    b.t("q0", {"a"}, {"Zb"}, "q1", {"push:A"}, {1});
    b.t("q0", {"a"}, {"Zb"}, "q1", {"push:B"}, {1});
    b.t("q1", {">"}, {"A"}, "qf", {"stay"}, {0});
    b.t("q1", {">"}, {"B"}, "qf", {"stay"}, {0});
    return b.finish("q0", {"qf"});
}

// Deterministic machine whose write phase never ends. L is empty.
MachineSpec build_diverging_writer() {
    Builder b;
    b.m.input_alphabet = {"a", "b"};
    b.m.head_count = 1;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;

    for (std::string s : {"a", "b", ">"}) {
        b.t("d0", {s}, {"Zb"}, "d0", {"push:A"}, {0});
        b.t("d0", {s}, {"A"}, "d0", {"push:A"}, {0});
    }
    return b.finish("d0", {});
}

// 2-head 2-write-restricted 2DCSA for {a^n # b^n}: subphase 1 pushes A per a
// with head 1, subphase 2 pushes B per b with head 2, the read phase pairs
// the B run against head 1 walking left.
MachineSpec build_wr2_anbn() {
    Builder b;
    b.m.input_alphabet = {"a", "b", "#"};
    b.m.head_count = 2;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A", "B"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;
    b.m.write_subphases = std::vector<int>{1, 2};

    b.t("w0", {"a", "a"}, {"Zb"}, "w0", {"push:A"}, {1, 0});
    b.t("w0", {"a", "a"}, {"A"}, "w0", {"push:A"}, {1, 0});
    b.t("w0", {"#", "a"}, {"Zb"}, "w1", {"stay"}, {0, 0});
    b.t("w0", {"#", "a"}, {"A"}, "w1", {"stay"}, {0, 0});
    b.t("w0", {"#", "#"}, {"Zb"}, "w1", {"stay"}, {0, 0});
    for (std::string tp : {"Zb", "A"}) {
        b.t("w1", {"#", "a"}, {tp}, "w1", {"stay"}, {0, 1});
        b.t("w1", {"#", "#"}, {tp}, "w2", {"stay"}, {0, 1});
    }
    for (std::string tp : {"Zb", "A", "B"}) {
        b.t("w2", {"#", "b"}, {tp}, "w2", {"push:B"}, {0, 1});
        b.t("w2", {"#", ">"}, {tp}, "w3", {"stay"}, {0, 0});
    }
    for (std::string s1 : {"a", "#"}) b.t("w3", {s1, ">"}, {"B"}, "w3", {"down"}, {-1, 0});
    b.t("w3", {"a", ">"}, {"A"}, "w4", {"stay"}, {-1, 0});
    b.t("w3", {"#", ">"}, {"Zb"}, "w4", {"stay"}, {-1, 0});
    b.t("w4", {"<", ">"}, {"A"}, "wf", {"stay"}, {0, 0});
    b.t("w4", {"<", ">"}, {"Zb"}, "wf", {"stay"}, {0, 0});
    return b.finish("w0", {"wf"});
}

// 2-head 1-write-restricted 2DCSA for {a^n b^n}: only head 1 moves while
// writing; the read phase enters the stack, walks head 2 over the a zone and
// pairs b's against downward moves.
MachineSpec build_wr1_anbn() {
    Builder b;
    b.m.input_alphabet = {"a", "b"};
    b.m.head_count = 2;
    b.m.stack_count = 1;
    b.m.stack_alphabets = {{"A"}};
    b.m.machine_class = MachineClass::kChecking;
    b.m.determinism = DeterminismMode::kDeterministic;
    b.m.write_subphases = std::vector<int>{1};

    b.t("v0", {"a", "a"}, {"Zb"}, "v0", {"push:A"}, {1, 0});
    b.t("v0", {"a", "a"}, {"A"}, "v0", {"push:A"}, {1, 0});
    b.t("v0", {"b", "a"}, {"A"}, "v1", {"up"}, {0, 0});
    b.t("v0", {">", "a"}, {"A"}, "v1", {"up"}, {0, 0});
    b.t("v0", {">", ">"}, {"Zb"}, "vf", {"stay"}, {0, 0});
    for (std::string s1 : {"a", "b", ">"}) {
        b.t("v1", {s1, "a"}, {"Zt"}, "v1", {"stay"}, {0, 1});
        b.t("v1", {s1, "b"}, {"Zt"}, "v2", {"down"}, {0, 1});
        b.t("v2", {s1, "b"}, {"A"}, "v2", {"down"}, {0, 1});
        b.t("v2", {s1, ">"}, {"A"}, "v3", {"down"}, {0, 0});
        b.t("v3", {s1, ">"}, {"Zb"}, "vf", {"stay"}, {0, 0});
    }
    return b.finish("v0", {"vf"});
}

std::map<std::string, CorpusEntry> build_corpus() {
    std::map<std::string, CorpusEntry> c;
    c["example1"] = {build_example1(), "divides", "linear", 1,
                     "division language, 1-stack deterministic checking automaton"};
    {
        MachineSpec ncsa = build_example1();
        ncsa.determinism = DeterminismMode::kNondeterministic;
        c["example1_ncsa"] = {ncsa, "divides", "linear", 1,
                              "division language run as a nondeterministic machine"};
    }
    c["example2"] = {build_example2(), "product", "linear", 1,
                     "multiplication language, 2-stack deterministic checking automaton"};
    c["marked_palindrome"] = {build_marked_palindrome(), "marked_palindrome", "linear", 1,
                              "x#x^R, one-way deterministic checking automaton"};
    c["grid"] = {build_grid(), "grid", "linear", 1,
                 "(a^n#)^n, two-way with a single input turn"};
    c["binary_counter"] = {build_counter_k1(false), "binary_counter", "log", 2,
                           "consecutive binary counter blocks, log-height ruler"};
    c["l_1"] = {build_counter_k1(true), "l_1", "log", 2,
                "counter blocks with a marked first block, one ruler"};
    c["l_2"] = {build_counter_k2(), "l_2", "log", 2,
                "counter blocks of quadratic width, two nested rulers"};
    c["two_head_anbn"] = {build_two_head_anbn(), "", "", 0, "2-head 2DFA for a^n b^n"};
    c["two_head_xpal"] = {build_two_head_xpal(), "marked_palindrome", "", 0,
                          "2-head 2DFA for x#x^R"};
    c["sense_copy"] = {build_sense_copy(), "", "", 0, "2-head 2DFA with sensing for x#x"};
    c["non_sync"] = {build_non_sync(), "", "", 0,
                     "2-stack machine that writes stack 2 after reading stack 1"};
    c["never_writes_s2"] = {build_never_writes_s2(), "", "", 0,
                            "2-stack machine whose second stack stays untouched"};
    c["two_stack_anbn"] = {build_two_stack_anbn(), "", "", 0,
                           "one-way 2-stack machine for a^n b^n, synchronous runs"};
    c["guess_verify"] = {build_guess_verify(), "", "", 0,
                         "nondeterministic pushes during the write phase"};
    c["diverging_writer"] = {build_diverging_writer(), "", "", 0,
                             "write phase never ends; empty language"};
    c["wr2_anbn"] = {build_wr2_anbn(), "", "", 0,
                     "2-head 2-write-restricted machine for a^n # b^n"};
    c["wr1_anbn"] = {build_wr1_anbn(), "", "", 0,
                     "2-head 1-write-restricted machine for a^n b^n"};
    return c;
}

std::map<std::string, TuringMachineSpec> build_tms() {
    std::map<std::string, TuringMachineSpec> out;
    {
        // {a^n b^n} by erasing the outermost a/b pair per sweep.
        TuringMachineSpec tm;
        tm.states = {"q0", "q1", "q2", "q3", "qa"};
        tm.initial_state = "q0";
        tm.accepting_states = {"qa"};
        tm.blank = "_";
        tm.tape_alphabet = {"a", "b", "_"};
        tm.transitions = {
            {"q0", "_", "qa", "_", 0},  {"q0", "a", "q1", "_", 1},  {"q1", "a", "q1", "a", 1},
            {"q1", "b", "q1", "b", 1},  {"q1", "_", "q2", "_", -1}, {"q2", "b", "q3", "_", -1},
            {"q3", "a", "q3", "a", -1}, {"q3", "b", "q3", "b", -1}, {"q3", "_", "q0", "_", 1},
        };
        out["anbn"] = tm;
    }
    {
        TuringMachineSpec tm;
        tm.states = {"t0"};
        tm.initial_state = "t0";
        tm.accepting_states = {"t0"};
        tm.blank = "_";
        tm.tape_alphabet = {"a", "b", "_"};
        out["sigma_star"] = tm;
    }
    {
        TuringMachineSpec tm;
        tm.states = {"t0"};
        tm.initial_state = "t0";
        tm.accepting_states = {};
        tm.blank = "_";
        tm.tape_alphabet = {"a", "b", "_"};
        out["empty_language"] = tm;
    }
    return out;
}

}  // namespace

const std::map<std::string, CorpusEntry>& corpus() {
    static const std::map<std::string, CorpusEntry> c = build_corpus();
    return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    const auto& c = corpus();
    auto it = c.find(name);
    if (it == c.end()) throw std::invalid_argument("unknown corpus machine '" + name + "'");
    return it->second;
}

const std::map<std::string, TuringMachineSpec>& corpus_tms() {
    static const std::map<std::string, TuringMachineSpec> t = build_tms();
    return t;
}

}  // namespace oracle
}  // namespace csa
