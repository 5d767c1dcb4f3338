#include <random>

#include "csa/engine.hpp"
#include "csa/oracle.hpp"
#include "doctest.h"

using namespace csa;
using engine::Outcome;

namespace {

RunBudget generous() {
    RunBudget b;
    b.max_steps = 200000;
    b.max_configurations = 500000;
    return b;
}

}  // namespace

TEST_CASE("step on the division machine's initial configuration") {
    const MachineSpec& m = oracle::corpus_entry("example1").machine;
    Configuration init;
    init.state = "q0";
    init.head_positions = {1};
    init.stacks.resize(1);

    auto succ = engine::step(m, init, split_word("ab"));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].state == "q0");
    CHECK(succ[0].head_positions == std::vector<int>{2});
    REQUIRE(succ[0].stacks[0].content.size() == 1);
    CHECK(succ[0].stacks[0].content[0] == "A");
    CHECK(succ[0].stacks[0].cursor == 1);
    CHECK(succ[0].stacks[0].phase == StackPhase::kWriting);

    // No applicable transition: empty successor set.
    Configuration stuck = init;
    stuck.state = "qf";
    CHECK(engine::step(m, stuck, split_word("ab")).empty());

    // Malformed configuration: hard error.
    Configuration bad = init;
    bad.head_positions = {9};
    CHECK_THROWS(engine::step(m, bad, split_word("ab")));
}

TEST_CASE("checking discipline excludes pushes on a reading stack") {
    // One machine whose only move from q1 pushes after the stack was read.
    MachineSpec m;
    m.states = {"q0", "q1"};
    m.initial_state = "q0";
    m.input_alphabet = {"a"};
    m.head_count = 1;
    m.stack_count = 1;
    m.stack_alphabets = {{"A"}};
    m.machine_class = MachineClass::kChecking;
    m.determinism = DeterminismMode::kNondeterministic;
    Transition t0;
    t0.from = "q0";
    t0.input_guard = {"a"};
    t0.stack_guard = {kStackBottom};
    t0.to = "q1";
    t0.actions = {{StackOp::kPush, "A"}};
    t0.moves = {0};
    Transition t1;
    t1.from = "q1";
    t1.input_guard = {"a"};
    t1.stack_guard = {"A"};
    t1.to = "q0";
    t1.actions = {{StackOp::kDown, ""}};
    t1.moves = {0};
    Transition t2;  // push attempt while reading
    t2.from = "q0";
    t2.input_guard = {"a"};
    t2.stack_guard = {"A"};
    t2.to = "q0";
    t2.actions = {{StackOp::kPush, "A"}};
    t2.moves = {0};
    m.transitions = {t0, t1, t2};

    Configuration c;
    c.state = "q0";
    c.head_positions = {1};
    c.stacks.resize(1);
    c.stacks[0].content = {"A"};
    c.stacks[0].cursor = 1;
    c.stacks[0].phase = StackPhase::kReading;
    CHECK(engine::step(m, c, split_word("a")).empty());
}

TEST_CASE("decide_membership on the worked examples") {
    const MachineSpec& ex1 = oracle::corpus_entry("example1").machine;
    CHECK(engine::decide_membership(ex1, split_word("aabbbb"), generous()).outcome ==
          Outcome::kAccept);
    CHECK(engine::decide_membership(ex1, split_word("aabbb"), generous()).outcome ==
          Outcome::kReject);

    const MachineSpec& bc = oracle::corpus_entry("binary_counter").machine;
    CHECK(engine::decide_membership(bc, split_word("000#100#010#110#001#101#011#111#"),
                                    generous())
              .outcome == Outcome::kAccept);

    RunBudget zero = generous();
    zero.max_steps = 0;
    CHECK(engine::decide_membership(ex1, split_word("ab"), zero).outcome ==
          Outcome::kBudgetExhausted);
}

TEST_CASE("run_deterministic matches the multiplication language") {
    const MachineSpec& ex2 = oracle::corpus_entry("example2").machine;
    auto acc = engine::run_deterministic(ex2, split_word("aabbbcccccc"), generous());
    CHECK(acc.outcome == Outcome::kAccept);
    CHECK(engine::run_deterministic(ex2, split_word("abcc"), generous()).outcome ==
          Outcome::kReject);

    // A machine with a single self-loop rejects with a loop note.
    MachineSpec loop;
    loop.states = {"q0", "qf"};
    loop.initial_state = "q0";
    loop.final_states = {"qf"};
    loop.input_alphabet = {"a"};
    loop.head_count = 1;
    loop.machine_class = MachineClass::kFinite;
    Transition t;
    t.from = "q0";
    t.input_guard = {"a"};
    t.to = "q0";
    t.moves = {0};
    loop.transitions = {t};
    auto v = engine::run_deterministic(loop, split_word("a"), generous());
    CHECK(v.outcome == Outcome::kReject);
    CHECK(v.note.find("loop") != std::string::npos);
}

TEST_CASE("accepting witnesses replay through the step relation") {
    const MachineSpec& ex1 = oracle::corpus_entry("example1").machine;
    auto v = engine::decide_membership(ex1, split_word("abbbb"), generous());
    REQUIRE(v.outcome == Outcome::kAccept);
    CHECK(engine::replay_witness(ex1, split_word("abbbb"), v.witness));
}

TEST_CASE("write determinism: deterministic machines hold, guessers violate") {
    auto det = engine::check_write_deterministic(oracle::corpus_entry("example1").machine, 4,
                                                 generous());
    CHECK(det.holds_on_sample);

    auto bad = engine::check_write_deterministic(oracle::corpus_entry("guess_verify").machine, 3,
                                                 generous());
    CHECK(!bad.holds_on_sample);
    CHECK(bad.violating_transitions.size() >= 2);

    // k = 0 machines are checked for full determinism.
    MachineSpec nfa;
    nfa.states = {"q0", "qf"};
    nfa.initial_state = "q0";
    nfa.final_states = {"qf"};
    nfa.input_alphabet = {"a"};
    nfa.head_count = 1;
    nfa.machine_class = MachineClass::kFinite;
    nfa.determinism = DeterminismMode::kNondeterministic;
    Transition t;
    t.from = "q0";
    t.input_guard = {"a"};
    t.to = "q0";
    t.moves = {1};
    nfa.transitions.push_back(t);
    t.to = "qf";
    nfa.transitions.push_back(t);
    auto k0 = engine::check_write_deterministic(nfa, 3, generous());
    CHECK(!k0.holds_on_sample);
}

TEST_CASE("run discipline classification") {
    auto r1 = engine::classify_run_discipline(oracle::corpus_entry("example1").machine,
                                              split_word("abb"), generous());
    CHECK(r1.accepted);
    CHECK(!r1.pop_used);
    CHECK(!r1.write_after_read);

    // A general stack machine that pushes, reads, then pops.
    MachineSpec gs;
    gs.states = {"q0", "q1", "qf"};
    gs.initial_state = "q0";
    gs.final_states = {"qf"};
    gs.input_alphabet = {"a"};
    gs.head_count = 1;
    gs.stack_count = 1;
    gs.stack_alphabets = {{"A"}};
    gs.machine_class = MachineClass::kGeneralStack;
    Transition t;
    t.from = "q0";
    t.input_guard = {"a"};
    t.stack_guard = {kStackBottom};
    t.to = "q1";
    t.actions = {{StackOp::kPush, "A"}};
    t.moves = {0};
    gs.transitions.push_back(t);
    t.from = "q1";
    t.stack_guard = {"A"};
    t.to = "qf";
    t.actions = {{StackOp::kPop, ""}};
    gs.transitions.push_back(t);
    auto r2 = engine::classify_run_discipline(gs, split_word("a"), generous());
    CHECK(r2.accepted);
    CHECK(r2.pop_used);

    // k = 0: nothing to report.
    auto r3 = engine::classify_run_discipline(oracle::corpus_entry("two_head_anbn").machine,
                                              split_word("ab"), generous());
    CHECK(r3.accepted);
    CHECK(!r3.pop_used);
    CHECK(!r3.write_after_read);
}

TEST_CASE("budget monotonicity over the search caps") {
    const MachineSpec& ex1 = oracle::corpus_entry("example1").machine;
    std::mt19937 rng(7);
    const auto words = oracle::words_up_to(ex1.input_alphabet, 6);
    engine::CompiledMachine cm(ex1);
    for (int i = 0; i < 60; ++i) {
        const Word& w = words[rng() % words.size()];
        RunBudget small;
        small.max_steps = rng() % 30;
        small.max_configurations = 1 + rng() % 50;
        RunBudget big = small;
        big.max_steps += rng() % 50;
        big.max_configurations += rng() % 100;
        auto vs = engine::decide_membership(cm, cm.intern_word(w), small);
        auto vb = engine::decide_membership(cm, cm.intern_word(w), big);
        if (vs.outcome == Outcome::kAccept) CHECK(vb.outcome == Outcome::kAccept);
        if (vs.outcome == Outcome::kReject) CHECK(vb.outcome == Outcome::kReject);
    }
}

TEST_CASE("phase monotonicity along witnesses") {
    for (const auto& name : {"example1", "example2", "marked_palindrome", "grid"}) {
        const auto& entry = oracle::corpus_entry(name);
        engine::CompiledMachine cm(entry.machine);
        for (const auto& w : oracle::words_up_to(entry.machine.input_alphabet, 5)) {
            auto v = engine::decide_membership(cm, cm.intern_word(w), generous());
            if (v.outcome != Outcome::kAccept) continue;
            for (std::size_t j = 0; j < entry.machine.stack_alphabets.size(); ++j) {
                bool seen_reading = false;
                for (const auto& c : v.witness) {
                    const bool reading = c.stacks[j].phase == StackPhase::kReading;
                    if (seen_reading) CHECK(reading);
                    seen_reading |= reading;
                }
            }
        }
    }
}
