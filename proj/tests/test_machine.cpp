#include <set>

#include "csa/json_io.hpp"
#include "csa/machine.hpp"
#include "csa/oracle.hpp"
#include "doctest.h"

#include "csa/engine.hpp"

using namespace csa;

TEST_CASE("corpus machines validate cleanly") {
    for (const auto& [name, entry] : oracle::corpus()) {
        CAPTURE(name);
        ValidationReport report = validate_spec(entry.machine);
        for (const auto& v : report.violations) {
            CAPTURE(v.transition_index);
            CAPTURE(v.message);
            CHECK(false);
        }
        CHECK(report.ok());
    }
}

TEST_CASE("well-formedness bullets hold on every corpus transition") {
    for (const auto& [name, entry] : oracle::corpus()) {
        const MachineSpec& m = entry.machine;
        for (const auto& tr : m.transitions) {
            for (std::size_t i = 0; i < tr.input_guard.size(); ++i) {
                if (tr.input_guard[i] == kLeftMarker) CHECK(tr.moves[i] != -1);
                if (tr.input_guard[i] == kRightMarker) CHECK(tr.moves[i] != 1);
            }
            for (std::size_t j = 0; j < tr.stack_guard.size(); ++j) {
                switch (tr.actions[j].op) {
                    case StackOp::kDown: CHECK(tr.stack_guard[j] != kStackBottom); break;
                    case StackOp::kUp: CHECK(tr.stack_guard[j] != kStackTop); break;
                    case StackOp::kPush: CHECK(tr.stack_guard[j] != kStackTop); break;
                    default: break;
                }
            }
        }
    }
}

TEST_CASE("validator flags a push past the top and guard violations") {
    MachineSpec m = oracle::corpus_entry("example1").machine;
    m.transitions[0].stack_guard[0] = kStackTop;  // push while scanning Zt
    ValidationReport report = validate_spec(m);
    CHECK(!report.ok());
    bool found = false;
    for (const auto& v : report.violations) found |= v.transition_index == 0;
    CHECK(found);
}

TEST_CASE("validator flags overlapping deterministic guards") {
    MachineSpec m = oracle::corpus_entry("example1").machine;
    Transition dup = m.transitions[0];
    dup.to = "q1";
    m.transitions.push_back(dup);
    ValidationReport report = validate_spec(m);
    CHECK(!report.ok());
}

TEST_CASE("validator is pure: same spec yields the same report") {
    MachineSpec m = oracle::corpus_entry("grid").machine;
    m.transitions[2].moves[0] = -1;  // break a marker rule somewhere
    auto r1 = validate_spec(m);
    auto r2 = validate_spec(m);
    CHECK(r1.violations == r2.violations);
}

TEST_CASE("machine files round-trip for every corpus machine") {
    for (const auto& [name, entry] : oracle::corpus()) {
        CAPTURE(name);
        const std::string text = serialize_machine(entry.machine);
        MachineSpec again = parse_machine(text);
        CHECK(again == entry.machine);
    }
}

TEST_CASE("unknown keys are rejected") {
    std::string text = serialize_machine(oracle::corpus_entry("example1").machine);
    text.insert(text.find_first_of('{') + 1, "\"bogus\": 1,");
    CHECK_THROWS_AS(parse_machine(text), ParseError);
}

TEST_CASE("symbol table lookups agree with a linear scan") {
    const MachineSpec& m = oracle::corpus_entry("example1").machine;
    engine::CompiledMachine cm(m);

    // The division machine keys its push transitions on the scanned top.
    const std::vector<int> key_in = {cm.input_symbol_id("a")};
    const std::vector<int> key_stk = {cm.stack_symbol_id(0, kStackBottom)};
    int q0 = -1;
    for (int i = 0; i < cm.state_count(); ++i)
        if (cm.state_name(i) == "q0") q0 = i;
    const auto& hits = cm.lookup(q0, key_in, key_stk);
    REQUIRE(hits.size() == 1);
    CHECK(cm.transitions()[hits[0]].index == 0);

    // Table size equals the number of distinct guards.
    std::set<std::string> distinct;
    for (const auto& tr : m.transitions) {
        std::string k = tr.from + "|";
        for (const auto& s : tr.input_guard) k += s + ",";
        for (const auto& s : tr.stack_guard) k += s + ",";
        distinct.insert(k);
    }
    CHECK(cm.table_size() == distinct.size());

    // Empty machine: every lookup misses.
    MachineSpec empty;
    empty.states = {"s"};
    empty.initial_state = "s";
    empty.input_alphabet = {"a"};
    empty.head_count = 1;
    empty.machine_class = MachineClass::kFinite;
    engine::CompiledMachine ce(empty);
    CHECK(ce.table_size() == 0);
    CHECK(ce.lookup(0, {ce.input_symbol_id("a")}, {}).empty());
}

TEST_CASE("word splitting glues primes") {
    Word w = split_word("0'10#1'");
    REQUIRE(w.size() == 5);
    CHECK(w[0] == "0'");
    CHECK(w[1] == "1");
    CHECK(w[2] == "0");
    CHECK(w[3] == "#");
    CHECK(w[4] == "1'");
    CHECK(join_word(w) == "0'10#1'");
}
