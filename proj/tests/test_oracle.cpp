#include <algorithm>
#include <set>

#include "csa/engine.hpp"
#include "csa/oracle.hpp"
#include "doctest.h"

using namespace csa;
using oracle::CompareResult;

namespace {

RunBudget generous() {
    RunBudget b;
    b.max_steps = 500000;
    b.max_configurations = 1000000;
    return b;
}

// Independent generate-and-check: members produced straight from the
// arithmetic definitions, for cross-checking the predicates.
std::set<std::string> gen_divides(int max_len) {
    std::set<std::string> out;
    for (int i = 1; i <= max_len; ++i)
        for (int m = i; i + m <= max_len; m += i)
            out.insert(std::string(i, 'a') + std::string(m, 'b'));
    return out;
}

std::set<std::string> gen_product(int max_len) {
    std::set<std::string> out;
    for (int i = 0; i <= max_len; ++i)
        for (int j = 0; i + j <= max_len; ++j) {
            const int m = i * j;
            if (i + j + m <= max_len)
                out.insert(std::string(i, 'a') + std::string(j, 'b') + std::string(m, 'c'));
        }
    return out;
}

std::set<std::string> gen_marked_palindrome(int max_len) {
    std::set<std::string> out;
    std::vector<std::string> xs{""};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::string x = xs[i];
        if (2 * static_cast<int>(x.size()) + 1 <= max_len) {
            std::string rev(x.rbegin(), x.rend());
            out.insert(x + "#" + rev);
            if (static_cast<int>(x.size()) < (max_len - 1) / 2) {
                xs.push_back(x + "a");
                xs.push_back(x + "b");
            }
        }
    }
    return out;
}

std::set<std::string> gen_grid(int max_len) {
    std::set<std::string> out;
    for (int n = 1; n * (n + 1) <= max_len; ++n) {
        std::string seg = std::string(n, 'a') + "#";
        std::string w;
        for (int i = 0; i < n; ++i) w += seg;
        out.insert(w);
    }
    return out;
}

std::set<std::string> gen_counter(int max_len) {
    std::set<std::string> out;
    for (int m = 1; m <= 5; ++m) {
        std::string w;
        for (int v = 0; v < (1 << m); ++v) {
            for (int p = 0; p < m; ++p) w += ((v >> p) & 1) ? '1' : '0';
            w += '#';
        }
        if (static_cast<int>(w.size()) <= max_len) out.insert(w);
    }
    return out;
}

}  // namespace

TEST_CASE("predicates agree with generate-and-check") {
    auto sweep = [&](const std::string& name, int max_len,
                     const std::set<std::string>& members) {
        const auto alphabet = oracle::predicate_alphabet(name);
        for (const auto& w : oracle::words_up_to(alphabet, max_len)) {
            const bool expected = members.count(join_word(w)) > 0;
            CAPTURE(name);
            CAPTURE(join_word(w));
            CHECK(oracle::predicate(name, w) == expected);
        }
    };
    sweep("divides", 8, gen_divides(8));
    sweep("product", 7, gen_product(7));
    sweep("marked_palindrome", 7, gen_marked_palindrome(7));
    sweep("grid", 8, gen_grid(8));
    sweep("binary_counter", 7, gen_counter(7));
}

TEST_CASE("spot predicate values") {
    CHECK(oracle::predicate("divides", split_word("aabbbb")));
    CHECK(!oracle::predicate("divides", split_word("a")));
    CHECK(oracle::predicate("binary_counter", split_word("000#100#010#110#001#101#011#111#")));
    CHECK(oracle::predicate("grid", split_word("aa#aa#")));
    CHECK(!oracle::predicate("grid", split_word("aa#a#")));
    CHECK(oracle::predicate("l_1", split_word("0'#1#")));
    CHECK(!oracle::predicate("l_1", split_word("0#1#")));
    CHECK(oracle::predicate("l_2", split_word("0'0#10#01#11#")));
    CHECK(!oracle::predicate("l_2", split_word("00'#10#01#11#")));
    CHECK_THROWS(oracle::predicate("nope", {}));
}

TEST_CASE("enumerate_language on the division machine") {
    const auto& ex1 = oracle::corpus_entry("example1").machine;
    auto sample = oracle::enumerate_language(ex1, 6, generous());
    CHECK(sample.exhaustive);
    std::vector<std::string> got;
    for (const auto& w : sample.accepted) got.push_back(join_word(w));
    const std::vector<std::string> expected = {"ab",     "abb",    "aabb",  "abbb",
                                               "abbbb",  "aaabbb", "aabbbb", "abbbbb"};
    // expected is length-lex sorted below; freeze from the predicate order
    std::vector<std::string> want = {"ab", "abb", "aabb", "abbb", "abbbb", "aaabbb", "aabbbb", "abbbbb"};
    std::sort(want.begin(), want.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    CHECK(got == want);

    // Machine with no transitions: empty, exhaustive.
    MachineSpec empty;
    empty.states = {"s"};
    empty.initial_state = "s";
    empty.input_alphabet = {"a"};
    empty.head_count = 1;
    empty.machine_class = MachineClass::kFinite;
    auto es = oracle::enumerate_language(empty, 4, generous());
    CHECK(es.exhaustive);
    CHECK(es.accepted.empty());

    // Step budget of one: undecided words are reported.
    RunBudget tiny;
    tiny.max_steps = 1;
    tiny.max_configurations = 10;
    auto ts = oracle::enumerate_language(ex1, 3, tiny);
    CHECK(!ts.exhaustive);
    CHECK(!ts.undecided.empty());
}

TEST_CASE("compare_machines basics") {
    const auto& ex1 = oracle::corpus_entry("example1").machine;
    CHECK(oracle::compare_machines(ex1, ex1, 5, generous()).equal());

    // An accept-everything machine differs first on the empty word; an
    // accept-everything-nonempty machine differs first on "a".
    MachineSpec all;
    all.states = {"s"};
    all.initial_state = "s";
    all.final_states = {"s"};
    all.input_alphabet = {"a", "b"};
    all.head_count = 1;
    all.machine_class = MachineClass::kFinite;
    auto r = oracle::compare_machines(ex1, all, 4, generous());
    CHECK(r.kind == CompareResult::Kind::kCounterexample);
    CHECK(r.counterexample.empty());

    MachineSpec plus = all;
    plus.states = {"s", "t"};
    plus.initial_state = "s";
    plus.final_states = {"t"};
    plus.transitions.clear();
    for (const std::string a : {"a", "b"}) {
        Transition tr;
        tr.from = "s";
        tr.input_guard = {a};
        tr.to = "t";
        tr.moves = {1};
        plus.transitions.push_back(tr);
    }
    auto r2 = oracle::compare_machines(ex1, plus, 4, generous());
    CHECK(r2.kind == CompareResult::Kind::kCounterexample);
    CHECK(join_word(r2.counterexample) == "a");

    MachineSpec other = ex1;
    other.input_alphabet = {"a"};
    CHECK_THROWS(oracle::compare_machines(ex1, other, 3, generous()));
}

TEST_CASE("corpus machines match their predicates on short words") {
    for (const auto& [name, entry] : oracle::corpus()) {
        if (entry.predicate_name.empty()) continue;
        if (name == "l_2") continue;  // block width 4: nothing decidable below length 9
        CAPTURE(name);
        auto res = oracle::compare_to_predicate(entry.machine, entry.predicate_name, 6, generous());
        CAPTURE(join_word(res.counterexample));
        CHECK(res.equal());
    }
}

TEST_CASE("l_2 machine matches its predicate on block-shaped words") {
    const auto& entry = oracle::corpus_entry("l_2");
    engine::CompiledMachine cm(entry.machine);
    // m = 1: all block sequences of width 1; the valid word is 0'#1#.
    for (const auto& w : oracle::words_up_to(entry.machine.input_alphabet, 6)) {
        auto v = engine::decide_membership(cm, cm.intern_word(w), generous());
        REQUIRE(v.outcome != engine::Outcome::kBudgetExhausted);
        CHECK(v.accepted() == oracle::predicate("l_2", w));
    }
}

TEST_CASE("example2 against the product predicate up to length 8") {
    const auto& ex2 = oracle::corpus_entry("example2").machine;
    auto res = oracle::compare_to_predicate(ex2, "product", 8, generous());
    CAPTURE(join_word(res.counterexample));
    CHECK(res.equal());
}

TEST_CASE("grid machine against its predicate up to length 9") {
    const auto& grid = oracle::corpus_entry("grid").machine;
    auto res = oracle::compare_to_predicate(grid, "grid", 9, generous());
    CAPTURE(join_word(res.counterexample));
    CHECK(res.equal());
}

TEST_CASE("comparing a machine против the wrong predicate yields a counterexample") {
    const auto& ex1 = oracle::corpus_entry("example1").machine;
    auto res = oracle::compare_to_predicate(ex1, "divides", 5, generous());
    CHECK(res.equal());
    // The product predicate accepts the empty word; the division machine does
    // not, so the first difference is immediate.
    auto res2 = oracle::compare_to_predicate(ex1, "product", 5, generous());
    CHECK(res2.kind == CompareResult::Kind::kCounterexample);
    CHECK(res2.counterexample.empty());
}

TEST_CASE("binary counter stack height stays within block length") {
    const auto& entry = oracle::corpus_entry("binary_counter");
    auto v = engine::decide_membership(entry.machine, split_word("00#10#01#11#"), generous());
    REQUIRE(v.accepted());
    std::uint64_t max_height = 0;
    for (const auto& c : v.witness)
        max_height = std::max<std::uint64_t>(max_height, c.stacks[0].content.size());
    CHECK(max_height == 2);
}

TEST_CASE("grid machine turns exactly once on accepted runs") {
    const auto& grid = oracle::corpus_entry("grid").machine;
    auto v = engine::decide_membership(grid, split_word("aa#aa#"), generous());
    REQUIRE(v.accepted());
    int turns = 0;
    int dir = 0;
    for (std::size_t i = 0; i + 1 < v.witness.size(); ++i) {
        const int mv = v.witness[i + 1].head_positions[0] - v.witness[i].head_positions[0];
        if (mv == 0) continue;
        if (dir == 1 && mv == -1) ++turns;
        if (dir == -1 && mv == 1) ++turns;
        dir = mv;
    }
    CHECK(turns == 1);
}
