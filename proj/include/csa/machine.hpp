#ifndef CSA_MACHINE_HPP
#define CSA_MACHINE_HPP

#include <optional>
#include <string>
#include <vector>

// Core data model for two-way r-head k-stack (checking) stack automata.
//
// Reserved symbols never appear in the declared alphabets: "<" and ">" are the
// input end-markers, "Zb" and "Zt" the virtual bottom/top stack sentinels.
// Sentinels are computed from the cursor, never stored in stack contents, so
// stack heights count working symbols only.

namespace csa {

inline constexpr const char* kLeftMarker = "<";
inline constexpr const char* kRightMarker = ">";
inline constexpr const char* kStackBottom = "Zb";
inline constexpr const char* kStackTop = "Zt";

using Symbol = std::string;
using Word = std::vector<Symbol>;

enum class MachineClass { kChecking, kNonErasing, kGeneralStack, kFinite };
enum class DeterminismMode { kDeterministic, kNondeterministic, kWriteDeterministic };

enum class StackOp { kPush, kPop, kStay, kDown, kUp };

struct StackAction {
    StackOp op = StackOp::kStay;
    Symbol symbol;  // payload for kPush only

    friend bool operator==(const StackAction&, const StackAction&) = default;
};

// Guard predicate sense(left,right): do input heads `left` and `right`
// (1-based, left < right) sit on the same cell?
struct SenseTest {
    int left = 0;
    int right = 0;
    bool equal = true;

    friend bool operator==(const SenseTest&, const SenseTest&) = default;
};

struct Transition {
    std::string from;
    std::vector<Symbol> input_guard;   // r symbols from Σ ∪ {<, >}
    std::vector<Symbol> stack_guard;   // k symbols, entry j from Γ_j ∪ {Zb, Zt}
    std::vector<SenseTest> sense;      // empty when unused
    std::string to;
    std::vector<StackAction> actions;  // k instructions
    std::vector<int> moves;            // r head moves from {-1, 0, +1}

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct MachineSpec {
    std::vector<std::string> states;
    std::string initial_state;
    std::vector<std::string> final_states;
    std::vector<Symbol> input_alphabet;
    int head_count = 1;
    int stack_count = 0;
    std::vector<std::vector<Symbol>> stack_alphabets;
    std::vector<Transition> transitions;
    MachineClass machine_class = MachineClass::kFinite;
    DeterminismMode determinism = DeterminismMode::kDeterministic;
    bool sensing_enabled = false;
    // Write-subphase annotation (head index per subphase, 1-based); consumed
    // by the write-restricted transforms. Serialized as `write_subphases`.
    std::optional<std::vector<int>> write_subphases;

    friend bool operator==(const MachineSpec&, const MachineSpec&) = default;

    bool is_final(const std::string& q) const;
};

enum class StackPhase { kWriting, kReading };

// One stack of an instantaneous description. cursor scans: 0 -> Zb,
// 1..content.size() -> content[cursor-1], content.size()+1 -> Zt.
struct StackState {
    std::vector<Symbol> content;
    int cursor = 0;
    StackPhase phase = StackPhase::kWriting;

    friend bool operator==(const StackState&, const StackState&) = default;
};

// The paper-facing ID: state, head positions (0 = on <, |w|+1 = on >), stacks.
struct Configuration {
    std::string state;
    std::vector<int> head_positions;
    std::vector<StackState> stacks;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Concrete run limits. max_steps and max_configurations bound the search and
// force a budget_exhausted verdict when hit; stack_height_caps realize the
// S(n)-limited / S(n)-bounded run semantics (a capped run decides membership
// under the space bound, so pruning by height alone still permits reject).
struct RunBudget {
    std::uint64_t max_steps = 1'000'000;
    std::vector<std::optional<std::uint64_t>> stack_height_caps;  // empty = all unbounded
    std::uint64_t max_configurations = 2'000'000;

    std::optional<std::uint64_t> height_cap(int stack_index) const {
        if (stack_index < 0 || static_cast<std::size_t>(stack_index) >= stack_height_caps.size())
            return std::nullopt;
        return stack_height_caps[stack_index];
    }
};

struct Violation {
    int transition_index = -1;  // -1: machine-level violation
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Checks every structural invariant: membership of referenced states/symbols,
// reserved-symbol hygiene, the four transition well-formedness rules, class
// restrictions (no pop for checking/non-erasing, finite <=> k = 0), sensing
// hygiene, and guard-overlap freedom for deterministic machines.
ValidationReport validate_spec(const MachineSpec& spec);

std::string to_string(MachineClass c);
std::string to_string(DeterminismMode m);
std::string to_string(StackOp op);

// Splits a surface string into symbols: one symbol per character, except that
// an apostrophe glues to the preceding character ("0'1" -> [0', 1]).
Word split_word(const std::string& text);
std::string join_word(const Word& word);

}  // namespace csa

#endif
