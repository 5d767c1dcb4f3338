#ifndef CSA_ENGINE_HPP
#define CSA_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csa/machine.hpp"

// Execution: the single-step relation, deterministic runs with loop
// detection, and budgeted breadth-first search of the configuration graph.
// Checking discipline is enforced by pruning: a push on a stack already in
// its read phase is never explored for checking-class machines, so exactly
// the discipline-obeying computations are searched.

namespace csa {
namespace engine {

// Interned machine: states and symbols as dense ints, transitions indexed by
// (state, scanned input tuple, scanned stack tuple).
class CompiledMachine {
  public:
    // Throws std::invalid_argument when validate_spec reports violations.
    explicit CompiledMachine(const MachineSpec& spec);

    struct CAction {
        StackOp op;
        int symbol;  // pushed symbol id, -1 otherwise
    };
    struct CTransition {
        int index;  // position in the source spec
        int from;
        int to;
        std::vector<int> input_guard;  // per head, input symbol ids
        std::vector<int> stack_guard;  // per stack, stack symbol ids
        std::vector<CAction> actions;
        std::vector<int> moves;
        std::vector<SenseTest> sense;
    };

    const MachineSpec& spec() const { return spec_; }
    int head_count() const { return r_; }
    int stack_count() const { return k_; }
    bool is_final(int state) const { return final_[state]; }
    int initial_state() const { return initial_; }
    int state_count() const { return static_cast<int>(state_names_.size()); }
    const std::string& state_name(int id) const { return state_names_[id]; }

    // Input symbol ids: 0 = left marker, 1 = right marker, then Σ.
    int input_symbol_id(const Symbol& s) const;
    const Symbol& input_symbol(int id) const { return input_names_[id]; }
    // Stack symbol ids per stack: 0 = Zb, 1 = Zt, then Γ_j.
    int stack_symbol_id(int stack, const Symbol& s) const;
    const Symbol& stack_symbol(int stack, int id) const { return stack_names_[stack][id]; }

    const std::vector<CTransition>& transitions() const { return transitions_; }
    // Transitions whose full symbol guard matches, sensing not yet applied.
    const std::vector<int>& lookup(int state, const std::vector<int>& in_syms,
                                   const std::vector<int>& stk_syms) const;

    std::size_t table_size() const { return table_.size(); }

    // Interns an input word; throws on symbols outside Σ.
    std::vector<int> intern_word(const Word& word) const;

  private:
    MachineSpec spec_;
    int r_ = 1;
    int k_ = 0;
    int initial_ = 0;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, int> state_ids_;
    std::vector<Symbol> input_names_;
    std::unordered_map<Symbol, int> input_ids_;
    std::vector<std::vector<Symbol>> stack_names_;
    std::vector<std::unordered_map<Symbol, int>> stack_ids_;
    std::vector<bool> final_;
    std::vector<CTransition> transitions_;
    std::unordered_map<std::string, std::vector<int>> table_;

    std::string pack_key(int state, const std::vector<int>& in_syms,
                         const std::vector<int>& stk_syms) const;
};

// Compact runtime configuration over a CompiledMachine.
struct RunConfig {
    int state = 0;
    std::vector<int> heads;
    struct Stack {
        std::vector<int> content;  // interned symbols, sentinels virtual
        int cursor = 0;
        bool reading = false;

        friend bool operator==(const Stack&, const Stack&) = default;
    };
    std::vector<Stack> stacks;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct RunConfigHash {
    std::size_t operator()(const RunConfig& c) const;
};

RunConfig initial_config(const CompiledMachine& m, const std::vector<int>& word);
Configuration to_public(const CompiledMachine& m, const RunConfig& c);
RunConfig from_public(const CompiledMachine& m, const Configuration& c, std::size_t word_length);

enum class Outcome { kAccept, kReject, kBudgetExhausted };

struct RunStats {
    std::uint64_t steps = 0;                // deepest layer explored / path length
    std::uint64_t configurations = 0;       // distinct configurations seen
    std::vector<std::uint64_t> max_heights;  // per stack, over explored configs
};

struct Verdict {
    Outcome outcome = Outcome::kReject;
    std::vector<Configuration> witness;       // accepting path when outcome == kAccept
    std::vector<int> witness_transitions;     // spec transition index per witness step
    RunStats stats;
    std::string note;

    bool accepted() const { return outcome == Outcome::kAccept; }
};

std::string to_string(Outcome o);

// Scanned symbols of a configuration (interned).
std::vector<int> scanned_inputs(const CompiledMachine& m, const RunConfig& c,
                                const std::vector<int>& word);
std::vector<int> scanned_stacks(const CompiledMachine& m, const RunConfig& c);

// Indices of transitions applicable in c: guard match, sensing outcome match,
// push/pop cursor-at-top legality, and checking-discipline pruning.
std::vector<int> applicable_transitions(const CompiledMachine& m, const RunConfig& c,
                                        const std::vector<int>& word);
RunConfig apply_transition(const CompiledMachine& m, const RunConfig& c, int transition);

// The single-step relation: all configurations reachable in one move.
// Throws std::invalid_argument on configurations malformed for the word.
std::vector<Configuration> step(const MachineSpec& spec, const Configuration& config,
                                const Word& word);

// Optional guess resolver for searches: pushes on stack j are only explored
// when the pushed symbol continues expected_contents[j]. Aids witness
// discovery for guess-then-verify machines; all explored moves remain
// ordinary steps.
struct PushOracle {
    std::vector<std::vector<int>> expected_contents;
};

Verdict decide_membership(const CompiledMachine& m, const std::vector<int>& word,
                          const RunBudget& budget, const PushOracle* oracle = nullptr);
Verdict decide_membership(const MachineSpec& spec, const Word& word, const RunBudget& budget);

// Single-path execution for deterministic machines; a repeated configuration
// is reported as reject with a loop note.
Verdict run_deterministic(const CompiledMachine& m, const std::vector<int>& word,
                          const RunBudget& budget);
Verdict run_deterministic(const MachineSpec& spec, const Word& word, const RunBudget& budget);

// Bounded semi-check of write-determinism: over all words up to max_word_len,
// every reachable configuration with some stack still writing must have at
// most one applicable transition. k = 0 machines are checked for full
// determinism instead.
struct WriteDeterminismReport {
    bool holds_on_sample = true;
    Word violating_word;
    Configuration violating_config;
    std::vector<int> violating_transitions;
};
WriteDeterminismReport check_write_deterministic(const MachineSpec& spec, int max_word_len,
                                                 const RunBudget& budget);

// Scans the accepting witness (if any) for pop usage and writes issued after
// the stack entered its read phase.
struct DisciplineReport {
    bool accepted = false;
    bool pop_used = false;
    bool write_after_read = false;
};
DisciplineReport classify_run_discipline(const MachineSpec& spec, const Word& word,
                                         const RunBudget& budget);

// True when every consecutive witness pair is one legal step, the first entry
// is the initial configuration and the last is final.
bool replay_witness(const MachineSpec& spec, const Word& word,
                    const std::vector<Configuration>& witness);

// Searches all reachable configurations (within budget) for a step that
// pushes some stack while another stack is already reading. Returns the
// configuration path ending with the offending step.
struct DesyncWitness {
    Word word;
    std::vector<Configuration> path;
};
std::optional<DesyncWitness> find_desync_run(const MachineSpec& spec, const Word& word,
                                             const RunBudget& budget);

}  // namespace engine
}  // namespace csa

#endif
