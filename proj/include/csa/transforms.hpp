#ifndef CSA_TRANSFORMS_HPP
#define CSA_TRANSFORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "csa/machine.hpp"
#include "csa/turing.hpp"

// Machine-to-machine compilers. Every transform is a pure function: it
// validates its precondition, produces a fresh MachineSpec whose states are
// structured tuples rendered as strings, and reports the head/stack
// arithmetic of the construction. Targets contain reachable states only.

namespace csa {
namespace transforms {

struct MachineSummary {
    int heads = 0;
    int stacks = 0;
    int states = 0;
    MachineClass machine_class = MachineClass::kFinite;
    DeterminismMode determinism = DeterminismMode::kDeterministic;
};

struct TransformReport {
    MachineSummary source;
    MachineSummary target;
    std::string relation;  // "language_equal"
    std::string rule;      // description of the construction and its arithmetic
};

struct TransformResult {
    MachineSpec machine;
    TransformReport report;
};

struct TransformError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Head/stack arithmetic of the constructions, as pure functions.
inline int eliminate_heads(int r) { return 3 * r; }
inline int eliminate_stacks(int k) { return k - 1; }
inline int remove_sensing_heads(int r) { return r + 1; }
inline int compile_to_2dfa_heads(int r, int k) {
    int p = 1;
    for (int i = 0; i < k; ++i) p *= 3;
    return p * r + 1;
}
inline int heads_to_stacks_stacks(int heads) { return heads - 1; }

// Per-state write/read discipline derived from the transition graph: which
// stacks are still writing in each reachable state, and the last symbol
// pushed on each writing stack ("" before the first push). Fails when the
// assignment is inconsistent, i.e. the machine is not in normal form shape.
struct StackDiscipline {
    // status[state][stack]: "" = reading; otherwise "?" (nothing pushed yet)
    // or the last pushed symbol.
    std::vector<std::vector<std::string>> status;
    std::vector<bool> reachable;
};
StackDiscipline derive_stack_discipline(const MachineSpec& spec, bool require_normal_form);

// Normal form: states track per-stack phase and last-pushed symbol, every
// move pushes one symbol (a dummy '#') to each stack still writing, and the
// read phase skips dummy runs.
TransformResult to_normal_form(const MachineSpec& spec);

// Stack elimination: simulates one stack of a deterministic normal-form
// machine with two extra head groups — snapshots of the configuration at the
// scanned cell's push time, and a replay group that rediscovers the
// predecessor cell. 3r heads, k-1 stacks.
TransformResult eliminate_one_stack(const MachineSpec& spec);

// Compiles each sensing test into a walk: the tested heads march to the left
// marker in lockstep with a fresh head recording the distance, the outcome is
// latched, and the walk is reversed. r+1 heads, no sensing.
TransformResult remove_sensing(const MachineSpec& spec);

// Full pipeline: normal form, k rounds of stack elimination (re-normalizing
// between rounds), then sensing removal. 3^k * r + 1 heads, zero stacks.
TransformResult compile_to_2dfa(const MachineSpec& spec);

// Converts a (k+1)-head finite automaton into a 1-head k-stack checking
// automaton that copies the input onto every stack and drives the simulated
// heads as stack cursors.
TransformResult heads_to_stacks(const MachineSpec& spec);

// Guesses all stack contents up front, rewinds, then verifies the guess
// against the simulated writes; the result is synchronous by construction.
TransformResult make_synchronous(const MachineSpec& spec);

// Collapses an l-subphase write phase into a single subphase driven by the
// first writing head, recording each head's displacement as a dummy run and
// restoring the heads from those runs before the read phase.
TransformResult flatten_write_phases(const MachineSpec& spec);

// Converts a k-head 1-write-restricted machine into a 1-head k-stack
// synchronous machine: input copies on stacks 2..k play the non-writing
// heads.
TransformResult write_restricted_to_multistack(const MachineSpec& spec);

// Builds a 2-stack two-way checking automaton accepting the TM's language:
// stack 1 guesses a separator-delimited sequence of equal-length tape
// configurations, stack 2 a unary ruler, and the machine verifies lengths,
// the initial configuration, acceptance, and every successor step.
TransformResult tm_to_csa(const TuringMachineSpec& tm, int id_length_cap_factor);

// Exact synchrony decision for one-way 2-stack machines via a two-way
// automaton over candidate stack words and its emptiness.
struct SynchronyDecision {
    bool synchronous = true;
    Word stack_witness;     // accepted stack word when not synchronous
    Word input_witness;     // the guessed one-way input reconstructed from it
    std::string diagnostic; // set when the state cap aborted the decision
};
SynchronyDecision decide_synchronous(const MachineSpec& spec, std::size_t table_cap = 200000);

// Emptiness of a two-way (k = 0) nondeterministic automaton by the behavior
// table construction; returns a shortest witness when nonempty.
struct EmptinessResult {
    bool empty = true;
    Word witness;
    bool aborted = false;  // table cap hit
};
EmptinessResult two_way_emptiness(const MachineSpec& spec, std::size_t table_cap);

}  // namespace transforms
}  // namespace csa

#endif
