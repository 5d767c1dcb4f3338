#ifndef CSA_TURING_HPP
#define CSA_TURING_HPP

#include <string>
#include <vector>

#include "csa/machine.hpp"

namespace csa {

// Nondeterministic single-worktape TM. The one-ended tape initially holds the
// input and grows to the right only; moving off the left end is forbidden.
struct TmTransition {
    std::string from;
    Symbol read;
    std::string to;
    Symbol write;
    int move = 0;  // -1, 0, +1

    friend bool operator==(const TmTransition&, const TmTransition&) = default;
};

struct TuringMachineSpec {
    std::vector<std::string> states;
    std::string initial_state;
    std::vector<std::string> accepting_states;
    Symbol blank;
    std::vector<Symbol> tape_alphabet;  // includes blank
    std::vector<TmTransition> transitions;

    friend bool operator==(const TuringMachineSpec&, const TuringMachineSpec&) = default;

    bool is_accepting(const std::string& q) const;
    // Input symbols are the tape symbols other than the blank.
    std::vector<Symbol> input_alphabet() const;
};

ValidationReport validate_tm(const TuringMachineSpec& tm);

// Bounded search for an accepting run; nullopt when the step budget runs out
// before the frontier is exhausted.
struct TmRunResult {
    bool accepted = false;
    bool exhausted = true;
    // Accepting tape history: tape content + head position + state per step.
    std::vector<std::string> id_strings;  // "uqv" encodings of the accepting path
};
TmRunResult tm_accepts(const TuringMachineSpec& tm, const Word& input, std::uint64_t max_steps);

}  // namespace csa

#endif
