#ifndef CSA_JSON_IO_HPP
#define CSA_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include "csa/machine.hpp"
#include "csa/turing.hpp"

namespace csa {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Machine file format: one UTF-8 JSON object with keys states, initial,
// finals, input_alphabet, heads, stacks, class, determinism, sensing,
// transitions (+ optional write_subphases). Unknown keys are an error.
MachineSpec parse_machine(const std::string& json_text);
std::string serialize_machine(const MachineSpec& spec, int indent = 2);

MachineSpec load_machine_file(const std::string& path);
void save_machine_file(const MachineSpec& spec, const std::string& path);

// Turing machine schema: states, initial, accepting, blank, alphabet,
// transitions (objects with from, read, to, write, mv).
TuringMachineSpec parse_turing_machine(const std::string& json_text);
std::string serialize_turing_machine(const TuringMachineSpec& tm, int indent = 2);
TuringMachineSpec load_turing_machine_file(const std::string& path);

// Traces reuse the machine dialect: a JSON array of configuration objects.
std::string serialize_trace(const std::vector<Configuration>& trace, int indent = 2);

}  // namespace csa

#endif
