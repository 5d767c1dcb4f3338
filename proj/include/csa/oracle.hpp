#ifndef CSA_ORACLE_HPP
#define CSA_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csa/engine.hpp"
#include "csa/machine.hpp"
#include "csa/turing.hpp"

// Ground truth: closed-form membership predicates, the hand-built machine
// corpus, bounded language enumeration and machine/predicate comparison.

namespace csa {
namespace oracle {

// Builtin predicate family. Names: divides, product, marked_palindrome,
// grid, binary_counter, l_1, l_2. Throws std::invalid_argument on an
// unknown name or a word outside the predicate's alphabet.
bool predicate(const std::string& name, const Word& word);
std::vector<Symbol> predicate_alphabet(const std::string& name);

struct CorpusEntry {
    MachineSpec machine;
    std::string predicate_name;  // empty when no closed-form oracle applies
    std::string space_measure;   // "", "linear", "log"
    std::uint64_t space_constant = 0;
    std::string description;
};

// Named machines: the worked examples, the space-bounded counter machines,
// and the auxiliary machines the transform tests exercise. Every entry
// passes validate_spec.
const std::map<std::string, CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

// Named Turing machines: anbn, sigma_star, empty_language.
const std::map<std::string, TuringMachineSpec>& corpus_tms();

struct LanguageSample {
    std::vector<Symbol> alphabet;
    int max_length = 0;
    std::vector<Word> accepted;   // length-lex sorted
    std::vector<Word> undecided;  // words whose search hit a budget cap
    RunBudget budget;
    bool exhaustive = true;
};

// Decides every word over the machine's alphabet up to max_length.
LanguageSample enumerate_language(const MachineSpec& spec, int max_length,
                                  const RunBudget& budget);

struct CompareResult {
    enum class Kind { kEqual, kCounterexample, kInconclusive } kind = Kind::kEqual;
    Word counterexample;  // first difference in length-lex order

    bool equal() const { return kind == Kind::kEqual; }
};

// First distinguishing word in length-lex order; inconclusive when a budget
// cap blocked a verdict before any difference was found. Throws on input
// alphabet mismatch.
CompareResult compare_machines(const MachineSpec& a, const MachineSpec& b, int max_length,
                               const RunBudget& budget);
CompareResult compare_to_predicate(const MachineSpec& spec, const std::string& predicate_name,
                                   int max_length, const RunBudget& budget);

// Length-then-lexicographic word order over the given alphabet (symbols
// compared by their position in `alphabet`).
std::vector<Word> words_up_to(const std::vector<Symbol>& alphabet, int max_length);
bool word_less(const Word& a, const Word& b, const std::vector<Symbol>& alphabet);

}  // namespace oracle
}  // namespace csa

#endif
