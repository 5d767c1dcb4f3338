#include <algorithm>
#include <stdexcept>

#include "csa/oracle.hpp"

namespace csa {
namespace oracle {

namespace {

int symbol_rank(const Symbol& s, const std::vector<Symbol>& alphabet) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw std::invalid_argument("symbol outside alphabet: " + s);
    return static_cast<int>(it - alphabet.begin());
}

}  // namespace

bool word_less(const Word& a, const Word& b, const std::vector<Symbol>& alphabet) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int ra = symbol_rank(a[i], alphabet);
        const int rb = symbol_rank(b[i], alphabet);
        if (ra != rb) return ra < rb;
    }
    return false;
}

std::vector<Word> words_up_to(const std::vector<Symbol>& alphabet, int max_length) {
    std::vector<Word> out{{}};
    std::size_t layer_begin = 0;
    for (int len = 1; len <= max_length; ++len) {
        const std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (const auto& s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

LanguageSample enumerate_language(const MachineSpec& spec, int max_length,
                                  const RunBudget& budget) {
    engine::CompiledMachine m(spec);
    LanguageSample sample;
    sample.alphabet = spec.input_alphabet;
    sample.max_length = max_length;
    sample.budget = budget;
    for (const auto& w : words_up_to(spec.input_alphabet, max_length)) {
        engine::Verdict v = engine::decide_membership(m, m.intern_word(w), budget);
        switch (v.outcome) {
            case engine::Outcome::kAccept:
                sample.accepted.push_back(w);
                break;
            case engine::Outcome::kReject:
                break;
            case engine::Outcome::kBudgetExhausted:
                sample.exhaustive = false;
                sample.undecided.push_back(w);
                break;
        }
    }
    return sample;
}

CompareResult compare_machines(const MachineSpec& a, const MachineSpec& b, int max_length,
                               const RunBudget& budget) {
    if (a.input_alphabet != b.input_alphabet)
        throw std::invalid_argument("compare_machines: input alphabet mismatch");
    engine::CompiledMachine ma(a);
    engine::CompiledMachine mb(b);
    CompareResult result;
    bool saw_inconclusive = false;
    for (const auto& w : words_up_to(a.input_alphabet, max_length)) {
        engine::Verdict va = engine::decide_membership(ma, ma.intern_word(w), budget);
        engine::Verdict vb = engine::decide_membership(mb, mb.intern_word(w), budget);
        if (va.outcome == engine::Outcome::kBudgetExhausted ||
            vb.outcome == engine::Outcome::kBudgetExhausted) {
            saw_inconclusive = true;
            continue;
        }
        if (va.accepted() != vb.accepted()) {
            result.kind = CompareResult::Kind::kCounterexample;
            result.counterexample = w;
            return result;
        }
    }
    result.kind = saw_inconclusive ? CompareResult::Kind::kInconclusive
                                   : CompareResult::Kind::kEqual;
    return result;
}

CompareResult compare_to_predicate(const MachineSpec& spec, const std::string& predicate_name,
                                   int max_length, const RunBudget& budget) {
    engine::CompiledMachine m(spec);
    CompareResult result;
    bool saw_inconclusive = false;
    for (const auto& w : words_up_to(spec.input_alphabet, max_length)) {
        engine::Verdict v = engine::decide_membership(m, m.intern_word(w), budget);
        if (v.outcome == engine::Outcome::kBudgetExhausted) {
            saw_inconclusive = true;
            continue;
        }
        if (v.accepted() != predicate(predicate_name, w)) {
            result.kind = CompareResult::Kind::kCounterexample;
            result.counterexample = w;
            return result;
        }
    }
    result.kind = saw_inconclusive ? CompareResult::Kind::kInconclusive
                                   : CompareResult::Kind::kEqual;
    return result;
}

}  // namespace oracle
}  // namespace csa
