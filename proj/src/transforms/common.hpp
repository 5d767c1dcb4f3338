#ifndef CSA_TRANSFORMS_COMMON_HPP
#define CSA_TRANSFORMS_COMMON_HPP

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "csa/machine.hpp"
#include "csa/transforms.hpp"

// Internal helpers shared by the transform implementations.

namespace csa {
namespace transforms {
namespace detail {

inline MachineSummary summarize(const MachineSpec& m) {
    return {m.head_count, m.stack_count, static_cast<int>(m.states.size()), m.machine_class,
            m.determinism};
}

// Collects states in first-seen order and deduplicates transitions; target
// states are structured names rendered by the caller.
class TargetBuilder {
  public:
    void add_state(const std::string& q) {
        if (seen_.insert(q).second) order_.push_back(q);
    }

    void add_transition(Transition tr) {
        add_state(tr.from);
        add_state(tr.to);
        transitions_.push_back(std::move(tr));
    }

    void mark_final(const std::string& q) {
        add_state(q);
        finals_.insert(q);
    }

    MachineSpec finish(MachineSpec skeleton, const std::string& initial) {
        add_state(initial);
        skeleton.states = order_;
        skeleton.initial_state = initial;
        skeleton.final_states.assign(finals_.begin(), finals_.end());
        skeleton.transitions = std::move(transitions_);
        return skeleton;
    }

  private:
    std::vector<std::string> order_;
    std::set<std::string> seen_;
    std::set<std::string> finals_;
    std::vector<Transition> transitions_;
};

// All input-guard tuples over Sigma+ of the given arity, in symbol order
// left marker, right marker, then the alphabet.
inline std::vector<std::vector<Symbol>> guard_tuples(const std::vector<Symbol>& alphabet,
                                                     int arity) {
    std::vector<Symbol> syms = {kLeftMarker, kRightMarker};
    syms.insert(syms.end(), alphabet.begin(), alphabet.end());
    std::vector<std::vector<Symbol>> out{{}};
    for (int i = 0; i < arity; ++i) {
        std::vector<std::vector<Symbol>> next;
        next.reserve(out.size() * syms.size());
        for (const auto& prefix : out)
            for (const auto& s : syms) {
                auto t = prefix;
                t.push_back(s);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

// Defined in write_restricted.cpp; shared with the flattening transform.
std::vector<int> classify_subphases(const MachineSpec& spec);

}  // namespace transforms
}  // namespace csa

#endif
