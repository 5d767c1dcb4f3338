#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

// The sensing head (index r+1) rests on the left marker. A test of pair
// (i, j) walks heads i and j leftward in lockstep with the sensing head
// walking right; whichever tested head hits the marker first decides the
// outcome, and the walk is reversed off the sensing head's distance record.
TransformResult remove_sensing(const MachineSpec& spec) {
    if (spec.stack_count != 0) throw TransformError("remove_sensing requires a finite automaton");
    if (spec.head_count < 2) throw TransformError("remove_sensing requires at least two heads");
    if (!spec.sensing_enabled) throw TransformError("remove_sensing requires a sensing machine");
    if (!validate_spec(spec).ok()) throw TransformError("remove_sensing: invalid input machine");

    const int r = spec.head_count;

    MachineSpec out;
    out.input_alphabet = spec.input_alphabet;
    out.head_count = r + 1;
    out.stack_count = 0;
    out.machine_class = MachineClass::kFinite;
    out.determinism = spec.determinism;

    detail::TargetBuilder tb;

    std::vector<Symbol> sigma_plus = {kLeftMarker, kRightMarker};
    sigma_plus.insert(sigma_plus.end(), spec.input_alphabet.begin(), spec.input_alphabet.end());
    std::vector<Symbol> not_left = {kRightMarker};
    not_left.insert(not_left.end(), spec.input_alphabet.begin(), spec.input_alphabet.end());

    // Pairs tested per state: everything mentioned by any outgoing guard.
    std::map<std::string, std::vector<std::pair<int, int>>> pairs_of;
    for (const auto& q : spec.states) pairs_of[q] = {};
    for (const auto& t : spec.transitions) {
        auto& pairs = pairs_of[t.from];
        for (const auto& s : t.sense) {
            std::pair<int, int> p{s.left, s.right};
            if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
        }
    }
    for (auto& [q, pairs] : pairs_of) std::sort(pairs.begin(), pairs.end());

    auto outcome_name = [](const std::vector<bool>& outcomes) {
        std::string s;
        for (bool b : outcomes) s += b ? "e" : "n";
        return s;
    };

    // Emits one transition, expanding unconstrained heads over all symbols.
    // `fixed` maps head index (0-based, r+1 heads) to a required symbol.
    auto emit = [&](const std::string& from, const std::map<int, Symbol>& fixed,
                    const std::vector<int>& moves, const std::string& to) {
        std::vector<int> open;
        for (int h = 0; h <= r; ++h)
            if (!fixed.count(h)) open.push_back(h);
        std::vector<Transition> batch(1);
        batch[0].from = from;
        batch[0].to = to;
        batch[0].moves = moves;
        batch[0].input_guard.assign(r + 1, "");
        for (const auto& [h, s] : fixed) batch[0].input_guard[h] = s;
        for (int h : open) {
            std::vector<Transition> next;
            for (const auto& base : batch) {
                for (const auto& s : sigma_plus) {
                    // Guard legality: never pair a marker with a move past it.
                    if (s == kLeftMarker && moves[h] == -1) continue;
                    if (s == kRightMarker && moves[h] == 1) continue;
                    Transition t2 = base;
                    t2.input_guard[h] = s;
                    next.push_back(std::move(t2));
                }
            }
            batch = std::move(next);
        }
        for (auto& t2 : batch) {
            bool legal = true;
            for (const auto& [h, s] : fixed) {
                if (s == kLeftMarker && moves[h] == -1) legal = false;
                if (s == kRightMarker && moves[h] == 1) legal = false;
            }
            if (legal) tb.add_transition(std::move(t2));
        }
    };

    std::vector<int> zero(r + 1, 0);

    // Park the sensing head on the left marker before simulation starts.
    {
        auto mv = zero;
        mv[r] = -1;
        emit("park", {}, mv, "sim|" + spec.initial_state);
    }

    for (const auto& q : spec.states) {
        const auto& pairs = pairs_of[q];
        const std::string sim = "sim|" + q;
        tb.add_state(sim);
        if (spec.is_final(q)) tb.mark_final(sim);

        if (pairs.empty()) {
            for (const auto& t : spec.transitions) {
                if (t.from != q) continue;
                std::map<int, Symbol> fixed;
                for (int h = 0; h < r; ++h) fixed[h] = t.input_guard[h];
                fixed[r] = kLeftMarker;
                auto mv = t.moves;
                mv.push_back(0);
                emit(sim, fixed, mv, "sim|" + t.to);
            }
            continue;
        }

        // Walk every pair in order, then dispatch on the latched outcomes.
        emit(sim, {{r, kLeftMarker}}, zero,
             "wo|" + q + "|0|" + outcome_name({}));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const int hi = pairs[p].first - 1;
            const int hj = pairs[p].second - 1;
            const std::size_t n_prior = p;
            // All outcome prefixes for the already-tested pairs.
            std::vector<std::vector<bool>> prefixes{{}};
            for (std::size_t b = 0; b < n_prior; ++b) {
                std::vector<std::vector<bool>> next;
                for (const auto& pre : prefixes)
                    for (bool v : {false, true}) {
                        auto c = pre;
                        c.push_back(v);
                        next.push_back(c);
                    }
                prefixes = std::move(next);
            }
            for (const auto& pre : prefixes) {
                const std::string wo = "wo|" + q + "|" + std::to_string(p) + "|" + outcome_name(pre);
                // Both tested heads off the marker: march.
                for (const auto& si : not_left)
                    for (const auto& sj : not_left) {
                        auto mv = zero;
                        mv[hi] = -1;
                        mv[hj] = -1;
                        mv[r] = 1;
                        emit(wo, {{hi, si}, {hj, sj}}, mv, wo);
                    }
                for (bool equal : {true, false}) {
                    auto done = pre;
                    done.push_back(equal);
                    const std::string wb =
                        "wb|" + q + "|" + std::to_string(p) + "|" + outcome_name(done);
                    const std::string next_state =
                        p + 1 < pairs.size()
                            ? "wo|" + q + "|" + std::to_string(p + 1) + "|" + outcome_name(done)
                            : "disp|" + q + "|" + outcome_name(done);
                    if (equal) {
                        emit(wo, {{hi, kLeftMarker}, {hj, kLeftMarker}}, zero, wb);
                    } else {
                        for (const auto& sj : not_left)
                            emit(wo, {{hi, kLeftMarker}, {hj, sj}}, zero, wb);
                        for (const auto& si : not_left)
                            emit(wo, {{hi, si}, {hj, kLeftMarker}}, zero, wb);
                    }
                    // Reverse the walk off the sensing head's record.
                    {
                        auto mv = zero;
                        mv[hi] = 1;
                        mv[hj] = 1;
                        mv[r] = -1;
                        for (const auto& ss : not_left) emit(wb, {{r, ss}}, mv, wb);
                        emit(wb, {{r, kLeftMarker}}, zero, next_state);
                    }
                }
            }
        }
        // Dispatch: re-read the restored guards, keep transitions whose
        // sensing requirements agree with the latched outcomes.
        std::vector<std::vector<bool>> outcomes{{}};
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            std::vector<std::vector<bool>> next;
            for (const auto& pre : outcomes)
                for (bool v : {false, true}) {
                    auto c = pre;
                    c.push_back(v);
                    next.push_back(c);
                }
            outcomes = std::move(next);
        }
        for (const auto& o : outcomes) {
            const std::string disp = "disp|" + q + "|" + outcome_name(o);
            for (const auto& t : spec.transitions) {
                if (t.from != q) continue;
                bool consistent = true;
                for (const auto& s : t.sense) {
                    const auto it = std::find(pairs.begin(), pairs.end(),
                                              std::make_pair(s.left, s.right));
                    const std::size_t idx = static_cast<std::size_t>(it - pairs.begin());
                    if (o[idx] != s.equal) consistent = false;
                }
                if (!consistent) continue;
                std::map<int, Symbol> fixed;
                for (int h = 0; h < r; ++h) fixed[h] = t.input_guard[h];
                fixed[r] = kLeftMarker;
                auto mv = t.moves;
                mv.push_back(0);
                emit(disp, fixed, mv, "sim|" + t.to);
            }
        }
    }

    TransformResult result;
    result.machine = tb.finish(std::move(out), "park");
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "sensing tests compiled into marker walks with one extra head (" +
                         std::to_string(r) + " heads to " + std::to_string(r + 1) + ")";
    return result;
}

}  // namespace transforms
}  // namespace csa
