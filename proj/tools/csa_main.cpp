#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "csa/engine.hpp"
#include "csa/json_io.hpp"
#include "csa/machine.hpp"
#include "csa/oracle.hpp"
#include "csa/transforms.hpp"
#include "json.hpp"

// Exit codes: 0 success / equal / accept / synchronous; 1 reject, not equal,
// not synchronous; 2 budget-inconclusive; 3 usage or validation errors.

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct BudgetFlags {
    std::uint64_t max_steps = 0;  // 0: derive the documented default from |w|
    std::uint64_t max_configs = 2'000'000;
    std::vector<std::uint64_t> stack_caps;

    csa::RunBudget resolve(std::size_t word_len) const {
        csa::RunBudget b;
        const std::uint64_t n2 = word_len + 2;
        b.max_steps = max_steps ? max_steps : 20 * n2 * n2 * n2;
        b.max_configurations = max_configs;
        for (auto c : stack_caps) b.stack_height_caps.push_back(c);
        return b;
    }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& b) {
    cmd->add_option("--max-steps", b.max_steps, "search depth cap (default 20*(n+2)^3)");
    cmd->add_option("--max-configs", b.max_configs, "explored configuration cap");
    cmd->add_option("--stack-caps", b.stack_caps, "per-stack height caps (space separated)");
}

csa::MachineSpec load_or_exit(const std::string& path) {
    csa::MachineSpec spec = csa::load_machine_file(path);
    csa::ValidationReport report = csa::validate_spec(spec);
    if (!report.ok()) {
        for (const auto& v : report.violations) {
            std::cerr << path << ": ";
            if (v.transition_index >= 0) std::cerr << "transition " << v.transition_index << ": ";
            std::cerr << v.message << "\n";
        }
        std::exit(kUsage);
    }
    return spec;
}

json verdict_json(const csa::engine::Verdict& v, bool with_witness) {
    json out;
    out["outcome"] = csa::engine::to_string(v.outcome);
    out["stats"] = {{"steps", v.stats.steps},
                    {"configurations", v.stats.configurations},
                    {"max_stack_heights", v.stats.max_heights}};
    if (!v.note.empty()) out["note"] = v.note;
    if (with_witness && !v.witness.empty()) {
        out["witness"] = json::parse(csa::serialize_trace(v.witness));
    }
    return out;
}

json report_json(const csa::transforms::TransformReport& r) {
    auto side = [](const csa::transforms::MachineSummary& s) {
        return json{{"heads", s.heads},
                    {"stacks", s.stacks},
                    {"states", s.states},
                    {"class", csa::to_string(s.machine_class)},
                    {"determinism", csa::to_string(s.determinism)}};
    };
    return json{{"source", side(r.source)},
                {"target", side(r.target)},
                {"relation", r.relation},
                {"rule", r.rule}};
}

int exit_of_outcome(const csa::engine::Verdict& v) {
    switch (v.outcome) {
        case csa::engine::Outcome::kAccept: return kOk;
        case csa::engine::Outcome::kReject: return kNegative;
        case csa::engine::Outcome::kBudgetExhausted: return kInconclusive;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"checking stack automata toolkit"};
    app.require_subcommand(1);

    std::string machine_path, word_text, path_a, path_b, in_path, out_path, report_path;
    std::string corpus_name, transform_name;
    int max_len = 6;
    int cap_factor = 2;
    std::uint64_t seed = 0;  // reserved; results do not depend on it
    BudgetFlags budget;

    auto* validate = app.add_subcommand("validate", "check a machine file");
    validate->add_option("--machine", machine_path)->required();

    auto* run = app.add_subcommand("run", "deterministic run with a full trace");
    run->add_option("--machine", machine_path)->required();
    run->add_option("--word", word_text);
    add_budget_flags(run, budget);

    auto* decide = app.add_subcommand("decide", "membership verdict as JSON");
    decide->add_option("--machine", machine_path)->required();
    decide->add_option("--word", word_text);
    add_budget_flags(decide, budget);

    auto* enumerate = app.add_subcommand("enumerate", "accepted words up to a length");
    enumerate->add_option("--machine", machine_path)->required();
    enumerate->add_option("--max-len", max_len);
    add_budget_flags(enumerate, budget);

    auto* compare = app.add_subcommand("compare", "first difference of two machines");
    compare->add_option("--a", path_a)->required();
    compare->add_option("--b", path_b)->required();
    compare->add_option("--max-len", max_len);
    add_budget_flags(compare, budget);

    auto* transform = app.add_subcommand("transform", "compile a machine");
    transform->add_option("name", transform_name)->required();
    transform->add_option("--in", in_path)->required();
    transform->add_option("--out", out_path);
    transform->add_option("--report", report_path);
    transform->add_option("--cap-factor", cap_factor, "ruler cap factor (tm-to-csa)");

    auto* sync = app.add_subcommand("sync-decide", "is a 2-stack one-way machine synchronous");
    sync->add_option("--machine", machine_path)->required();

    auto* corpus = app.add_subcommand("corpus", "list or export the built-in machines");
    auto* corpus_export = corpus->add_subcommand("export", "write a built-in machine");
    corpus_export->add_option("name", corpus_name)->required();
    corpus_export->add_option("--out", out_path);

    app.add_option("--seed", seed, "reserved");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            csa::MachineSpec spec = csa::load_machine_file(machine_path);
            csa::ValidationReport report = csa::validate_spec(spec);
            for (const auto& v : report.violations) {
                std::cerr << (v.transition_index >= 0
                                  ? "transition " + std::to_string(v.transition_index) + ": "
                                  : "")
                          << v.message << "\n";
            }
            std::cout << (report.ok() ? "valid" : "invalid") << "\n";
            return report.ok() ? kOk : kUsage;
        }
        if (*run) {
            csa::MachineSpec spec = load_or_exit(machine_path);
            csa::Word word = csa::split_word(word_text);
            auto v = csa::engine::run_deterministic(spec, word, budget.resolve(word.size()));
            std::cout << verdict_json(v, true).dump(2) << "\n";
            return exit_of_outcome(v);
        }
        if (*decide) {
            csa::MachineSpec spec = load_or_exit(machine_path);
            csa::Word word = csa::split_word(word_text);
            auto v = csa::engine::decide_membership(spec, word, budget.resolve(word.size()));
            std::cout << verdict_json(v, false).dump(2) << "\n";
            return exit_of_outcome(v);
        }
        if (*enumerate) {
            csa::MachineSpec spec = load_or_exit(machine_path);
            auto sample =
                csa::oracle::enumerate_language(spec, max_len, budget.resolve(max_len));
            for (const auto& w : sample.accepted) std::cout << csa::join_word(w) << "\n";
            if (!sample.exhaustive) {
                std::cerr << sample.undecided.size() << " words undecided under the budget\n";
                return kInconclusive;
            }
            return kOk;
        }
        if (*compare) {
            csa::MachineSpec a = load_or_exit(path_a);
            csa::MachineSpec b = load_or_exit(path_b);
            auto res = csa::oracle::compare_machines(a, b, max_len, budget.resolve(max_len));
            switch (res.kind) {
                case csa::oracle::CompareResult::Kind::kEqual:
                    std::cout << "equal\n";
                    return kOk;
                case csa::oracle::CompareResult::Kind::kCounterexample:
                    std::cout << "counterexample: " << csa::join_word(res.counterexample) << "\n";
                    return kNegative;
                case csa::oracle::CompareResult::Kind::kInconclusive:
                    std::cout << "inconclusive\n";
                    return kInconclusive;
            }
        }
        if (*transform) {
            csa::transforms::TransformResult result;
            if (transform_name == "tm-to-csa") {
                result = csa::transforms::tm_to_csa(csa::load_turing_machine_file(in_path),
                                                    cap_factor);
            } else {
                csa::MachineSpec spec = load_or_exit(in_path);
                if (transform_name == "to-normal-form")
                    result = csa::transforms::to_normal_form(spec);
                else if (transform_name == "eliminate-one-stack")
                    result = csa::transforms::eliminate_one_stack(spec);
                else if (transform_name == "remove-sensing")
                    result = csa::transforms::remove_sensing(spec);
                else if (transform_name == "compile-to-2dfa")
                    result = csa::transforms::compile_to_2dfa(spec);
                else if (transform_name == "heads-to-stacks")
                    result = csa::transforms::heads_to_stacks(spec);
                else if (transform_name == "make-synchronous")
                    result = csa::transforms::make_synchronous(spec);
                else if (transform_name == "flatten-write-phases")
                    result = csa::transforms::flatten_write_phases(spec);
                else if (transform_name == "write-restricted-to-multistack")
                    result = csa::transforms::write_restricted_to_multistack(spec);
                else {
                    std::cerr << "unknown transform '" << transform_name << "'\n";
                    return kUsage;
                }
            }
            if (!out_path.empty()) csa::save_machine_file(result.machine, out_path);
            const json rep = report_json(result.report);
            if (!report_path.empty()) {
                std::ofstream out(report_path);
                out << rep.dump(2) << "\n";
            }
            std::cout << rep.dump(2) << "\n";
            return kOk;
        }
        if (*sync) {
            csa::MachineSpec spec = load_or_exit(machine_path);
            auto d = csa::transforms::decide_synchronous(spec);
            if (!d.diagnostic.empty()) {
                std::cerr << d.diagnostic << "\n";
                return kInconclusive;
            }
            if (d.synchronous) {
                std::cout << "synchronous\n";
                return kOk;
            }
            std::cout << "not_synchronous\n";
            std::cout << "stack_witness: " << csa::join_word(d.stack_witness) << "\n";
            std::cout << "input_witness: " << csa::join_word(d.input_witness) << "\n";
            return kNegative;
        }
        if (*corpus) {
            if (*corpus_export) {
                const auto& entry = csa::oracle::corpus_entry(corpus_name);
                const std::string text = csa::serialize_machine(entry.machine);
                if (!out_path.empty()) {
                    std::ofstream out(out_path);
                    out << text << "\n";
                } else {
                    std::cout << text << "\n";
                }
                return kOk;
            }
            for (const auto& [name, entry] : csa::oracle::corpus())
                std::cout << name << "\t" << entry.description << "\n";
            return kOk;
        }
    } catch (const csa::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const csa::transforms::TransformError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
