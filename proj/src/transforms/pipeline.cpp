#include "common.hpp"
#include "csa/transforms.hpp"

namespace csa {
namespace transforms {

TransformResult compile_to_2dfa(const MachineSpec& spec) {
    if (spec.machine_class != MachineClass::kChecking)
        throw TransformError("compile_to_2dfa requires a checking machine");
    if (spec.determinism != DeterminismMode::kDeterministic)
        throw TransformError("compile_to_2dfa requires a deterministic machine");

    const int r0 = spec.head_count;
    const int k0 = spec.stack_count;

    TransformResult step = to_normal_form(spec);
    for (int round = 0; round < k0; ++round) {
        step = eliminate_one_stack(step.machine);
        if (step.machine.stack_count > 0) step = to_normal_form(step.machine);
    }
    TransformResult final_step = remove_sensing(step.machine);

    TransformResult result;
    result.machine = std::move(final_step.machine);
    result.report.source = detail::summarize(spec);
    result.report.target = detail::summarize(result.machine);
    result.report.relation = "language_equal";
    result.report.rule = "normal form, " + std::to_string(k0) +
                         " stack eliminations with re-normalization, then sensing removal "
                         "(3^k*r+1 = " +
                         std::to_string(compile_to_2dfa_heads(r0, k0)) + " heads)";
    if (result.report.target.heads != compile_to_2dfa_heads(r0, k0))
        throw TransformError("compile_to_2dfa: head arithmetic mismatch");
    if (result.report.target.stacks != 0)
        throw TransformError("compile_to_2dfa: stacks remain after the pipeline");
    return result;
}

}  // namespace transforms
}  // namespace csa
