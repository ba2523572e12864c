// Audit Mira's predefined partition list and show, for each size, how much
// bisection bandwidth the best-fitting cuboid would add.

#include <iostream>

#include "torusiso/policy_audit.hpp"

int main()
{
    using namespace torusiso;
    const auto mira = *bgq::find_builtin_machine("mira");
    const auto policy = audit::mira_2017_policy();
    const auto report = audit::audit(mira, policy, audit::default_audit_sizes(mira, policy));

    for (const auto& row : report.rows) {
        std::cout << row.node_count << " nodes: " << row.baseline_geometry->str() << " (" << *row.baseline_bw
                  << ") -> " << row.best_geometry->str() << " (" << *row.best_bw << "), x"
                  << row.improvement_factor->str() << '\n';
    }
}
