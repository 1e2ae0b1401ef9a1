// Copyright 2026 The qftq Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Builds the exact and a pruned 4-qutrit QFT, checks the exact one against
// the 81-point DFT and prints the per-digit phase error table.
#include <cstdio>

#include "qftq/qftq.hpp"

int main() {
    constexpr int q = 3;
    constexpr int n = 4;

    const auto exact = qftq::build_qft_circuit(q, n);
    const auto dist = qftq::max_entry_distance(
        qftq::circuit_to_matrix(exact),
        qftq::dft_matrix(qftq::register_size(q, n)));
    std::printf("exact circuit: %zu gates, distance to DFT %.3g\n",
                exact.gate_count(), dist);

    const auto depth = qftq::KeepDepth::at_most(2);
    std::printf("pruned circuit: %zu gates\n",
                qftq::build_qft_circuit(q, n, depth).gate_count());
    std::printf("%6s %3s %3s %12s %12s %12s\n", "digit", "L", "m", "measured",
                "bound_new", "coppersmith");
    for (const auto &r : qftq::approximation_report(q, n, depth)) {
        std::printf("%6d %3d %3d %12.6f %12.6f %12.6f\n", r.target_digit,
                    r.fraction_length, r.dropped_count, r.measured_t1,
                    r.bound_new, r.bound_coppersmith);
    }
    return 0;
}
