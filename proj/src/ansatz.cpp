#include "qtab/ansatz.hpp"

namespace qtab {

CircuitAnsatz build_circuit(const RegisterLayout& layout, int depth) {
    if (depth < 1) throw ArgumentError("circuit depth must be >= 1");
    if (layout.total_qubits() < 1) throw SchemaError("layout has no qubits");
    if (layout.total_qubits() > StateVector::kMaxQubits)
        throw ConfigError("layout needs " + std::to_string(layout.total_qubits()) +
                          " qubits, beyond the simulable limit of " +
                          std::to_string(StateVector::kMaxQubits));

    CircuitAnsatz circuit;
    circuit.layout = layout;
    circuit.depth = depth;

    const int n = layout.numerical_width;
    const int num_cat = static_cast<int>(layout.categorical_sizes.size());

    // Initial excitation: |100...0> reference state per categorical register.
    for (int r = 0; r < num_cat; ++r)
        circuit.gates.push_back({GateKind::X, {layout.categorical_offset(r), -1, -1}, -1});

    int p = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) circuit.gates.push_back({GateKind::RY, {q, -1, -1}, p++});
        for (int q = 0; q + 1 < n; ++q)
            circuit.gates.push_back({GateKind::IsingYY, {q, q + 1, -1}, p++});
        for (int q = 0; q + 1 < n; ++q)
            circuit.gates.push_back({GateKind::ControlledRY, {q, q + 1, -1}, p++});
        for (int r = 0; r < num_cat; ++r) {
            const int off = layout.categorical_offset(r);
            const int c = layout.categorical_sizes[static_cast<std::size_t>(r)];
            for (int q = 0; q + 1 < c; ++q)
                circuit.gates.push_back({GateKind::Givens, {off + q, off + q + 1, -1}, p++});
        }
        // Cross-register entanglers between each adjacent register pair; the
        // later register of a pair is always categorical since the numerical
        // register comes first.
        for (int r = 0; r < num_cat; ++r) {
            const bool after_numerical = (r == 0 && n > 0);
            if (!after_numerical && r == 0) continue;  // n == 0: the first categorical register has no predecessor
            const int control = after_numerical
                                    ? n - 1
                                    : layout.categorical_offset(r - 1) +
                                          layout.categorical_sizes[static_cast<std::size_t>(r - 1)] - 1;
            const int off = layout.categorical_offset(r);
            circuit.gates.push_back({GateKind::ControlledGivens, {control, off, off + 1}, p++});
        }
    }
    circuit.num_params = p;
    return circuit;
}

StateVector evaluate(const CircuitAnsatz& circuit, std::span<const double> params, bool parallel) {
    if (static_cast<int>(params.size()) != circuit.num_params)
        throw ArgumentError("expected " + std::to_string(circuit.num_params) + " parameters, got " +
                            std::to_string(params.size()));
    StateVector state(circuit.num_qubits());
    state.set_parallel(parallel);
    for (const GateSpec& g : circuit.gates) state.apply(g, params);
    return state;
}

}  // namespace qtab
