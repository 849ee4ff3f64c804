#pragma once

#include <span>
#include <vector>

#include "qtab/layout.hpp"
#include "qtab/statevector.hpp"

namespace qtab {

// Parameterized generator circuit: per categorical register one initial X
// excitation (emitted once, before the first layer), then `depth` copies of
// the model layer. Within a layer the numerical register gets an RY on each
// qubit, IsingYY gates and controlled-RY gates on adjacent pairs; each
// categorical register gets single-excitation (Givens) gates on adjacent
// pairs; adjacent registers are entangled by a controlled single-excitation
// gate whose control is the last qubit of the earlier register and whose
// pair is the first two qubits of the later one. Every layer gate carries
// its own parameter.
struct CircuitAnsatz {
    RegisterLayout layout;
    int depth = 1;
    std::vector<GateSpec> gates;
    int num_params = 0;

    int num_qubits() const { return layout.total_qubits(); }
};

CircuitAnsatz build_circuit(const RegisterLayout& layout, int depth);

// Run the circuit from |0...0>. Throws ArgumentError on a parameter-length
// mismatch. `parallel` enables OpenMP inside the gate kernels; leave it off
// when many evaluations already run concurrently.
StateVector evaluate(const CircuitAnsatz& circuit, std::span<const double> params,
                     bool parallel = false);

}  // namespace qtab
