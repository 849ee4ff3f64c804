// Kernel and gradient benchmark: times one model-layer sweep through the
// fast kernels with OpenMP off and on, the dense serial reference on small
// registers, and a full parameter-shift gradient serial vs parallel.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtab/ansatz.hpp"
#include "qtab/dense_reference.hpp"
#include "qtab/training.hpp"

using namespace qtab;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// One layer of the generator gate pattern on n qubits (numerical register
// only, plus a single-excitation tail) applied to a random-ish state.
std::vector<GateSpec> layer_gates(int n) {
    std::vector<GateSpec> gates;
    int p = 0;
    for (int q = 0; q < n; ++q) gates.push_back({GateKind::RY, {q, -1, -1}, p++});
    for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::IsingYY, {q, q + 1, -1}, p++});
    for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::ControlledRY, {q, q + 1, -1}, p++});
    for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::Givens, {q, q + 1, -1}, p++});
    for (int q = 0; q + 2 < n; ++q)
        gates.push_back({GateKind::ControlledGivens, {q, q + 1, q + 2}, p++});
    return gates;
}

double time_layer(int n, bool parallel, int reps) {
    const std::vector<GateSpec> gates = layer_gates(n);
    std::vector<double> params(gates.size());
    Rng rng(1);
    for (double& v : params) v = rng.uniform(-1.5, 1.5);

    StateVector st(n);
    st.set_parallel(parallel);
    st.apply_ry(0, 0.3);  // touch the state once before timing
    const double t0 = now_seconds();
    for (int r = 0; r < reps; ++r)
        for (const GateSpec& g : gates) st.apply(g, params);
    const double dt = (now_seconds() - t0) / static_cast<double>(reps * gates.size());
    return dt;
}

double time_dense_layer(int n, int reps) {
    const std::vector<GateSpec> gates = layer_gates(n);
    std::vector<double> params(gates.size());
    Rng rng(1);
    for (double& v : params) v = rng.uniform(-1.5, 1.5);

    StateVector st(n);
    std::vector<cplx> state(st.amplitudes().begin(), st.amplitudes().end());
    const double t0 = now_seconds();
    for (int r = 0; r < reps; ++r)
        for (const GateSpec& g : gates) ref::apply_dense(ref::gate_matrix(g, params, n), state);
    return (now_seconds() - t0) / static_cast<double>(reps * gates.size());
}

CircuitAnsatz gradient_circuit() {
    TabularSchema s;
    s.features.push_back({"age", NumericSpec{17.0, 90.0, 5}});
    s.features.push_back({"education", CategoricalSpec{{"a", "b", "c", "d"}}});
    s.features.push_back({"income", CategoricalSpec{{"lo", "hi"}}});
    return build_circuit(build_layout(s, EncodingMode::Boolean), 4);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("built without openmp\n\n");
#endif

    std::printf("%-8s %14s %14s %9s %16s\n", "qubits", "serial/gate", "parallel/gate", "speedup",
                "dense ref/gate");
    for (int n : {10, 14, 16, 18, 20}) {
        const int reps = n <= 16 ? 20 : 5;
        const double ser = time_layer(n, false, reps);
        const double par = time_layer(n, true, reps);
        if (n <= 10) {
            const double dense = time_dense_layer(n, 3);
            std::printf("%-8d %12.2f us %12.2f us %8.2fx %14.2f us\n", n, ser * 1e6, par * 1e6,
                        ser / par, dense * 1e6);
        } else {
            std::printf("%-8d %12.2f us %12.2f us %8.2fx %16s\n", n, ser * 1e6, par * 1e6, ser / par,
                        "-");
        }
    }

    // Parameter-shift gradient: 80 parameters on the 10-qubit census layout,
    // shifted evaluations fanned out across threads.
    const CircuitAnsatz circuit = gradient_circuit();
    std::vector<double> params(static_cast<std::size_t>(circuit.num_params));
    Rng rng(7);
    for (double& v : params) v = rng.uniform(-1.5, 1.5);
    std::vector<double> observable(std::size_t{1} << circuit.num_qubits());
    for (double& m : observable) m = rng.uniform(0.0, 3.0);

    std::printf("\ngradient (%d params, %d qubits, depth %d):\n", circuit.num_params,
                circuit.num_qubits(), circuit.depth);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    for (int threads : {1, max_threads}) {
        omp_set_num_threads(threads);
        const double t0 = now_seconds();
        std::vector<double> grad;
        for (int r = 0; r < 5; ++r) grad = parameter_shift_gradient(circuit, params, observable);
        const double dt = (now_seconds() - t0) / 5.0;
        std::printf("  %2d thread(s): %8.2f ms   (grad[0] = %.6f)\n", threads, dt * 1e3, grad[0]);
        if (max_threads == 1) break;
    }
#else
    const double t0 = now_seconds();
    std::vector<double> grad;
    for (int r = 0; r < 5; ++r) grad = parameter_shift_gradient(circuit, params, observable);
    std::printf("  serial: %8.2f ms   (grad[0] = %.6f)\n", (now_seconds() - t0) / 5.0 * 1e3, grad[0]);
#endif
    return 0;
}
