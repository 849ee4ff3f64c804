#pragma once

#include <array>
#include <span>
#include <vector>

#include "qtab/common.hpp"

namespace qtab {

enum class GateKind { RY, X, IsingYY, ControlledRY, Givens, ControlledGivens };

inline constexpr int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::RY:
        case GateKind::X:
            return 1;
        case GateKind::IsingYY:
        case GateKind::ControlledRY:
        case GateKind::Givens:
            return 2;
        case GateKind::ControlledGivens:
            return 3;
    }
    return 0;
}

const char* gate_name(GateKind k);

// One gate in a circuit. `qubits` holds gate_arity(kind) entries; for
// controlled kinds the control comes first, and for (controlled) Givens the
// pair follows in (i, j) order. `param_index` points into a shared parameter
// vector; -1 marks the unparameterized X. The Givens phase is fixed to
// phi = 0 in circuits built here; the simulator primitive still accepts phi.
struct GateSpec {
    GateKind kind;
    std::array<int, 3> qubits{-1, -1, -1};
    int param_index = -1;
};

// Dense statevector over 2^n computational-basis amplitudes, qubit 0 mapped
// to the most significant bit. Gate application mutates in place and keeps
// the norm at 1 up to roundoff. Elementwise kernels run under OpenMP when
// the state is large enough and the parallel flag is on; there are no
// floating-point reductions inside parallel regions, so results are
// bit-identical with parallelism on or off.
class StateVector {
public:
    static constexpr int kMaxQubits = 24;

    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::vector<cplx>& raw_amplitudes() { return amps_; }

    void set_parallel(bool on) { parallel_ = on; }
    bool parallel() const { return parallel_; }

    void apply_ry(int qubit, double theta);
    void apply_x(int qubit);
    void apply_isingyy(int q1, int q2, double theta);
    void apply_controlled_ry(int control, int target, double theta);
    void apply_givens(int qi, int qj, double theta, double phi = 0.0);
    void apply_controlled_givens(int control, int qi, int qj, double theta, double phi = 0.0);

    // Dispatch helper; reads the gate's angle (if any) from params.
    void apply(const GateSpec& gate, std::span<const double> params);

    std::vector<double> probabilities() const;
    double norm() const;

    // `shots` i.i.d. computational-basis measurements, as basis indices.
    std::vector<std::uint64_t> sample(int shots, Rng& rng) const;
    std::vector<std::string> sample_bitstrings(int shots, std::uint64_t seed) const;

private:
    void check_qubit(int q) const;

    int num_qubits_;
    bool parallel_;
    std::vector<cplx> amps_;
};

inline StateVector zero_state(int num_qubits) { return StateVector(num_qubits); }

}  // namespace qtab
