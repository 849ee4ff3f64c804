#pragma once

#include <span>
#include <vector>

#include "qtab/common.hpp"
#include "qtab/statevector.hpp"

// Serial reference path: every gate is materialized as an explicit
// 2^n x 2^n matrix assembled from its small block definition, and applied
// by dense mat-vec. Used by tests as the oracle for the fast kernels and by
// the benchmark as the baseline; never on the training path.
namespace qtab::ref {

// Small block matrix of a gate on its own qubits, row-major, in the basis
// ordered (qubits[0], qubits[1], ...) with qubits[0] as the high bit.
std::vector<cplx> gate_block(GateKind kind, std::span<const double> angles);

// Embed the block into the full 2^n x 2^n unitary (row-major).
std::vector<cplx> gate_matrix(const GateSpec& gate, std::span<const double> params, int num_qubits);

// Dense mat-vec: state <- U * state.
void apply_dense(const std::vector<cplx>& matrix, std::vector<cplx>& state);

}  // namespace qtab::ref
