#include "qtab/dense_reference.hpp"

#include <cmath>

namespace qtab::ref {
namespace {

std::vector<cplx> ry_block(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {c, -s, s, c};
}

std::vector<cplx> givens_block(double theta, double phi) {
    // Basis order (i, j): |00>, |01>, |10>, |11>. The rotation lives on the
    // middle pair, identity elsewhere.
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx e_pos = std::polar(1.0, phi), e_neg = std::polar(1.0, -phi);
    std::vector<cplx> b(16, cplx{0.0, 0.0});
    b[0 * 4 + 0] = 1.0;
    b[3 * 4 + 3] = 1.0;
    b[1 * 4 + 1] = c;
    b[1 * 4 + 2] = -e_pos * s;
    b[2 * 4 + 1] = e_neg * s;
    b[2 * 4 + 2] = c;
    return b;
}

std::vector<cplx> controlled(const std::vector<cplx>& sub) {
    // diag(I, sub) in the basis (control, sub-qubits...).
    std::size_t d = 1;
    while (d * d < sub.size()) ++d;
    const std::size_t full = 2 * d;
    std::vector<cplx> b(full * full, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) b[i * full + i] = 1.0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) b[(d + r) * full + (d + c)] = sub[r * d + c];
    return b;
}

}  // namespace

std::vector<cplx> gate_block(GateKind kind, std::span<const double> angles) {
    switch (kind) {
        case GateKind::RY:
            return ry_block(angles[0]);
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::IsingYY: {
            // exp(-i theta (Y (x) Y)/2) = cos(theta/2) I - i sin(theta/2) Y(x)Y,
            // with Y(x)Y assembled from the 2x2 Pauli-Y by Kronecker product.
            const cplx y[4] = {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
            std::vector<cplx> yy(16);
            for (int r1 = 0; r1 < 2; ++r1)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int r2 = 0; r2 < 2; ++r2)
                        for (int c2 = 0; c2 < 2; ++c2)
                            yy[static_cast<std::size_t>((r1 * 2 + r2) * 4 + (c1 * 2 + c2))] =
                                y[r1 * 2 + c1] * y[r2 * 2 + c2];
            const double c = std::cos(angles[0] / 2.0), s = std::sin(angles[0] / 2.0);
            std::vector<cplx> b(16);
            for (int i = 0; i < 16; ++i) b[static_cast<std::size_t>(i)] = cplx{0.0, -s} * yy[static_cast<std::size_t>(i)];
            for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i * 4 + i)] += c;
            return b;
        }
        case GateKind::ControlledRY:
            return controlled(ry_block(angles[0]));
        case GateKind::Givens:
            return givens_block(angles[0], angles.size() > 1 ? angles[1] : 0.0);
        case GateKind::ControlledGivens:
            return controlled(givens_block(angles[0], angles.size() > 1 ? angles[1] : 0.0));
    }
    throw ArgumentError("unknown gate kind");
}

std::vector<cplx> gate_matrix(const GateSpec& gate, std::span<const double> params, int num_qubits) {
    double angle = 0.0;
    if (gate.param_index >= 0) angle = params[static_cast<std::size_t>(gate.param_index)];
    const std::vector<cplx> block = gate_block(gate.kind, std::span<const double>(&angle, 1));

    const int arity = gate_arity(gate.kind);
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<cplx> full(dim * dim, cplx{0.0, 0.0});
    for (std::uint64_t col = 0; col < dim; ++col) {
        // Sub-index of this column on the gate qubits, qubits[0] high.
        std::uint64_t sub_col = 0;
        for (int t = 0; t < arity; ++t)
            sub_col = (sub_col << 1) | static_cast<std::uint64_t>(bit_of(col, gate.qubits[static_cast<std::size_t>(t)], num_qubits));
        for (std::uint64_t sub_row = 0; sub_row < (std::uint64_t{1} << arity); ++sub_row) {
            std::uint64_t row = col;
            for (int t = 0; t < arity; ++t) {
                const std::uint64_t m = qubit_mask(gate.qubits[static_cast<std::size_t>(t)], num_qubits);
                if ((sub_row >> (arity - 1 - t)) & 1u)
                    row |= m;
                else
                    row &= ~m;
            }
            const cplx v = block[sub_row * (std::uint64_t{1} << arity) + sub_col];
            if (v != cplx{0.0, 0.0}) full[row * dim + col] = v;
        }
    }
    return full;
}

void apply_dense(const std::vector<cplx>& matrix, std::vector<cplx>& state) {
    const std::size_t dim = state.size();
    std::vector<cplx> out(dim, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r) {
        cplx acc{0.0, 0.0};
        const cplx* row = matrix.data() + r * dim;
        for (std::size_t c = 0; c < dim; ++c) acc += row[c] * state[c];
        out[r] = acc;
    }
    state = std::move(out);
}

}  // namespace qtab::ref
