#include "qtab/statevector.hpp"

#include <algorithm>
#include <cmath>

namespace qtab {
namespace {

// Kernels enumerate compressed indices and expand them by re-inserting the
// fixed gate-qubit bits, so every iteration touches a disjoint amplitude
// group. Parallel loops are elementwise maps only.
constexpr std::int64_t kMinParallelSpan = std::int64_t{1} << 13;

inline std::uint64_t insert_zero(std::uint64_t x, int pos) {
    const std::uint64_t low = x & ((std::uint64_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | low;
}

}  // namespace

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::RY: return "ry";
        case GateKind::X: return "x";
        case GateKind::IsingYY: return "isingyy";
        case GateKind::ControlledRY: return "cry";
        case GateKind::Givens: return "givens";
        case GateKind::ControlledGivens: return "cgivens";
    }
    return "?";
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(num_qubits));
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
    parallel_ = true;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_)
        throw IndexError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qubits_) + " qubits");
}

void StateVector::apply_ry(int qubit, double theta) {
    check_qubit(qubit);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const int pos = num_qubits_ - 1 - qubit;
    const std::uint64_t m = std::uint64_t{1} << pos;
    const std::int64_t half = static_cast<std::int64_t>(dim() / 2);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && half >= kMinParallelSpan)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(k), pos);
        const std::uint64_t i1 = i0 | m;
        const cplx a0 = a[i0], a1 = a[i1];
        a[i0] = c * a0 - s * a1;
        a[i1] = s * a0 + c * a1;
    }
}

void StateVector::apply_x(int qubit) {
    check_qubit(qubit);
    const int pos = num_qubits_ - 1 - qubit;
    const std::uint64_t m = std::uint64_t{1} << pos;
    const std::int64_t half = static_cast<std::int64_t>(dim() / 2);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && half >= kMinParallelSpan)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(k), pos);
        std::swap(a[i0], a[i0 | m]);
    }
}

void StateVector::apply_isingyy(int q1, int q2, double theta) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw IndexError("isingyy qubits must be distinct");
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const cplx is{0.0, s};
    const int p1 = num_qubits_ - 1 - q1, p2 = num_qubits_ - 1 - q2;
    const int plo = std::min(p1, p2), phi_ = std::max(p1, p2);
    const std::uint64_t m1 = std::uint64_t{1} << p1, m2 = std::uint64_t{1} << p2;
    const std::int64_t quarter = static_cast<std::int64_t>(dim() / 4);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && quarter >= kMinParallelSpan)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero(insert_zero(static_cast<std::uint64_t>(k), plo), phi_);
        const std::uint64_t i00 = base, i01 = base | m2, i10 = base | m1, i11 = base | m1 | m2;
        const cplx a00 = a[i00], a01 = a[i01], a10 = a[i10], a11 = a[i11];
        a[i00] = c * a00 + is * a11;
        a[i11] = c * a11 + is * a00;
        a[i01] = c * a01 - is * a10;
        a[i10] = c * a10 - is * a01;
    }
}

void StateVector::apply_controlled_ry(int control, int target, double theta) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw IndexError("controlled-ry qubits must be distinct");
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const int pc = num_qubits_ - 1 - control, pt = num_qubits_ - 1 - target;
    const int plo = std::min(pc, pt), phi_ = std::max(pc, pt);
    const std::uint64_t mc = std::uint64_t{1} << pc, mt = std::uint64_t{1} << pt;
    const std::int64_t quarter = static_cast<std::int64_t>(dim() / 4);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && quarter >= kMinParallelSpan)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero(insert_zero(static_cast<std::uint64_t>(k), plo), phi_);
        const std::uint64_t i0 = base | mc, i1 = i0 | mt;
        const cplx a0 = a[i0], a1 = a[i1];
        a[i0] = c * a0 - s * a1;
        a[i1] = s * a0 + c * a1;
    }
}

void StateVector::apply_givens(int qi, int qj, double theta, double phi) {
    check_qubit(qi);
    check_qubit(qj);
    if (qi == qj) throw IndexError("givens qubits must be distinct");
    // 2x2 block on the ordered pair basis (|0_i 1_j>, |1_i 0_j>); the |00>
    // and |11> sectors are untouched, so Hamming weight is conserved.
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx e_pos = std::polar(1.0, phi), e_neg = std::polar(1.0, -phi);
    const int pi_ = num_qubits_ - 1 - qi, pj = num_qubits_ - 1 - qj;
    const int plo = std::min(pi_, pj), phi2 = std::max(pi_, pj);
    const std::uint64_t mi = std::uint64_t{1} << pi_, mj = std::uint64_t{1} << pj;
    const std::int64_t quarter = static_cast<std::int64_t>(dim() / 4);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && quarter >= kMinParallelSpan)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero(insert_zero(static_cast<std::uint64_t>(k), plo), phi2);
        const std::uint64_t i01 = base | mj, i10 = base | mi;
        const cplx a01 = a[i01], a10 = a[i10];
        a[i01] = c * a01 - e_pos * (s * a10);
        a[i10] = e_neg * (s * a01) + c * a10;
    }
}

void StateVector::apply_controlled_givens(int control, int qi, int qj, double theta, double phi) {
    check_qubit(control);
    check_qubit(qi);
    check_qubit(qj);
    if (control == qi || control == qj || qi == qj)
        throw IndexError("controlled-givens qubits must be distinct");
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx e_pos = std::polar(1.0, phi), e_neg = std::polar(1.0, -phi);
    const int pc = num_qubits_ - 1 - control;
    const int pi_ = num_qubits_ - 1 - qi, pj = num_qubits_ - 1 - qj;
    int ps[3] = {pc, pi_, pj};
    std::sort(ps, ps + 3);
    const std::uint64_t mc = std::uint64_t{1} << pc;
    const std::uint64_t mi = std::uint64_t{1} << pi_, mj = std::uint64_t{1} << pj;
    const std::int64_t eighth = static_cast<std::int64_t>(dim() / 8);
    cplx* a = amps_.data();
#pragma omp parallel for if (parallel_ && eighth >= kMinParallelSpan)
    for (std::int64_t k = 0; k < eighth; ++k) {
        std::uint64_t base = static_cast<std::uint64_t>(k);
        base = insert_zero(base, ps[0]);
        base = insert_zero(base, ps[1]);
        base = insert_zero(base, ps[2]);
        const std::uint64_t i01 = base | mc | mj, i10 = base | mc | mi;
        const cplx a01 = a[i01], a10 = a[i10];
        a[i01] = c * a01 - e_pos * (s * a10);
        a[i10] = e_neg * (s * a01) + c * a10;
    }
}

void StateVector::apply(const GateSpec& g, std::span<const double> params) {
    const auto angle = [&]() -> double {
        if (g.param_index < 0 || static_cast<std::size_t>(g.param_index) >= params.size())
            throw ArgumentError("gate parameter index out of range");
        return params[static_cast<std::size_t>(g.param_index)];
    };
    switch (g.kind) {
        case GateKind::RY: apply_ry(g.qubits[0], angle()); break;
        case GateKind::X: apply_x(g.qubits[0]); break;
        case GateKind::IsingYY: apply_isingyy(g.qubits[0], g.qubits[1], angle()); break;
        case GateKind::ControlledRY: apply_controlled_ry(g.qubits[0], g.qubits[1], angle()); break;
        case GateKind::Givens: apply_givens(g.qubits[0], g.qubits[1], angle()); break;
        case GateKind::ControlledGivens:
            apply_controlled_givens(g.qubits[0], g.qubits[1], g.qubits[2], angle());
            break;
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    const std::int64_t n = static_cast<std::int64_t>(amps_.size());
    const cplx* a = amps_.data();
    double* out = p.data();
#pragma omp parallel for if (parallel_ && n >= kMinParallelSpan)
    for (std::int64_t i = 0; i < n; ++i) out[i] = std::norm(a[i]);
    return p;
}

double StateVector::norm() const {
    // Serial accumulation keeps the value independent of thread count.
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<std::uint64_t> StateVector::sample(int shots, Rng& rng) const {
    if (shots < 1) throw ArgumentError("shots must be >= 1");
    std::vector<double> cum = probabilities();
    for (std::size_t i = 1; i < cum.size(); ++i) cum[i] += cum[i - 1];
    std::vector<std::uint64_t> out(static_cast<std::size_t>(shots));
    for (auto& x : out) x = rng.categorical(cum);
    return out;
}

std::vector<std::string> StateVector::sample_bitstrings(int shots, std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (std::uint64_t idx : sample(shots, rng)) out.push_back(to_bitstring(idx, num_qubits_));
    return out;
}

}  // namespace qtab
