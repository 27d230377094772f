// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances and time budgets are pinned
// below.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <new>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "qgeom/qgeom.hpp"
#include "support/test_support.hpp"

// ---------------------------------------------------------------------------
// Heap accounting for the memory criterion.

namespace {

std::atomic<std::size_t> g_live_bytes{0};
std::atomic<std::size_t> g_peak_bytes{0};
constexpr std::size_t kHeader = alignof(std::max_align_t);

}  // namespace

void* operator new(std::size_t size) {
    auto* raw = static_cast<unsigned char*>(std::malloc(size + kHeader));
    if (!raw) throw std::bad_alloc();
    *reinterpret_cast<std::size_t*>(raw) = size;
    const std::size_t live = g_live_bytes.fetch_add(size) + size;
    std::size_t peak = g_peak_bytes.load();
    while (live > peak && !g_peak_bytes.compare_exchange_weak(peak, live)) {
    }
    return raw + kHeader;
}

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic ignored "-Wmismatched-new-delete"
#endif

void operator delete(void* p) noexcept {
    if (!p) return;
    auto* raw = static_cast<unsigned char*>(p) - kHeader;
    g_live_bytes.fetch_sub(*reinterpret_cast<std::size_t*>(raw));
    std::free(raw);
}

void* operator new[](std::size_t size) { return operator new(size); }
void operator delete[](void* p) noexcept { operator delete(p); }
void operator delete(void* p, std::size_t) noexcept { operator delete(p); }
void operator delete[](void* p, std::size_t) noexcept { operator delete(p); }

// ---------------------------------------------------------------------------

using namespace qgeom;
using qgeom::testing::C;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kExactTol = 1e-12;           // criteria 1, 5, 8
constexpr double kRelTol = 1e-9;              // criteria 2, 3, 4
constexpr double kCrossCheckTol = 1e-10;      // criterion 6
constexpr double kFidelityFloor = 1 - 1e-10;  // criterion 7
constexpr double kQasmTol = 1e-9;             // criterion 7
constexpr double kFastBudget = 1.0;           // seconds, criteria 1-3 and 9
constexpr double kDetBudget = 10.0;           // criterion 4
constexpr double kSynthBudget = 30.0;         // criterion 7
constexpr std::size_t kMemoryFactor = 4;      // criterion 9: bytes <= 2^18 * 16 * factor

struct Outcome {
    bool passed;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string show(double v) { return fmt::real(v); }

int rand_int(std::mt19937_64& rng) { return qgeom::testing::random_int(rng, -5, 5); }

std::vector<std::vector<double>> random_rows(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows) {
        for (auto& v : row) v = rand_int(rng);
    }
    return rows;
}

// 1. <A|psi> equals x1 x3 - x2 x4 on integer vectors.
Outcome area_identity() {
    std::mt19937_64 rng(1001);
    const auto detector = area2d_detector(AreaMode::PaperLiteral);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x1 = rand_int(rng), x2 = rand_int(rng), x3 = rand_int(rng), x4 = rand_int(rng);
        const C got = eval_via_inner(detector, Assignment{x1, x2, x3, x4});
        worst = std::max(worst, std::abs(got - C(x1 * x3 - x2 * x4)));
    }
    const double dt = seconds_since(t0);
    return {worst <= kExactTol && dt < kFastBudget, "max_abs_err=" + show(worst) + " time=" + show(dt) + "s"};
}

// 2. Cross product components and orthogonality.
Outcome cross_identity() {
    std::mt19937_64 rng(1002);
    const auto t0 = Clock::now();
    double worst_rel = 0.0, worst_orth = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Vec3 a{double(rand_int(rng)), double(rand_int(rng)), double(rand_int(rng))};
        const Vec3 b{double(rand_int(rng)), double(rand_int(rng)), double(rand_int(rng))};
        const Vec3 c = cross3d(a, b);
        const Vec3 want{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
        worst_rel = std::max({worst_rel, rel_gap(c.x, want.x), rel_gap(c.y, want.y), rel_gap(c.z, want.z)});
        const double scale = norm(a) * norm(b) * norm(b);
        const double orth = std::max(std::abs(dot(c, a)), std::abs(dot(c, b)));
        if (scale > 0) worst_orth = std::max(worst_orth, orth / scale);
        else if (orth > 0) worst_orth = INFINITY;
    }
    const double dt = seconds_since(t0);
    return {worst_rel <= kRelTol && worst_orth <= kRelTol && dt < kFastBudget,
            "max_rel_err=" + show(worst_rel) + " max_orth_ratio=" + show(worst_orth) + " time=" + show(dt) + "s"};
}

// Shared by criteria 3 and 4.
double det_agreement(std::mt19937_64& rng, std::size_t n, int trials) {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const auto m = SquareMatrix::from_rows(random_rows(rng, n));
        worst = std::max(worst, rel_gap(det_quantum(m), det_classical(m)));
    }
    return worst;
}

// 3. Volume identity.
Outcome volume_identity() {
    std::mt19937_64 rng(1003);
    const auto t0 = Clock::now();
    const double worst = det_agreement(rng, 3, 100);
    const double known = det_quantum(SquareMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}));
    const double oracle = qgeom::testing::cofactor_det({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
    const double dt = seconds_since(t0);
    return {worst <= kRelTol && known == -3.0 && oracle == -3.0 && dt < kFastBudget,
            "max_rel_err=" + show(worst) + " det(known)=" + show(known) + " time=" + show(dt) + "s"};
}

// 4. Generalized detector at n = 2 and n = 4.
Outcome general_detector() {
    std::mt19937_64 rng(1004);
    const auto t0 = Clock::now();
    const double w2 = det_agreement(rng, 2, 100);
    const double w4 = det_agreement(rng, 4, 100);
    const double dt = seconds_since(t0);
    return {w2 <= kRelTol && w4 <= kRelTol && dt < kDetBudget,
            "n2_max_rel_err=" + show(w2) + " n4_max_rel_err=" + show(w4) + " time=" + show(dt) + "s"};
}

// 5. Listing 1 audited against a hand-written simulation on 16 amplitudes.
Outcome listing1_audit() {
    std::array<C, 16> psi{};
    psi[0] = 1.0;
    const double r = 1 / std::sqrt(2.0);
    auto bit = [](std::size_t i, int q) { return (i >> q) & 1U; };
    // h q0
    {
        std::array<C, 16> next{};
        for (std::size_t i = 0; i < 16; ++i) {
            if (bit(i, 0)) continue;
            next[i] = r * (psi[i] + psi[i | 1]);
            next[i | 1] = r * (psi[i] - psi[i | 1]);
        }
        psi = next;
    }
    // cx q0 -> q1, q2, q3; x q1; x q3
    auto permute = [&](auto image) {
        std::array<C, 16> next{};
        for (std::size_t i = 0; i < 16; ++i) next[image(i)] = psi[i];
        psi = next;
    };
    for (int t = 1; t <= 3; ++t) permute([&](std::size_t i) { return bit(i, 0) ? i ^ (1U << t) : i; });
    permute([](std::size_t i) { return i ^ 2U; });
    permute([](std::size_t i) { return i ^ 8U; });
    // z q0
    for (std::size_t i = 0; i < 16; ++i) {
        if (bit(i, 0)) psi[i] = -psi[i];
    }
    // |A> = (|0101> - |1010>) / sqrt 2
    const C overlap = r * psi[5] - r * psi[10];
    const double hand = std::norm(overlap);

    const auto report = verify_preparation(listing1_circuit(), paper_detectors()[0].state);
    const double diff = std::abs(report.fidelity - hand);
    const bool phase_ok = report.global_phase && std::abs(*report.global_phase - overlap / std::abs(overlap)) <= kExactTol;
    return {diff <= kExactTol && phase_ok,
            "tool_fidelity=" + fmt::fixed(report.fidelity) + " hand_fidelity=" + fmt::fixed(hand) +
                " global_phase=" + (report.global_phase ? fmt::complex_fixed(*report.global_phase) : "absent")};
}

// Full 2^n x 2^n matrix of one gate, built from its local matrix.
Eigen::MatrixXcd dense_gate(const Gate& g, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
    for (Qubit t : g.targets) {
        Gate single = g;
        single.targets = {t};
        std::vector<Qubit> qubits = g.controls;
        qubits.push_back(t);
        const auto local = qgeom::testing::controlled_local_matrix(single);
        std::uint64_t mask = 0;
        for (Qubit q : qubits) mask |= std::uint64_t{1} << q;
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
        for (std::size_t row = 0; row < dim; ++row) {
            for (std::size_t col = 0; col < dim; ++col) {
                if ((row & ~mask) != (col & ~mask)) continue;
                std::size_t lr = 0, lc = 0;
                for (std::size_t j = 0; j < qubits.size(); ++j) {
                    lr |= ((row >> qubits[j]) & 1U) << j;
                    lc |= ((col >> qubits[j]) & 1U) << j;
                }
                u(row, col) = local[lr][lc];
            }
        }
        total = u * total;
    }
    return total;
}

double oracle_fidelity(const std::vector<C>& psi, const SparseState& target, Qubit offset) {
    C overlap = 0.0;
    for (const auto& t : target.terms()) overlap += std::conj(t.coeff) * psi[t.index << offset];
    double norm2 = 0.0;
    for (const C& a : psi) norm2 += std::norm(a);
    return std::norm(overlap) / (target.norm() * target.norm() * norm2);
}

// 6. Listing 2 and 3 audits: deterministic, and reproduced by independent
//    dense evaluation (local matrices for 18 qubits, a full matrix product
//    for 9 qubits).
Outcome listing23_audit() {
    const auto reports = verify_paper_circuits();
    const bool deterministic = format_reports(reports) == format_reports(verify_paper_circuits());
    const auto detectors = paper_detectors();

    const auto psi2 = qgeom::testing::local_matrix_run(listing2_circuit());
    double worst_state = qgeom::testing::max_abs_diff(run(listing2_circuit()).amplitudes(), psi2);
    double worst = 0.0;
    std::ostringstream fids;
    for (std::size_t block = 0; block < 3; ++block) {
        const double f = oracle_fidelity(psi2, detectors[1 + block].state, 6 * block);
        worst = std::max(worst, std::abs(f - reports[1 + block].fidelity));
        fids << detectors[1 + block].name << "=" << fmt::fixed(reports[1 + block].fidelity) << " ";
    }

    const Circuit l3 = listing3_circuit();
    const std::size_t dim = basis_dimension(l3.num_qubits());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& g : l3.ops()) {
        if (g.kind != GateKind::BARRIER) u = dense_gate(g, l3.num_qubits()) * u;
    }
    const Eigen::VectorXcd col = u.col(0);
    const std::vector<C> psi3(col.data(), col.data() + col.size());
    worst_state = std::max(worst_state, qgeom::testing::max_abs_diff(run(l3).amplitudes(), psi3));
    const double f3 = oracle_fidelity(psi3, detectors[4].state, 0);
    worst = std::max(worst, std::abs(f3 - reports[4].fidelity));
    fids << "V=" << fmt::fixed(reports[4].fidelity);

    return {deterministic && worst <= kCrossCheckTol && worst_state <= kCrossCheckTol,
            fids.str() + " max_fidelity_diff=" + show(worst) + " max_amplitude_diff=" + show(worst_state) +
                " deterministic=" + (deterministic ? "yes" : "no")};
}

// 7. Synthesis round trip, including the exported QASM.
Outcome synthesis_round_trip() {
    std::vector<SparseState> targets;
    for (const auto& d : paper_detectors()) targets.push_back(d.state);
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + rng() % 10;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(8, basis_dimension(n));
        SparseState s(n);
        while (s.size() < k) {
            const BasisIndex idx = rng() % basis_dimension(n);
            if (s.coeff(idx) == C(0.0)) s.add(idx, i % 2 ? value(rng) : (rng() % 2 ? 1.0 : -1.0));
        }
        targets.push_back(s);
    }

    const auto t0 = Clock::now();
    double worst_fid = 1.0, worst_qasm = 0.0;
    for (const auto& target : targets) {
        const Circuit c = synth_sparse_state(target);
        worst_fid = std::min(worst_fid, verify_preparation(c, target).fidelity);

        const Circuit back = qgeom::testing::read_qasm(export_qasm(c).text);
        const auto psi = qgeom::testing::local_matrix_run(back);
        const auto want = normalize(target).state.to_dense();
        const auto expected = want.amplitudes();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (std::abs(expected[i]) > std::abs(expected[arg])) arg = i;
        }
        const C phase = psi[arg] / expected[arg];
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const C e = i < expected.size() ? phase * expected[i] : C(0.0);
            worst_qasm = std::max(worst_qasm, std::abs(psi[i] - e));
        }
    }
    const double dt = seconds_since(t0);
    return {worst_fid >= kFidelityFloor && worst_qasm <= kQasmTol && dt < kSynthBudget,
            "targets=" + std::to_string(targets.size()) + " min_fidelity=" + fmt::fixed(worst_fid) +
                " max_qasm_err=" + show(worst_qasm) + " time=" + show(dt) + "s"};
}

// 8. Simulator soundness.
Outcome simulator_soundness() {
    std::mt19937_64 rng(1008);
    double worst_norm = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + rng() % 10;
        Circuit c(n);
        const int gates = qgeom::testing::random_int(rng, 0, 50);
        for (int g = 0; g < gates; ++g) c.append(qgeom::testing::random_basic_gate(rng, n));
        worst_norm = std::max(worst_norm, std::abs(run(c, qgeom::testing::random_state(rng, n)).norm_squared() - 1.0));
    }

    double worst_unitary = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 6;
        const Gate g = qgeom::testing::random_basic_gate(rng, n);
        const auto psi = qgeom::testing::random_state(rng, n);
        Statevector out = psi;
        apply_gate(out, g);
        const auto u = gate_unitary(g, n);
        for (std::size_t r = 0; r < psi.dimension(); ++r) {
            C acc = 0.0;
            for (std::size_t c = 0; c < psi.dimension(); ++c) acc += u(r, c) * psi[c];
            worst_unitary = std::max(worst_unitary, std::abs(acc - out[r]));
        }
    }

    const auto a = normalize(sparse_from_labels({{"0101", 1.0}, {"1010", -1.0}}).to_dense()).state;
    const auto rho = reduced_density_matrix(a, {3});
    const std::vector<C> psi(a.amplitudes().begin(), a.amplitudes().end());
    const auto brute = qgeom::testing::brute_force_partial_trace(psi, 4, {3});
    double worst_rho = 0.0;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            const C half = r == c ? C(0.5) : C(0.0);
            worst_rho = std::max({worst_rho, std::abs(rho(r, c) - half), std::abs(brute[r][c] - half)});
        }
    }
    return {worst_norm <= kExactTol && worst_unitary <= kExactTol && worst_rho <= kExactTol,
            "max_norm_drift=" + show(worst_norm) + " max_unitary_diff=" + show(worst_unitary) +
                " max_rdm_err=" + show(worst_rho)};
}

// 9. 18-qubit simulation time and peak heap.
Outcome performance() {
    const Circuit c = listing2_circuit();
    const std::size_t baseline = g_live_bytes.load();
    g_peak_bytes.store(baseline);
    const auto t0 = Clock::now();
    const Statevector s = run(c);
    const double dt = seconds_since(t0);
    const std::size_t peak = g_peak_bytes.load() - baseline;
    const std::size_t budget = (std::size_t{1} << 18) * 16 * kMemoryFactor;
    const bool sane = std::abs(s.norm_squared() - 1.0) <= kExactTol;
    return {dt < kFastBudget && peak <= budget && sane,
            "time=" + show(dt) + "s peak_heap_bytes=" + std::to_string(peak) + " budget_bytes=" + std::to_string(budget)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"AC1 area inner-product identity", area_identity},
        {"AC2 cross-product identity", cross_identity},
        {"AC3 volume identity", volume_identity},
        {"AC4 generalized determinant detector", general_detector},
        {"AC5 listing 1 audit", listing1_audit},
        {"AC6 listing 2/3 audits", listing23_audit},
        {"AC7 synthesis round trip", synthesis_round_trip},
        {"AC8 simulator soundness", simulator_soundness},
        {"AC9 performance", performance},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
