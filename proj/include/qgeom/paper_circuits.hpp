#pragma once

// The three published preparation circuits, transcribed gate for gate, and
// a verifier that simulates a circuit and measures how close it gets to a
// claimed detector state.
//
// Transcriptions are literal. Known oddities are kept on purpose: in the
// 18-qubit listing the second and third blocks apply CX gates whose
// controls are still |0>, and q[8], q[9], q[15] are never touched. The
// verifier reports what the circuits actually produce; correct circuits come
// from synth_sparse_state().

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qgeom/circuit.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/format.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/simulator.hpp"
#include "qgeom/statevector.hpp"
#include "qgeom/synthesis.hpp"

namespace qgeom {

// Four-qubit circuit published for |A> = |0101> - |1010>.
inline Circuit listing1_circuit() {
    Circuit c(4);
    c.h(0);
    c.barrier({0, 1, 2, 3});
    c.cx(0, 1);
    c.cx(0, 2);
    c.cx(0, 3);
    c.barrier({0, 1, 2, 3});
    c.x(1);
    c.x(3);
    c.z(0);
    return c;
}

// Eighteen-qubit circuit published for |A1>, |A2>, |A3> in blocks of six.
inline Circuit listing2_circuit() {
    Circuit c(18);
    c.h(0);
    c.barrier();
    c.cx(0, 1);
    c.cx(0, 2);
    c.cx(0, 3);
    c.cx(0, 4);
    c.cx(0, 5);
    c.barrier();
    c.x(1);
    c.x(4);
    c.z(0);
    c.barrier();

    c.h(6);
    c.barrier();
    c.cx(6, 11);
    c.cx(7, 10);
    c.barrier();
    c.x(6);
    c.x(11);
    c.z(6);
    c.barrier();

    c.h(12);
    c.barrier();
    c.cx(13, 17);
    c.cx(14, 16);
    c.barrier();
    c.x(13);
    c.x(16);
    c.z(13);
    c.barrier();
    return c;
}

// Nine-qubit circuit published for |V>. Each `x([a, b])` call is one
// broadcast X operation.
inline Circuit listing3_circuit() {
    Circuit c(9);
    c.h(0);
    c.h(1);
    c.h(2);

    c.x({1, 2});
    c.ccx(0, 1, 3);
    c.ccx(0, 2, 7);
    c.x({1, 2});

    c.x({0, 2});
    c.ccx(1, 0, 4);
    c.ccx(1, 2, 6);
    c.z(1);
    c.x({0, 2});

    c.x({0, 1});
    c.ccx(2, 0, 5);
    c.ccx(2, 1, 6);
    c.cx(2, 8);
    c.x({0, 1});
    return c;
}

struct NamedTarget {
    std::string name;
    SparseState state;
};

// |A>, |A1>, |A2>, |A3>, |V> exactly as written next to the listings.
inline std::vector<NamedTarget> paper_detectors() {
    const auto cross = cross3d_detectors();
    return {
        {"A", area2d_detector(AreaMode::PaperLiteral)},
        {"A1", cross[0]},
        {"A2", cross[1]},
        {"A3", cross[2]},
        {"V", sparse_from_labels({{"100010001", 1.0},
                                  {"010100001", -1.0},
                                  {"001100010", 1.0},
                                  {"100001010", -1.0},
                                  {"010001100", 1.0},
                                  {"001010100", -1.0}})},
    };
}

// Where each detector variable x_i (1-based) lives in a circuit register.
class QubitMapping {
public:
    explicit QubitMapping(std::vector<Qubit> qubit_of_variable) : qubits_(std::move(qubit_of_variable)) {
        std::unordered_set<Qubit> seen;
        for (Qubit q : qubits_) {
            if (!seen.insert(q).second) throw MappingError("qubit " + std::to_string(q) + " assigned twice");
        }
    }

    // x_i -> qubit offset + i - 1.
    static QubitMapping contiguous(std::size_t num_vars, Qubit offset = 0) {
        std::vector<Qubit> qubits(num_vars);
        for (std::size_t i = 0; i < num_vars; ++i) qubits[i] = offset + i;
        return QubitMapping(std::move(qubits));
    }

    std::size_t num_vars() const noexcept { return qubits_.size(); }
    Qubit qubit_of(std::size_t variable) const { return qubits_.at(variable - 1); }
    const std::vector<Qubit>& qubits() const noexcept { return qubits_; }

private:
    std::vector<Qubit> qubits_;
};

// Places `target` into a `width`-qubit register; unmapped qubits are |0>.
inline SparseState embed(const SparseState& target, const QubitMapping& mapping, std::size_t width) {
    if (mapping.num_vars() != target.num_qubits()) {
        throw MappingError("mapping covers " + std::to_string(mapping.num_vars()) + " variables, target has " +
                           std::to_string(target.num_qubits()));
    }
    for (Qubit q : mapping.qubits()) {
        if (q >= width) {
            throw MappingError("qubit " + std::to_string(q) + " outside a " + std::to_string(width) + "-qubit circuit");
        }
    }
    SparseState out(width);
    for (const auto& t : target.terms()) {
        BasisIndex index = 0;
        for (std::size_t b = 0; b < target.num_qubits(); ++b) {
            if ((t.index >> b) & 1U) index |= BasisIndex{1} << mapping.qubits()[b];
        }
        out.add(index, t.coeff);
    }
    return out;
}

inline constexpr double kFidelityPassThreshold = 1.0 - 1e-10;
inline constexpr double kSupportThreshold = 1e-12;

struct SupportEntry {
    std::string label;
    Amplitude amplitude;
};

struct VerificationReport {
    std::string target_name;
    std::size_t circuit_qubits = 0;
    double fidelity = 0.0;
    std::optional<Amplitude> global_phase;  // prepared = phase * target, present when passed
    bool passed = false;
    std::vector<SupportEntry> prepared_support;  // normalized prepared state, ascending index
};

// Simulates `circuit` from |0...0> and compares against the embedded,
// normalized target. Reports; never throws on a mismatch.
inline VerificationReport verify_preparation(const Circuit& circuit, const SparseState& target,
                                             const QubitMapping& mapping, std::string target_name = "target") {
    const SparseState embedded = embed(target, mapping, circuit.num_qubits());
    const SparseState target_hat = normalize(embedded).state;
    const Statevector prepared = normalize(run(circuit)).state;

    const Amplitude overlap = inner_product(target_hat, prepared);
    VerificationReport report;
    report.target_name = std::move(target_name);
    report.circuit_qubits = circuit.num_qubits();
    report.fidelity = std::min(1.0, std::norm(overlap));
    report.passed = report.fidelity >= kFidelityPassThreshold;
    if (report.passed) report.global_phase = overlap / std::abs(overlap);
    const auto amps = prepared.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) > kSupportThreshold) {
            report.prepared_support.push_back({ket_label(i, circuit.num_qubits()), amps[i]});
        }
    }
    return report;
}

inline VerificationReport verify_preparation(const Circuit& circuit, const SparseState& target) {
    return verify_preparation(circuit, target, QubitMapping::contiguous(target.num_qubits()));
}

// Report text, one block per target:
//
//   target: A
//   circuit_qubits: 4
//   fidelity: 1.000000000000
//   global_phase: -1.000000000000+0.000000000000i     (or "absent")
//   passed: true
//   support: 2
//     0101 -0.707106781187+0.000000000000i
//     1010 +0.707106781187+0.000000000000i
//
// Blocks are separated by one blank line; the file ends with a newline.
inline void write_report(std::ostream& os, const VerificationReport& r) {
    os << "target: " << r.target_name << "\n";
    os << "circuit_qubits: " << r.circuit_qubits << "\n";
    os << "fidelity: " << fmt::fixed(r.fidelity) << "\n";
    os << "global_phase: " << (r.global_phase ? fmt::complex_fixed(*r.global_phase) : "absent") << "\n";
    os << "passed: " << (r.passed ? "true" : "false") << "\n";
    os << "support: " << r.prepared_support.size() << "\n";
    for (const auto& s : r.prepared_support) os << "  " << s.label << " " << fmt::complex_fixed(s.amplitude) << "\n";
}

inline std::string format_reports(std::span<const VerificationReport> reports) {
    std::ostringstream os;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) os << "\n";
        write_report(os, reports[i]);
    }
    return os.str();
}

// Audits all three listings against the five detectors. The 18-qubit
// listing is checked once per block, with |Ai> mapped onto qubits 6(i-1)..6i-1.
inline std::vector<VerificationReport> verify_paper_circuits() {
    const auto detectors = paper_detectors();
    const Circuit l1 = listing1_circuit();
    const Circuit l2 = listing2_circuit();
    const Circuit l3 = listing3_circuit();

    std::vector<VerificationReport> reports;
    reports.push_back(verify_preparation(l1, detectors[0].state, QubitMapping::contiguous(4), detectors[0].name));
    for (std::size_t block = 0; block < 3; ++block) {
        const auto& d = detectors[1 + block];
        reports.push_back(verify_preparation(l2, d.state, QubitMapping::contiguous(6, 6 * block), d.name));
    }
    reports.push_back(verify_preparation(l3, detectors[4].state, QubitMapping::contiguous(9), detectors[4].name));
    return reports;
}

}  // namespace qgeom
