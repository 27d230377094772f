#pragma once

// qgeom command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 capacity exceeded, 4 I/O failure,
// 5 internal self-check failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeom/qgeom.hpp"

namespace qgeom::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kCapacityError = 3,
    kIoError = 4,
    kInternalError = 5,
};

class IoError : public Error {
public:
    using Error::Error;
};

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CapacityError*>(&e)) return kCapacityError;
    if (dynamic_cast<const IoError*>(&e)) return kIoError;
    if (dynamic_cast<const InternalError*>(&e)) return kInternalError;
    if (dynamic_cast<const Error*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return kInputError;
    return kInternalError;
}

inline double parse_real(std::string_view token) {
    const auto first = token.find_first_not_of(" \t\r");
    const auto last = token.find_last_not_of(" \t\r");
    if (first == std::string_view::npos) throw FormatError("empty number");
    token = token.substr(first, last - first + 1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
        throw FormatError("not a number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) throw FormatError("non-finite number: '" + std::string(token) + "'");
    return value;
}

inline std::vector<double> parse_list(std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        values.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

inline std::vector<double> parse_vector(std::string_view text, std::size_t arity, std::string_view what) {
    auto values = parse_list(text);
    if (values.size() != arity) {
        throw FormatError(std::string(what) + " needs " + std::to_string(arity) + " components, got " +
                          std::to_string(values.size()));
    }
    return values;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

// Plain CSV: one matrix row per non-blank line, comma-separated reals.
inline SquareMatrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(parse_list(line));
    }
    if (rows.empty()) throw FormatError("matrix file is empty");
    return SquareMatrix::from_rows(rows);
}

// {"num_qubits": n, "terms": {"<label-or-index>": [re, im], ...}}
//
// A key of exactly n characters drawn from {0,1} is a ket label; any other
// all-digit key is a decimal basis index.
inline SparseState parse_target_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw FormatError("target must be a JSON object");
    if (!doc.contains("num_qubits") || !doc["num_qubits"].is_number_integer() || doc["num_qubits"].get<long long>() < 1) {
        throw FormatError("\"num_qubits\" must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc["num_qubits"].get<long long>());
    if (n > kMaxDenseQubits) throw CapacityError("target wider than " + std::to_string(kMaxDenseQubits) + " qubits");
    if (!doc.contains("terms") || !doc["terms"].is_object()) throw FormatError("\"terms\" must be a JSON object");
    if (doc["terms"].empty()) throw FormatError("\"terms\" is empty");

    SparseState target(n);
    for (const auto& [key, value] : doc["terms"].items()) {
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
            throw FormatError("term '" + key + "' must be [re, im]");
        }
        BasisIndex index = 0;
        const bool binary = !key.empty() && key.find_first_not_of("01") == std::string::npos;
        if (binary && key.size() == n) {
            index = ket_from_label(key).terms().front().index;
        } else {
            const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
            if (key.empty() || ec != std::errc{} || end != key.data() + key.size()) {
                throw FormatError("term key '" + key + "' is neither an " + std::to_string(n) +
                                  "-character ket label nor a basis index");
            }
        }
        target.add(index, {value[0].get<double>(), value[1].get<double>()});
    }
    if (target.empty()) throw DegenerateStateError("target has only zero coefficients");
    return target;
}

inline std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + fmt::real(values[i]);
    return out;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geometric quantities from entangled-state inner products", "qgeom"};
    app.require_subcommand(1);

    std::string v1, v2, v3;
    bool paper_literal = false;
    auto* area = app.add_subcommand("area2d", "signed area of the parallelogram spanned by two 2D vectors");
    area->add_option("--v1", v1, "first vector, e.g. 1,2")->required();
    area->add_option("--v2", v2, "second vector")->required();
    area->add_flag("--paper-literal", paper_literal, "evaluate x1*x3 - x2*x4 instead of the determinant");

    auto* cross = app.add_subcommand("cross3d", "cross product of two 3D vectors");
    cross->add_option("--v1", v1, "first vector, e.g. 1,2,3")->required();
    cross->add_option("--v2", v2, "second vector")->required();

    auto* vol = app.add_subcommand("volume", "signed volume of the parallelepiped spanned by three 3D vectors");
    vol->add_option("--v1", v1)->required();
    vol->add_option("--v2", v2)->required();
    vol->add_option("--v3", v3)->required();

    std::string matrix_path, method = "both";
    auto* det = app.add_subcommand("det", "determinant of a CSV matrix");
    det->add_option("--matrix", matrix_path, "CSV file, one row per line")->required();
    det->add_option("--method", method, "quantum, classical or both")
        ->check(CLI::IsMember({"quantum", "classical", "both"}));

    std::string report_path;
    auto* verify = app.add_subcommand("verify-paper", "simulate the published circuits against their detector states");
    verify->add_option("--out", report_path, "report file (default: standard output)");

    std::string target_path, qasm_path;
    auto* synth = app.add_subcommand("synth", "synthesize a preparation circuit for a sparse target and emit QASM");
    synth->add_option("--target", target_path, "target JSON")->required();
    synth->add_option("--emit-qasm", qasm_path, "QASM output file (default: standard output)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (area->parsed()) {
            const auto a = parse_vector(v1, 2, "--v1");
            const auto b = parse_vector(v2, 2, "--v2");
            const auto mode = paper_literal ? AreaMode::PaperLiteral : AreaMode::Determinant;
            out << fmt::real(area2d({a[0], a[1]}, {b[0], b[1]}, mode)) << "\n";
        } else if (cross->parsed()) {
            const auto a = parse_vector(v1, 3, "--v1");
            const auto b = parse_vector(v2, 3, "--v2");
            const Vec3 c = cross3d({a[0], a[1], a[2]}, {b[0], b[1], b[2]});
            out << join_reals({c.x, c.y, c.z}) << "\n";
        } else if (vol->parsed()) {
            const auto a = parse_vector(v1, 3, "--v1");
            const auto b = parse_vector(v2, 3, "--v2");
            const auto c = parse_vector(v3, 3, "--v3");
            out << fmt::real(volume({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, {c[0], c[1], c[2]})) << "\n";
        } else if (det->parsed()) {
            const SquareMatrix m = parse_matrix_csv(read_file(matrix_path));
            if (method == "quantum") {
                out << fmt::real(det_quantum(m)) << "\n";
            } else if (method == "classical") {
                out << fmt::real(det_classical(m)) << "\n";
            } else {
                const double q = det_quantum(m);
                const double c = det_classical(m);
                out << "quantum: " << fmt::real(q) << "\n";
                out << "classical: " << fmt::real(c) << "\n";
                out << "abs_diff: " << fmt::real(std::abs(q - c)) << "\n";
            }
        } else if (verify->parsed()) {
            const auto reports = verify_paper_circuits();
            const std::string text = format_reports(reports);
            if (!report_path.empty()) write_file(report_path, text);
            for (const auto& r : reports) {
                out << r.target_name << ": " << (r.passed ? "PASS" : "FAIL") << " fidelity=" << fmt::fixed(r.fidelity)
                    << "\n";
            }
            if (report_path.empty()) out << "\n" << text;
        } else if (synth->parsed()) {
            const SparseState target = parse_target_json(read_file(target_path));
            const Circuit circuit = synth_sparse_state(target);
            const Circuit lowered = lower_for_export(circuit);
            const auto check =
                verify_preparation(lowered, target, QubitMapping::contiguous(target.num_qubits()), "target");
            if (!check.passed) {
                throw InternalError("synthesized circuit failed self-verification (fidelity " +
                                    fmt::fixed(check.fidelity) + ")");
            }
            const QasmDocument qasm = export_qasm(circuit);
            if (qasm_path.empty()) {
                out << qasm.text;
            } else {
                write_file(qasm_path, qasm.text);
                out << "gates: " << lowered.gate_count() << "\n";
                out << "fidelity: " << fmt::fixed(check.fidelity) << "\n";
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kOk;
}

}  // namespace qgeom::cli
