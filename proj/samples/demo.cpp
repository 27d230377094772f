// Walks through the library: geometric values read off as inner products,
// an audit of the 4-qubit area circuit, and a synthesized preparation.

#include <iostream>

#include "qgeom/qgeom.hpp"

int main() {
    using namespace qgeom;

    std::cout << "area of (1,2),(3,4): " << fmt::real(area2d({1, 2}, {3, 4})) << "\n";
    const Vec3 c = cross3d({1, 2, 3}, {4, 5, 6});
    std::cout << "cross of (1,2,3),(4,5,6): " << fmt::real(c.x) << "," << fmt::real(c.y) << "," << fmt::real(c.z)
              << "\n";
    std::cout << "volume: " << fmt::real(volume({1, 2, 3}, {4, 5, 6}, {7, 8, 10})) << "\n";

    const auto detector = det_detector(3);
    std::cout << "3x3 determinant detector: " << to_string(state_to_poly(detector)) << "\n\n";

    const auto report = verify_preparation(listing1_circuit(), area2d_detector(AreaMode::PaperLiteral),
                                           QubitMapping::contiguous(4), "A");
    write_report(std::cout, report);

    const Circuit prep = synth_sparse_state(detector);
    std::cout << "\nsynthesized preparation: " << prep.gate_count() << " gates, fidelity "
              << fmt::fixed(verify_preparation(prep, detector).fidelity) << "\n";
    std::cout << export_qasm(prep).text;
}
