#pragma once

#include "qgeom/circuit.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/format.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/paper_circuits.hpp"
#include "qgeom/poly.hpp"
#include "qgeom/qasm.hpp"
#include "qgeom/simulator.hpp"
#include "qgeom/statevector.hpp"
#include "qgeom/synthesis.hpp"
