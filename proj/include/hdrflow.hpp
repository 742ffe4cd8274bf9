#pragma once

// Everything: finite fields, curves, the flow engine, scanning, the
// supersingular locus, isogeny graphs and report serialization.

#include "hdrflow/arith/field.hpp"
#include "hdrflow/arith/ntheory.hpp"
#include "hdrflow/arith/poly.hpp"
#include "hdrflow/arith/rational.hpp"
#include "hdrflow/ec/counting.hpp"
#include "hdrflow/ec/curve.hpp"
#include "hdrflow/ec/invariants.hpp"
#include "hdrflow/error.hpp"
#include "hdrflow/flow/engine.hpp"
#include "hdrflow/flow/higgs_state.hpp"
#include "hdrflow/hecke/isogeny_graph.hpp"
#include "hdrflow/hecke/modular_polynomial.hpp"
#include "hdrflow/hecke/velu.hpp"
#include "hdrflow/io/reports.hpp"
#include "hdrflow/io/serialize.hpp"
#include "hdrflow/locus/supersingular_locus.hpp"
#include "hdrflow/scan/rational_curve.hpp"
#include "hdrflow/scan/scanner.hpp"
#include "hdrflow/util/parallel.hpp"
