#pragma once

#include "qclif/dim.hpp"
#include "qclif/encoding.hpp"
#include "qclif/errors.hpp"
#include "qclif/frames.hpp"
#include "qclif/lang/ast.hpp"
#include "qclif/lang/compile.hpp"
#include "qclif/lang/desugar.hpp"
#include "qclif/lang/eval.hpp"
#include "qclif/lang/parser.hpp"
#include "qclif/lang/psiof.hpp"
#include "qclif/lang/typecheck.hpp"
#include "qclif/modmat.hpp"
#include "qclif/oracle.hpp"
#include "qclif/pauli.hpp"
#include "qclif/symplectic.hpp"
#include "qclif/vec.hpp"
