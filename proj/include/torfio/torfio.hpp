#pragma once

#include "torfio/core/differences.hpp"
#include "torfio/core/errors.hpp"
#include "torfio/core/fourier.hpp"
#include "torfio/core/lattice.hpp"
#include "torfio/core/parallel.hpp"
#include "torfio/core/record.hpp"
#include "torfio/fio/operator.hpp"
#include "torfio/lab/family.hpp"
#include "torfio/lab/gate.hpp"
#include "torfio/lab/report.hpp"
#include "torfio/lab/spec.hpp"
#include "torfio/lab/sweep.hpp"
#include "torfio/lab/verify.hpp"
#include "torfio/spaces/exponent.hpp"
#include "torfio/spaces/maximal.hpp"
#include "torfio/spaces/muckenhoupt.hpp"
#include "torfio/symbol/library.hpp"
#include "torfio/symbol/phase.hpp"
#include "torfio/symbol/symbol.hpp"
