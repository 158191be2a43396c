#pragma once

#include "periodlab/cache.hpp"
#include "periodlab/coproduct.hpp"
#include "periodlab/error.hpp"
#include "periodlab/expr.hpp"
#include "periodlab/linalg.hpp"
#include "periodlab/ncseries.hpp"
#include "periodlab/numerics.hpp"
#include "periodlab/periods.hpp"
#include "periodlab/rational.hpp"
#include "periodlab/real.hpp"
#include "periodlab/relations.hpp"
#include "periodlab/symbol_algebra.hpp"
#include "periodlab/word.hpp"
