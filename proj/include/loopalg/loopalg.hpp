#pragma once

#include "loopalg/bar_oracle.hpp"
#include "loopalg/berglund.hpp"
#include "loopalg/bounds.hpp"
#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/io.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/poly.hpp"
#include "loopalg/report.hpp"
#include "loopalg/series.hpp"
#include "loopalg/toric.hpp"
