#pragma once

// Convenience header: the whole library except the CLI and JSON layers.

#include "gls/codec.hpp"
#include "gls/core.hpp"
#include "gls/dimension.hpp"
#include "gls/errors.hpp"
#include "gls/estimator.hpp"
#include "gls/frequency.hpp"
#include "gls/measures.hpp"
#include "gls/rational.hpp"
#include "gls/scheduler.hpp"
