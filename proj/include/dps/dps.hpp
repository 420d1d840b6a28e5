#pragma once

#include "adc.hpp"
#include "baselines.hpp"
#include "core.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "reconstruct.hpp"
#include "report.hpp"
#include "signal.hpp"
