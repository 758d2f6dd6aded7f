#pragma once

#include "rbpr/bias.hpp"
#include "rbpr/classical.hpp"
#include "rbpr/config.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/fast_engine.hpp"
#include "rbpr/label_io.hpp"
#include "rbpr/model.hpp"
#include "rbpr/report.hpp"
#include "rbpr/synth.hpp"
#include "rbpr/time_range.hpp"
