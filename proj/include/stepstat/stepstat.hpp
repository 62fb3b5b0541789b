#pragma once

// Umbrella header for the stepstat library.

#include "stepstat/analysis/bandwidth_report.hpp"
#include "stepstat/analysis/compare.hpp"
#include "stepstat/analysis/scaling.hpp"
#include "stepstat/error.hpp"
#include "stepstat/experiment/executor.hpp"
#include "stepstat/experiment/launch.hpp"
#include "stepstat/experiment/run_config.hpp"
#include "stepstat/experiment/sweep.hpp"
#include "stepstat/experiment/synthetic.hpp"
#include "stepstat/ingest/bandwidth.hpp"
#include "stepstat/ingest/step_parsers.hpp"
#include "stepstat/ingest/timing_series.hpp"
#include "stepstat/io/series_store.hpp"
#include "stepstat/report/gate.hpp"
#include "stepstat/report/plot_data.hpp"
#include "stepstat/report/table.hpp"
#include "stepstat/stats/descriptive.hpp"
#include "stepstat/stats/hypothesis.hpp"
#include "stepstat/stats/power.hpp"
#include "stepstat/stats/random.hpp"
#include "stepstat/stats/special_functions.hpp"
#include "stepstat/version.hpp"
