#pragma once

// Umbrella header for the numerical core (no third-party dependencies).
// Serialization lives separately in propval/io.hpp.

#include "propval/amortization.hpp"
#include "propval/capitalization.hpp"
#include "propval/project_analysis.hpp"
#include "propval/recurrence_valuation.hpp"
#include "propval/time_value.hpp"
