#pragma once

// Ensemble density estimation: base learners, aggregation algorithms,
// benchmark models and the Monte-Carlo evaluation harness.

#include "densemble/bandwidth.hpp"
#include "densemble/bench.hpp"
#include "densemble/boosting.hpp"
#include "densemble/density.hpp"
#include "densemble/em.hpp"
#include "densemble/ensemble.hpp"
#include "densemble/errors.hpp"
#include "densemble/estimators.hpp"
#include "densemble/evaluation.hpp"
#include "densemble/histogram.hpp"
#include "densemble/kde.hpp"
#include "densemble/kernels.hpp"
#include "densemble/mixtures.hpp"
#include "densemble/models.hpp"
#include "densemble/parallel.hpp"
#include "densemble/quadrature.hpp"
#include "densemble/rng.hpp"
#include "densemble/sample.hpp"
#include "densemble/stacking.hpp"
#include "densemble/tuning.hpp"
