#pragma once

// Shape-trajectory analysis on the manifold of rank-2 PSD matrices:
// Gram representation of planar landmarks, geodesic machinery, warped
// sequence comparison, adaptive re-sampling, and proximity-based
// classification.

#include "shapetraj/baselines.hpp"
#include "shapetraj/classify.hpp"
#include "shapetraj/closeness.hpp"
#include "shapetraj/dataset.hpp"
#include "shapetraj/error.hpp"
#include "shapetraj/grassmann.hpp"
#include "shapetraj/landmark.hpp"
#include "shapetraj/linalg.hpp"
#include "shapetraj/linear_svm.hpp"
#include "shapetraj/metric.hpp"
#include "shapetraj/model_io.hpp"
#include "shapetraj/parallel.hpp"
#include "shapetraj/psd_point.hpp"
#include "shapetraj/report.hpp"
#include "shapetraj/rng.hpp"
#include "shapetraj/spd2.hpp"
#include "shapetraj/trajectory.hpp"
