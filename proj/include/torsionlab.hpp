#pragma once

#include "torsionlab/chart_point.hpp"
#include "torsionlab/connection.hpp"
#include "torsionlab/curvature.hpp"
#include "torsionlab/dual.hpp"
#include "torsionlab/einstein.hpp"
#include "torsionlab/frame_exterior.hpp"
#include "torsionlab/manifold_chart.hpp"
#include "torsionlab/reference.hpp"
#include "torsionlab/report.hpp"
#include "torsionlab/scalar_field.hpp"
#include "torsionlab/scenario.hpp"
#include "torsionlab/tensor.hpp"
