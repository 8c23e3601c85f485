#pragma once

#include "fucik/analysis.hpp"
#include "fucik/eigen.hpp"
#include "fucik/io.hpp"
#include "fucik/poly.hpp"
#include "fucik/presets.hpp"
#include "fucik/problem.hpp"
#include "fucik/shooting.hpp"
#include "fucik/spectrum.hpp"
#include "fucik/weight.hpp"
