#pragma once

#include "anires/bender_wu.hpp"
#include "anires/borel.hpp"
#include "anires/model_integral.hpp"
#include "anires/qm_resummation.hpp"
#include "anires/series.hpp"
#include "anires/special_functions.hpp"
#include "anires/vpt.hpp"
