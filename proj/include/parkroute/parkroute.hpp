#pragma once

#include "parkroute/error.hpp"
#include "parkroute/example_network.hpp"
#include "parkroute/ga_engine.hpp"
#include "parkroute/objectives.hpp"
#include "parkroute/oracle.hpp"
#include "parkroute/random.hpp"
#include "parkroute/road_network.hpp"
#include "parkroute/scenario.hpp"
#include "parkroute/time_slot.hpp"
#include "parkroute/weight_model.hpp"
