#pragma once

#include "sipwm/attack_sim.hpp"
#include "sipwm/error.hpp"
#include "sipwm/graph.hpp"
#include "sipwm/graph_analysis.hpp"
#include "sipwm/permutation.hpp"
#include "sipwm/random.hpp"
#include "sipwm/rpg_codec.hpp"
#include "sipwm/serialization.hpp"
#include "sipwm/sip_codec.hpp"
#include "sipwm/watermark.hpp"
