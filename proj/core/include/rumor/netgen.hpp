#pragma once

// Degree distributions, network generators and degree-derived tie strengths.
#include "rumor/degree_distribution.hpp"
#include "rumor/network.hpp"
#include "rumor/tie_strength.hpp"
