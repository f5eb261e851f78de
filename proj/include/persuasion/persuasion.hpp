#pragma once

#include "persuasion/core.hpp"
#include "persuasion/exact.hpp"
#include "persuasion/instances.hpp"
#include "persuasion/io.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/mechanisms.hpp"
#include "persuasion/monte_carlo.hpp"
#include "persuasion/pareto.hpp"
#include "persuasion/rng.hpp"
#include "persuasion/theory.hpp"
