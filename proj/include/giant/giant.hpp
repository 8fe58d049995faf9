#pragma once

#include "giant/error.hpp"
#include "giant/degree_dist.hpp"
#include "giant/tail.hpp"
#include "giant/solver.hpp"
#include "giant/bounds.hpp"
#include "giant/search.hpp"
#include "giant/families.hpp"
#include "giant/simulator.hpp"
#include "giant/io.hpp"
#include "giant/reproduce.hpp"
